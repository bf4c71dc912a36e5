//! The 12-letter morphism, its fixed point, and the symbol/vector operators.
//!
//! Positions in the fixed point are 1-based in mathematical notation
//! (`λ[1] = i`); every slice returned here is an ordinary 0-based Rust slice,
//! so `lambda[p - 1]` is the p-th symbol. Trapezoid `m` (0-based) takes its
//! orientation from the `(m + 1)`-th symbol, i.e. `lambda[m]` in slice terms.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Limits, Result};

/// One letter of the alphabet, encoded as `letter + 3·prime + 6·bar` where
/// `letter` is 0, 1, 2 for i, j, k.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Symbol(u8);

impl Symbol {
    pub const I: Symbol = Symbol(0);
    pub const J: Symbol = Symbol(1);
    pub const K: Symbol = Symbol(2);
    pub const IP: Symbol = Symbol(3);
    pub const JP: Symbol = Symbol(4);
    pub const KP: Symbol = Symbol(5);
    pub const IB: Symbol = Symbol(6);
    pub const JB: Symbol = Symbol(7);
    pub const KB: Symbol = Symbol(8);
    pub const IBP: Symbol = Symbol(9);
    pub const JBP: Symbol = Symbol(10);
    pub const KBP: Symbol = Symbol(11);

    pub const ALL: [Symbol; 12] = [
        Symbol::I,
        Symbol::J,
        Symbol::K,
        Symbol::IP,
        Symbol::JP,
        Symbol::KP,
        Symbol::IB,
        Symbol::JB,
        Symbol::KB,
        Symbol::IBP,
        Symbol::JBP,
        Symbol::KBP,
    ];

    pub const fn from_index(index: u8) -> Option<Symbol> {
        if index < 12 {
            Some(Symbol(index))
        } else {
            None
        }
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn token(self) -> &'static str {
        TOKENS[self.index()]
    }

    /// Image under the morphism; always starts and ends with `self`.
    #[inline]
    pub fn image(self) -> &'static [Symbol; 7] {
        &MU[self.index()]
    }

    #[inline]
    pub fn step(self) -> StepVector {
        STEP[self.index()]
    }

    #[inline]
    pub fn orientation(self) -> Orientation {
        PSI[self.index()]
    }

    #[inline]
    pub fn alpha(self) -> Symbol {
        ALPHA[self.index()]
    }

    #[inline]
    pub fn beta(self) -> Symbol {
        BETA[self.index()]
    }

    /// The reversal-parity switch: toggles the bar and keeps letter and prime.
    #[inline]
    pub fn reversal_parity(self) -> Symbol {
        REV[self.index()]
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        TOKENS
            .iter()
            .position(|t| *t == s)
            .map(|p| Symbol(p as u8))
            .ok_or_else(|| Error::Parse(format!("unknown symbol token {s:?}")))
    }
}

const TOKENS: [&str; 12] = [
    "i", "j", "k", "ip", "jp", "kp", "ib", "jb", "kb", "ibp", "jbp", "kbp",
];

const fn s(index: u8) -> Symbol {
    Symbol(index)
}

const I: Symbol = s(0);
const J: Symbol = s(1);
const K: Symbol = s(2);
const IP: Symbol = s(3);
const JP: Symbol = s(4);
const KP: Symbol = s(5);
const IB: Symbol = s(6);
const JB: Symbol = s(7);
const KB: Symbol = s(8);
const IBP: Symbol = s(9);
const JBP: Symbol = s(10);
const KBP: Symbol = s(11);

const MU: [[Symbol; 7]; 12] = [
    [I, JP, IBP, I, KB, IBP, I],
    [J, KP, JBP, J, IB, JBP, J],
    [K, IP, KBP, K, JB, KBP, K],
    [IP, K, IB, IP, JBP, IB, IP],
    [JP, I, JB, JP, KBP, JB, JP],
    [KP, J, KB, KP, IBP, KB, KP],
    [IB, IP, K, IB, IP, JBP, IB],
    [JB, JP, I, JB, JP, KBP, JB],
    [KB, KP, J, KB, KP, IBP, KB],
    [IBP, I, JP, IBP, I, KB, IBP],
    [JBP, J, KP, JBP, J, IB, JBP],
    [KBP, K, IP, KBP, K, JB, KBP],
];

const ALPHA: [Symbol; 12] = [JP, IP, KP, J, I, K, JBP, IBP, KBP, JB, IB, KB];
const BETA: [Symbol; 12] = [IP, KP, JP, I, K, J, IBP, KBP, JBP, IB, KB, JB];
const REV: [Symbol; 12] = [IB, JB, KB, IBP, JBP, KBP, I, J, K, IP, JP, KP];

const STEP: [StepVector; 12] = {
    use StepVector::{I as Vi, J as Vj, K as Vk};
    [Vi, Vj, Vk, Vi, Vj, Vk, Vi, Vj, Vk, Vi, Vj, Vk]
};

const PSI: [Orientation; 12] = {
    use Orientation::*;
    // i j k i' j' k' ib jb kb ib' jb' kb'
    [A, C, E, B, D, F, B, D, F, A, C, E]
};

/// A unit step of the walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepVector {
    I,
    J,
    K,
}

impl StepVector {
    pub const ALL: [StepVector; 3] = [StepVector::I, StepVector::J, StepVector::K];

    pub fn triple(self) -> [i64; 3] {
        match self {
            StepVector::I => [1, 0, 0],
            StepVector::J => [0, 1, 0],
            StepVector::K => [0, 0, 1],
        }
    }

    /// Parallel norm (coordinate sum); 1 for every step.
    pub fn parallel_norm(self) -> i64 {
        self.triple().iter().sum()
    }

    /// Vector operator swapping i and j.
    pub fn alpha(self) -> StepVector {
        match self {
            StepVector::I => StepVector::J,
            StepVector::J => StepVector::I,
            StepVector::K => StepVector::K,
        }
    }

    /// Vector operator swapping j and k.
    pub fn beta(self) -> StepVector {
        match self {
            StepVector::I => StepVector::I,
            StepVector::J => StepVector::K,
            StepVector::K => StepVector::J,
        }
    }
}

impl fmt::Display for StepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepVector::I => "i",
            StepVector::J => "j",
            StepVector::K => "k",
        })
    }
}

/// Placement of an order-0 trapezoid relative to its base. The six values
/// are `a` (identity), `b` (reflection across the base line), `c`/`e` (`a`
/// rotated by 120°/240°) and `d`/`f` (`b` rotated by 120°/240°).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    A,
    B,
    C,
    D,
    E,
    F,
}

// Row x, column y holds x∘y.
const CAYLEY: [[Orientation; 6]; 6] = {
    use Orientation::*;
    [
        [A, B, C, D, E, F],
        [B, A, D, C, F, E],
        [C, D, F, E, B, A],
        [D, C, E, F, A, B],
        [E, F, B, A, C, D],
        [F, E, A, B, D, C],
    ]
};

impl Orientation {
    pub const ALL: [Orientation; 6] = [
        Orientation::A,
        Orientation::B,
        Orientation::C,
        Orientation::D,
        Orientation::E,
        Orientation::F,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Orientation> {
        Orientation::ALL.get(index).copied()
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_letter(c: char) -> Option<Orientation> {
        match c {
            'a'..='f' => Orientation::from_index(c as usize - 'a' as usize),
            _ => None,
        }
    }

    /// Composition as tabulated in the orientation Cayley table.
    pub fn compose(self, other: Orientation) -> Orientation {
        CAYLEY[self.index()][other.index()]
    }

    pub fn inverse(self) -> Orientation {
        Orientation::ALL
            .into_iter()
            .find(|o| self.compose(*o) == Orientation::A)
            .expect("every row of the table contains the identity")
    }

    /// `(rotation, reflected)` with `self = R^rotation ∘ B^reflected` applied
    /// to orientation `a`, where `R` is the 120° rotation and `B` the
    /// reflection across the base line.
    pub fn symmetry(self) -> (u8, bool) {
        let i = self as u8;
        (i / 2, i % 2 == 1)
    }

    pub fn from_symmetry(rotation: u8, reflected: bool) -> Orientation {
        Orientation::ALL[((rotation % 3) * 2 + reflected as u8) as usize]
    }

    /// Composition of the plane symmetries (apply `other` first, then
    /// `self`). This is the dihedral group of order 6 acting on chains.
    pub fn then_apply(self, other: Orientation) -> Orientation {
        let (r1, f1) = self.symmetry();
        let (r2, f2) = other.symmetry();
        let r2 = if f1 { (3 - r2) % 3 } else { r2 };
        Orientation::from_symmetry(r1 + r2, f1 ^ f2)
    }

    pub fn symmetry_inverse(self) -> Orientation {
        let (r, f) = self.symmetry();
        if f {
            self
        } else {
            Orientation::from_symmetry((3 - r) % 3, false)
        }
    }

    /// Step direction of the trapezoid's base.
    pub fn step(self) -> StepVector {
        StepVector::ALL[self.index() / 2]
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

pub fn orientations_to_string(seq: &[Orientation]) -> String {
    seq.iter().map(|o| o.letter()).collect()
}

pub fn orientations_from_str(s: &str) -> Result<Vec<Orientation>> {
    s.chars()
        .map(|c| {
            Orientation::from_letter(c)
                .ok_or_else(|| Error::Parse(format!("unknown orientation letter {c:?}")))
        })
        .collect()
}

/// A finite word over the alphabet.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    /// Subword from 1-based position `i` to `j` inclusive.
    pub fn subword(&self, i: usize, j: usize) -> Word {
        assert!(i >= 1 && i <= j + 1 && j <= self.0.len(), "subword bounds");
        Word(self.0[i - 1..j].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn alpha(&self) -> Word {
        Word(self.0.iter().map(|s| s.alpha()).collect())
    }

    pub fn beta(&self) -> Word {
        Word(self.0.iter().map(|s| s.beta()).collect())
    }

    pub fn reversal_parity(&self) -> Word {
        Word(self.0.iter().map(|s| s.reversal_parity()).collect())
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Word {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, sym) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sym.token())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.split_whitespace().map(Symbol::from_str).collect()
    }
}

pub fn mu(sym: Symbol) -> Word {
    Word(sym.image().to_vec())
}

/// Applies the morphism to every symbol and concatenates.
pub fn mu_word(w: &[Symbol]) -> Word {
    Word(w.iter().flat_map(|s| s.image().iter().copied()).collect())
}

pub fn mu_power(w: &[Symbol], n: u32) -> Word {
    let mut out = Word(w.to_vec());
    for _ in 0..n {
        out = mu_word(&out);
    }
    out
}

/// First `n` symbols of the fixed point starting with `i`.
pub fn lambda_prefix(n: usize) -> Result<Word> {
    lambda_prefix_with(n, &Limits::default())
}

pub fn lambda_prefix_with(n: usize, limits: &Limits) -> Result<Word> {
    limits.check("fixed-point prefix", n as u64)?;
    let mut out: Vec<Symbol> = Vec::with_capacity(n + 7);
    // λ = μ(λ): the q-th symbol's image fills positions 7q..7q+6.
    out.extend_from_slice(Symbol::I.image());
    let mut cursor = 1;
    while out.len() < n {
        let sym = out[cursor];
        out.extend_from_slice(sym.image());
        cursor += 1;
    }
    out.truncate(n);
    Ok(Word(out))
}

pub fn phi(w: &[Symbol]) -> Vec<StepVector> {
    w.iter().map(|s| s.step()).collect()
}

pub fn psi(w: &[Symbol]) -> Vec<Orientation> {
    w.iter().map(|s| s.orientation()).collect()
}

/// The vector-operator construction `A_{n+1} = (A_n, αA_n, RβA_n, A_n,
/// RβαA_n, RβA_n, A_n)` with `A_0 = (i)`. Independent of the morphism.
pub fn gr_construction(n: u32) -> Result<Vec<StepVector>> {
    gr_construction_with(n, &Limits::default())
}

pub fn gr_construction_with(n: u32, limits: &Limits) -> Result<Vec<StepVector>> {
    let len = 7u64
        .checked_pow(n)
        .ok_or(Error::Overflow("7^n in gr_construction"))?;
    limits.check("vector-operator construction", len)?;
    let mut a = vec![StepVector::I];
    for _ in 0..n {
        let alpha: Vec<_> = a.iter().map(|v| v.alpha()).collect();
        let rev_beta: Vec<_> = a.iter().rev().map(|v| v.beta()).collect();
        let rev_beta_alpha: Vec<_> = a.iter().rev().map(|v| v.alpha().beta()).collect();
        let mut next = Vec::with_capacity(a.len() * 7);
        next.extend_from_slice(&a);
        next.extend_from_slice(&alpha);
        next.extend_from_slice(&rev_beta);
        next.extend_from_slice(&a);
        next.extend_from_slice(&rev_beta_alpha);
        next.extend_from_slice(&rev_beta);
        next.extend_from_slice(&a);
        a = next;
    }
    Ok(a)
}
