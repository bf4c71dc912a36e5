//! Index of the last new subword of each length, and first-occurrence
//! enumeration of distinct subwords.
//!
//! Positions returned by this module are 1-based (the first symbol of the
//! fixed point is position 1), matching the usual statement of the values
//! `I(1) = 215` and `I(2) = 558`.

use std::collections::HashMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Limits, Result};
use crate::sequence::{lambda_prefix_with, Orientation, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoveltyIndex {
    pub length: usize,
    /// 1-based start of the last window of this length that occurs for the
    /// first time.
    pub index: usize,
    /// Largest start position scanned.
    pub bound_used: usize,
}

/// A letter type the window scanner can hash.
pub trait Letter: Copy + Eq {
    fn code(self) -> u64;
}

impl Letter for Symbol {
    #[inline]
    fn code(self) -> u64 {
        self.index() as u64 + 1
    }
}

impl Letter for Orientation {
    #[inline]
    fn code(self) -> u64 {
        self.index() as u64 + 1
    }
}

impl Letter for u8 {
    #[inline]
    fn code(self) -> u64 {
        self as u64 + 1
    }
}

const HASH_BASE: u64 = 0x9E37_79B9_7F4A_7C15 | 1;

/// Dedup set for equal-length windows of one backing slice: 64-bit rolling
/// hashes with exact confirmation on every hash hit.
struct WindowSet<'a, T> {
    data: &'a [T],
    n: usize,
    buckets: FxHashMap<u64, Bucket>,
}

enum Bucket {
    One(u32),
    Many(Vec<u32>),
}

impl<'a, T: Letter> WindowSet<'a, T> {
    fn new(data: &'a [T], n: usize) -> Self {
        WindowSet {
            data,
            n,
            buckets: FxHashMap::default(),
        }
    }

    /// Returns the stored start of an equal window, or inserts this one.
    fn lookup_or_insert(&mut self, hash: u64, start: usize) -> Option<usize> {
        let data = self.data;
        let n = self.n;
        let window = &data[start..start + n];
        let same = |s: u32| &data[s as usize..s as usize + n] == window;
        match self.buckets.get_mut(&hash) {
            None => {
                self.buckets.insert(hash, Bucket::One(start as u32));
                None
            }
            Some(Bucket::One(s)) => {
                if same(*s) {
                    Some(*s as usize)
                } else {
                    let s = *s;
                    *self.buckets.get_mut(&hash).unwrap() =
                        Bucket::Many(vec![s, start as u32]);
                    None
                }
            }
            Some(Bucket::Many(v)) => {
                if let Some(s) = v.iter().find(|s| same(**s)) {
                    Some(*s as usize)
                } else {
                    v.push(start as u32);
                    None
                }
            }
        }
    }
}

/// Rolling polynomial hashes of every length-`n` window of `data` whose
/// 0-based start is at most `max_start`, passed to `f(start, hash)`.
fn for_each_window_hash<T: Letter>(
    data: &[T],
    n: usize,
    max_start: usize,
    mut f: impl FnMut(usize, u64),
) {
    if n == 0 || data.len() < n {
        return;
    }
    let last = max_start.min(data.len() - n);
    let top = HASH_BASE.wrapping_pow(n as u32 - 1);
    let mut h = 0u64;
    for x in &data[..n] {
        h = h.wrapping_mul(HASH_BASE).wrapping_add(x.code());
    }
    f(0, h);
    for start in 1..=last {
        h = h
            .wrapping_sub(data[start - 1].code().wrapping_mul(top))
            .wrapping_mul(HASH_BASE)
            .wrapping_add(data[start + n - 1].code());
        f(start, h);
    }
}

/// 0-based starts (ascending) of the windows of length `n` that occur for
/// the first time, considering only starts `≤ max_start`.
pub fn first_occurrences<T: Letter>(data: &[T], n: usize, max_start: usize) -> Vec<usize> {
    let mut set = WindowSet::new(data, n);
    let mut out = Vec::new();
    // If window(k−1) equals an earlier window(f) and the symbols entering
    // both windows agree, window(k) equals window(f+1), which was already
    // seen. That avoids a full comparison on most repeats.
    let mut prev_match: Option<usize> = None;
    for_each_window_hash(data, n, max_start, |start, h| {
        if let Some(f) = prev_match {
            if data[start + n - 1] == data[f + n] {
                prev_match = Some(f + 1);
                return;
            }
        }
        match set.lookup_or_insert(h, start) {
            Some(f) => prev_match = Some(f),
            None => {
                prev_match = None;
                out.push(start);
            }
        }
    });
    out
}

/// Computes `I(n)` with the recursive bound `I(n) ≤ 7·I(⌈n/7⌉ + 1)`,
/// memoizing the chain of lengths it visits.
pub struct SubwordIndexer {
    limits: Limits,
    lambda: Word,
    memo: HashMap<usize, NoveltyIndex>,
}

impl SubwordIndexer {
    pub fn new(limits: Limits) -> SubwordIndexer {
        SubwordIndexer {
            limits,
            lambda: Word::default(),
            memo: HashMap::new(),
        }
    }

    /// The fixed-point prefix generated so far (at least `len` symbols after
    /// the call).
    pub fn prefix(&mut self, len: usize) -> Result<&Word> {
        if self.lambda.len() < len {
            // Grow geometrically so a chain of scans regenerates rarely.
            let target = len.max(self.lambda.len() * 2).max(1024);
            let target = if (target as u64) > self.limits.max_bytes {
                len
            } else {
                target
            };
            self.lambda = lambda_prefix_with(target, &self.limits)?;
        }
        Ok(&self.lambda)
    }

    /// Upper bound on the 1-based start of every first occurrence of length `n`.
    pub fn scan_bound(&mut self, n: usize) -> Result<usize> {
        Ok(self.index_of_last_new_subword(n)?.bound_used)
    }

    pub fn index_of_last_new_subword(&mut self, n: usize) -> Result<NoveltyIndex> {
        if n == 0 {
            return Err(Error::InvalidArgument("subword length must be ≥ 1".into()));
        }
        if let Some(r) = self.memo.get(&n) {
            return Ok(*r);
        }
        let result = if n <= 2 {
            self.base_case(n)?
        } else {
            let inner = n.div_ceil(7) + 1;
            let inner_index = self.index_of_last_new_subword(inner)?.index;
            let bound = inner_index
                .checked_mul(7)
                .ok_or(Error::Overflow("novelty bound"))?;
            let lambda = self.prefix(bound + n - 1)?;
            let starts = first_occurrences(lambda.as_slice(), n, bound - 1);
            NoveltyIndex {
                length: n,
                index: starts.last().map_or(1, |s| s + 1),
                bound_used: bound,
            }
        };
        self.memo.insert(n, result);
        Ok(result)
    }

    // Lengths 1 and 2 have a known target set: every symbol, and every
    // length-2 window of some morphism image (each image starts and ends with
    // its preimage symbol, so boundary pairs are pairs one level down).
    fn base_case(&mut self, n: usize) -> Result<NoveltyIndex> {
        let target: std::collections::HashSet<Vec<Symbol>> = if n == 1 {
            Symbol::ALL.iter().map(|s| vec![*s]).collect()
        } else {
            Symbol::ALL
                .iter()
                .flat_map(|s| s.image().windows(2).map(|w| w.to_vec()))
                .collect()
        };
        let mut seen = std::collections::HashSet::new();
        let mut len = 256;
        loop {
            let lambda = self.prefix(len)?;
            seen.clear();
            for (start, w) in lambda.windows(n).enumerate() {
                if seen.insert(w.to_vec()) && seen.len() == target.len() {
                    debug_assert!(seen.iter().all(|x| target.contains(x)));
                    return Ok(NoveltyIndex {
                        length: n,
                        index: start + 1,
                        bound_used: start + 1,
                    });
                }
            }
            len *= 4;
        }
    }

    /// One 1-based start per distinct window of length `n`, ascending; the
    /// last entry is `I(n)`.
    pub fn distinct_subword_starts(&mut self, n: usize) -> Result<Vec<usize>> {
        let bound = self.scan_bound(n)?;
        let lambda = self.prefix(bound + n - 1)?;
        Ok(first_occurrences(lambda.as_slice(), n, bound - 1)
            .into_iter()
            .map(|s| s + 1)
            .collect())
    }
}

impl Default for SubwordIndexer {
    fn default() -> Self {
        SubwordIndexer::new(Limits::default())
    }
}

pub fn index_of_last_new_subword(n: usize) -> Result<NoveltyIndex> {
    SubwordIndexer::default().index_of_last_new_subword(n)
}

pub fn distinct_subword_starts(n: usize) -> Result<Vec<usize>> {
    SubwordIndexer::default().distinct_subword_starts(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::lambda_prefix;
    use std::collections::HashSet;

    // Oracle: first occurrences over a long prefix using owned windows.
    fn brute_first_occurrences(lam: &[Symbol], n: usize) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (s, w) in lam.windows(n).enumerate() {
            if seen.insert(w.to_vec()) {
                out.push(s + 1);
            }
        }
        out
    }

    #[test]
    fn base_values() {
        let mut ix = SubwordIndexer::default();
        assert_eq!(ix.index_of_last_new_subword(1).unwrap().index, 215);
        assert_eq!(ix.index_of_last_new_subword(2).unwrap().index, 558);
        let lam = lambda_prefix(600).unwrap();
        assert_eq!(lam[214], Symbol::IB);
        assert!(!lam[..214].contains(&Symbol::IB));
        assert_eq!(&lam[557..559], &[Symbol::JBP, Symbol::IB]);
    }

    #[test]
    fn zero_length_rejected() {
        assert!(index_of_last_new_subword(0).is_err());
    }

    #[test]
    fn distinct_starts_small_lengths() {
        let mut ix = SubwordIndexer::default();
        let one = ix.distinct_subword_starts(1).unwrap();
        assert_eq!(one.len(), 12);
        assert!(one.contains(&215));
        let two = ix.distinct_subword_starts(2).unwrap();
        let lam = lambda_prefix(4000).unwrap();
        let images: HashSet<Vec<Symbol>> = Symbol::ALL
            .iter()
            .flat_map(|s| s.image().windows(2).map(|w| w.to_vec()))
            .collect();
        assert_eq!(two.len(), images.len());
        assert_eq!(*two.last().unwrap(), 558);
        assert_eq!(two, brute_first_occurrences(&lam[..559], 2));
    }

    #[test]
    fn agrees_with_brute_force_on_long_prefix() {
        let mut ix = SubwordIndexer::default();
        for n in [3, 4, 5, 7, 8, 13, 20, 30, 49, 50] {
            let got = ix.index_of_last_new_subword(n).unwrap();
            assert!(got.index <= got.bound_used);
            let lam = lambda_prefix(10 * got.bound_used + n).unwrap();
            let brute = brute_first_occurrences(&lam, n);
            assert_eq!(*brute.last().unwrap(), got.index, "n = {n}");
            assert_eq!(ix.distinct_subword_starts(n).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn nondecreasing_in_length() {
        let mut ix = SubwordIndexer::default();
        let mut prev = 0;
        for n in 1..=120 {
            let i = ix.index_of_last_new_subword(n).unwrap().index;
            assert!(i >= prev, "I({n}) = {i} < {prev}");
            prev = i;
        }
    }

    #[test]
    fn forced_hash_collisions_are_resolved_exactly() {
        // Every window gets the same hash; exact comparison must still
        // separate them.
        let data: Vec<u8> = vec![0, 1, 0, 1, 1, 0, 0, 1];
        let mut set = WindowSet::new(&data, 3);
        let mut fresh = Vec::new();
        for s in 0..=data.len() - 3 {
            if set.lookup_or_insert(42, s).is_none() {
                fresh.push(s);
            }
        }
        let mut seen = HashSet::new();
        let expected: Vec<usize> = (0..=data.len() - 3)
            .filter(|&s| seen.insert(data[s..s + 3].to_vec()))
            .collect();
        assert_eq!(fresh, expected);
    }
}
