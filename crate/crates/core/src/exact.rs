//! Exact arithmetic in ℤ[√3] and fractions over it.
//!
//! Every operation is overflow-checked on `i128`. The `checked_*` methods
//! report overflow as [`Error::Overflow`]; the operator impls panic with the
//! same diagnostic, so a wrapped value can never flow into a comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The real number `whole + rt3·√3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rt3Num {
    pub whole: i128,
    pub rt3: i128,
}

impl Rt3Num {
    pub const ZERO: Rt3Num = Rt3Num { whole: 0, rt3: 0 };
    pub const ONE: Rt3Num = Rt3Num { whole: 1, rt3: 0 };

    pub const fn new(whole: i128, rt3: i128) -> Rt3Num {
        Rt3Num { whole, rt3 }
    }

    pub const fn integer(whole: i128) -> Rt3Num {
        Rt3Num { whole, rt3: 0 }
    }

    pub fn checked_add(self, o: Rt3Num) -> Result<Rt3Num> {
        Ok(Rt3Num {
            whole: self.whole.checked_add(o.whole).ok_or(Error::Overflow("rt3 add"))?,
            rt3: self.rt3.checked_add(o.rt3).ok_or(Error::Overflow("rt3 add"))?,
        })
    }

    pub fn checked_sub(self, o: Rt3Num) -> Result<Rt3Num> {
        Ok(Rt3Num {
            whole: self.whole.checked_sub(o.whole).ok_or(Error::Overflow("rt3 sub"))?,
            rt3: self.rt3.checked_sub(o.rt3).ok_or(Error::Overflow("rt3 sub"))?,
        })
    }

    pub fn checked_neg(self) -> Result<Rt3Num> {
        Ok(Rt3Num {
            whole: self.whole.checked_neg().ok_or(Error::Overflow("rt3 neg"))?,
            rt3: self.rt3.checked_neg().ok_or(Error::Overflow("rt3 neg"))?,
        })
    }

    /// `(a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3`.
    pub fn checked_mul(self, o: Rt3Num) -> Result<Rt3Num> {
        const E: Error = Error::Overflow("rt3 mul");
        let ac = self.whole.checked_mul(o.whole).ok_or(E)?;
        let bd3 = self
            .rt3
            .checked_mul(o.rt3)
            .and_then(|x| x.checked_mul(3))
            .ok_or(E)?;
        let ad = self.whole.checked_mul(o.rt3).ok_or(E)?;
        let bc = self.rt3.checked_mul(o.whole).ok_or(E)?;
        Ok(Rt3Num {
            whole: ac.checked_add(bd3).ok_or(E)?,
            rt3: ad.checked_add(bc).ok_or(E)?,
        })
    }

    /// Sign of the real value without division or square roots: when the two
    /// components disagree in sign, compare `whole²` with `3·rt3²`.
    pub fn signum(self) -> Result<i32> {
        let a = self.whole.signum() as i32;
        let b = self.rt3.signum() as i32;
        if a == b || b == 0 {
            return Ok(a);
        }
        if a == 0 {
            return Ok(b);
        }
        const E: Error = Error::Overflow("rt3 sign");
        let a2 = self.whole.checked_mul(self.whole).ok_or(E)?;
        let b2 = self
            .rt3
            .checked_mul(self.rt3)
            .and_then(|x| x.checked_mul(3))
            .ok_or(E)?;
        // Equality is impossible: √3 is irrational and (a, b) ≠ (0, 0).
        Ok(if a2 > b2 { a } else { b })
    }

    pub fn cmp_exact(self, o: Rt3Num) -> Result<Ordering> {
        Ok(self.checked_sub(o)?.signum()?.cmp(&0))
    }

    pub fn to_f64(self) -> f64 {
        self.whole as f64 + self.rt3 as f64 * 3f64.sqrt()
    }
}

impl fmt::Display for Rt3Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rt3 < 0 {
            write!(f, "{}-{}√3", self.whole, -self.rt3)
        } else {
            write!(f, "{}+{}√3", self.whole, self.rt3)
        }
    }
}

impl From<i64> for Rt3Num {
    fn from(v: i64) -> Rt3Num {
        Rt3Num::integer(v as i128)
    }
}

macro_rules! halting_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rt3Num {
            type Output = Rt3Num;

            fn $method(self, o: Rt3Num) -> Rt3Num {
                match self.$checked(o) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}: {self} and {o}"),
                }
            }
        }
    };
}

halting_op!(Add, add, checked_add);
halting_op!(Sub, sub, checked_sub);
halting_op!(Mul, mul, checked_mul);

impl Neg for Rt3Num {
    type Output = Rt3Num;

    fn neg(self) -> Rt3Num {
        self.checked_neg().unwrap_or_else(|e| panic!("{e}: {self}"))
    }
}

/// `num / den` with `den > 0`. Never reduced; compared by cross-multiplying.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rt3Ratio {
    pub num: Rt3Num,
    pub den: Rt3Num,
}

impl Rt3Ratio {
    pub fn new(num: Rt3Num, den: Rt3Num) -> Result<Rt3Ratio> {
        if den.signum()? <= 0 {
            return Err(Error::InvalidArgument(format!(
                "ratio denominator {den} is not positive"
            )));
        }
        Ok(Rt3Ratio { num, den })
    }

    pub fn from_num(num: Rt3Num) -> Rt3Ratio {
        Rt3Ratio {
            num,
            den: Rt3Num::ONE,
        }
    }

    pub fn cmp_exact(&self, o: &Rt3Ratio) -> Result<Ordering> {
        let lhs = self.num.checked_mul(o.den)?;
        let rhs = o.num.checked_mul(self.den)?;
        lhs.cmp_exact(rhs)
    }

    pub fn checked_mul(&self, o: &Rt3Ratio) -> Result<Rt3Ratio> {
        Ok(Rt3Ratio {
            num: self.num.checked_mul(o.num)?,
            den: self.den.checked_mul(o.den)?,
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }
}

impl fmt::Display for Rt3Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Exact ordering of ratios. Panics on overflow; use [`Rt3Ratio::cmp_exact`]
/// to recover from it.
pub fn cmp_ratio(x: &Rt3Ratio, y: &Rt3Ratio) -> Ordering {
    x.cmp_exact(y).unwrap_or_else(|e| panic!("{e}: comparing {x} with {y}"))
}

/// The number interface the geometry code is written against. The exact
/// [`Rt3Num`] is the only implementation with correctness claims; `f64` is
/// provided for cross-checking.
pub trait Number: Copy + fmt::Debug + Send + Sync {
    fn from_parts(whole: i64, rt3: i64) -> Self;
    fn add(self, o: Self) -> Result<Self>;
    fn sub(self, o: Self) -> Result<Self>;
    fn mul(self, o: Self) -> Result<Self>;
    fn signum(self) -> Result<i32>;
    fn approx(self) -> f64;

    fn cmp_num(self, o: Self) -> Result<Ordering> {
        Ok(self.sub(o)?.signum()?.cmp(&0))
    }
}

impl Number for Rt3Num {
    fn from_parts(whole: i64, rt3: i64) -> Self {
        Rt3Num::new(whole as i128, rt3 as i128)
    }
    fn add(self, o: Self) -> Result<Self> {
        self.checked_add(o)
    }
    fn sub(self, o: Self) -> Result<Self> {
        self.checked_sub(o)
    }
    fn mul(self, o: Self) -> Result<Self> {
        self.checked_mul(o)
    }
    fn signum(self) -> Result<i32> {
        Rt3Num::signum(self)
    }
    fn approx(self) -> f64 {
        self.to_f64()
    }
}

impl Number for f64 {
    fn from_parts(whole: i64, rt3: i64) -> Self {
        whole as f64 + rt3 as f64 * 3f64.sqrt()
    }
    fn add(self, o: Self) -> Result<Self> {
        Ok(self + o)
    }
    fn sub(self, o: Self) -> Result<Self> {
        Ok(self - o)
    }
    fn mul(self, o: Self) -> Result<Self> {
        Ok(self * o)
    }
    fn signum(self) -> Result<i32> {
        Ok(if self > 0.0 {
            1
        } else if self < 0.0 {
            -1
        } else {
            0
        })
    }
    fn approx(self) -> f64 {
        self
    }
}

/// `num / den` over any [`Number`], `den > 0`.
#[derive(Clone, Copy, Debug)]
pub struct Ratio<N> {
    pub num: N,
    pub den: N,
}

impl<N: Number> Ratio<N> {
    pub fn whole(num: N) -> Ratio<N> {
        Ratio {
            num,
            den: N::from_parts(1, 0),
        }
    }

    pub fn cmp_ratio(&self, o: &Ratio<N>) -> Result<Ordering> {
        self.num.mul(o.den)?.cmp_num(o.num.mul(self.den)?)
    }

    pub fn approx(&self) -> f64 {
        self.num.approx() / self.den.approx()
    }
}

impl From<Ratio<Rt3Num>> for Rt3Ratio {
    fn from(r: Ratio<Rt3Num>) -> Rt3Ratio {
        Rt3Ratio {
            num: r.num,
            den: r.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(w: i128, t: i128) -> Rt3Num {
        Rt3Num::new(w, t)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(r(1, 1) * r(1, 1), r(4, 2));
        assert_eq!(r(0, 1) * r(0, 1), r(3, 0));
        assert_eq!(r(2, 0) + r(-2, 5), r(0, 5));
    }

    // Squaring oracle: for a > 0 > b, sign(a + b√3) = sign(a² − 3b²).
    #[test]
    fn sign_examples() {
        assert_eq!(r(1, 2).signum().unwrap(), 1);
        assert_eq!(25 - 27, -2);
        assert_eq!(r(5, -3).signum().unwrap(), -1);
        assert_eq!(49 - 48, 1);
        assert_eq!(r(7, -4).signum().unwrap(), 1);
        assert_eq!(r(-7, 4).signum().unwrap(), -1);
        assert_eq!(r(0, 0).signum().unwrap(), 0);
        assert_eq!(r(0, -3).signum().unwrap(), -1);
    }

    #[test]
    fn ratio_examples() {
        let a = Rt3Ratio::new(r(28, 0), r(1, 0)).unwrap();
        let b = Rt3Ratio::new(r(964, 0), r(100, 0)).unwrap();
        assert_eq!(cmp_ratio(&a, &b), Ordering::Greater);
        assert_eq!(cmp_ratio(&a, &a), Ordering::Equal);
        let c = Rt3Ratio::new(r(1, 1), r(2, 0)).unwrap();
        let d = Rt3Ratio::new(r(4, 2), r(2, 2)).unwrap();
        assert_eq!(cmp_ratio(&c, &d), Ordering::Equal);
        assert!(Rt3Ratio::new(r(1, 0), r(1, -1)).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = r(i128::MAX / 2, 0);
        assert!(matches!(big.checked_mul(big), Err(Error::Overflow(_))));
        assert!(matches!(
            r(i128::MAX, 0).checked_add(r(1, 0)),
            Err(Error::Overflow(_))
        ));
        let huge = r(i128::MAX / 2, -(i128::MAX / 4));
        assert!(matches!(huge.signum(), Err(Error::Overflow(_))));
    }

    #[test]
    #[should_panic(expected = "integer overflow")]
    fn operators_halt_on_overflow() {
        let _ = r(i128::MAX, 0) + r(1, 0);
    }

    #[test]
    fn rendering() {
        assert_eq!(r(1, 2).to_string(), "1+2√3");
        assert_eq!(r(5, -3).to_string(), "5-3√3");
        let q = Rt3Ratio::new(r(1, 1), r(2, 0)).unwrap();
        assert_eq!(q.to_string(), "(1+1√3)/(2+0√3)");
    }

    #[test]
    fn sign_matches_float_on_random_operands() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100_000 {
            let a = rng.gen_range(-1_000_000i128..=1_000_000);
            let b = rng.gen_range(-1_000_000i128..=1_000_000);
            let x = r(a, b);
            let f = a as f64 + b as f64 * 3f64.sqrt();
            let expected = if f > 0.0 {
                1
            } else if f < 0.0 {
                -1
            } else {
                0
            };
            // The nearest non-zero value of |a + b√3| at this magnitude is far
            // above f64 rounding error, so the float sign is trustworthy.
            assert_eq!(x.signum().unwrap(), expected, "{x}");
        }
    }

    fn small() -> impl Strategy<Value = Rt3Num> {
        (-10_000i128..10_000, -10_000i128..10_000).prop_map(|(a, b)| r(a, b))
    }

    // Reference model: evaluate in the polynomial ring ℤ[x]/(x² − 3) with
    // plain wide integers.
    fn reference_mul(x: Rt3Num, y: Rt3Num) -> (i128, i128) {
        let c0 = x.whole * y.whole;
        let c1 = x.whole * y.rt3 + x.rt3 * y.whole;
        let c2 = x.rt3 * y.rt3;
        (c0 + 3 * c2, c1)
    }

    proptest! {
        #[test]
        fn ring_axioms(x in small(), y in small(), z in small()) {
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x - x, Rt3Num::ZERO);
            prop_assert_eq!(x * Rt3Num::ONE, x);
            let m = x * y;
            prop_assert_eq!((m.whole, m.rt3), reference_mul(x, y));
        }

        #[test]
        fn sign_is_multiplicative(x in small(), y in small()) {
            prop_assert_eq!(
                x.signum().unwrap() * y.signum().unwrap(),
                (x * y).signum().unwrap()
            );
        }

        #[test]
        fn ratio_order_is_total(
            a in small(), b in small(), c in small(),
            da in 1i128..500, db in 1i128..500, dc in 1i128..500,
            ra in 0i128..50,
        ) {
            let x = Rt3Ratio::new(a, r(da, ra)).unwrap();
            let y = Rt3Ratio::new(b, r(db, 0)).unwrap();
            let z = Rt3Ratio::new(c, r(dc, 1)).unwrap();
            prop_assert_eq!(cmp_ratio(&x, &y), cmp_ratio(&y, &x).reverse());
            if cmp_ratio(&x, &y) != Ordering::Greater && cmp_ratio(&y, &z) != Ordering::Greater {
                prop_assert_ne!(cmp_ratio(&x, &z), Ordering::Greater);
            }
            let fx = x.to_f64();
            let fy = y.to_f64();
            if (fx - fy).abs() > 1e-9 * (1.0 + fx.abs()) {
                prop_assert_eq!(cmp_ratio(&x, &y), fx.partial_cmp(&fy).unwrap());
            }
        }
    }
}
