//! Extremal trapezoid distances per separation class and the inequalities
//! built from them.
//!
//! All distances are squared and in scaled units (order-0 base 6). For a
//! class `c`, the minimum is taken over pairs of order-0 chain trapezoids at
//! offsets `c` and `c + 1`, the maximum likewise. Those pairs depend only on
//! the `c + 2` symbols they span, so scanning every start up to `I(c + 2)`
//! and scanning one start per distinct window give the same extrema.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Limits, Result};
use crate::exact::{Rt3Num, Rt3Ratio};
use crate::geometry::{max_dist_sq, min_dist_sq, trapezoid_chain, PlanePoint, Trapezoid};
use crate::subword::{first_occurrences, SubwordIndexer};
use crate::walk::{perp_norm_sq, walk_of};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanMode {
    /// Every start `0 ..= I(c + 2)`.
    Prefix,
    /// One start per distinct window of `c + 2` symbols.
    #[default]
    DistinctWindows,
}

/// A chain pair: trapezoids `k` and `k + offset` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub k: usize,
    pub offset: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceExtrema {
    pub c: usize,
    pub ell_sq: Rt3Ratio,
    pub h_sq: Rt3Num,
    pub ell_witness: PairWitness,
    pub h_witness: PairWitness,
    /// `I(c + 2)`.
    pub scan_limit: usize,
    pub starts_scanned: usize,
}

/// Computes [`DistanceExtrema`] for successive classes, sharing the fixed
/// point prefix and the chain geometry.
pub struct ExtremaScanner {
    indexer: SubwordIndexer,
    mode: ScanMode,
    scale: i64,
    chain: Vec<Trapezoid>,
}

impl ExtremaScanner {
    pub fn new(mode: ScanMode, limits: Limits) -> ExtremaScanner {
        ExtremaScanner {
            indexer: SubwordIndexer::new(limits),
            mode,
            scale: 1,
            chain: Vec::new(),
        }
    }

    /// Uniformly scales every trapezoid; ratios are unaffected.
    pub fn with_scale(mut self, scale: i64) -> ExtremaScanner {
        assert!(scale > 0);
        self.scale = scale;
        self
    }

    fn ensure_chain(&mut self, len: usize) -> Result<()> {
        if self.chain.len() < len {
            let lambda = self.indexer.prefix(len)?;
            let mut chain = trapezoid_chain(lambda, PlanePoint::ORIGIN);
            if self.scale != 1 {
                let s = self.scale;
                for t in &mut chain {
                    t.vertices = t.vertices.map(|v| v.scale(s));
                }
            }
            self.chain = chain;
        }
        Ok(())
    }

    fn starts(&mut self, c: usize, limit: usize) -> Result<Vec<usize>> {
        match self.mode {
            ScanMode::Prefix => Ok((0..=limit).collect()),
            ScanMode::DistinctWindows => {
                let lambda = self.indexer.prefix(limit + c + 2)?;
                Ok(first_occurrences(lambda.as_slice(), c + 2, limit))
            }
        }
    }

    pub fn compute(&mut self, c: usize) -> Result<DistanceExtrema> {
        self.compute_with_limit(c, None)
    }

    /// As [`compute`](Self::compute) with the scan limit replaced (used to
    /// confirm that enlarging it changes nothing).
    pub fn compute_with_limit(&mut self, c: usize, limit: Option<usize>) -> Result<DistanceExtrema> {
        if c == 0 {
            return Err(Error::InvalidArgument("separation class must be positive".into()));
        }
        let scan_limit = self.indexer.index_of_last_new_subword(c + 2)?.index;
        let limit = limit.unwrap_or(scan_limit);
        let starts = self.starts(c, limit)?;
        self.ensure_chain(limit + c + 2)?;
        let chain = &self.chain;

        type Best = Option<(Rt3Ratio, PairWitness, Rt3Num, PairWitness)>;
        let merge = |a: Result<Best>, b: Result<Best>| -> Result<Best> {
            let (a, b) = (a?, b?);
            Ok(match (a, b) {
                (None, x) | (x, None) => x,
                (Some(a), Some(b)) => {
                    let lo = match a.0.cmp_exact(&b.0)? {
                        Ordering::Greater => (b.0, b.1),
                        Ordering::Equal if b.1.k < a.1.k => (b.0, b.1),
                        _ => (a.0, a.1),
                    };
                    let hi = match a.2.cmp_exact(b.2)? {
                        Ordering::Less => (b.2, b.3),
                        Ordering::Equal if b.3.k < a.3.k => (b.2, b.3),
                        _ => (a.2, a.3),
                    };
                    Some((lo.0, lo.1, hi.0, hi.1))
                }
            })
        };
        let best = starts
            .par_iter()
            .map(|&k| -> Result<Best> {
                let mut acc: Result<Best> = Ok(None);
                for offset in [c, c + 1] {
                    let (t1, t2) = (&chain[k], &chain[k + offset]);
                    let w = PairWitness { k, offset };
                    let one = Some((min_dist_sq(t1, t2)?, w, max_dist_sq(t1, t2)?, w));
                    acc = merge(acc, Ok(one));
                }
                acc
            })
            .reduce(|| Ok(None), merge)?
            .expect("at least one start");
        Ok(DistanceExtrema {
            c,
            ell_sq: best.0,
            ell_witness: best.1,
            h_sq: best.2,
            h_witness: best.3,
            scan_limit,
            starts_scanned: starts.len(),
        })
    }

    /// Recomputes the distances at the stored witnesses.
    pub fn reevaluate(&mut self, e: &DistanceExtrema) -> Result<(Rt3Ratio, Rt3Num)> {
        let need = e.ell_witness.k.max(e.h_witness.k) + e.c + 2;
        self.ensure_chain(need)?;
        let pair = |w: PairWitness| (&self.chain[w.k], &self.chain[w.k + w.offset]);
        let (a, b) = pair(e.ell_witness);
        let lo = min_dist_sq(a, b)?;
        let (a, b) = pair(e.h_witness);
        Ok((lo, max_dist_sq(a, b)?))
    }
}

pub fn compute_extrema(c: usize) -> Result<DistanceExtrema> {
    ExtremaScanner::new(ScanMode::default(), Limits::default()).compute(c)
}

fn int(v: i128) -> Rt3Num {
    Rt3Num::integer(v)
}

fn ratio(num: Rt3Num, den: Rt3Num) -> Result<Rt3Ratio> {
    Rt3Ratio::new(num, den)
}

fn square(x: Rt3Num) -> Result<Rt3Num> {
    x.checked_mul(x)
}

/// Report of the combined ratio `(c+1)·h(d) / (d·ℓ(c))`, maximized
/// independently over `c` and `d` in the range, compared on squares.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatioReport {
    pub lo: usize,
    pub hi: usize,
    pub bound: Rt3Num,
    /// Maximizer of `(c+1)² / ℓ(c)²`.
    pub c: usize,
    /// Maximizer of `h(d)² / d²`.
    pub d: usize,
    pub ell_sq: Rt3Ratio,
    pub h_sq: Rt3Num,
    /// `(c+1)²·h(d)² / (d²·ℓ(c)²)`.
    pub value_sq: Rt3Ratio,
    pub approx: f64,
    pub holds: bool,
    pub extrema: Vec<DistanceExtrema>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaxDistanceReport {
    pub lo: usize,
    pub hi: usize,
    pub bound: Rt3Num,
    pub d: usize,
    pub h_sq: Rt3Num,
    /// `h(d)² / d²`.
    pub value_sq: Rt3Ratio,
    pub approx: f64,
    pub holds: bool,
    pub extrema: Vec<DistanceExtrema>,
}

pub(crate) fn check_range(lo: usize, hi: usize) -> Result<()> {
    if lo < 7 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "class range [{lo}, {hi}] must satisfy 7 ≤ lo ≤ hi"
        )));
    }
    Ok(())
}

fn check_bound(bound: Rt3Num) -> Result<()> {
    if bound.signum()? <= 0 {
        return Err(Error::InvalidArgument(format!("bound {bound} must be positive")));
    }
    Ok(())
}

pub fn extrema_range(scanner: &mut ExtremaScanner, lo: usize, hi: usize) -> Result<Vec<DistanceExtrema>> {
    (lo..=hi).map(|c| scanner.compute(c)).collect()
}

fn max_h_over_d(extrema: &[DistanceExtrema]) -> Result<(usize, Rt3Ratio)> {
    let mut best: Option<(usize, Rt3Ratio)> = None;
    for e in extrema {
        let v = ratio(e.h_sq, int((e.c * e.c) as i128))?;
        if best.as_ref().map_or(Ok(true), |b| v.cmp_exact(&b.1).map(Ordering::is_gt))? {
            best = Some((e.c, v));
        }
    }
    Ok(best.expect("nonempty range"))
}

pub fn ratio_report(extrema: Vec<DistanceExtrema>, bound: Rt3Num) -> Result<RatioReport> {
    check_bound(bound)?;
    let (lo, hi) = (extrema[0].c, extrema.last().unwrap().c);
    let mut best_c: Option<(usize, Rt3Ratio)> = None;
    for e in &extrema {
        if e.ell_sq.num.signum()? <= 0 {
            return Err(Error::Degenerate("trapezoids in a separation class touch"));
        }
        let n = int(((e.c + 1) * (e.c + 1)) as i128);
        let v = ratio(n.checked_mul(e.ell_sq.den)?, e.ell_sq.num)?;
        if best_c.as_ref().map_or(Ok(true), |b| v.cmp_exact(&b.1).map(Ordering::is_gt))? {
            best_c = Some((e.c, v));
        }
    }
    let (c, vc) = best_c.unwrap();
    let (d, vd) = max_h_over_d(&extrema)?;
    let value_sq = vc.checked_mul(&vd)?;
    let holds = value_sq
        .cmp_exact(&Rt3Ratio::from_num(square(bound)?))?
        .is_lt();
    let at = |x: usize| extrema.iter().find(|e| e.c == x).unwrap();
    Ok(RatioReport {
        lo,
        hi,
        bound,
        c,
        d,
        ell_sq: at(c).ell_sq,
        h_sq: at(d).h_sq,
        approx: value_sq.to_f64().sqrt(),
        value_sq,
        holds,
        extrema,
    })
}

pub fn max_distance_report(extrema: Vec<DistanceExtrema>, bound: Rt3Num) -> Result<MaxDistanceReport> {
    check_bound(bound)?;
    let (lo, hi) = (extrema[0].c, extrema.last().unwrap().c);
    let (d, value_sq) = max_h_over_d(&extrema)?;
    let holds = value_sq
        .cmp_exact(&Rt3Ratio::from_num(square(bound)?))?
        .is_le();
    let h_sq = extrema.iter().find(|e| e.c == d).unwrap().h_sq;
    Ok(MaxDistanceReport {
        lo,
        hi,
        bound,
        d,
        h_sq,
        approx: value_sq.to_f64().sqrt(),
        value_sq,
        holds,
        extrema,
    })
}

/// Asserts `max_c (c+1)²/ℓ(c)² · max_d h(d)²/d² < bound²` over `[lo, hi]`.
pub fn assert_ratio_bounded(lo: usize, hi: usize, bound: Rt3Num) -> Result<RatioReport> {
    check_range(lo, hi)?;
    check_bound(bound)?;
    let mut scanner = ExtremaScanner::new(ScanMode::default(), Limits::default());
    ratio_report(extrema_range(&mut scanner, lo, hi)?, bound)
}

/// Asserts `max_d h(d)²/d² ≤ bound²` over `[lo, hi]`.
pub fn assert_max_distance(lo: usize, hi: usize, bound: Rt3Num) -> Result<MaxDistanceReport> {
    check_range(lo, hi)?;
    check_bound(bound)?;
    let mut scanner = ExtremaScanner::new(ScanMode::default(), Limits::default());
    max_distance_report(extrema_range(&mut scanner, lo, hi)?, bound)
}

/// `(7/4)^k` squared, as an exact ratio.
pub fn seven_quarters_sq(k: u32) -> Rt3Ratio {
    Rt3Ratio::new(int(7i128.pow(2 * k)), int(4i128.pow(2 * k))).expect("positive denominator")
}

/// The chain of inequalities closing the smallest-order case: the computed
/// maximum scaled by `5·4/6` stays below 14.89, as does the asserted bound
/// scaled the same way, and 14.89 stays below `(7/4)^5`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmallOrderChain {
    /// `(20/6)² · h(d)²/d²` at the maximizing `d`.
    pub computed_sq: Rt3Ratio,
    /// `(20/6)² · bound²`.
    pub bound_sq: Rt3Ratio,
    pub threshold_sq: Rt3Ratio,
    pub gap_sq: Rt3Ratio,
    pub computed_below_threshold: bool,
    pub bound_below_threshold: bool,
    pub threshold_below_gap: bool,
}

impl SmallOrderChain {
    pub fn holds(&self) -> bool {
        self.computed_below_threshold && self.bound_below_threshold && self.threshold_below_gap
    }
}

pub fn small_order_chain(report: &MaxDistanceReport) -> Result<SmallOrderChain> {
    let factor = Rt3Ratio::new(int(400), int(36))?;
    let computed_sq = report.value_sq.checked_mul(&factor)?;
    let bound_sq = Rt3Ratio::from_num(square(report.bound)?).checked_mul(&factor)?;
    let threshold_sq = Rt3Ratio::new(int(1489 * 1489), int(100 * 100))?;
    let gap_sq = seven_quarters_sq(5);
    Ok(SmallOrderChain {
        computed_below_threshold: computed_sq.cmp_exact(&threshold_sq)?.is_lt(),
        bound_below_threshold: bound_sq.cmp_exact(&threshold_sq)?.is_lt(),
        threshold_below_gap: threshold_sq.cmp_exact(&gap_sq)?.is_lt(),
        computed_sq,
        bound_sq,
        threshold_sq,
        gap_sq,
    })
}

/// Extrema of the squared perpendicular norm over displacements spanning
/// exactly `c` steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order0Extrema {
    pub c: usize,
    pub min_q: i128,
    pub max_q: i128,
}

pub fn order0_extrema_with(indexer: &mut SubwordIndexer, c: usize) -> Result<Order0Extrema> {
    if !(1..=6).contains(&c) {
        return Err(Error::InvalidArgument(format!("class {c} outside 1..=6")));
    }
    let starts = indexer.distinct_subword_starts(c + 1)?;
    let lambda = indexer.prefix(starts.last().unwrap() + c + 1)?;
    let mut lo = i128::MAX;
    let mut hi = i128::MIN;
    for s in starts {
        let z = walk_of(&lambda[s - 1..s - 1 + c]);
        let q = perp_norm_sq(z[c])?.0;
        lo = lo.min(q);
        hi = hi.max(q);
    }
    Ok(Order0Extrema { c, min_q: lo, max_q: hi })
}

pub fn order0_extrema(c: usize) -> Result<Order0Extrema> {
    order0_extrema_with(&mut SubwordIndexer::default(), c)
}
