//! Maximum number of chain trapezoids, inside an index window, met by one
//! straight line.
//!
//! Every optimal line can be moved to pass through a vertex of a trapezoid
//! in the optimal window, so it suffices to rotate a line about each such
//! pivot vertex. Trapezoids enter and leave the rotating line at exact
//! angular events; a segment tree over window start positions keeps, for
//! every window containing the pivot's trapezoid, how many of its trapezoids
//! the line currently meets.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Limits, Result};
use crate::geometry::{orientation_offsets, project_step, PlanePoint, Trapezoid};
use crate::sequence::{orientations_to_string, psi, Orientation};
use crate::subword::SubwordIndexer;

/// An orientation sequence whose first element is `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizedSequence(pub Vec<Orientation>);

impl fmt::Display for NormalizedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&orientations_to_string(&self.0))
    }
}

/// Left-composes every element with the inverse of the first one using the
/// orientation Cayley table.
pub fn normalize(seq: &[Orientation]) -> NormalizedSequence {
    let g = seq.first().map_or(Orientation::A, |o| o.inverse());
    NormalizedSequence(seq.iter().map(|o| g.compose(*o)).collect())
}

/// Applies the plane symmetry carrying the first trapezoid to orientation
/// `a`. Unlike [`normalize`], this maps every chain to a congruent chain.
pub fn normalize_geometric(seq: &[Orientation]) -> NormalizedSequence {
    let g = seq.first().map_or(Orientation::A, |o| o.symmetry_inverse());
    NormalizedSequence(seq.iter().map(|o| g.then_apply(*o)).collect())
}

/// Which group acts when collapsing equivalent sequences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Rotations and reflections of the plane.
    #[default]
    Geometric,
    /// The orientation Cayley table.
    Table,
    /// No collapsing.
    None,
}

impl Normalization {
    fn element(self, first: Orientation) -> Orientation {
        match self {
            Normalization::Geometric => first.symmetry_inverse(),
            Normalization::Table => first.inverse(),
            Normalization::None => Orientation::A,
        }
    }

    fn apply(self, g: Orientation, o: Orientation) -> Orientation {
        match self {
            Normalization::Geometric => g.then_apply(o),
            Normalization::Table => g.compose(o),
            Normalization::None => o,
        }
    }
}

/// What rotates about the pivot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepShape {
    /// A full line through the pivot (directions modulo π).
    #[default]
    Line,
    /// A half-line starting at the pivot (directions modulo 2π).
    Ray,
}

/// How a window size bounds the indices of counted trapezoids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowRule {
    /// At most `window` consecutive indices: `last − first ≤ window − 1`.
    Consecutive,
    /// `last − first ≤ window`, so a window spans `window + 1` indices and a
    /// pivot's context holds `2·window + 1` trapezoids.
    #[default]
    Separation,
}

impl WindowRule {
    /// Number of indices a window spans.
    pub fn span(self, window: usize) -> usize {
        match self {
            WindowRule::Consecutive => window,
            WindowRule::Separation => window + 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub shape: SweepShape,
    pub rule: WindowRule,
    pub normalization: Normalization,
}

/// Segment tree over window start positions with range add and global max.
#[derive(Clone, Debug)]
pub struct WindowTree {
    leaves: usize,
    max: Vec<i32>,
    pending: Vec<i32>,
}

impl WindowTree {
    pub fn new(leaves: usize) -> WindowTree {
        let leaves = leaves.max(1);
        let size = 2 * leaves.next_power_of_two();
        WindowTree {
            leaves,
            max: vec![0; size],
            pending: vec![0; size],
        }
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn reset(&mut self, leaves: usize) {
        if leaves.max(1).next_power_of_two() * 2 != self.max.len() {
            *self = WindowTree::new(leaves);
        } else {
            self.leaves = leaves.max(1);
            self.max.fill(0);
            self.pending.fill(0);
        }
    }

    /// Adds `v` to every leaf in `lo ..= hi`.
    pub fn add(&mut self, lo: usize, hi: usize, v: i32) {
        debug_assert!(lo <= hi && hi < self.leaves);
        let width = self.max.len() / 2;
        self.add_rec(1, 0, width - 1, lo, hi, v);
    }

    fn add_rec(&mut self, node: usize, l: usize, r: usize, lo: usize, hi: usize, v: i32) {
        if hi < l || r < lo {
            return;
        }
        if lo <= l && r <= hi {
            self.max[node] += v;
            self.pending[node] += v;
            return;
        }
        let mid = (l + r) / 2;
        self.add_rec(2 * node, l, mid, lo, hi, v);
        self.add_rec(2 * node + 1, mid + 1, r, lo, hi, v);
        self.max[node] = self.pending[node] + self.max[2 * node].max(self.max[2 * node + 1]);
    }

    /// Largest leaf value. Padding leaves past `leaves` are never touched and
    /// stay 0, which is harmless because counts are never negative.
    pub fn max(&self) -> i32 {
        self.max[1]
    }

    /// Smallest leaf attaining [`max`](Self::max).
    pub fn argmax(&self) -> usize {
        let mut node = 1;
        let mut want = self.max[1];
        let width = self.max.len() / 2;
        while node < width {
            want -= self.pending[node];
            node = if self.max[2 * node] == want { 2 * node } else { 2 * node + 1 };
        }
        node - width
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Enter,
    Exit,
}

/// A trapezoid starting or ceasing to meet the rotating line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEvent {
    pub trapezoid: usize,
    pub kind: EventKind,
    /// Direction from the pivot at which the event happens.
    pub angle_key: PlanePoint,
}

fn cross(u: PlanePoint, v: PlanePoint) -> i64 {
    u.x * v.y3 - u.y3 * v.x
}

fn upper(v: PlanePoint) -> bool {
    v.y3 > 0 || (v.y3 == 0 && v.x > 0)
}

/// Representative of the direction `±v` in the half-open upper half plane.
fn line_key(v: PlanePoint) -> PlanePoint {
    if upper(v) {
        v
    } else {
        PlanePoint::new(-v.x, -v.y3)
    }
}

/// Angular order starting at +x: for lines over `[0, π)`, for rays over
/// `[0, 2π)`.
fn angle_cmp(shape: SweepShape, u: PlanePoint, v: PlanePoint) -> Ordering {
    if shape == SweepShape::Ray {
        match (upper(u), upper(v)) {
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
    }
    0.cmp(&cross(u, v))
}

fn key(shape: SweepShape, v: PlanePoint) -> PlanePoint {
    match shape {
        SweepShape::Line => line_key(v),
        SweepShape::Ray => v,
    }
}

/// Closed point-in-trapezoid test in integer coordinates.
fn contains(t: &Trapezoid, p: PlanePoint) -> bool {
    t.contains(p)
}

/// True if the line (or ray) from `p` in direction `d` meets the closed
/// trapezoid. Independent of the sweep; used to verify witnesses and by the
/// brute-force counter.
pub fn stabs(shape: SweepShape, t: &Trapezoid, p: PlanePoint, d: PlanePoint) -> bool {
    let sides: Vec<i64> = t.vertices.iter().map(|v| cross(d, v.sub(p)).signum()).collect();
    if sides.iter().all(|&s| s > 0) || sides.iter().all(|&s| s < 0) {
        return false;
    }
    if shape == SweepShape::Line || contains(t, p) {
        return true;
    }
    // The line meets the trapezoid in a segment; the ray meets it iff some
    // boundary crossing lies at a nonnegative parameter along `d`.
    for i in 0..4 {
        let (a, b) = (t.vertices[i], t.vertices[(i + 1) % 4]);
        if sides[i] == 0 && d.x * (a.x - p.x) + 3 * d.y3 * (a.y3 - p.y3) >= 0 {
            return true;
        }
        if sides[i] * sides[(i + 1) % 4] < 0 {
            let e = b.sub(a);
            let num = cross(a.sub(p), e);
            let den = cross(d, e);
            if num.signum() * den.signum() >= 0 {
                return true;
            }
        }
    }
    false
}

/// Reusable buffers for one worker.
pub struct SweepScratch {
    tree: WindowTree,
    events: Vec<(PlanePoint, EventKind, usize)>,
}

impl Default for SweepScratch {
    fn default() -> Self {
        SweepScratch {
            tree: WindowTree::new(1),
            events: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotBest {
    pub count: usize,
    pub direction: PlanePoint,
    pub window_start: usize,
}

/// Rotates about `pivot` over trapezoids `traps[lo ..= hi]`, counting per
/// window of `span` indices whose start lies in `leaf_lo ..= leaf_hi`.
#[allow(clippy::too_many_arguments)]
pub fn pivot_sweep(
    shape: SweepShape,
    traps: &[Trapezoid],
    pivot: PlanePoint,
    lo: usize,
    hi: usize,
    leaf_lo: usize,
    leaf_hi: usize,
    span: usize,
    scratch: &mut SweepScratch,
) -> PivotBest {
    let leaves = leaf_hi - leaf_lo + 1;
    scratch.tree.reset(leaves);
    scratch.events.clear();
    let tree = &mut scratch.tree;
    let events = &mut scratch.events;
    let leaf_range = |i: usize| -> Option<(usize, usize)> {
        let a = (i + 1).saturating_sub(span).max(leaf_lo);
        let b = i.min(leaf_hi);
        (a <= b).then(|| (a - leaf_lo, b - leaf_lo))
    };
    for (i, t) in traps.iter().enumerate().take(hi + 1).skip(lo) {
        let Some((a, b)) = leaf_range(i) else { continue };
        if contains(t, pivot) {
            tree.add(a, b, 1);
            continue;
        }
        let v = t.vertices.map(|x| x.sub(pivot));
        let mut first = v[0];
        let mut last = v[0];
        for &w in &v[1..] {
            if cross(first, w) < 0 {
                first = w;
            }
            if cross(last, w) > 0 {
                last = w;
            }
        }
        let (enter, exit) = (key(shape, first), key(shape, last));
        if angle_cmp(shape, enter, exit) == Ordering::Greater {
            // The arc wraps past the initial direction.
            tree.add(a, b, 1);
        }
        events.push((enter, EventKind::Enter, i));
        events.push((exit, EventKind::Exit, i));
    }
    events.sort_unstable_by(|x, y| {
        angle_cmp(shape, x.0, y.0)
            .then_with(|| (x.1 == EventKind::Exit).cmp(&(y.1 == EventKind::Exit)))
            .then(x.2.cmp(&y.2))
    });
    let mut best = PivotBest {
        count: tree.max() as usize,
        direction: PlanePoint::new(1, 0),
        window_start: leaf_lo + tree.argmax(),
    };
    for &(dir, kind, i) in events.iter() {
        let (a, b) = leaf_range(i).expect("event trapezoid has a window");
        match kind {
            EventKind::Enter => {
                tree.add(a, b, 1);
                if tree.max() as usize > best.count {
                    best = PivotBest {
                        count: tree.max() as usize,
                        direction: dir,
                        window_start: leaf_lo + tree.argmax(),
                    };
                }
            }
            EventKind::Exit => tree.add(a, b, -1),
        }
    }
    best
}

/// Builds the order-0 chain of an orientation sequence from the origin.
pub fn chain_of(seq: &[Orientation]) -> Vec<Trapezoid> {
    let mut at = PlanePoint::ORIGIN;
    seq.iter()
        .enumerate()
        .map(|(m, o)| {
            let t = Trapezoid {
                vertices: orientation_offsets(*o).map(|v| at.add(v)),
                orientation: *o,
                seq_index: m,
            };
            at = at.add(project_step(o.step()));
            t
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBest {
    pub count: usize,
    pub pivot: PlanePoint,
    pub direction: PlanePoint,
    pub window_start: usize,
    /// Indices of the window's trapezoids met by the witness line.
    pub hit: Vec<usize>,
}

/// Trapezoids of `traps[s .. s + span]` met by the witness.
fn witness_hits(shape: SweepShape, traps: &[Trapezoid], s: usize, span: usize, p: PlanePoint, d: PlanePoint) -> Vec<usize> {
    (s..(s + span).min(traps.len()))
        .filter(|&i| stabs(shape, &traps[i], p, d))
        .collect()
}

/// Sweep over a whole chain: every distinct vertex is a pivot, windows of
/// `span` indices within the chain.
pub fn max_intersected_in_chain(seq: &[Orientation], window: usize, options: &SweepOptions) -> Result<ChainBest> {
    if window == 0 || seq.is_empty() {
        return Err(Error::InvalidArgument("window and sequence must be nonempty".into()));
    }
    let traps = chain_of(seq);
    let n = traps.len();
    let span = options.rule.span(window).min(n);
    let mut pivots: Vec<(PlanePoint, usize)> = traps
        .iter()
        .flat_map(|t| t.vertices.map(|v| (v, t.seq_index)))
        .collect();
    pivots.sort_unstable();
    pivots.dedup();
    let mut scratch = SweepScratch::default();
    let mut best: Option<ChainBest> = None;
    // One sweep per (vertex, owning trapezoid): windows must contain the
    // owner, and a vertex shared by distant trapezoids has several owners.
    for (p, t) in pivots {
        let leaf_lo = (t + 1).saturating_sub(span);
        let leaf_hi = t.min(n - span);
        let lo = leaf_lo;
        let hi = (leaf_hi + span - 1).min(n - 1);
        let r = pivot_sweep(options.shape, &traps, p, lo, hi, leaf_lo, leaf_hi, span, &mut scratch);
        if best.as_ref().map_or(true, |b| r.count > b.count) {
            best = Some(ChainBest {
                count: r.count,
                pivot: p,
                direction: r.direction,
                window_start: r.window_start,
                hit: Vec::new(),
            });
        }
    }
    let mut best = best.expect("chain has vertices");
    best.hit = witness_hits(options.shape, &traps, best.window_start, span, best.pivot, best.direction);
    if best.hit.len() != best.count {
        return Err(Error::Degenerate("sweep witness does not reproduce its count"));
    }
    Ok(best)
}

/// Reference count: every line through two distinct vertices of trapezoids
/// in a common window, counted against every window that can contain both.
pub fn brute_force_in_chain(seq: &[Orientation], window: usize, shape: SweepShape, rule: WindowRule) -> Result<usize> {
    if window == 0 || seq.is_empty() {
        return Err(Error::InvalidArgument("window and sequence must be nonempty".into()));
    }
    let traps = chain_of(seq);
    let n = traps.len();
    let span = rule.span(window).min(n);
    let mut best = 1;
    let mut hit = vec![false; n];
    for i in 0..n {
        for j in i..(i + span).min(n) {
            for p in traps[i].vertices {
                for q in traps[j].vertices {
                    if p == q {
                        continue;
                    }
                    // Windows containing both trapezoids.
                    let lo = (j + 1).saturating_sub(span);
                    let hi = i.min(n - span);
                    // Lines through a vertex pair; a ray needs both
                    // orientations from each endpoint.
                    let dirs: &[(PlanePoint, PlanePoint)] = match shape {
                        SweepShape::Line => &[(p, q.sub(p))],
                        SweepShape::Ray => &[(p, q.sub(p)), (p, p.sub(q)), (q, p.sub(q)), (q, q.sub(p))],
                    };
                    for &(from, d) in dirs {
                        for (k, h) in hit.iter_mut().enumerate().take(hi + span).skip(lo) {
                            *h = stabs(shape, &traps[k], from, d);
                        }
                        let mut count = hit[lo..lo + span].iter().filter(|&&h| h).count();
                        best = best.max(count);
                        for s in lo + 1..=hi {
                            count += hit[s + span - 1] as usize;
                            count -= hit[s - 1] as usize;
                            best = best.max(count);
                        }
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Brute-force count over the first `prefix` trapezoids of the fixed point.
pub fn brute_force_max_intersected(window: usize, prefix: usize) -> Result<usize> {
    let mut ix = SubwordIndexer::default();
    let seq = psi(ix.prefix(prefix)?.get(..prefix).unwrap_or_default());
    brute_force_in_chain(&seq, window, SweepShape::Line, WindowRule::Consecutive)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabbingWitness {
    /// Orientation letters of the normalized context.
    pub context: String,
    /// 1-based position in the fixed point of a raw occurrence of the context.
    pub context_start: usize,
    /// Index of the pivot's trapezoid inside the context.
    pub center: usize,
    pub pivot: PlanePoint,
    pub direction: PlanePoint,
    pub window_start: usize,
    /// Context indices of the trapezoids met by the witness line.
    pub hit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabbingReport {
    pub window: usize,
    pub max: usize,
    pub witness: StabbingWitness,
    pub options: SweepOptions,
    /// Distinct raw contexts (fixed-point windows around a pivot trapezoid).
    pub raw_contexts: usize,
    /// Contexts left after collapsing equivalent orientation sequences.
    pub contexts: usize,
}

/// Distinct orientation contexts of length `len`, collapsed under the chosen
/// normalization: `(1-based start, normalized sequence)`.
pub fn distinct_contexts(
    indexer: &mut SubwordIndexer,
    len: usize,
    normalization: Normalization,
) -> Result<(usize, Vec<(usize, Vec<Orientation>)>)> {
    let starts = indexer.distinct_subword_starts(len)?;
    let raw = starts.len();
    let lambda = indexer.prefix(starts.last().copied().unwrap_or(1) + len)?;
    let orient: Vec<Orientation> = psi(lambda);
    // Dedup by hash with exact confirmation; sequences are rebuilt on demand
    // so memory stays proportional to the number of contexts.
    let norm = |s: usize| -> Vec<Orientation> {
        let w = &orient[s - 1..s - 1 + len];
        let g = normalization.element(w[0]);
        w.iter().map(|o| normalization.apply(g, *o)).collect()
    };
    let hashes: Vec<u64> = starts
        .par_iter()
        .map(|&s| {
            let v = norm(s);
            let mut h: u64 = 0xcbf2_9ce4_8422_2325;
            for o in v {
                h = (h ^ o.index() as u64).wrapping_mul(0x0100_0000_01b3);
            }
            h
        })
        .collect();
    let mut buckets: FxHashMap<u64, Vec<usize>> = FxHashMap::default();
    let mut kept = Vec::new();
    for (&s, &h) in starts.iter().zip(&hashes) {
        let bucket = buckets.entry(h).or_default();
        let v = norm(s);
        if bucket.iter().all(|&t| norm(t) != v) {
            bucket.push(s);
            kept.push(s);
        }
    }
    Ok((raw, kept.into_iter().map(|s| (s, norm(s))).collect()))
}

/// Maximum number of trapezoids within one window met by a single line, over
/// every configuration occurring in the fixed point.
pub fn max_intersected(window: usize, options: &SweepOptions) -> Result<StabbingReport> {
    max_intersected_with(window, options, &Limits::default())
}

pub fn max_intersected_with(window: usize, options: &SweepOptions, limits: &Limits) -> Result<StabbingReport> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be at least 1".into()));
    }
    let span = options.rule.span(window);
    let len = 2 * span - 1;
    let center = span - 1;
    let mut indexer = SubwordIndexer::new(*limits);
    let (raw, contexts) = distinct_contexts(&mut indexer, len, options.normalization)?;
    let shape = options.shape;
    let best = contexts
        .par_iter()
        .map_init(SweepScratch::default, |scratch, (start, seq)| {
            let traps = chain_of(seq);
            let mut best: Option<(PivotBest, PlanePoint)> = None;
            for p in traps[center].vertices {
                let r = pivot_sweep(shape, &traps, p, 0, len - 1, 0, span - 1, span, scratch);
                if best.map_or(true, |b| r.count > b.0.count) {
                    best = Some((r, p));
                }
            }
            let (r, p) = best.unwrap();
            (r.count, std::cmp::Reverse(*start), r, p)
        })
        .max_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        .ok_or(Error::Degenerate("no contexts"))?;
    let (count, std::cmp::Reverse(start), r, pivot) = best;
    let seq = &contexts.iter().find(|c| c.0 == start).unwrap().1;
    let traps = chain_of(seq);
    let hit = witness_hits(shape, &traps, r.window_start, span, pivot, r.direction);
    if hit.len() != count {
        return Err(Error::Degenerate("sweep witness does not reproduce its count"));
    }
    Ok(StabbingReport {
        window,
        max: count,
        witness: StabbingWitness {
            context: orientations_to_string(seq),
            context_start: start,
            center,
            pivot,
            direction: r.direction,
            window_start: r.window_start,
            hit,
        },
        options: *options,
        raw_contexts: raw,
        contexts: contexts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{lambda_prefix, orientations_from_str};
    use rand::{Rng, SeedableRng};

    fn seq(s: &str) -> Vec<Orientation> {
        orientations_from_str(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&seq("daafaa")).to_string(), "aeedee");
        assert_eq!(normalize(&seq("aaaaaa")).to_string(), "aaaaaa");
        let lambda = lambda_prefix(2000).unwrap();
        let o = psi(&lambda);
        for w in o.windows(9).step_by(7) {
            let n = normalize(w);
            assert_eq!(n.0[0], Orientation::A);
            assert_eq!(normalize(&n.0), n);
            let g = normalize_geometric(w);
            assert_eq!(g.0[0], Orientation::A);
            assert_eq!(normalize_geometric(&g.0), g);
        }
    }

    #[test]
    fn geometric_normalization_is_a_congruence() {
        let lambda = lambda_prefix(500).unwrap();
        let o = psi(&lambda);
        for w in o.windows(12).step_by(5) {
            let a = chain_of(w);
            let b = chain_of(&normalize_geometric(w).0);
            let g = w[0].symmetry_inverse();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.vertices.map(|v| v.transform(g)), y.vertices);
            }
        }
    }

    #[test]
    fn window_tree_matches_naive_counters() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..70);
            let mut tree = WindowTree::new(n);
            let mut naive = vec![0i32; n];
            let mut live: Vec<(usize, usize)> = Vec::new();
            for _ in 0..200 {
                if live.is_empty() || rng.gen_bool(0.6) {
                    let a = rng.gen_range(0..n);
                    let b = rng.gen_range(a..n);
                    tree.add(a, b, 1);
                    naive[a..=b].iter_mut().for_each(|x| *x += 1);
                    live.push((a, b));
                } else {
                    let (a, b) = live.swap_remove(rng.gen_range(0..live.len()));
                    tree.add(a, b, -1);
                    naive[a..=b].iter_mut().for_each(|x| *x -= 1);
                }
                let m = *naive.iter().max().unwrap();
                assert_eq!(tree.max(), m);
                assert_eq!(tree.argmax(), naive.iter().position(|&x| x == m).unwrap());
            }
        }
    }

    #[test]
    fn tiny_windows() {
        let o = psi(&lambda_prefix(49).unwrap());
        let opts = SweepOptions { rule: WindowRule::Consecutive, ..SweepOptions::default() };
        assert_eq!(max_intersected_in_chain(&o, 1, &opts).unwrap().count, 1);
        assert_eq!(brute_force_max_intersected(1, 49).unwrap(), 1);
        assert_eq!(max_intersected(1, &opts).unwrap().max, 1);
        // Two neighbours share a vertex, so a separation of 1 gives 2.
        assert_eq!(max_intersected(1, &SweepOptions::default()).unwrap().max, 2);
        let o7 = &o[..7];
        assert_eq!(
            max_intersected_in_chain(o7, 2, &opts).unwrap().count,
            brute_force_in_chain(o7, 2, SweepShape::Line, WindowRule::Consecutive).unwrap()
        );
        assert_eq!(
            max_intersected_in_chain(&o, 7, &opts).unwrap().count,
            brute_force_max_intersected(7, 49).unwrap()
        );
    }

    #[test]
    fn stabbing_predicate() {
        let t = chain_of(&seq("a"))[0];
        let p = PlanePoint::new(-6, 0);
        assert!(stabs(SweepShape::Line, &t, p, PlanePoint::new(1, 0)));
        assert!(stabs(SweepShape::Ray, &t, p, PlanePoint::new(1, 0)));
        assert!(!stabs(SweepShape::Ray, &t, p, PlanePoint::new(-1, 0)));
        assert!(stabs(SweepShape::Line, &t, p, PlanePoint::new(-1, 0)));
        // Touching the top edge from above counts.
        assert!(stabs(SweepShape::Line, &t, PlanePoint::new(0, 1), PlanePoint::new(1, 0)));
        assert!(!stabs(SweepShape::Line, &t, PlanePoint::new(0, 2), PlanePoint::new(1, 0)));
    }

    fn random_cases(cases: usize, seed: u64, shape: SweepShape, rule: WindowRule) {
        let lambda = lambda_prefix(20_000).unwrap();
        let o = psi(&lambda);
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        for case in 0..cases {
            let len = rng.gen_range(1..=if case % 10 == 0 { 200 } else { 60 });
            let window = rng.gen_range(1..=20);
            let start = rng.gen_range(0..o.len() - len);
            let mut s = o[start..start + len].to_vec();
            if rng.gen_bool(0.2) {
                // Arbitrary sequences too, not only those in the fixed point.
                s.iter_mut().for_each(|x| *x = Orientation::ALL[rng.gen_range(0..6)]);
            }
            let opts = SweepOptions { shape, rule, normalization: Normalization::Geometric };
            let swept = max_intersected_in_chain(&s, window, &opts).unwrap().count;
            let brute = brute_force_in_chain(&s, window, shape, rule).unwrap();
            assert_eq!(swept, brute, "case {case}: start {start} len {len} window {window}");
        }
    }

    #[test]
    fn sweep_matches_brute_force() {
        random_cases(1000, 17, SweepShape::Line, WindowRule::Consecutive);
    }

    #[test]
    fn other_variants_match_brute_force() {
        random_cases(150, 5, SweepShape::Ray, WindowRule::Consecutive);
        random_cases(150, 6, SweepShape::Line, WindowRule::Separation);
    }

    #[test]
    fn normalization_preserves_counts() {
        let o = psi(&lambda_prefix(5000).unwrap());
        let opts = SweepOptions::default();
        for (i, w) in o.windows(30).step_by(331).enumerate() {
            let window = 3 + i % 9;
            let raw = max_intersected_in_chain(w, window, &opts).unwrap().count;
            let norm = max_intersected_in_chain(&normalize_geometric(w).0, window, &opts).unwrap().count;
            assert_eq!(raw, norm);
        }
    }

    #[test]
    fn context_sweep_matches_chain_sweep() {
        // Every window configuration appears inside a long enough prefix, so
        // the context search equals a chain sweep over that prefix.
        let o = psi(&lambda_prefix(30_000).unwrap());
        for window in [2, 3, 5, 8] {
            let ctx = max_intersected(window, &SweepOptions::default()).unwrap();
            let chain = max_intersected_in_chain(&o, window, &SweepOptions::default()).unwrap();
            assert_eq!(ctx.max, chain.count, "window {window}");
            assert_eq!(ctx.witness.hit.len(), ctx.max);
        }
    }
}
