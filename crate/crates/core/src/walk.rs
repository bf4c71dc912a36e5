//! The 3D walk `z_p`, its norms, canonical lattice lines, and maximum
//! collinear point counts over index ranges.
//!
//! Walk indices are 0-based: `z_0` is the origin and `z_p - z_{p-1}` is the
//! step of the p-th symbol of the fixed point.

use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Limits, Result};
use crate::sequence::{lambda_prefix_with, Symbol};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Point3 {
        Point3 { x, y, z }
    }

    pub fn from_coords(c: [i64; 3]) -> Point3 {
        Point3::new(c[0], c[1], c[2])
    }

    pub fn coords(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn checked_sub(self, o: Point3) -> Result<Point3> {
        let f = |a: i64, b: i64| a.checked_sub(b).ok_or(Error::Overflow("point difference"));
        Ok(Point3::new(f(self.x, o.x)?, f(self.y, o.y)?, f(self.z, o.z)?))
    }

    pub fn checked_add(self, o: Point3) -> Result<Point3> {
        let f = |a: i64, b: i64| a.checked_add(b).ok_or(Error::Overflow("point sum"));
        Ok(Point3::new(f(self.x, o.x)?, f(self.y, o.y)?, f(self.z, o.z)?))
    }

    /// Coordinate sum, the component along (1,1,1) up to a constant.
    pub fn parallel_norm(self) -> i64 {
        self.x + self.y + self.z
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Walk points `z_0 ..= z_n` (n + 1 points).
pub fn walk_prefix(n: usize) -> Result<Vec<Point3>> {
    walk_prefix_with(n, &Limits::default())
}

pub fn walk_prefix_with(n: usize, limits: &Limits) -> Result<Vec<Point3>> {
    limits.check("walk points", (n as u64 + 1).saturating_mul(24))?;
    let word = lambda_prefix_with(n, limits)?;
    Ok(walk_of(&word))
}

/// Partial sums of the steps of `word`, starting at the origin.
pub fn walk_of(word: &[Symbol]) -> Vec<Point3> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut cur = [0i64; 3];
    out.push(Point3::ORIGIN);
    for s in word {
        cur[s.step() as usize] += 1;
        out.push(Point3::from_coords(cur));
    }
    out
}

/// Squared perpendicular norm `x² + y² + z² − xy − yz − zx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PerpNormSq(pub i128);

pub fn perp_norm_sq(v: Point3) -> Result<PerpNormSq> {
    let of = || Error::Overflow("perpendicular norm");
    let (x, y, z) = (v.x as i128, v.y as i128, v.z as i128);
    let sq = |a: i128| a.checked_mul(a).ok_or_else(of);
    let mul = |a: i128, b: i128| a.checked_mul(b).ok_or_else(of);
    let pos = sq(x)?
        .checked_add(sq(y)?)
        .and_then(|s| s.checked_add(sq(z).ok()?))
        .ok_or_else(of)?;
    let neg = mul(x, y)?
        .checked_add(mul(y, z)?)
        .and_then(|s| s.checked_add(mul(z, x).ok()?))
        .ok_or_else(of)?;
    Ok(PerpNormSq(pos.checked_sub(neg).ok_or_else(of)?))
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The infinite line through two lattice points: primitive direction with
/// first nonzero component positive, and the lattice point on the line whose
/// coordinate at that component lies in `[0, dir)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalLine {
    pub dir: [i64; 3],
    pub base: [i64; 3],
}

impl CanonicalLine {
    /// True if `r` lies on the line, i.e. `(r − base) × dir = 0`.
    pub fn contains(&self, r: Point3) -> Result<bool> {
        let of = || Error::Overflow("point-on-line test");
        let d = r.checked_sub(Point3::from_coords(self.base))?.coords();
        let v = self.dir;
        for (i, j) in [(1, 2), (2, 0), (0, 1)] {
            let a = (d[i] as i128).checked_mul(v[j] as i128).ok_or_else(of)?;
            let b = (d[j] as i128).checked_mul(v[i] as i128).ok_or_else(of)?;
            if a != b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for CanonicalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.base;
        let [x, y, z] = self.dir;
        write!(f, "({a}, {b}, {c}) + t·({x}, {y}, {z})")
    }
}

pub fn canonical_line(p: Point3, q: Point3) -> Result<CanonicalLine> {
    if p == q {
        return Err(Error::Degenerate("canonical line through a single point"));
    }
    let d = q.checked_sub(p)?.coords();
    let g = gcd(gcd(d[0], d[1]), d[2]);
    let mut dir = d.map(|c| c / g);
    let lead = dir.iter().position(|&c| c != 0).expect("nonzero direction");
    if dir[lead] < 0 {
        dir = dir.map(|c| -c);
    }
    let pc = p.coords();
    let t = pc[lead].div_euclid(dir[lead]);
    let mut base = [0i64; 3];
    for i in 0..3 {
        base[i] = t
            .checked_mul(dir[i])
            .and_then(|s| pc[i].checked_sub(s))
            .ok_or(Error::Overflow("canonical line base"))?;
    }
    Ok(CanonicalLine { dir, base })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollinearReport {
    pub max_points: usize,
    pub witness_line: Option<CanonicalLine>,
    /// Sorted walk indices of the points on the witness line.
    pub witness_indices: Vec<usize>,
}

impl CollinearReport {
    fn better_than(&self, o: &CollinearReport) -> bool {
        (self.max_points, std::cmp::Reverse(&self.witness_indices))
            > (o.max_points, std::cmp::Reverse(&o.witness_indices))
    }
}

const MERSENNE: u64 = (1 << 61) - 1;
/// Largest window the modular direction key is exact for: every cross
/// product `dx·s'` must stay below the modulus.
pub const MAX_WINDOW: usize = 1 << 30;

fn mulmod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & MERSENNE) + (x >> 61) as u64;
    let r = if r >= MERSENNE { r - MERSENNE } else { r };
    if r >= MERSENNE {
        r - MERSENNE
    } else {
        r
    }
}

/// Inverses of `1..=n` modulo the Mersenne prime `2^61 − 1`.
fn inverses(n: usize) -> Vec<u64> {
    let mut inv = vec![0u64; n + 1];
    if n >= 1 {
        inv[1] = 1;
    }
    for i in 2..=n {
        let i64_ = i as u64;
        let k = MERSENNE / i64_;
        inv[i] = mulmod(MERSENNE - k, inv[(MERSENNE % i64_) as usize]);
    }
    inv
}

/// Direction of `z_q − z_p` keyed by `(dx/s, dy/s) mod 2^61−1` where
/// `s = q − p` is the coordinate sum. Walk differences have nonnegative
/// components, so `dx·s' < 2^61 − 1` and equal keys mean equal directions.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct DirKey(u64, u64);

struct AnchorTable {
    slots: Vec<(DirKey, u32, u32)>,
    mask: usize,
    generation: u32,
}

impl AnchorTable {
    fn new(window: usize) -> AnchorTable {
        let size = (2 * window).next_power_of_two().max(16);
        AnchorTable {
            slots: vec![(DirKey::default(), 0, 0); size],
            mask: size - 1,
            generation: 0,
        }
    }

    fn reset(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.slots.fill((DirKey::default(), 0, 0));
            self.generation = 1;
        }
    }

    /// Increments the count for `key` and returns it.
    fn bump(&mut self, key: DirKey) -> u32 {
        let h = (key.0 ^ key.1.rotate_left(29)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut i = (h >> 32) as usize & self.mask;
        loop {
            let slot = &mut self.slots[i];
            if slot.1 != self.generation {
                *slot = (key, self.generation, 1);
                return 1;
            }
            if slot.0 == key {
                slot.2 += 1;
                return slot.2;
            }
            i = (i + 1) & self.mask;
        }
    }
}

fn dir_key(p: Point3, q: Point3, inv: &[u64]) -> DirKey {
    let s = (q.parallel_norm() - p.parallel_norm()) as usize;
    let inv_s = inv[s];
    DirKey(mulmod((q.x - p.x) as u64, inv_s), mulmod((q.y - p.y) as u64, inv_s))
}

fn check_range(points: &[Point3], start: usize, end: usize, window: usize) -> Result<()> {
    if start >= end {
        return Err(Error::InvalidArgument(format!("empty range [{start}, {end}]")));
    }
    if end >= points.len() {
        return Err(Error::InvalidArgument(format!(
            "range end {end} beyond {} walk points",
            points.len()
        )));
    }
    if window < 2 {
        return Err(Error::InvalidArgument("window must be at least 2".into()));
    }
    if window > MAX_WINDOW {
        return Err(Error::InvalidArgument(format!("window above {MAX_WINDOW}")));
    }
    Ok(())
}

/// Maximum number of collinear walk points among indices in `[start, end]`
/// whose index span is below `window`.
pub fn count_max_collinear(start: usize, end: usize, window: usize) -> Result<CollinearReport> {
    let points = walk_prefix(end)?;
    count_max_collinear_in(&points, start, end, window)
}

/// As [`count_max_collinear`] over precomputed walk points (indexed by walk
/// index).
///
/// Every anchor `p` counts, per direction, the points `q` with
/// `p < q < p + window`; the best anchor gives the smallest index of a
/// maximal collinear set.
pub fn count_max_collinear_in(
    points: &[Point3],
    start: usize,
    end: usize,
    window: usize,
) -> Result<CollinearReport> {
    check_range(points, start, end, window)?;
    for w in points[start..=end].windows(2) {
        if w[1].parallel_norm() != w[0].parallel_norm() + 1 {
            return Err(Error::InvalidArgument("points are not consecutive walk points".into()));
        }
    }
    let inv = inverses(window);
    let span = window.min(end - start + 1);
    const BLOCK: usize = 256;
    let anchors: Vec<usize> = (start..end).step_by(BLOCK).collect();
    let best = anchors
        .par_iter()
        .map_init(
            || AnchorTable::new(span),
            |table, &block| {
                let mut best = (1u32, block, DirKey::default());
                for p in block..(block + BLOCK).min(end) {
                    table.reset();
                    let zp = points[p];
                    let last = end.min(p + window - 1);
                    for zq in &points[p + 1..=last] {
                        let key = dir_key(zp, *zq, &inv);
                        let c = table.bump(key);
                        if c + 1 > best.0 {
                            best = (c + 1, p, key);
                        }
                    }
                }
                best
            },
        )
        .reduce(
            || (1u32, usize::MAX, DirKey::default()),
            |a, b| {
                if (a.0, std::cmp::Reverse(a.1)) >= (b.0, std::cmp::Reverse(b.1)) {
                    a
                } else {
                    b
                }
            },
        );
    let (count, p, key) = best;
    let mut indices = vec![p];
    let last = end.min(p + window - 1);
    for q in p + 1..=last {
        if dir_key(points[p], points[q], &inv) == key {
            indices.push(q);
        }
    }
    debug_assert_eq!(indices.len(), count as usize);
    let line = canonical_line(points[indices[0]], points[indices[1]])?;
    for &i in &indices {
        if !line.contains(points[i])? {
            return Err(Error::Degenerate("witness point off its line"));
        }
    }
    Ok(CollinearReport {
        max_points: indices.len(),
        witness_line: Some(line),
        witness_indices: indices,
    })
}

/// Integer `m` with `m(m−1)/2 = t`, if any.
pub fn points_from_pairs(t: u64) -> Option<u64> {
    let disc = 1 + 8 * t as u128;
    let r = (disc as f64).sqrt() as u128;
    let r = (r.saturating_sub(2)..=r + 2).find(|x| x * x == disc)?;
    Some(((1 + r) / 2) as u64)
}

/// Pair-counting formulation: every pair `p < q` in range with
/// `q − p < window` increments its canonical line, and point counts are
/// recovered from pair counts by triangular inversion. The inversion is only
/// meaningful when all pairs on a line are enumerated, so this requires
/// `end − start < window`.
pub fn count_max_collinear_pairs(
    points: &[Point3],
    start: usize,
    end: usize,
    window: usize,
) -> Result<CollinearReport> {
    check_range(points, start, end, window)?;
    if end - start >= window {
        return Err(Error::InvalidArgument(
            "pair counting needs the whole range inside one window".into(),
        ));
    }
    let mut counts: FxHashMap<CanonicalLine, u64> = FxHashMap::default();
    for p in start..end {
        for q in p + 1..=end {
            *counts.entry(canonical_line(points[p], points[q])?).or_insert(0) += 1;
        }
    }
    let mut best = CollinearReport {
        max_points: 1,
        witness_line: None,
        witness_indices: vec![start],
    };
    let mut lines: Vec<_> = counts.into_iter().collect();
    lines.sort_unstable();
    for (line, t) in lines {
        let m = points_from_pairs(t)
            .ok_or(Error::Degenerate("pair count is not triangular"))? as usize;
        if m < best.max_points {
            continue;
        }
        let mut indices = Vec::with_capacity(m);
        for i in start..=end {
            if line.contains(points[i])? {
                indices.push(i);
            }
        }
        let cand = CollinearReport {
            max_points: m,
            witness_line: Some(line),
            witness_indices: indices,
        };
        if cand.better_than(&best) {
            best = cand;
        }
    }
    Ok(best)
}

/// Overlapping chunks `[s, min(s + chunk, total)]` stepping by
/// `chunk − window + 1`, so every pair with `q − p < window` lies inside some
/// chunk.
pub fn chunk_plan(total: usize, window: usize, chunk: usize) -> Result<Vec<(usize, usize)>> {
    if window < 2 || chunk < 2 * window {
        return Err(Error::InvalidArgument(format!(
            "chunk {chunk} must be at least twice the window {window}"
        )));
    }
    let step = chunk - window + 1;
    let mut out = Vec::new();
    let mut s = 0;
    loop {
        let e = (s + chunk).min(total);
        out.push((s, e));
        if e == total {
            return Ok(out);
        }
        s += step;
    }
}

/// One line of a chunked run's JSONL output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkRecord {
    pub start: usize,
    pub end: usize,
    pub window: usize,
    pub max_points: usize,
    pub witness_indices: Vec<usize>,
}

impl ChunkRecord {
    pub fn from_report(start: usize, end: usize, window: usize, r: &CollinearReport) -> ChunkRecord {
        ChunkRecord {
            start,
            end,
            window,
            max_points: r.max_points,
            witness_indices: r.witness_indices.clone(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

pub fn parse_records(text: &str) -> Result<Vec<ChunkRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))
        })
        .collect()
}

/// Merged view of chunk records: the maximum, with the earliest witness on
/// ties, and the covered range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergedRecords {
    pub chunks: usize,
    pub start: usize,
    pub end: usize,
    pub window: usize,
    pub max_points: usize,
    pub witness_indices: Vec<usize>,
    /// True when the chunks leave no within-window pair uncovered.
    pub covered: bool,
}

pub fn merge_records(records: &[ChunkRecord]) -> Result<MergedRecords> {
    let first = records
        .first()
        .ok_or_else(|| Error::InvalidArgument("no chunk records to merge".into()))?;
    let window = first.window;
    if records.iter().any(|r| r.window != window) {
        return Err(Error::InvalidArgument("chunk records use different windows".into()));
    }
    let best = records
        .iter()
        .max_by(|a, b| {
            (a.max_points, std::cmp::Reverse(&a.witness_indices))
                .cmp(&(b.max_points, std::cmp::Reverse(&b.witness_indices)))
        })
        .unwrap();
    let mut spans: Vec<(usize, usize)> = records.iter().map(|r| (r.start, r.end)).collect();
    spans.sort_unstable();
    let mut covered = true;
    let mut reach = spans[0].1;
    for &(s, e) in &spans[1..] {
        // Pairs starting before `s` that end after `reach` are missed unless
        // the overlap is at least window − 1.
        if s > reach || (reach < e && reach - s + 1 < window.min(e - s + 1)) {
            covered = false;
        }
        reach = reach.max(e);
    }
    Ok(MergedRecords {
        chunks: records.len(),
        start: spans[0].0,
        end: reach,
        window,
        max_points: best.max_points,
        witness_indices: best.witness_indices.clone(),
        covered,
    })
}

/// Runs every chunk of the plan and returns one record per chunk.
pub fn run_chunks(
    points: &[Point3],
    plan: &[(usize, usize)],
    window: usize,
) -> Result<Vec<ChunkRecord>> {
    plan.par_iter()
        .map(|&(s, e)| {
            let r = count_max_collinear_in(points, s, e, window)?;
            Ok(ChunkRecord::from_report(s, e, window, &r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(points: &[Point3], start: usize, end: usize) -> usize {
        let mut best = 2;
        for p in start..=end {
            for q in p + 1..=end {
                let line = canonical_line(points[p], points[q]).unwrap();
                let n = (start..=end).filter(|&r| line.contains(points[r]).unwrap()).count();
                best = best.max(n);
            }
        }
        best
    }

    #[test]
    fn walk_examples() {
        let z = walk_prefix(200).unwrap();
        assert_eq!(z[0], Point3::ORIGIN);
        assert_eq!(z[1], Point3::new(1, 0, 0));
        assert_eq!(z[2], Point3::new(1, 1, 0));
        assert_eq!(z[109], Point3::new(46, 40, 23));
        assert_eq!(z[185], Point3::new(84, 59, 42));
    }

    #[test]
    fn perp_norm_examples() {
        assert_eq!(perp_norm_sq(Point3::new(1, 0, 0)).unwrap(), PerpNormSq(1));
        assert_eq!(perp_norm_sq(Point3::new(2, 2, 2)).unwrap(), PerpNormSq(0));
        assert_eq!(perp_norm_sq(Point3::new(4, 1, 0)).unwrap(), PerpNormSq(13));
        assert!(perp_norm_sq(Point3::new(i64::MAX, 0, 0)).is_ok());
    }

    #[test]
    fn canonical_line_examples() {
        let l = canonical_line(Point3::ORIGIN, Point3::new(2, 2, 2)).unwrap();
        assert_eq!(l, CanonicalLine { dir: [1, 1, 1], base: [0, 0, 0] });
        let l = canonical_line(Point3::new(1, 0, 0), Point3::new(3, 1, 0)).unwrap();
        assert_eq!(l, CanonicalLine { dir: [2, 1, 0], base: [1, 0, 0] });
        let a = canonical_line(Point3::new(46, 40, 23), Point3::new(84, 59, 42)).unwrap();
        let b = canonical_line(Point3::new(48, 41, 24), Point3::new(66, 50, 33)).unwrap();
        assert_eq!(a, b);
        assert!(canonical_line(Point3::ORIGIN, Point3::ORIGIN).is_err());
    }

    #[test]
    fn first_six_collinear_points() {
        let r = count_max_collinear(0, 200, 16807).unwrap();
        assert_eq!(r.max_points, 6);
        assert_eq!(r.witness_indices, vec![109, 113, 145, 149, 181, 185]);
        let z = walk_prefix(200).unwrap();
        let coords: Vec<_> = r.witness_indices.iter().map(|&i| z[i]).collect();
        assert_eq!(
            coords,
            vec![
                Point3::new(46, 40, 23),
                Point3::new(48, 41, 24),
                Point3::new(64, 49, 32),
                Point3::new(66, 50, 33),
                Point3::new(82, 58, 41),
                Point3::new(84, 59, 42),
            ]
        );
        let pairs = count_max_collinear_pairs(&z, 0, 200, 16807).unwrap();
        assert_eq!(pairs, r);
    }

    #[test]
    fn tiny_ranges() {
        assert_eq!(count_max_collinear(0, 3, 16807).unwrap().max_points, 2);
        assert_eq!(count_max_collinear(10, 11, 16807).unwrap().max_points, 2);
        assert!(count_max_collinear(5, 5, 10).is_err());
        assert!(count_max_collinear(0, 5, 1).is_err());
    }

    #[test]
    fn engines_agree_with_brute_force() {
        let z = walk_prefix(300).unwrap();
        for end in [2, 5, 13, 40, 99, 150, 230, 300] {
            let bf = brute_force(&z, 0, end);
            let anchor = count_max_collinear_in(&z, 0, end, 100_000).unwrap();
            let pairs = count_max_collinear_pairs(&z, 0, end, 100_000).unwrap();
            assert_eq!(anchor.max_points, bf, "end {end}");
            assert_eq!(pairs.max_points, bf, "end {end}");
        }
    }

    #[test]
    fn windowed_count_matches_sliding_brute_force() {
        let z = walk_prefix(160).unwrap();
        for window in [2, 3, 7, 20, 45] {
            let want = (0..=160 - (window - 1))
                .map(|s| brute_force(&z, s, s + window - 1))
                .max()
                .unwrap();
            let got = count_max_collinear_in(&z, 0, 160, window).unwrap();
            assert_eq!(got.max_points, want, "window {window}");
            let w = &got.witness_indices;
            assert!(w.last().unwrap() - w[0] < window);
        }
    }

    #[test]
    fn parallel_norm_law() {
        let z = walk_prefix(10_000).unwrap();
        for (p, zp) in z.iter().enumerate() {
            assert_eq!(zp.parallel_norm(), p as i64);
            assert!(zp.x >= 0 && zp.y >= 0 && zp.z >= 0);
        }
        for p in (0..10_000).step_by(37) {
            for q in (p + 1..=10_000).step_by(53) {
                assert_eq!(z[q].checked_sub(z[p]).unwrap().parallel_norm(), (q - p) as i64);
            }
        }
    }

    #[test]
    fn chunk_plan_examples() {
        let plan = chunk_plan(100, 10, 20).unwrap();
        let starts: Vec<_> = plan.iter().map(|c| c.0).collect();
        assert_eq!(starts, vec![0, 11, 22, 33, 44, 55, 66, 77, 88]);
        assert_eq!(plan.last().unwrap().1, 100);
        for p in 0..100 {
            for q in p + 1..(p + 10).min(101) {
                assert!(plan.iter().any(|&(s, e)| s <= p && q <= e), "{p} {q}");
            }
        }
        assert_eq!(chunk_plan(50, 50, 100).unwrap(), vec![(0, 50)]);
        assert!(chunk_plan(100, 10, 19).is_err());
    }

    #[test]
    fn chunked_equals_unchunked() {
        let z = walk_prefix(3000).unwrap();
        let whole = count_max_collinear_in(&z, 0, 3000, 200).unwrap();
        let plan = chunk_plan(3000, 200, 450).unwrap();
        let records = run_chunks(&z, &plan, 200).unwrap();
        let text: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
        let merged = merge_records(&parse_records(&text).unwrap()).unwrap();
        assert!(merged.covered);
        assert_eq!((merged.start, merged.end), (0, 3000));
        assert_eq!(merged.max_points, whole.max_points);
        assert_eq!(merged.witness_indices, whole.witness_indices);
    }

    #[test]
    fn merge_flags_gaps() {
        let rec = |start, end| ChunkRecord {
            start,
            end,
            window: 10,
            max_points: 3,
            witness_indices: vec![start],
        };
        assert!(merge_records(&[rec(0, 30), rec(21, 50)]).unwrap().covered);
        assert!(!merge_records(&[rec(0, 30), rec(25, 50)]).unwrap().covered);
        assert!(!merge_records(&[rec(0, 30), rec(40, 50)]).unwrap().covered);
        assert!(merge_records(&[]).is_err());
    }

    #[test]
    fn triangular_inversion() {
        for m in 1..2000u64 {
            assert_eq!(points_from_pairs(m * (m - 1) / 2), Some(m));
        }
        assert_eq!(points_from_pairs(2), None);
    }

    #[test]
    fn modular_inverses() {
        let inv = inverses(5000);
        for i in 1..=5000u64 {
            assert_eq!(mulmod(i, inv[i as usize]), 1);
        }
    }

    proptest! {
        #[test]
        fn canonical_line_is_pair_invariant(
            base in prop::array::uniform3(-1000i64..1000),
            dir in prop::array::uniform3(-20i64..20),
            ts in prop::collection::vec(-50i64..50, 4),
        ) {
            prop_assume!(dir != [0, 0, 0]);
            prop_assume!(ts[0] != ts[1] && ts[2] != ts[3]);
            let at = |t: i64| Point3::new(base[0] + t * dir[0], base[1] + t * dir[1], base[2] + t * dir[2]);
            let a = canonical_line(at(ts[0]), at(ts[1])).unwrap();
            let b = canonical_line(at(ts[3]), at(ts[2])).unwrap();
            prop_assert_eq!(a, b);
            prop_assert!(a.contains(at(17)).unwrap());
            let off = Point3::new(at(0).x + dir[1] - dir[2] + 1, at(0).y, at(0).z);
            let on_line = (off.checked_sub(at(0)).unwrap()).coords();
            let parallel = on_line[0] * dir[1] == on_line[1] * dir[0]
                && on_line[1] * dir[2] == on_line[2] * dir[1]
                && on_line[0] * dir[2] == on_line[2] * dir[0];
            prop_assert_eq!(a.contains(off).unwrap(), parallel);
        }
    }
}
