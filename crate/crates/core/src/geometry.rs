//! Trapezoid chains in the plane perpendicular to (1,1,1).
//!
//! Plane points are stored as `(x, y3)` with true coordinates
//! `(x, y3·√3)`, scaled so a unit step has length 6. Squared distances are
//! then integers `Δx² + 3·Δy3²`, and every derived quantity lives in ℤ[√3].

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Number, Ratio, Rt3Num, Rt3Ratio};
use crate::sequence::{Orientation, StepVector, Symbol};
use crate::walk::Point3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: i64,
    /// Coefficient of √3 in the y-coordinate.
    pub y3: i64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0, y3: 0 };

    pub const fn new(x: i64, y3: i64) -> PlanePoint {
        PlanePoint { x, y3 }
    }

    pub fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y3 + o.y3)
    }

    pub fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y3 - o.y3)
    }

    pub fn scale(self, k: i64) -> PlanePoint {
        PlanePoint::new(self.x * k, self.y3 * k)
    }

    pub fn dist_sq(self, o: PlanePoint) -> i128 {
        let d = self.sub(o);
        let (x, y) = (d.x as i128, d.y3 as i128);
        x * x + 3 * y * y
    }

    /// Rotation by 120° counterclockwise.
    pub fn rotate(self) -> PlanePoint {
        let (x, y) = (self.x, self.y3);
        debug_assert_eq!((x + y).rem_euclid(2), 0);
        PlanePoint::new((-x - 3 * y) / 2, (x - y) / 2)
    }

    /// Reflection across the x-axis.
    pub fn reflect(self) -> PlanePoint {
        PlanePoint::new(self.x, -self.y3)
    }

    /// Applies the plane symmetry that carries orientation `a` to `o`.
    pub fn transform(self, o: Orientation) -> PlanePoint {
        let (rot, refl) = o.symmetry();
        let mut p = if refl { self.reflect() } else { self };
        for _ in 0..rot {
            p = p.rotate();
        }
        p
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.x as f64, self.y3 as f64 * 3f64.sqrt())
    }

    fn coords<N: Number>(self) -> (N, N) {
        (N::from_parts(self.x, 0), N::from_parts(0, self.y3))
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}√3)", self.x, self.y3)
    }
}

pub fn project_step(s: StepVector) -> PlanePoint {
    match s {
        StepVector::I => PlanePoint::new(6, 0),
        StepVector::J => PlanePoint::new(-3, 3),
        StepVector::K => PlanePoint::new(-3, -3),
    }
}

/// Projection of a lattice point along (1,1,1).
pub fn project_point(p: Point3) -> PlanePoint {
    PlanePoint::new(6 * p.x - 3 * p.y - 3 * p.z, 3 * p.y - 3 * p.z)
}

/// Vertices of the order-0 trapezoid with the given orientation, based at the
/// origin: base-start, base-end, top-end, top-start.
pub fn orientation_offsets(o: Orientation) -> [PlanePoint; 4] {
    const A: [PlanePoint; 4] = [
        PlanePoint::new(0, 0),
        PlanePoint::new(6, 0),
        PlanePoint::new(5, 1),
        PlanePoint::new(1, 1),
    ];
    A.map(|p| p.transform(o))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trapezoid {
    pub vertices: [PlanePoint; 4],
    pub orientation: Orientation,
    pub seq_index: usize,
}

impl Trapezoid {
    /// Trapezoid of the given orientation with base starting at `start`,
    /// scaled by `scale` (4ⁿ for order n).
    pub fn new(start: PlanePoint, orientation: Orientation, scale: i64, seq_index: usize) -> Trapezoid {
        Trapezoid {
            vertices: orientation_offsets(orientation).map(|v| start.add(v.scale(scale))),
            orientation,
            seq_index,
        }
    }

    /// Twice the signed area; positive for counterclockwise vertex order.
    fn winding(&self) -> i128 {
        let v = &self.vertices;
        (0..4)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % 4]);
                a.x as i128 * b.y3 as i128 - b.x as i128 * a.y3 as i128
            })
            .sum()
    }

    /// Closed containment test.
    pub fn contains(&self, p: PlanePoint) -> bool {
        let s = self.winding().signum() as i32;
        (0..4).all(|i| orient(self.vertices[i], self.vertices[(i + 1) % 4], p) * s >= 0)
    }

    pub fn translate(&self, by: PlanePoint) -> Trapezoid {
        Trapezoid {
            vertices: self.vertices.map(|v| v.add(by)),
            ..*self
        }
    }
}

/// Sign of the cross product `(b − a) × (p − a)`; the √3 factor is common to
/// both terms so the integer sign is exact.
pub fn orient(a: PlanePoint, b: PlanePoint, p: PlanePoint) -> i32 {
    let (u, v) = (b.sub(a), p.sub(a));
    let c = u.x as i128 * v.y3 as i128 - u.y3 as i128 * v.x as i128;
    c.signum() as i32
}

/// Order-0 trapezoids for `word` starting at `origin`: trapezoid m has its
/// base from walk point m to walk point m + 1 and the orientation of
/// `word[m]`.
pub fn trapezoid_chain(word: &[Symbol], origin: PlanePoint) -> Vec<Trapezoid> {
    let mut out = Vec::with_capacity(word.len());
    let mut at = origin;
    for (m, s) in word.iter().enumerate() {
        out.push(Trapezoid::new(at, s.orientation(), 1, m));
        at = at.add(project_step(s.step()));
    }
    out
}

/// Order-n trapezoids of the aligned blocks of 7ⁿ symbols in a prefix of the
/// fixed point. Block m spans walk points `m·7ⁿ ..= (m+1)·7ⁿ`.
pub fn order_n_chain(lambda: &[Symbol], n: u32) -> Vec<Trapezoid> {
    let block = 7usize.pow(n);
    let scale = 4i64.pow(n);
    let mut out = Vec::new();
    let mut at = PlanePoint::ORIGIN;
    for m in 0..lambda.len() / block {
        out.push(Trapezoid::new(at, lambda[m].orientation(), scale, m));
        for s in &lambda[m * block..(m + 1) * block] {
            at = at.add(project_step(s.step()));
        }
    }
    out
}

/// True when some edge line of one trapezoid strictly separates it from the
/// other.
fn separated(t1: &Trapezoid, t2: &Trapezoid) -> bool {
    for (a, b) in [(t1, t2), (t2, t1)] {
        let s = a.winding().signum() as i32;
        for i in 0..4 {
            let (p, q) = (a.vertices[i], a.vertices[(i + 1) % 4]);
            if b.vertices.iter().all(|&v| orient(p, q, v) * s < 0) {
                return true;
            }
        }
    }
    false
}

fn dot<N: Number>(u: (N, N), v: (N, N)) -> Result<N> {
    u.0.mul(v.0)?.add(u.1.mul(v.1)?)
}

fn diff<N: Number>(a: PlanePoint, b: PlanePoint) -> (N, N) {
    a.sub(b).coords()
}

/// Squared distance from `p` to segment `ab`.
fn point_segment_dist_sq<N: Number>(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> Result<Ratio<N>> {
    let d = diff::<N>(p, a);
    let e = diff::<N>(b, a);
    let t = dot(d, e)?;
    let len = dot(e, e)?;
    if t.signum()? <= 0 {
        return Ok(Ratio::whole(dot(d, d)?));
    }
    if t.cmp_num(len)?.is_ge() {
        let f = diff::<N>(p, b);
        return Ok(Ratio::whole(dot(f, f)?));
    }
    Ok(Ratio {
        num: dot(d, d)?.mul(len)?.sub(t.mul(t)?)?,
        den: len,
    })
}

/// Minimum squared distance between two closed trapezoids, 0 if they meet.
pub fn min_dist_sq_in<N: Number>(t1: &Trapezoid, t2: &Trapezoid) -> Result<Ratio<N>> {
    if !separated(t1, t2) {
        return Ok(Ratio::whole(N::from_parts(0, 0)));
    }
    let mut best: Option<Ratio<N>> = None;
    for (a, b) in [(t1, t2), (t2, t1)] {
        for &p in &a.vertices {
            for i in 0..4 {
                let d = point_segment_dist_sq::<N>(p, b.vertices[i], b.vertices[(i + 1) % 4])?;
                best = match best {
                    Some(cur) if cur.cmp_ratio(&d)?.is_le() => Some(cur),
                    _ => Some(d),
                };
            }
        }
    }
    Ok(best.expect("trapezoids have vertices"))
}

/// Exact minimum squared distance. In `(x, y3)` coordinates every inner
/// product is `ux·vx + 3·uy3·vy3`, so the ℤ[√3] computation of
/// [`min_dist_sq_in`] never produces a √3 component and runs here on checked
/// integers.
pub fn min_dist_sq(t1: &Trapezoid, t2: &Trapezoid) -> Result<Rt3Ratio> {
    let (num, den) = min_dist_sq_int(t1, t2)?;
    Rt3Ratio::new(Rt3Num::integer(num), Rt3Num::integer(den))
}

fn dot_int(u: PlanePoint, v: PlanePoint) -> Result<i128> {
    let of = || Error::Overflow("inner product");
    let a = (u.x as i128).checked_mul(v.x as i128).ok_or_else(of)?;
    let b = (u.y3 as i128).checked_mul(v.y3 as i128).ok_or_else(of)?;
    b.checked_mul(3).and_then(|b| a.checked_add(b)).ok_or_else(of)
}

/// `(num, den)` of the squared distance from `p` to segment `ab`.
fn point_segment_int(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> Result<(i128, i128)> {
    let of = || Error::Overflow("point-segment distance");
    let d = p.sub(a);
    let e = b.sub(a);
    let t = dot_int(d, e)?;
    let len = dot_int(e, e)?;
    if t <= 0 {
        return Ok((dot_int(d, d)?, 1));
    }
    if t >= len {
        let f = p.sub(b);
        return Ok((dot_int(f, f)?, 1));
    }
    let num = dot_int(d, d)?
        .checked_mul(len)
        .and_then(|x| x.checked_sub(t.checked_mul(t)?))
        .ok_or_else(of)?;
    Ok((num, len))
}

/// Integer form of [`min_dist_sq`] as `(num, den)` with `den > 0`.
pub fn min_dist_sq_int(t1: &Trapezoid, t2: &Trapezoid) -> Result<(i128, i128)> {
    if !separated(t1, t2) {
        return Ok((0, 1));
    }
    let of = || Error::Overflow("distance comparison");
    let mut best = (i128::MAX, 1i128);
    for (a, b) in [(t1, t2), (t2, t1)] {
        for &p in &a.vertices {
            for i in 0..4 {
                let d = point_segment_int(p, b.vertices[i], b.vertices[(i + 1) % 4])?;
                let lhs = d.0.checked_mul(best.1).ok_or_else(of)?;
                let rhs = if best.0 == i128::MAX {
                    i128::MAX
                } else {
                    best.0.checked_mul(d.1).ok_or_else(of)?
                };
                if lhs < rhs {
                    best = d;
                }
            }
        }
    }
    Ok(best)
}

/// Maximum squared distance, attained at a pair of vertices.
pub fn max_dist_sq_in<N: Number>(t1: &Trapezoid, t2: &Trapezoid) -> Result<N> {
    let mut best = N::from_parts(0, 0);
    for &p in &t1.vertices {
        for &q in &t2.vertices {
            let d = diff::<N>(p, q);
            let d = dot(d, d)?;
            if d.cmp_num(best)?.is_gt() {
                best = d;
            }
        }
    }
    Ok(best)
}

pub fn max_dist_sq(t1: &Trapezoid, t2: &Trapezoid) -> Result<Rt3Num> {
    Ok(Rt3Num::integer(max_dist_sq_int(t1, t2)))
}

/// Integer squared distance for callers that only need the exact value.
pub fn max_dist_sq_int(t1: &Trapezoid, t2: &Trapezoid) -> i128 {
    t1.vertices
        .iter()
        .flat_map(|p| t2.vertices.iter().map(move |q| p.dist_sq(*q)))
        .max()
        .unwrap()
}

/// SVG rendering options for [`render_svg`].
#[derive(Clone, Copy, Debug)]
pub struct SvgStyle {
    /// Pixels per scaled unit.
    pub unit: f64,
    pub margin: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            unit: 4.0,
            margin: 10.0,
        }
    }
}

/// Renders layers of trapezoids; later layers are drawn with thicker, lighter
/// strokes so nested orders stay readable. Coordinates are floating point for
/// display only.
pub fn render_svg(layers: &[Vec<Trapezoid>], style: SvgStyle) -> Result<String> {
    let all: Vec<(f64, f64)> = layers
        .iter()
        .flatten()
        .flat_map(|t| t.vertices.iter().map(|v| v.to_f64()))
        .collect();
    if all.is_empty() {
        return Err(Error::InvalidArgument("nothing to draw".into()));
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
        all.iter().map(pick).fold(init, f)
    };
    let (x0, x1) = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.0));
    let (y0, y1) = (fold(f64::min, f64::INFINITY, |p| p.1), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
    let u = style.unit;
    let m = style.margin;
    let (w, h) = ((x1 - x0) * u + 2.0 * m, (y1 - y0) * u + 2.0 * m);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    const COLORS: [&str; 6] = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053"];
    for (depth, layer) in layers.iter().enumerate() {
        let width = 0.6 + 0.8 * depth as f64;
        let _ = writeln!(
            s,
            r#"<g fill="none" stroke="{}" stroke-width="{width:.1}" stroke-linejoin="round" data-order="{depth}">"#,
            COLORS[depth % COLORS.len()]
        );
        for t in layer {
            let pts: Vec<String> = t
                .vertices
                .iter()
                .map(|v| {
                    let (x, y) = v.to_f64();
                    format!("{:.2},{:.2}", (x - x0) * u + m, (y1 - y) * u + m)
                })
                .collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" data-index="{}" data-orientation="{}"/>"#,
                pts.join(" "),
                t.seq_index,
                t.orientation
            );
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    Ok(s)
}
