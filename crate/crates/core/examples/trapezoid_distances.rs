//! Minimum and maximum distances between chain trapezoids a fixed number of
//! steps apart, and the extremal pairs behind the ratio bound.
//!
//!     cargo run --release --example trapezoid_distances -- [class]

use collinear_walk::bounds::compute_extrema;
use collinear_walk::geometry::{max_dist_sq, min_dist_sq, trapezoid_chain, PlanePoint};
use collinear_walk::sequence::lambda_prefix;

fn main() -> collinear_walk::Result<()> {
    let c: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("class is an integer ≥ 7"))
        .unwrap_or(9);

    let w = lambda_prefix(40)?;
    let chain = trapezoid_chain(&w[..40], PlanePoint::ORIGIN);
    println!("first trapezoids:");
    for t in &chain[..4] {
        let v: Vec<String> = t.vertices.iter().map(|p| p.to_string()).collect();
        println!("  #{} {}  {}", t.seq_index, t.orientation, v.join(" "));
    }
    let (t0, t1) = (&chain[0], &chain[c.min(39)]);
    println!(
        "T0 to T{}: min d² = {}, max d² = {}",
        t1.seq_index,
        min_dist_sq(t0, t1)?,
        max_dist_sq(t0, t1)?
    );

    let e = compute_extrema(c)?;
    println!("\nclass {c} over every occurring configuration:");
    println!("  min distance² {}  at k = {}, offset {}", e.ell_sq, e.ell_witness.k, e.ell_witness.offset);
    println!("  max distance² {}  at k = {}, offset {}", e.h_sq, e.h_witness.k, e.h_witness.offset);
    println!("  {} starts scanned up to {}", e.starts_scanned, e.scan_limit);
    Ok(())
}
