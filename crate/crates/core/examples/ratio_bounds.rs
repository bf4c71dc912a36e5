//! Extremal distance ratio over a range of separation classes.
//!
//! cargo run --release --example ratio_bounds -- [lo] [hi] [bound_whole] [bound_rt3]

use std::time::Instant;

use collinear_walk::bounds::{assert_ratio_bounded, max_distance_report, small_order_chain};
use collinear_walk::exact::Rt3Num;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let get = |i: usize, d: i64| args.get(i).copied().unwrap_or(d);
    let (lo, hi) = (get(0, 7) as usize, get(1, 48) as usize);
    let bound = Rt3Num::new(get(2, 9) as i128, get(3, 0) as i128);

    let t = Instant::now();
    let r = assert_ratio_bounded(lo, hi, bound)?;
    println!("classes [{lo}, {hi}], bound {bound}");
    println!(
        "  max (c+1)/l(c) at c = {} (l² = {}), max h(d)/d at d = {} (h² = {})",
        r.c, r.ell_sq, r.d, r.h_sq
    );
    println!("  ratio² = {}  ≈ {:.11}", r.value_sq, r.approx);
    println!("  ratio < bound: {}", r.holds);

    let m = max_distance_report(r.extrema.clone(), Rt3Num::new(1, 2))?;
    println!("  max h(d)/d ≈ {:.6} at d = {}, within 1+2√3: {}", m.approx, m.d, m.holds);
    if lo == 7 {
        let chain = small_order_chain(&m)?;
        println!("  smallest-order chain below 14.89 < (7/4)^5: {}", chain.holds());
    }
    println!("{:.2?}", t.elapsed());
    Ok(())
}
