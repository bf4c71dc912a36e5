//! Maximum collinear walk points over an index range.
//!
//! cargo run --release --example collinear_points -- [end] [window]

use std::time::Instant;

use collinear_walk::walk::{count_max_collinear, walk_prefix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let end: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let window: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16807);

    let t = Instant::now();
    let report = count_max_collinear(0, end, window)?;
    let z = walk_prefix(end)?;
    println!("range [0, {end}], window {window}: {} collinear points", report.max_points);
    if let Some(line) = report.witness_line {
        println!("line {line}");
    }
    for i in &report.witness_indices {
        println!("  z_{i} = {}", z[*i]);
    }
    println!("{:.2?}", t.elapsed());
    Ok(())
}
