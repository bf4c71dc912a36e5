//! Maximum trapezoids within a window met by one straight line.
//!
//! cargo run --release --example stabbing_sweep -- [window] [line|ray] [consecutive|separation] [geometric|table|none]

use std::time::Instant;

use collinear_walk::sweep::{max_intersected, Normalization, SweepOptions, SweepShape, WindowRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let window: usize = args.first().map(|s| s.parse()).transpose()?.unwrap_or(49);
    let mut options = SweepOptions::default();
    for a in &args[1.min(args.len())..] {
        match a.as_str() {
            "line" => options.shape = SweepShape::Line,
            "ray" => options.shape = SweepShape::Ray,
            "consecutive" => options.rule = WindowRule::Consecutive,
            "separation" => options.rule = WindowRule::Separation,
            "geometric" => options.normalization = Normalization::Geometric,
            "table" => options.normalization = Normalization::Table,
            "none" => options.normalization = Normalization::None,
            other => return Err(format!("unknown option {other}").into()),
        }
    }

    let t = Instant::now();
    let r = max_intersected(window, &options)?;
    println!("window {window} {options:?}");
    println!("  contexts: {} distinct, {} after normalization", r.raw_contexts, r.contexts);
    println!("  max trapezoids met by one line: {}", r.max);
    let w = &r.witness;
    println!(
        "  witness: context at {}, pivot {}, direction {}, window start {}",
        w.context_start, w.pivot, w.direction, w.window_start
    );
    println!("{:.2?}", t.elapsed());
    Ok(())
}
