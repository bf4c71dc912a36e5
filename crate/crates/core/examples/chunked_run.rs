//! Overlapping chunks, per-chunk JSONL records, and the merge, checked
//! against a single unchunked count.
//!
//!     cargo run --release --example chunked_run -- [end] [window] [chunk]

use collinear_walk::walk::{
    chunk_plan, count_max_collinear_in, merge_records, parse_records, run_chunks, walk_prefix,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let end = args.first().copied().unwrap_or(3000);
    let window = args.get(1).copied().unwrap_or(200);
    let chunk = args.get(2).copied().unwrap_or(450);

    let points = walk_prefix(end)?;
    let plan = chunk_plan(end, window, chunk)?;
    println!("{} chunks: {:?} ...", plan.len(), &plan[..plan.len().min(4)]);

    let records = run_chunks(&points, &plan, window)?;
    let jsonl: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    print!("{}", jsonl.lines().take(2).map(|l| format!("  {l}\n")).collect::<String>());

    // Round trip through the text form, as separate workers would.
    let merged = merge_records(&parse_records(&jsonl)?)?;
    let whole = count_max_collinear_in(&points, 0, end, window)?;
    println!(
        "merged max {} {:?} (covered: {}); unchunked max {} {:?}",
        merged.max_points, merged.witness_indices, merged.covered, whole.max_points, whole.witness_indices
    );
    assert_eq!(merged.max_points, whole.max_points);
    assert_eq!(merged.witness_indices, whole.witness_indices);
    Ok(())
}
