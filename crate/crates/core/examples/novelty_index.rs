//! Index of the last new subword of each requested length.
//!
//!     cargo run --release --example novelty_index -- 1 2 2401

use std::time::Instant;

use collinear_walk::subword::SubwordIndexer;

fn main() -> collinear_walk::Result<()> {
    let lengths: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("lengths are positive integers"))
        .collect();
    let lengths = if lengths.is_empty() { vec![1, 2, 49, 343, 2401] } else { lengths };

    let mut indexer = SubwordIndexer::default();
    for n in lengths {
        let t = Instant::now();
        let r = indexer.index_of_last_new_subword(n)?;
        let distinct = indexer.distinct_subword_starts(n)?.len();
        println!(
            "I({n}) = {}  (scan bound {}, {distinct} distinct subwords, {:.2?})",
            r.index,
            r.bound_used,
            t.elapsed()
        );
    }
    Ok(())
}
