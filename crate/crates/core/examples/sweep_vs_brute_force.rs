//! Rotational sweep against direct enumeration of candidate lines on random
//! orientation sequences.
//!
//!     cargo run --release --example sweep_vs_brute_force -- [cases] [seed]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use collinear_walk::sequence::Orientation;
use collinear_walk::sweep::{
    brute_force_in_chain, max_intersected_in_chain, SweepOptions, SweepShape, WindowRule,
};

fn main() -> collinear_walk::Result<()> {
    let mut args = std::env::args().skip(1);
    let cases: usize = args.next().map_or(200, |a| a.parse().expect("case count"));
    let seed: u64 = args.next().map_or(7, |a| a.parse().expect("seed"));
    let mut rng = StdRng::seed_from_u64(seed);
    let mut next = |m: usize| rng.gen_range(0..m);

    let mut mismatches = 0;
    for case in 0..cases {
        let len = 2 + next(11);
        let seq: Vec<Orientation> = (0..len).map(|_| Orientation::from_index(next(6)).unwrap()).collect();
        let window = 1 + next(len);
        let shape = if next(2) == 0 { SweepShape::Line } else { SweepShape::Ray };
        let rule = if next(2) == 0 { WindowRule::Consecutive } else { WindowRule::Separation };
        let opts = SweepOptions { shape, rule, ..SweepOptions::default() };
        let fast = max_intersected_in_chain(&seq, window, &opts)?.count;
        let slow = brute_force_in_chain(&seq, window, shape, rule)?;
        if fast != slow {
            mismatches += 1;
            println!("case {case}: {seq:?} window {window} {shape:?} {rule:?}: sweep {fast}, brute force {slow}");
        }
    }
    println!("{cases} random cases, {mismatches} mismatches");
    Ok(())
}
