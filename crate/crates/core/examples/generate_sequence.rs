//! The morphism table, a prefix of its fixed point, and the step and
//! orientation images of that prefix.
//!
//!     cargo run --release --example generate_sequence -- [length]

use collinear_walk::sequence::{gr_construction, lambda_prefix, mu, mu_power, orientations_to_string, phi, psi, Symbol};
use collinear_walk::walk::walk_prefix;

fn main() -> collinear_walk::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("length is a positive integer"))
        .unwrap_or(35);

    println!("morphism:");
    for s in Symbol::ALL {
        println!("  {:<4} -> {}", s.token(), mu(s));
    }

    let w = lambda_prefix(n)?;
    let w = &w[..n];
    println!("\nfirst {n} symbols:  {}", w.iter().map(|s| s.token()).collect::<Vec<_>>().join(" "));
    println!("steps:  {}", phi(w).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    println!("orientations:  {}", orientations_to_string(&psi(w)));
    println!("z_{n} = {}", walk_prefix(n)?[n]);

    // The morphism and the vector-operator construction give the same steps.
    for k in 0..=4 {
        let same = phi(&mu_power(&[Symbol::I], k)) == gr_construction(k)?;
        println!("order {k}: 7^{k} steps agree with the operator construction: {same}");
    }
    Ok(())
}
