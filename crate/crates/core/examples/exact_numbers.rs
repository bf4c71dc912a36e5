//! Arithmetic and exact sign tests in the integers extended by √3.
//!
//!     cargo run --release --example exact_numbers

use collinear_walk::exact::{Rt3Num, Rt3Ratio};

fn main() -> collinear_walk::Result<()> {
    let a = Rt3Num::new(1, 2);
    let b = Rt3Num::new(-7, 4);
    println!("a = {a}, b = {b}");
    println!("a + b = {}", a.checked_add(b)?);
    println!("a · b = {}", a.checked_mul(b)?);
    println!("a² = {}  ≈ {:.6}", a.checked_mul(a)?, a.checked_mul(a)?.to_f64());

    // 26 − 15√3 ≈ 0.0192 is positive; the sign is decided without floats.
    let tiny = Rt3Num::new(26, -15);
    println!("sign of {tiny} = {}  (≈ {:e})", tiny.signum()?, tiny.to_f64());
    let tinier = tiny.checked_mul(tiny)?.checked_mul(tiny)?;
    println!("sign of ({tiny})³ = {tinier}: {}", tinier.signum()?);

    // Compare squared ratios by cross multiplication.
    let ratio = Rt3Ratio::new(Rt3Num::integer(96400), Rt3Num::integer(1372))?;
    let nine_sq = Rt3Ratio::from_num(Rt3Num::integer(81));
    println!("{ratio} ≈ {:.11} vs 81: {:?}", ratio.to_f64(), ratio.cmp_exact(&nine_sq)?);

    let big = Rt3Num::new(i128::MAX / 2, 1);
    match big.checked_mul(big) {
        Ok(v) => println!("unexpected {v}"),
        Err(e) => println!("overflow is reported, not wrapped: {e}"),
    }
    Ok(())
}
