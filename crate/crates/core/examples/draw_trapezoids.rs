//! SVG of the trapezoid chain with its higher-order trapezoids overlaid.
//!
//!     cargo run --release --example draw_trapezoids -- [count] [out.svg]

use collinear_walk::geometry::{order_n_chain, render_svg, trapezoid_chain, PlanePoint, SvgStyle};
use collinear_walk::sequence::lambda_prefix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(343);
    let out = args.next().unwrap_or_else(|| "trapezoids.svg".into());

    let w = lambda_prefix(count)?;
    let w = &w[..count];
    let mut layers = vec![trapezoid_chain(w, PlanePoint::ORIGIN)];
    let mut n = 1;
    while 7usize.pow(n) <= count {
        layers.push(order_n_chain(w, n));
        n += 1;
    }
    let svg = render_svg(&layers, SvgStyle::default())?;
    std::fs::write(&out, &svg)?;
    for (k, l) in layers.iter().enumerate() {
        println!("order {k}: {} trapezoids", l.len());
    }
    println!("wrote {out} ({} bytes)", svg.len());
    Ok(())
}
