//! Geometric lattices, Jackson q-integration, and q-derivatives — the
//! substrate everything else in the crate is built on.
//!
//! Run with `cargo run --example lattice_basics`.

use std::sync::Arc;

use qfslp::lattice::{d_q, jackson_int_full, Lattice, LatticeFn, ScalarFn};
use qfslp::qcore::QContext;
use qfslp::real::{r, rdiv};
use qfslp::Result;

fn main() -> Result<()> {
    let ctx = QContext::new(0.5)?;
    let lattice = Lattice::new(&ctx, 1.0)?;
    println!(
        "lattice {{ a q^j }} with q = {}, a = {}, depth {} (floor {:e})",
        f64::from(lattice.q),
        f64::from(lattice.a),
        lattice.depth,
        f64::from(lattice.point(lattice.depth)),
    );

    // sample f(x) = x^2 with its closure attached for exact tails
    let f: ScalarFn = Arc::new(|x| x * x);
    let f = LatticeFn::sample(&lattice, f, Some(r(0.0)))?;

    // the Jackson integral of x^2 over [0, 1] is 1/[3]_q = (1-q)/(1-q^3)
    let integral = jackson_int_full(&f)?;
    let exact = rdiv(r(1.0) - lattice.q, r(1.0) - lattice.q * lattice.q * lattice.q);
    println!(
        "\nint_0^1 x^2 d_q x = {:.15}  (exact 1/[3]_q = {:.15})",
        f64::from(integral),
        f64::from(exact)
    );

    // the q-derivative of x^2 is [2]_q x = (1+q) x
    let df = d_q(&f)?;
    println!("\nD_q x^2 against (1+q) x:");
    for j in (0..=lattice.depth).step_by(12) {
        let x = lattice.point(j);
        let expect = (r(1.0) + lattice.q) * x;
        println!(
            "  D_q f({:>12.6}) = {:>18.12}, residual {:e}",
            f64::from(x),
            f64::from(df.value(j)),
            f64::from((df.value(j) - expect).abs())
        );
    }
    Ok(())
}
