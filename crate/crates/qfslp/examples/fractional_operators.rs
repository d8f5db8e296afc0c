//! Apply the four Riemann-Liouville/Caputo fractional q-operators to a
//! power function and check the operator identities they satisfy.
//!
//! Run with `cargo run --example fractional_operators`.

use std::sync::Arc;

use qfslp::lattice::{Lattice, LatticeFn, ScalarFn};
use qfslp::qcore::{self, QContext};
use qfslp::qfrac::{caputo_left, dleft_rl, ileft, iright, FracOrder};
use qfslp::real::{r, rdiv, rpowf};
use qfslp::Result;

fn main() -> Result<()> {
    let ctx = QContext::new(0.5)?;
    let lattice = Lattice::new(&ctx, 1.0)?;
    let alpha = 0.5;
    let mu = 0.3;

    // f(x) = x^mu, sampled with its analytic closure attached so tails
    // below the lattice floor stay exact
    let f: ScalarFn = Arc::new(move |x| rpowf(x, r(mu)));
    let f = LatticeFn::sample(&lattice, f, Some(r(0.0)))?;

    // the left integral of a power is a Gamma_q-ratio times a higher power:
    // I^alpha x^mu = Gamma_q(mu+1)/Gamma_q(mu+alpha+1) x^(mu+alpha)
    let order = FracOrder::integral(alpha)?;
    let int = ileft(order, &f)?;
    let ratio = rdiv(
        qcore::q_gamma(mu + 1.0, &ctx)?,
        qcore::q_gamma(mu + alpha + 1.0, &ctx)?,
    );
    println!("I^{alpha} x^{mu} against the closed form:");
    println!("{:>3} {:>12} {:>22} {:>12}", "j", "x", "I^a f", "residual");
    for j in (0..=lattice.depth).step_by(8) {
        let x = lattice.point(j);
        let closed = ratio * rpowf(x, r(mu + alpha));
        let res = f64::from((int.value(j) - closed).abs());
        println!(
            "{j:>3} {:>12.6} {:>22.15} {res:>12.2e}",
            f64::from(x),
            f64::from(int.value(j)),
        );
    }

    // the derivative of the integral recovers f on both definitions
    let der = FracOrder::derivative(alpha)?;
    let rl_roundtrip = dleft_rl(der, &int)?.sub(&f)?.sup_norm();
    let caputo_roundtrip = caputo_left(der, &int)?.sub(&f)?.sup_norm();
    println!("\nsup |D^a I^a f - f|  (Riemann-Liouville) = {:e}", f64::from(rl_roundtrip));
    println!("sup |cD^a I^a f - f| (Caputo)            = {:e}", f64::from(caputo_roundtrip));

    // the right integral at order 0 is the identity
    let id = iright(FracOrder::integral(0.0)?, &f)?;
    println!(
        "sup |I^0_right f - f|                    = {:e}",
        f64::from(id.sub(&f)?.sup_norm())
    );
    Ok(())
}
