//! Solve a regular fractional q-Sturm-Liouville problem by Picard
//! iteration on its equivalent integral equation, with the contraction
//! certificate checked before and after.
//!
//! Run with `cargo run --example picard_solver`.

use qfslp::lattice::{Lattice, LatticeFn};
use qfslp::qcore::QContext;
use qfslp::qfrac::RightEdgePolicy;
use qfslp::qfslp::{LipschitzVariant, SLProblem};
use qfslp::BoundaryCoeffs;
use qfslp::Result;

fn main() -> Result<()> {
    let ctx = QContext::new(0.5)?;
    let lattice = Lattice::new(&ctx, 1.0)?;

    // p = 1, r = 0, w = 1 with Dirichlet-type boundary data
    let prob = SLProblem::new(
        &ctx,
        &lattice,
        0.7,
        LatticeFn::constant(&lattice, 1.0),
        LatticeFn::constant(&lattice, 0.0),
        LatticeFn::constant(&lattice, 1.0),
        BoundaryCoeffs::new(1.0, 0.0, 0.0, 1.0)?,
        RightEdgePolicy::default(),
    )?;

    // the sup-norm admissibility threshold: any |lambda| below it makes the
    // fixed-point map a contraction
    let bound = prob.lipschitz_bound(0.0, LipschitzVariant::Sup)?;
    let threshold = f64::from(bound.threshold);
    println!("sup-norm admissibility threshold: {threshold:.6}");

    let lambda = 0.9 * threshold;
    let cert = prob.lipschitz_bound(lambda, LipschitzVariant::Sup)?;
    println!(
        "lambda = {lambda:.6}: L = {:.6}, admissible = {}",
        f64::from(cert.l_value),
        cert.admissible
    );

    let f0 = LatticeFn::constant(&lattice, 1.0);
    let report = prob.solve_picard(lambda, &f0, 1e-11, 200)?;
    println!("\nconverged in {} iterations", report.iterations);
    println!(
        "empirical contraction ratio {:.6} <= L = {:.6}",
        f64::from(report.contraction_ratio),
        f64::from(report.lipschitz)
    );
    println!(
        "fixed-point residual {:e}, boundary residuals ({:e}, {:e})",
        f64::from(report.fixed_point_residual),
        f64::from(report.bc_residuals.0),
        f64::from(report.bc_residuals.1)
    );

    println!("\nsolution at selected lattice points:");
    for j in (0..=lattice.depth).step_by(8) {
        println!(
            "  y({:>12.6}) = {:>22.15}",
            f64::from(lattice.point(j)),
            f64::from(report.solution.value(j))
        );
    }
    Ok(())
}
