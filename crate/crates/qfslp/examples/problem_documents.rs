//! Build a solver problem from a declarative JSON document — the same
//! format the `qfslp solve` command ingests — and round-trip it.
//!
//! Run with `cargo run --example problem_documents`.

use qfslp::ProblemSpec;
use qfslp::Result;

const DOCUMENT: &str = r#"{
    "spec_version": 1,
    "q": 0.5,
    "a": 1.0,
    "alpha": 0.7,
    "p": {"kind": "const", "v": 1.0},
    "r": {"kind": "scale", "c": 0.05, "child": {"kind": "qpoch", "nu": 0.4}},
    "w": {"kind": "const", "v": 1.0},
    "bc": [1.0, 0.0, 0.0, 1.0],
    "lambda": 0.25,
    "tolerances": {"fixed_point": 1e-11, "max_iterations": 200}
}"#;

fn main() -> Result<()> {
    let spec = ProblemSpec::from_json(DOCUMENT)?;
    println!("parsed problem document (version {}):", spec.spec_version);
    println!("  q = {}, a = {}, alpha = {}", spec.q, spec.a, spec.alpha);

    // documents round-trip through serialization unchanged
    let reparsed = ProblemSpec::from_json(&spec.to_json())?;
    assert_eq!(spec, reparsed);
    println!("  JSON round-trip: semantically identical");

    // build the full problem and solve at the document's lambda
    let prob = spec.build()?;
    let f0 = qfslp::LatticeFn::constant(prob.lattice(), 1.0);
    let lambda = spec.lambda.expect("document pins lambda");
    let report = prob.solve_picard(
        lambda,
        &f0,
        spec.tolerances.fixed_point,
        spec.tolerances.max_iterations,
    )?;
    println!(
        "\nsolved at lambda = {lambda}: {} iterations, fixed-point residual {:e}",
        report.iterations,
        f64::from(report.fixed_point_residual)
    );
    Ok(())
}
