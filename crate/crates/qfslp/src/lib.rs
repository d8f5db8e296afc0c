//! Fractional q-calculus on geometric lattices and the regular fractional
//! q-Sturm-Liouville problem.
//!
//! The crate is organized around six building blocks:
//!
//! - [`qcore`]: scalar q-special functions (q-Pochhammer symbols, q-gamma,
//!   q-beta, q-brackets, the basic hypergeometric series 2phi1).
//! - [`lattice`]: truncated geometric grids `{a q^j}`, lattice-sampled
//!   functions, Jackson q-derivatives and q-integrals, norms and inner
//!   products.
//! - [`qfrac`]: the left/right Riemann-Liouville and Caputo fractional
//!   q-operators, their operator identities, and the associated bound
//!   constants.
//! - [`qfslp`]: the regular fractional q-Sturm-Liouville problem, its
//!   equivalent integral equation, the Picard fixed-point solver with
//!   contraction-admissibility checks, and the q,p,alpha-Wronskian.
//! - [`spectrum`]: little q-Jacobi polynomials and the fully explicit
//!   discrete spectrum they generate.
//! - [`verify`]: machine-checkable residual suites for every operator
//!   identity the library implements.
//!
//! Declarative JSON problem input and the CLI surface live in [`fnspec`] and
//! [`cli`]; the `qfslp` binary is a thin wrapper over [`cli`].

pub mod cli;
pub mod error;
pub mod fnspec;
pub mod lattice;
pub mod qcore;
pub mod qfrac;
pub mod real;
pub mod qfslp;
pub mod spectrum;
pub mod verify;

pub use error::{QError, Result};
pub use fnspec::{FunctionSpec, ProblemSpec};
pub use lattice::{Lattice, LatticeFn};
pub use qcore::QContext;
pub use qfrac::{FracOrder, RightEdgePolicy};
pub use qfslp::{BoundaryCoeffs, SLProblem, SolveReport};
pub use spectrum::{EigenPair, JacobiParams};
pub use verify::{Suite, VerificationReport};
