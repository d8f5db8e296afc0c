//! Declarative JSON descriptions of lattice functions and problem instances.
//!
//! [`FunctionSpec`] is a small expression AST — constants, the identity,
//! fractional powers, q-Pochhammer weights `(qx; q)_nu`, and the arithmetic
//! combinators — covering every coefficient shape the solver and the
//! spectral problem use. A JSON AST is deliberately chosen over a text
//! expression grammar: it is trivially schema-checked and has a much
//! smaller input attack surface.
//!
//! [`ProblemSpec`] bundles the lattice parameters, fractional order,
//! coefficient functions, boundary data, and solver tolerances into one
//! versioned document (`"spec_version": 1`) that builds directly into an
//! [`SLProblem`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::lattice::{Lattice, LatticeFn, ScalarFn};
use crate::qcore::{self, QContext};
use crate::qfslp::{BoundaryCoeffs, SLProblem};
use crate::qfrac::RightEdgePolicy;
use crate::real::{r, rdiv, rpowf, Real};

/// Expression AST for a scalar function of one variable, serialized as
/// tagged JSON objects (`{"kind": "pow", "mu": 0.5}` and so on).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    /// The constant `v`.
    Const {
        /// Constant value.
        v: f64,
    },
    /// The identity `x`.
    X,
    /// The power `x^mu`; `mu < 0` marks the sampled function as having no
    /// zero limit.
    Pow {
        /// Exponent.
        mu: f64,
    },
    /// The q-Pochhammer weight `(qx; q)_nu`.
    Qpoch {
        /// Order of the shifted factorial.
        nu: f64,
    },
    /// Negation.
    Neg {
        /// Operand.
        child: Box<FunctionSpec>,
    },
    /// Sum.
    Add {
        /// Left operand.
        l: Box<FunctionSpec>,
        /// Right operand.
        r: Box<FunctionSpec>,
    },
    /// Product.
    Mul {
        /// Left operand.
        l: Box<FunctionSpec>,
        /// Right operand.
        r: Box<FunctionSpec>,
    },
    /// Quotient.
    Div {
        /// Numerator.
        l: Box<FunctionSpec>,
        /// Denominator.
        r: Box<FunctionSpec>,
    },
    /// Scalar multiple `c * child`.
    Scale {
        /// Scalar factor.
        c: f64,
        /// Operand.
        child: Box<FunctionSpec>,
    },
}

impl FunctionSpec {
    /// Reject non-finite constants anywhere in the tree.
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(QError::InvalidParameter(format!(
                    "function spec {name} must be finite, got {v}"
                )))
            }
        };
        match self {
            Self::Const { v } => check("const.v", *v),
            Self::X => Ok(()),
            Self::Pow { mu } => check("pow.mu", *mu),
            Self::Qpoch { nu } => check("qpoch.nu", *nu),
            Self::Neg { child } => child.validate(),
            Self::Scale { c, child } => {
                check("scale.c", *c)?;
                child.validate()
            }
            Self::Add { l, r } | Self::Mul { l, r } | Self::Div { l, r } => {
                l.validate()?;
                r.validate()
            }
        }
    }

    /// Evaluate the expression at `x > 0`.
    pub fn eval(&self, x: Real, ctx: &QContext) -> Real {
        match self {
            Self::Const { v } => r(*v),
            Self::X => x,
            Self::Pow { mu } => rpowf(x, r(*mu)),
            Self::Qpoch { nu } => {
                qcore::qpoch_real(ctx.q * x, *nu, ctx).unwrap_or_else(|_| r(f64::NAN))
            }
            Self::Neg { child } => -child.eval(x, ctx),
            Self::Add { l, r } => l.eval(x, ctx) + r.eval(x, ctx),
            Self::Mul { l, r } => l.eval(x, ctx) * r.eval(x, ctx),
            Self::Div { l, r } => rdiv(l.eval(x, ctx), r.eval(x, ctx)),
            Self::Scale { c, child } => r(*c) * child.eval(x, ctx),
        }
    }

    /// The q-regular limit at 0, or `None` when the expression has no
    /// finite limit (a negative power anywhere outside a cancelling
    /// product is reported conservatively as no-limit).
    pub fn zero_limit(&self) -> Option<Real> {
        match self {
            Self::Const { v } => Some(r(*v)),
            Self::X => Some(r(0.0)),
            Self::Pow { mu } => {
                if *mu > 0.0 {
                    Some(r(0.0))
                } else if *mu == 0.0 {
                    Some(r(1.0))
                } else {
                    None
                }
            }
            Self::Qpoch { .. } => Some(r(1.0)),
            Self::Neg { child } => child.zero_limit().map(|z| -z),
            Self::Add { l, r } => Some(l.zero_limit()? + r.zero_limit()?),
            Self::Mul { l, r } => Some(l.zero_limit()? * r.zero_limit()?),
            Self::Div { l, r } => {
                let den = r.zero_limit()?;
                if den == 0.0 {
                    None
                } else {
                    Some(rdiv(l.zero_limit()?, den))
                }
            }
            Self::Scale { c, child } => Some(r(*c) * child.zero_limit()?),
        }
    }

    /// Sample the expression on a lattice, attaching its closure as the
    /// analytic extension.
    pub fn sample(&self, lattice: &Arc<Lattice>, ctx: &QContext) -> Result<LatticeFn> {
        self.validate()?;
        let spec = self.clone();
        let ctx = *ctx;
        let f: ScalarFn = Arc::new(move |x| spec.eval(x, &ctx));
        LatticeFn::sample(lattice, f, self.zero_limit())
    }
}

/// Edge-policy selector for JSON problem documents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum EdgePolicySpec {
    /// Operand extended by 0 beyond the endpoint (the default convention).
    #[default]
    ZeroExtension,
    /// Operand takes the given value at `a/q`.
    UserValue {
        /// The off-lattice value `f(a/q)`.
        value: f64,
    },
}

impl EdgePolicySpec {
    /// Convert to the operator-level policy.
    pub fn to_policy(self) -> Result<RightEdgePolicy> {
        match self {
            Self::ZeroExtension => Ok(RightEdgePolicy::default()),
            Self::UserValue { value } => RightEdgePolicy::user_value(value),
        }
    }
}

/// Solver tolerances carried by a problem document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Fixed-point sup-norm stopping tolerance.
    #[serde(default = "default_fixed_point_tol")]
    pub fixed_point: f64,
    /// Maximum number of Picard iterations.
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
}

fn default_fixed_point_tol() -> f64 {
    1e-11
}

fn default_max_iterations() -> usize {
    500
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            fixed_point: default_fixed_point_tol(),
            max_iterations: default_max_iterations(),
        }
    }
}

/// A complete problem document: lattice, fractional order, coefficients,
/// boundary data, edge policy, optional spectral parameter, and tolerances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    /// Schema version; must be 1.
    pub spec_version: u32,
    /// Lattice base `0 < q < 1`.
    pub q: f64,
    /// Lattice endpoint `a > 0`.
    pub a: f64,
    /// Lattice truncation depth; defaults to the context's depth.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Fractional order `0 < alpha < 1`.
    pub alpha: f64,
    /// Leading coefficient `p` (nonvanishing).
    pub p: FunctionSpec,
    /// Potential `r`.
    pub r: FunctionSpec,
    /// Weight `w` (strictly positive).
    pub w: FunctionSpec,
    /// Boundary coefficients `[c1, c2, d1, d2]`.
    pub bc: [f64; 4],
    /// Edge policy for right-sided operators at `a/q`.
    #[serde(default)]
    pub edge_policy: EdgePolicySpec,
    /// Spectral parameter, when the document pins one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Solver tolerances.
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl ProblemSpec {
    /// Parse and schema-validate a JSON document.
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s)
            .map_err(|e| QError::InvalidParameter(format!("problem spec parse error: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Serialize back to pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem spec serialization cannot fail")
    }

    /// Structural validation beyond what serde enforces.
    pub fn validate(&self) -> Result<()> {
        if self.spec_version != 1 {
            return Err(QError::InvalidParameter(format!(
                "unsupported spec_version {}, expected 1",
                self.spec_version
            )));
        }
        self.p.validate()?;
        self.r.validate()?;
        self.w.validate()?;
        if let Some(l) = self.lambda {
            if !l.is_finite() {
                return Err(QError::InvalidParameter(format!(
                    "lambda must be finite, got {l}"
                )));
            }
        }
        if !(self.tolerances.fixed_point > 0.0) || self.tolerances.max_iterations == 0 {
            return Err(QError::InvalidParameter(
                "tolerances require fixed_point > 0 and max_iterations > 0".into(),
            ));
        }
        Ok(())
    }

    /// Build the numeric context and lattice the document describes.
    pub fn build_lattice(&self) -> Result<(QContext, Arc<Lattice>)> {
        let ctx = QContext::new(self.q)?;
        let lattice = match self.depth {
            Some(d) => Lattice::with_depth(&ctx, self.a, d)?,
            None => Lattice::new(&ctx, self.a)?,
        };
        Ok((ctx, lattice))
    }

    /// Build the full [`SLProblem`] (coefficients sampled, boundary and
    /// edge data converted, invariants checked).
    pub fn build(&self) -> Result<SLProblem> {
        self.validate()?;
        let (ctx, lattice) = self.build_lattice()?;
        let p = self.p.sample(&lattice, &ctx)?;
        let rr = self.r.sample(&lattice, &ctx)?;
        let w = self.w.sample(&lattice, &ctx)?;
        let bc = BoundaryCoeffs::new(self.bc[0], self.bc[1], self.bc[2], self.bc[3])?;
        let edge = self.edge_policy.to_policy()?;
        SLProblem::new(&ctx, &lattice, self.alpha, p, rr, w, bc, edge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    fn poly_spec() -> FunctionSpec {
        // 2 + x^0.5 * (qx; q)_0.3 - x / 4
        FunctionSpec::Add {
            l: Box::new(FunctionSpec::Const { v: 2.0 }),
            r: Box::new(FunctionSpec::Add {
                l: Box::new(FunctionSpec::Mul {
                    l: Box::new(FunctionSpec::Pow { mu: 0.5 }),
                    r: Box::new(FunctionSpec::Qpoch { nu: 0.3 }),
                }),
                r: Box::new(FunctionSpec::Neg {
                    child: Box::new(FunctionSpec::Scale {
                        c: 0.25,
                        child: Box::new(FunctionSpec::X),
                    }),
                }),
            }),
        }
    }

    #[test]
    fn json_round_trip_is_semantically_identical() {
        let spec = poly_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: FunctionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
        let c = ctx();
        let lat = Lattice::new(&c, 1.0).unwrap();
        let f1 = spec.sample(&lat, &c).unwrap();
        let f2 = back.sample(&lat, &c).unwrap();
        for j in 0..=lat.depth {
            assert_eq!(f64::from(f1.value(j)), f64::from(f2.value(j)));
        }
        assert_eq!(
            f1.zero_limit().map(f64::from),
            f2.zero_limit().map(f64::from)
        );
    }

    #[test]
    fn zero_limits_follow_the_tree() {
        assert_eq!(
            poly_spec().zero_limit().map(f64::from),
            Some(2.0),
            "positive powers vanish at 0"
        );
        assert!(FunctionSpec::Pow { mu: -0.5 }.zero_limit().is_none());
        let cancelling = FunctionSpec::Div {
            l: Box::new(FunctionSpec::X),
            r: Box::new(FunctionSpec::X),
        };
        // conservative: quotient of vanishing limits is reported as no-limit
        assert!(cancelling.zero_limit().is_none());
    }

    #[test]
    fn eval_matches_sampled_values() {
        let c = ctx();
        let lat = Lattice::new(&c, 1.0).unwrap();
        let spec = poly_spec();
        let f = spec.sample(&lat, &c).unwrap();
        for j in (0..=lat.depth).step_by(7) {
            let direct = spec.eval(lat.point(j), &c);
            assert_eq!(f64::from(f.value(j)), f64::from(direct));
        }
    }

    #[test]
    fn non_finite_constants_rejected() {
        let bad = FunctionSpec::Scale {
            c: f64::NAN,
            child: Box::new(FunctionSpec::X),
        };
        assert!(bad.validate().is_err());
        let c = ctx();
        let lat = Lattice::new(&c, 1.0).unwrap();
        assert!(bad.sample(&lat, &c).is_err());
    }

    fn problem_json() -> String {
        r#"{
            "spec_version": 1,
            "q": 0.5,
            "a": 1.0,
            "alpha": 0.7,
            "p": {"kind": "const", "v": 1.0},
            "r": {"kind": "const", "v": 0.0},
            "w": {"kind": "const", "v": 1.0},
            "bc": [1.0, 0.0, 1.0, 0.0],
            "lambda": 0.5
        }"#
        .to_string()
    }

    #[test]
    fn problem_spec_builds_and_round_trips() {
        let spec = ProblemSpec::from_json(&problem_json()).unwrap();
        let prob = spec.build().unwrap();
        assert_eq!(prob.alpha(), 0.7);
        let json2 = spec.to_json();
        let back = ProblemSpec::from_json(&json2).unwrap();
        assert_eq!(spec, back);
        assert_eq!(spec.tolerances, Tolerances::default());
    }

    #[test]
    fn problem_spec_schema_violations() {
        let mut spec = ProblemSpec::from_json(&problem_json()).unwrap();
        spec.spec_version = 2;
        assert!(spec.validate().is_err());
        assert!(ProblemSpec::from_json("{\"not\": \"a spec\"}").is_err());
        let mut spec = ProblemSpec::from_json(&problem_json()).unwrap();
        spec.alpha = 1.5;
        assert!(spec.build().is_err());
        let mut spec = ProblemSpec::from_json(&problem_json()).unwrap();
        spec.w = FunctionSpec::Const { v: -1.0 };
        assert!(spec.build().is_err());
    }

    #[test]
    fn explicit_depth_respected() {
        let mut spec = ProblemSpec::from_json(&problem_json()).unwrap();
        spec.depth = Some(12);
        let prob = spec.build().unwrap();
        assert_eq!(prob.lattice().depth, 12);
        let json = spec.to_json();
        assert!(json.contains("\"depth\": 12"));
    }
}
