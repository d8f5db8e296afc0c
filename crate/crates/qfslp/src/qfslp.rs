//! The regular fractional q-Sturm-Liouville problem on a geometric lattice:
//! operator application `L y = D_right(p cD_left y) + r y`, boundary
//! residuals, Green's identity, the equivalent q-integral equation with its
//! Picard fixed-point solver and contraction constants, and the
//! q,p,alpha-Wronskian.
//!
//! The integral-equation route eliminates the composed derivative pair: a
//! candidate eigenpair `(lambda, y)` solves the differential form exactly
//! when it is a fixed point of the affine map [`SLProblem::map_t`], whose
//! Lipschitz constant [`SLProblem::lipschitz_bound`] certifies both existence
//! and simplicity of the eigenvalue whenever it falls below 1.

use std::sync::Arc;

use crate::error::{QError, Result};
use crate::lattice::{d_q, inner_product, jackson_int_full, Lattice, LatticeFn};
use crate::qcore::{self, QContext};
use crate::qfrac::{
    bound_constants, caputo_left, dright_rl, ileft, iright, FracOrder, RightEdgePolicy,
};
use crate::real::{r, rdiv, rpowf, rrecip, Real};

/// Relative floor below which the boundary determinant is treated as
/// singular.
const DELTA_SINGULAR_REL: f64 = 1e-12;

/// Iterate norm beyond which Picard iteration is declared divergent.
const DIVERGENCE_NORM: f64 = 1e12;

/// Boundary coefficients `(c1, c2)` at `x = 0` and `(d1, d2)` at `x = a`:
/// `c1 y(0) + c2 G_y(0) = 0` and `d1 y(a) + d2 G_y(a/q) = 0`, where
/// `G_y = I^(1-alpha)_right (p cD^alpha_left y)` is the fractional flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub d1: f64,
    pub d2: f64,
}

impl BoundaryCoeffs {
    /// Validated constructor: neither coefficient pair may vanish entirely.
    pub fn new(c1: f64, c2: f64, d1: f64, d2: f64) -> Result<Self> {
        if c1 * c1 + c2 * c2 == 0.0 || d1 * d1 + d2 * d2 == 0.0 {
            return Err(QError::InvalidParameter(
                "boundary coefficient pairs (c1, c2) and (d1, d2) must each be nonzero".into(),
            ));
        }
        if ![c1, c2, d1, d2].iter().all(|v| v.is_finite()) {
            return Err(QError::InvalidParameter(
                "boundary coefficients must be finite".into(),
            ));
        }
        Ok(Self { c1, c2, d1, d2 })
    }
}

/// Which Lipschitz/threshold pair to evaluate for contraction admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LipschitzVariant {
    /// Sup-norm bound on `r - lambda w`, valid for all `0 < alpha < 1`.
    Sup,
    /// L2-norm bound for `1/2 < alpha < 1`.
    L2High,
    /// L2-norm bound for `1/4 < alpha < 1/2`.
    L2Low,
}

/// Output of [`SLProblem::lipschitz_bound`].
#[derive(Debug, Clone, Copy)]
pub struct LipschitzReport {
    /// The contraction constant `L` of the fixed-point map under the
    /// variant's norm.
    pub l_value: Real,
    /// The admissibility threshold on the corresponding norm of
    /// `r - lambda w`; `L < 1` exactly when the norm is below it.
    pub threshold: Real,
    /// The norm of `r - lambda w` that was measured (sup or L2).
    pub norm: Real,
    /// Whether `L < 1`.
    pub admissible: bool,
    /// The variant that produced the numbers.
    pub variant: LipschitzVariant,
}

/// Output of [`SLProblem::solve_picard`].
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// The converged fixed point.
    pub solution: LatticeFn,
    /// Number of Picard iterations performed.
    pub iterations: usize,
    /// The sup-variant Lipschitz constant at this `lambda`.
    pub lipschitz: Real,
    /// Largest observed step-to-step contraction ratio.
    pub contraction_ratio: Real,
    /// `sup |T y - y|` at the returned solution.
    pub fixed_point_residual: Real,
    /// Boundary residuals `(rho_0, rho_a)` of the returned solution.
    pub bc_residuals: (Real, Real),
    /// Whether the sufficient contraction condition held; iteration is
    /// attempted either way since the bound is not necessary.
    pub admissible: bool,
}

/// A regular fractional q-Sturm-Liouville problem
/// `D^alpha_right (p cD^alpha_left y) + r y = lambda w y` on `{a q^j}` with
/// two-point boundary conditions.
#[derive(Clone)]
pub struct SLProblem {
    ctx: QContext,
    lattice: Arc<Lattice>,
    alpha: FracOrder,
    p: LatticeFn,
    r: LatticeFn,
    w: LatticeFn,
    bc: BoundaryCoeffs,
    edge: RightEdgePolicy,
    /// `inf |p|` over the lattice points.
    m_p: Real,
}

impl SLProblem {
    /// Validated constructor. Requires `0 < alpha < 1`, a strictly positive
    /// weight `w`, a nonvanishing coefficient `p`, and nondegenerate
    /// boundary pairs.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ctx: &QContext,
        lattice: &Arc<Lattice>,
        alpha: f64,
        p: LatticeFn,
        r: LatticeFn,
        w: LatticeFn,
        bc: BoundaryCoeffs,
        edge: RightEdgePolicy,
    ) -> Result<Self> {
        let alpha = FracOrder::derivative(alpha)?;
        for (name, f) in [("p", &p), ("r", &r), ("w", &w)] {
            if f.values().len() != lattice.depth + 1 {
                return Err(QError::InvalidParameter(format!(
                    "coefficient {name} is not sampled on the problem lattice"
                )));
            }
        }
        if w.values().iter().any(|&v| !(v > 0.0)) {
            return Err(QError::InvalidParameter(
                "weight w must be strictly positive on every lattice point".into(),
            ));
        }
        if p.values().iter().any(|&v| v == 0.0) {
            return Err(QError::InvalidParameter(
                "coefficient p must be nonvanishing on every lattice point".into(),
            ));
        }
        let m_p = p
            .values()
            .iter()
            .map(|v| v.abs())
            .fold(crate::real::r(f64::INFINITY), Real::min);
        Ok(Self {
            ctx: *ctx,
            lattice: lattice.clone(),
            alpha,
            p,
            r,
            w,
            bc,
            edge,
            m_p,
        })
    }

    /// The problem lattice.
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// The numeric context the problem was built against.
    pub fn context(&self) -> &QContext {
        &self.ctx
    }

    /// The fractional order.
    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }

    /// The leading coefficient `p`.
    pub fn p(&self) -> &LatticeFn {
        &self.p
    }

    /// The potential `r`.
    pub fn r(&self) -> &LatticeFn {
        &self.r
    }

    /// The weight `w`.
    pub fn w(&self) -> &LatticeFn {
        &self.w
    }

    /// The boundary coefficients.
    pub fn bc(&self) -> BoundaryCoeffs {
        self.bc
    }

    /// The off-lattice edge convention.
    pub fn edge(&self) -> RightEdgePolicy {
        self.edge
    }

    /// `inf |p|` over the lattice points.
    pub fn inf_p(&self) -> Real {
        self.m_p
    }

    /// The fractional flux `G_y = I^(1-alpha)_right (p cD^alpha_left y)`,
    /// the quantity whose boundary values the conditions constrain.
    pub fn flux(&self, y: &LatticeFn) -> Result<LatticeFn> {
        let complement = FracOrder::integral(1.0 - self.alpha.value())?;
        iright(complement, &self.p.mul(&caputo_left(self.alpha, y)?)?)
    }

    /// Apply the Sturm-Liouville operator:
    /// `L y = D^alpha_right (p cD^alpha_left y) + r y`.
    pub fn apply_l(&self, y: &LatticeFn) -> Result<LatticeFn> {
        let inner = self.p.mul(&caputo_left(self.alpha, y)?)?;
        dright_rl(self.alpha, &inner, self.edge)?.add(&self.r.mul(y)?)
    }

    /// Boundary residuals `(rho_0, rho_a)`:
    /// `rho_0 = c1 y(0) + c2 G_y(0)` and `rho_a = d1 y(a) + d2 G_y(a/q)`,
    /// with the off-lattice flux value at `a/q` supplied by the edge policy.
    pub fn bc_residuals(&self, y: &LatticeFn) -> Result<(Real, Real)> {
        let g = self.flux(y)?;
        let y0 = y
            .zero_limit()
            .ok_or_else(|| QError::NoZeroLimit("boundary residual needs q-regular y".into()))?;
        let g0 = g.zero_limit().ok_or_else(|| {
            QError::NoZeroLimit("fractional flux of y has no limit at zero".into())
        })?;
        let rho0 = self.bc.c1 * y0 + self.bc.c2 * g0;
        let rho_a = self.bc.d1 * y.value(0) + r(self.bc.d2 * self.edge.edge_value());
        Ok((rho0, rho_a))
    }

    /// The kernel function `psi(x) = I^alpha_left [ a^(alpha-1)
    /// (q t/a; q)_(alpha-1) / (Gamma_q(alpha) p(t)) ](x)`: together with the
    /// constants it spans the null space of the leading operator
    /// `D^alpha_right p cD^alpha_left`.
    pub fn psi(&self) -> Result<LatticeFn> {
        let alpha = self.alpha.value();
        let lat = &self.lattice;
        let q = self.ctx.q;
        let pref = rdiv(
            rpowf(lat.a, r(alpha) - 1.0),
            qcore::q_gamma(alpha, &self.ctx)?,
        );
        let mut qj1 = q;
        let mut values = Vec::with_capacity(lat.depth + 1);
        for j in 0..=lat.depth {
            let poch = qcore::qpoch_real(qj1, alpha - 1.0, &self.ctx)?;
            values.push(rdiv(pref * poch, self.p.value(j)));
            qj1 *= q;
        }
        // (z; q)_(alpha-1) -> 1 as z -> 0
        let zero_limit = self.p.zero_limit().map(|p0| rdiv(pref, p0));
        // carry an analytic extension below the lattice floor whenever p has
        // one, so that fractional derivatives of psi stay accurate at the
        // deepest points
        let extend = self.p.extend_fn().map(|p_ext| {
            let p_ext = p_ext.clone();
            let ctx = self.ctx;
            let a = lat.a;
            Arc::new(move |x: Real| {
                let poch = qcore::qpoch_real(rdiv(ctx.q * x, a), alpha - 1.0, &ctx)
                    .unwrap_or_else(|_| r(f64::NAN));
                rdiv(pref * poch, p_ext(x))
            }) as crate::lattice::ScalarFn
        });
        let kernel = LatticeFn::with_extend(lat, values, zero_limit, extend);
        ileft(FracOrder::integral(alpha)?, &kernel)
    }

    /// The boundary determinant
    /// `Delta = c1 d2 - c2 d1 + c1 d1 psi(a)` of the integral-equation
    /// reformulation.
    pub fn delta(&self) -> Result<Real> {
        let psi_a = self.psi()?.value(0);
        Ok(r(self.bc.c1 * self.bc.d2 - self.bc.c2 * self.bc.d1)
            + r(self.bc.c1 * self.bc.d1) * psi_a)
    }

    /// `delta`, rejecting values within the scale-relative singular window.
    fn delta_checked(&self) -> Result<Real> {
        let psi_a = self.psi()?.value(0);
        let delta = r(self.bc.c1 * self.bc.d2 - self.bc.c2 * self.bc.d1)
            + r(self.bc.c1 * self.bc.d1) * psi_a;
        let scale = (self.bc.c1 * self.bc.d2)
            .abs()
            .max((self.bc.c2 * self.bc.d1).abs())
            .max(f64::from((r(self.bc.c1 * self.bc.d1) * psi_a).abs()))
            .max(1.0);
        if f64::from(delta.abs()) <= DELTA_SINGULAR_REL * scale {
            return Err(QError::SingularDelta(f64::from(delta)));
        }
        Ok(delta)
    }

    /// The coefficient functions of the equivalent q-integral equation:
    /// `A(x) = (c2/Delta) [d2 + d1 (psi(a) - psi(x))]` and
    /// `B(x) = (d1/Delta) [c1 psi(x) - c2]`.
    pub fn coeffs_ab(&self) -> Result<(LatticeFn, LatticeFn)> {
        let delta = self.delta_checked()?;
        let psi = self.psi()?;
        let psi_a = psi.value(0);
        let BoundaryCoeffs { c1, c2, d1, d2 } = self.bc;
        // A(x) = (c2/Delta)(d2 + d1 psi(a)) - (c2 d1/Delta) psi(x)
        let a_fn = psi
            .scale(rdiv(r(-c2 * d1), delta))
            .add_scalar(rdiv(r(c2) * (r(d2) + r(d1) * psi_a), delta));
        let b_fn = psi
            .scale(rdiv(r(c1 * d1), delta))
            .add_scalar(rdiv(r(-c2 * d1), delta));
        Ok((a_fn, b_fn))
    }

    /// `Y_f = (r - lambda w) f`, the source term of the integral equation.
    fn source(&self, lambda: f64, f: &LatticeFn) -> Result<LatticeFn> {
        self.r.sub(&self.w.scale(r(lambda)))?.mul(f)
    }

    /// `I^alpha_left [(1/p) I^alpha_right Y_f]`, the composed core of both
    /// fixed-point maps.
    fn core(&self, y_f: &LatticeFn) -> Result<LatticeFn> {
        let alpha = FracOrder::integral(self.alpha.value())?;
        ileft(alpha, &iright(alpha, y_f)?.div(&self.p)?)
    }

    /// The boundary-value fixed-point map
    /// `T f = -core(f) + A(x) int_0^a Y_f + B(x) core(f)(a)` whose fixed
    /// points solve the problem with its boundary conditions.
    pub fn map_t(&self, lambda: f64, f: &LatticeFn) -> Result<LatticeFn> {
        let (a_fn, b_fn) = self.coeffs_ab()?;
        let y_f = self.source(lambda, f)?;
        let core = self.core(&y_f)?;
        let int_y = jackson_int_full(&y_f)?;
        core.scale(r(-1.0))
            .add(&a_fn.scale(int_y))?
            .add(&b_fn.scale(core.value(0)))
    }

    /// The initial-value fixed-point map
    /// `T f = k0 + (k1 + int_0^a Y_f) psi(x) - core(f)` whose fixed points
    /// solve the problem with `y(0) = k0` and flux `G_y(0) = k1`.
    pub fn map_t_ivp(&self, lambda: f64, f: &LatticeFn, k0: f64, k1: f64) -> Result<LatticeFn> {
        let y_f = self.source(lambda, f)?;
        let core = self.core(&y_f)?;
        let int_y = jackson_int_full(&y_f)?;
        let psi = self.psi()?;
        psi.scale(r(k1) + int_y)
            .add_scalar(r(k0))
            .sub(&core)
    }

    /// Contraction constant and admissibility threshold for the requested
    /// variant.
    pub fn lipschitz_bound(&self, lambda: f64, variant: LipschitzVariant) -> Result<LipschitzReport> {
        let alpha = self.alpha.value();
        let (a_fn, b_fn) = self.coeffs_ab()?;
        let a_norm = a_fn.sup_norm();
        let b_norm = b_fn.sup_norm();
        let m_p = self.m_p;
        let a_len = self.lattice.a;
        let diff = self.r.sub(&self.w.scale(r(lambda)))?;
        match variant {
            LipschitzVariant::Sup => {
                let phi = phi_fn(self.alpha, &self.lattice, &self.ctx)?;
                let m_phi = phi.sup_norm();
                let phi_a = phi.value(0);
                let norm = diff.sup_norm();
                let slope = rdiv(m_phi, m_p) + a_norm * a_len + rdiv(b_norm * phi_a, m_p);
                let threshold = rdiv(m_p, m_phi + b_norm * phi_a + a_norm * a_len * m_p);
                Ok(LipschitzReport {
                    l_value: norm * slope,
                    threshold,
                    norm,
                    admissible: norm * slope < 1.0,
                    variant,
                })
            }
            LipschitzVariant::L2High | LipschitzVariant::L2Low => {
                let constant = {
                    let consts = bound_constants(self.alpha, f64::from(a_len), &self.ctx)?;
                    match variant {
                        LipschitzVariant::L2High => consts.c_alpha.ok_or_else(|| {
                            QError::OutOfRange(format!(
                                "L2 high-order bound needs 1/2 < alpha < 1, got {alpha}"
                            ))
                        })?,
                        _ => {
                            if !(alpha > 0.25 && alpha < 0.5) {
                                return Err(QError::OutOfRange(format!(
                                    "L2 low-order bound needs 1/4 < alpha < 1/2, got {alpha}"
                                )));
                            }
                            consts.gamma_alpha.ok_or_else(|| {
                                QError::OutOfRange(format!(
                                    "L2 low-order bound needs 1/4 < alpha < 1/2, got {alpha}"
                                ))
                            })?
                        }
                    }
                };
                let norm = diff.l2_norm()?;
                let a_pow = rpowf(a_len, 2.0 * r(alpha) - 0.5);
                let sqrt_a = a_len.sqrt();
                let slope = rdiv((1.0 + b_norm) * a_pow * constant, m_p) + a_norm * sqrt_a;
                let threshold = rdiv(m_p, (1.0 + b_norm) * a_pow * constant + a_norm * sqrt_a * m_p);
                Ok(LipschitzReport {
                    l_value: norm * slope,
                    threshold,
                    norm,
                    admissible: norm * slope < 1.0,
                    variant,
                })
            }
        }
    }

    /// Picard iteration `f <- T f` until `sup |f_(k+1) - f_k| < tol`.
    ///
    /// The contraction condition is sufficient, not necessary, so iteration
    /// is attempted even when inadmissible; divergence (iterate norm above
    /// 1e12) and iteration-cap overrun are reported as errors.
    pub fn solve_picard(
        &self,
        lambda: f64,
        f0: &LatticeFn,
        tol: f64,
        max_iter: usize,
    ) -> Result<SolveReport> {
        let report = self.lipschitz_bound(lambda, LipschitzVariant::Sup)?;
        let mut current = f0.clone();
        let mut last_step: Option<Real> = None;
        let mut ratio = r(0.0);
        for k in 1..=max_iter {
            let next = self.map_t(lambda, &current)?;
            let step = next.sub(&current)?.sup_norm();
            if let Some(prev) = last_step {
                if prev > 0.0 {
                    ratio = ratio.max(rdiv(step, prev));
                }
            }
            last_step = Some(step);
            current = next;
            let norm = current.sup_norm();
            if norm > DIVERGENCE_NORM {
                return Err(QError::Divergence {
                    norm: f64::from(norm),
                    iterations: k,
                });
            }
            if step < tol {
                let fixed_point_residual =
                    self.map_t(lambda, &current)?.sub(&current)?.sup_norm();
                let bc_residuals = self.bc_residuals(&current)?;
                return Ok(SolveReport {
                    solution: current,
                    iterations: k,
                    lipschitz: report.l_value,
                    contraction_ratio: ratio,
                    fixed_point_residual,
                    bc_residuals,
                    admissible: report.admissible,
                });
            }
        }
        Err(QError::MaxIterations {
            iterations: max_iter,
            last_step: last_step.map(f64::from).unwrap_or(f64::NAN),
        })
    }

    /// Smallest `m0 >= 0` such that the initial-value map contracts on the
    /// restricted lattice `{a q^(m0 + j)}`:
    /// `C ||r - lambda w|| a^(2 alpha) q^(m0 alpha) / m_p < 1` with
    /// `C = q^(-alpha) [alpha] / ((q^(alpha+1); q)_inf Gamma_q(alpha+1)^2)`.
    pub fn m0_radius(&self, lambda: f64) -> Result<usize> {
        let alpha = self.alpha.value();
        let norm = self.r.sub(&self.w.scale(r(lambda)))?.sup_norm();
        let c = psi_growth_constant(self.alpha, &self.ctx)?;
        let base = rdiv(
            c * norm * rpowf(self.lattice.a, 2.0 * r(alpha)),
            self.m_p,
        );
        let q_alpha = rpowf(self.ctx.q, r(alpha));
        let mut factor = base;
        let mut m0 = 0usize;
        while factor >= 1.0 {
            factor *= q_alpha;
            m0 += 1;
        }
        Ok(m0)
    }

    /// The q,p,alpha-Wronskian `W(x) = y1 G_(y2)(x) - y2 G_(y1)(x)` built
    /// from the fractional fluxes; constant in `x` exactly when `y1`, `y2`
    /// solve the same equation.
    pub fn wronskian(&self, y1: &LatticeFn, y2: &LatticeFn) -> Result<LatticeFn> {
        let g1 = self.flux(y1)?;
        let g2 = self.flux(y2)?;
        y1.mul(&g2)?.sub(&y2.mul(&g1)?)
    }

    /// Residual of the Wronskian product rule
    /// `D_q W = D_q y1 * G_(y2) - D_q y2 * G_(y1)` in the sup norm.
    pub fn wronskian_dq_residual(&self, y1: &LatticeFn, y2: &LatticeFn) -> Result<Real> {
        let g1 = self.flux(y1)?;
        let g2 = self.flux(y2)?;
        let lhs = d_q(&self.wronskian(y1, y2)?)?;
        let rhs = d_q(y1)?.mul(&g2)?.sub(&d_q(y2)?.mul(&g1)?)?;
        Ok(lhs.sub(&rhs)?.sup_norm())
    }

    /// Green's-identity residual
    /// `| int_0^a (u L v - v L u) - [v G_u - u G_v](x/q) |_0^a |`, with the
    /// off-lattice flux value at `a/q` supplied by the edge policy and the
    /// bracket at 0 taken through the zero limits.
    pub fn greens_residual(&self, u: &LatticeFn, v: &LatticeFn) -> Result<Real> {
        let lu = self.apply_l(u)?;
        let lv = self.apply_l(v)?;
        let integral = jackson_int_full(&u.mul(&lv)?.sub(&v.mul(&lu)?)?)?;
        let gu = self.flux(u)?;
        let gv = self.flux(v)?;
        let edge = r(self.edge.edge_value());
        let at_a = v.value(0) * edge - u.value(0) * edge;
        let u0 = u
            .zero_limit()
            .ok_or_else(|| QError::NoZeroLimit("Green's identity needs q-regular u".into()))?;
        let v0 = v
            .zero_limit()
            .ok_or_else(|| QError::NoZeroLimit("Green's identity needs q-regular v".into()))?;
        let gu0 = gu
            .zero_limit()
            .ok_or_else(|| QError::NoZeroLimit("flux of u has no limit at zero".into()))?;
        let gv0 = gv
            .zero_limit()
            .ok_or_else(|| QError::NoZeroLimit("flux of v has no limit at zero".into()))?;
        let at_zero = v0 * gu0 - u0 * gv0;
        Ok((integral - (at_a - at_zero)).abs())
    }

    /// Self-adjointness residual `|<L u, v> - <u, L v>|` in the unweighted
    /// q-inner product; zero for pairs satisfying both boundary conditions.
    pub fn self_adjointness_residual(&self, u: &LatticeFn, v: &LatticeFn) -> Result<Real> {
        let lu = self.apply_l(u)?;
        let lv = self.apply_l(v)?;
        Ok((inner_product(&lu, v, None)? - inner_product(u, &lv, None)?).abs())
    }

    /// Rayleigh quotient `<L y, y> / <y, y>_w`; matches `lambda` for an
    /// eigenpair up to the eigen-equation residual.
    pub fn rayleigh_quotient(&self, y: &LatticeFn) -> Result<Real> {
        let ly = self.apply_l(y)?;
        let num = inner_product(&ly, y, None)?;
        let den = inner_product(y, y, Some(&self.w))?;
        if den == 0.0 {
            return Err(QError::InvalidParameter(
                "Rayleigh quotient of the zero function".into(),
            ));
        }
        Ok(rdiv(num, den))
    }
}

/// The composed kernel `phi = I^alpha_left I^alpha_right (1)`, whose sup
/// norm enters the sup-variant contraction constant. Closed form:
/// `phi(x) = a^alpha x^alpha / Gamma_q(alpha+1)^2 *
/// 2phi1(q^(-alpha), q; q^(alpha+1); q, x q^(alpha+1) / a)`.
pub fn phi_fn(alpha: FracOrder, lattice: &Arc<Lattice>, _ctx: &QContext) -> Result<LatticeFn> {
    let one = LatticeFn::constant(lattice, 1.0);
    let order = FracOrder::integral(alpha.value())?;
    ileft(order, &iright(order, &one)?)
}

/// The growth constant of `psi`:
/// `C = q^(-alpha) [alpha] / ((q^(alpha+1); q)_inf Gamma_q(alpha+1)^2)`,
/// giving `|psi(x)| <= (C / m_p) a^alpha x^alpha`.
pub fn psi_growth_constant(alpha: FracOrder, ctx: &QContext) -> Result<Real> {
    let a = alpha.value();
    let q = ctx.q;
    let gamma = qcore::q_gamma(a + 1.0, ctx)?;
    let poch = qcore::qpoch_inf(rpowf(q, r(a) + 1.0), ctx)?;
    Ok(rdiv(
        rrecip(rpowf(q, r(a))) * qcore::q_bracket(a, ctx),
        poch * gamma * gamma,
    ))
}
