//! Riemann-Liouville and Caputo fractional q-operators on geometric
//! lattices: the left integral anchored at 0, the right integral anchored at
//! the lattice endpoint `a`, the four fractional derivatives built from
//! them, the fractional integration-by-parts residuals, and the bound
//! constants of the associated norm inequalities.
//!
//! Both integrals and both Riemann-Liouville derivatives are evaluated
//! through one kernel series
//!
//! `x^nu (1-q)^nu sum_k q^k ((q^nu; q)_k / (q; q)_k) f(x q^k)`
//!
//! (and its right-anchored finite-sum counterpart), with `nu = alpha` for
//! the integrals and `nu = -alpha` for the derivatives. The derivative
//! series agrees identically with the difference-quotient composition
//! `D_q I^{1-alpha}` but avoids its catastrophic cancellation at deep
//! lattice points, where dividing near-equal integrals by `x ~ q^N`
//! amplifies roundoff to O(1).
//!
//! Right-sided operators at `x = a` need the off-lattice value of their
//! operand at `a/q`; [`RightEdgePolicy`] makes that convention explicit.
//! Under the default zero extension the inverse identity
//! `D^alpha I^alpha f = f` holds at every lattice point including `x = a`.

use std::sync::Arc;

use crate::error::{QError, Result};
use crate::lattice::{d_q, jackson_int_full, stabilized_tail, LatticeFn, ScalarFn};
use crate::qcore::{self, QContext};
use crate::real::{r, rdiv, rpowf, Real};

/// A fractional order: derivatives require `0 < alpha < 1`, integrals accept
/// any `alpha >= 0` (with `alpha = 0` acting as the identity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
}

impl FracOrder {
    /// Order for a fractional derivative: strictly inside (0, 1).
    pub fn derivative(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(QError::InvalidParameter(format!(
                "derivative order must satisfy 0 < alpha < 1, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    /// Order for a fractional integral: any `alpha >= 0`.
    pub fn integral(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(QError::InvalidParameter(format!(
                "integral order must satisfy alpha >= 0, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.alpha
    }

    pub(crate) fn require_derivative_range(&self) -> Result<f64> {
        if self.alpha > 0.0 && self.alpha < 1.0 {
            Ok(self.alpha)
        } else {
            Err(QError::InvalidParameter(format!(
                "operation needs 0 < alpha < 1, got {}",
                self.alpha
            )))
        }
    }
}

/// Convention for the off-lattice evaluation point `a/q` consumed by
/// right-sided derivatives at `x = a`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RightEdgePolicy {
    /// The empty Jackson range at `a/q` evaluates to 0.
    #[default]
    ZeroExtension,
    /// A caller-supplied finite value.
    UserValue(f64),
}

impl RightEdgePolicy {
    pub fn user_value(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(QError::InvalidParameter(
                "edge policy user value must be finite".into(),
            ));
        }
        Ok(Self::UserValue(v))
    }

    /// The value assigned at `a/q`.
    pub fn edge_value(&self) -> f64 {
        match self {
            Self::ZeroExtension => 0.0,
            Self::UserValue(v) => *v,
        }
    }
}

const TAIL_TOL: f64 = 1e-33;
const TAIL_CAP: usize = 200_000;

/// Kernel weights `w_k = (q^nu; q)_k / (q; q)_k` for any real `nu != 0`,
/// extended past `len` until `q^k w_k` is negligible. Strictly positive for
/// `nu > 0`; for `-1 < nu < 0` only `w_0 = 1` is positive and the rest share
/// one sign.
fn kernel_weights(nu: f64, q: Real, len: usize) -> Vec<Real> {
    let qnu = rpowf(q, r(nu));
    let mut w = Vec::with_capacity(len + 16);
    w.push(r(1.0));
    let mut k = 0usize;
    let mut qk = r(1.0); // q^k
    let mut qnuk = qnu; // q^(nu + k)
    loop {
        let wk = w[k];
        let next = rdiv(wk * (1.0 - qnuk), 1.0 - q * qk);
        w.push(next);
        k += 1;
        qk *= q;
        qnuk *= q;
        if k >= len && (qk * next / (1.0 - q)).abs() < 1e-36 {
            break;
        }
        if k > TAIL_CAP {
            break;
        }
    }
    w
}

/// One-point evaluation of the left kernel series through the analytic
/// extension of `f`, summing the Jackson series adaptively.
fn series_left_point(nu: f64, q: Real, f: &ScalarFn, x: Real) -> Real {
    let pref = rpowf(x, r(nu)) * rpowf(1.0 - q, r(nu));
    let qnu = rpowf(q, r(nu));
    let mut acc = r(0.0);
    let mut wk = r(1.0);
    let mut qk = r(1.0);
    let mut qnuk = qnu;
    let mut t = x;
    for k in 0..TAIL_CAP {
        let term = qk * wk * f(t);
        acc += term;
        if k > 4 && term.abs() <= TAIL_TOL * f64::from(acc.abs().max(r(1e-300))) {
            break;
        }
        wk = rdiv(wk * (1.0 - qnuk), 1.0 - q * qk);
        qk *= q;
        qnuk *= q;
        t *= q;
    }
    pref * acc
}

/// Left kernel series of order `nu != 0`; the fractional integral for
/// `nu > 0` and the Riemann-Liouville derivative of order `-nu` for
/// `-1 < nu < 0`.
fn series_left(nu: f64, f: &LatticeFn) -> Result<LatticeFn> {
    let lat = f.lattice().clone();
    let q = lat.q;
    let n = lat.depth;
    let w = kernel_weights(nu, q, n + 1);
    let qnu = rpowf(q, r(nu));
    // powers q^k and the weighted summands q^k w_k, built once: the inner
    // loop below visits O(n^2) terms and a powi per term dominates it
    let mut qp = Vec::with_capacity(w.len() + 1);
    let mut qk = r(1.0);
    for _ in 0..=w.len() {
        qp.push(qk);
        qk *= q;
    }
    let qw: Vec<Real> = w.iter().zip(&qp).map(|(&wk, &qk)| qk * wk).collect();
    // cumulative weighted tails: tail[k] = sum_{i >= k} q^i w_i
    let mut tail = vec![r(0.0); w.len() + 1];
    for i in (0..w.len()).rev() {
        tail[i] = tail[i + 1] + qw[i];
    }
    let pref = rpowf(1.0 - q, r(nu));
    // x_j^nu = a^nu (q^nu)^j, kept as a running product so that per-point
    // errors stay multiplicative and cancel in ratios
    let mut xnu = rpowf(lat.a, r(nu));
    let mut values = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let x = lat.point(j);
        let kmax = n - j;
        let mut acc = r(0.0);
        for k in (0..=kmax).rev() {
            acc += qw[k] * f.value(j + k);
        }
        // complete the tail below the lattice floor
        if let Some(g) = f.extend_fn() {
            let mut t = x * qp[kmax + 1];
            let mut qk = qp[kmax + 1];
            let mut qnuk = qnu * qp[kmax + 1];
            let mut wk = w[(kmax + 1).min(w.len() - 1)];
            let mut k = kmax + 1;
            loop {
                let term = qk * wk * g(t);
                acc += term;
                if term.abs() <= TAIL_TOL * f64::from(acc.abs().max(r(1e-300))) {
                    break;
                }
                if k - kmax > TAIL_CAP {
                    return Err(QError::NonConvergent(format!(
                        "left kernel series tail at point index {j}"
                    )));
                }
                wk = rdiv(wk * (1.0 - qnuk), 1.0 - q * qk);
                qk *= q;
                qnuk *= q;
                t *= q;
                k += 1;
            }
        } else if let Some(z) = f.zero_limit() {
            if kmax + 1 < tail.len() {
                acc += z * tail[kmax + 1];
            }
        } else if kmax >= 2 {
            // no extension: the summand must be decaying
            let t_last = (qw[kmax] * f.value(n)).abs();
            let t_prev = (qw[kmax - 1] * f.value(n - 1)).abs();
            if t_last > t_prev && t_last > 1e-13 * f64::from(acc.abs().max(r(1.0))) {
                return Err(QError::NonDecayingSummand(j));
            }
        }
        values.push(xnu * pref * acc);
        xnu *= qnu;
    }
    // x^nu forces the output to 0 at the origin when nu > 0; a negative
    // order generically blows up there
    let zero_limit = if nu > 0.0 && f.zero_limit().is_some() {
        Some(r(0.0))
    } else {
        None
    };
    let extend = f.extend_fn().map(|g| {
        let g = g.clone();
        Arc::new(move |x: Real| series_left_point(nu, q, &g, x)) as ScalarFn
    });
    Ok(LatticeFn::with_extend(&lat, values, zero_limit, extend))
}

/// Right kernel series of order `nu != 0`: at `x = a q^m` the exact finite
/// sum
///
/// `a^nu (1-q)^nu sum_{j=0}^m q^{j nu} ((q^nu;q)_{m-j}/(q;q)_{m-j}) f(a q^j)`.
fn series_right(nu: f64, f: &LatticeFn) -> Result<LatticeFn> {
    let lat = f.lattice().clone();
    let q = lat.q;
    let n = lat.depth;
    let w = kernel_weights(nu, q, n + 1);
    let qnu = rpowf(q, r(nu));
    let pref = rpowf(lat.a, r(nu)) * rpowf(1.0 - q, r(nu));
    // e_j = q^(j nu) f_j
    let mut e = Vec::with_capacity(n + 1);
    let mut qjn = r(1.0);
    for j in 0..=n {
        e.push(qjn * f.value(j));
        qjn *= qnu;
    }
    let mut values = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = r(0.0);
        for j in 0..=m {
            acc += e[j] * w[m - j];
        }
        values.push(pref * acc);
    }
    // q-regular limit at zero (only meaningful for positive order): the
    // weights tend to (q^nu; q)_inf / (q; q)_inf
    let zero_limit = if nu > 0.0 {
        let w_inf = *w.last().unwrap();
        let mut acc = e.iter().fold(r(0.0), |s, &t| s + t);
        let mut ok = true;
        if let Some(g) = f.extend_fn() {
            let mut x = lat.point(n) * q;
            let mut qjn = qnu.powi(n as i32 + 1);
            for _ in 0..TAIL_CAP {
                let term = qjn * g(x);
                acc += term;
                if term.abs() <= TAIL_TOL * f64::from(acc.abs().max(r(1e-300))) {
                    break;
                }
                x *= q;
                qjn *= qnu;
            }
        } else if let Some(z) = f.zero_limit() {
            acc += rdiv(z * qnu.powi(n as i32 + 1), 1.0 - qnu);
        } else {
            ok = false;
        }
        if ok {
            Some(pref * w_inf * acc)
        } else {
            None
        }
    } else {
        None
    };
    // the finite sum extends below the lattice floor whenever f does: the
    // argument is resolved back to its lattice exponent and the sum over
    // j > depth drawn from f's analytic extension
    let extend = f.extend_fn().map(|g| {
        let g = g.clone();
        let f_values = f.values().to_vec();
        let a = lat.a;
        let ln_q = f64::from(q).ln();
        Arc::new(move |x: Real| {
            let t = (f64::from(x) / f64::from(a)).ln() / ln_q;
            // arguments at or below underflow depth have reached the limit
            if t > TAIL_CAP as f64 {
                return zero_limit.unwrap_or_else(|| r(f64::NAN));
            }
            let m = t.round();
            if !(m >= 0.0) || (t - m).abs() > 1e-6 {
                return r(f64::NAN);
            }
            let m = m as usize;
            let w = kernel_weights(nu, q, m + 1);
            let mut acc = r(0.0);
            let mut qjn = r(1.0);
            let mut xj = a;
            for j in 0..=m {
                let fj = if j < f_values.len() { f_values[j] } else { g(xj) };
                acc += qjn * fj * w[m - j];
                qjn *= qnu;
                xj *= q;
            }
            pref * acc
        }) as ScalarFn
    });
    Ok(LatticeFn::with_extend(&lat, values, zero_limit, extend))
}

/// Left Riemann-Liouville fractional q-integral `I^alpha_{q,0+}`.
///
/// `alpha = 0` is the identity. All kernel weights are strictly positive, so
/// `f >= 0` implies `ileft(f) >= 0`.
pub fn ileft(order: FracOrder, f: &LatticeFn) -> Result<LatticeFn> {
    let alpha = order.value();
    if alpha == 0.0 {
        return Ok(f.clone());
    }
    series_left(alpha, f)
}

/// Right Riemann-Liouville fractional q-integral `I^alpha_{q,a-}`: an exact
/// finite sum at every lattice point. Its value at the off-lattice point
/// `a/q` is 0 (the empty Jackson range). `alpha = 0` is the identity.
pub fn iright(order: FracOrder, f: &LatticeFn) -> Result<LatticeFn> {
    let alpha = order.value();
    if alpha == 0.0 {
        return Ok(f.clone());
    }
    series_right(alpha, f)
}

/// Left Riemann-Liouville fractional q-derivative
/// `D^alpha_{q,0+} = D_q I^{1-alpha}_{q,0+}`, evaluated as the order
/// `-alpha` kernel series.
pub fn dleft_rl(order: FracOrder, f: &LatticeFn) -> Result<LatticeFn> {
    let alpha = order.require_derivative_range()?;
    series_left(-alpha, f)
}

/// Right Riemann-Liouville fractional q-derivative
/// `D^alpha_{q,a-} = (-1/q) D_{1/q} I^{1-alpha}_{q,a-}`, evaluated as the
/// order `-alpha` kernel series. The policy supplies the value of
/// `I^{1-alpha} f` at `a/q`, which only enters the output at `x = a`.
pub fn dright_rl(order: FracOrder, f: &LatticeFn, policy: RightEdgePolicy) -> Result<LatticeFn> {
    let alpha = order.require_derivative_range()?;
    let mut out = series_right(-alpha, f)?;
    let e = policy.edge_value();
    if e != 0.0 {
        let lat = f.lattice();
        let mut values = out.values().to_vec();
        values[0] -= rdiv(r(e), (1.0 - lat.q) * lat.a);
        out = LatticeFn::with_extend(lat, values, None, None);
    }
    Ok(out)
}

/// Left Caputo fractional q-derivative
/// `cD^alpha_{q,0+} = I^{1-alpha}_{q,0+} D_q`.
///
/// For q-regular operands it is evaluated through the equivalent stable form
/// `D^alpha_{q,0+} [f - f(0)]`; operands carrying only an analytic extension
/// fall back to the defining composition.
pub fn caputo_left(order: FracOrder, f: &LatticeFn) -> Result<LatticeFn> {
    let alpha = order.require_derivative_range()?;
    if let Some(z) = f.zero_limit() {
        let shifted = if z == 0.0 { f.clone() } else { f.add_scalar(-z) };
        let out = series_left(-alpha, &shifted)?;
        // the order -alpha series carries no zero limit of its own; recover
        // one from the settled deep values when they stabilize
        let zero_limit = stabilized_tail(out.values());
        Ok(LatticeFn::with_extend(
            f.lattice(),
            out.values().to_vec(),
            zero_limit,
            out.extend_fn().cloned(),
        ))
    } else if f.extend_fn().is_some() {
        let df = d_q(f)?;
        series_left(1.0 - alpha, &df)
    } else {
        Err(QError::NoZeroLimit("caputo_left operand".into()))
    }
}

/// Right Caputo fractional q-derivative
/// `cD^alpha_{q,a-} = (-1/q) I^{1-alpha}_{q,a-} D_{1/q}`.
///
/// Under the zero extension it coincides with the Riemann-Liouville form on
/// the lattice; a user-supplied `f(a/q) = E` adds the closed-form correction
/// `-E a^{-alpha} (1-q)^{-alpha} (q^{1-alpha}; q)_m / (q; q)_m` at `a q^m`.
pub fn caputo_right(order: FracOrder, f: &LatticeFn, policy: RightEdgePolicy) -> Result<LatticeFn> {
    let alpha = order.require_derivative_range()?;
    let mut out = series_right(-alpha, f)?;
    let e = policy.edge_value();
    if e != 0.0 {
        let lat = f.lattice();
        let q = lat.q;
        let w = kernel_weights(1.0 - alpha, q, lat.depth + 1);
        let c = e * rpowf(lat.a, r(-alpha)) * rpowf(1.0 - q, r(-alpha));
        let values = out
            .values()
            .iter()
            .enumerate()
            .map(|(m, &v)| v - c * w[m])
            .collect();
        out = LatticeFn::with_extend(lat, values, None, None);
    }
    Ok(out)
}

/// Residuals of the three fractional integration-by-parts identities.
#[derive(Debug, Clone, Copy)]
pub struct IbpResiduals {
    /// `|<g, I^a_{0+} f> - <f, I^a_{a-} g>|`
    pub integral_adjointness: Real,
    /// left RL derivative against right Caputo derivative
    pub rl_left_caputo_right: Real,
    /// left Caputo derivative against right RL derivative
    pub caputo_left_rl_right: Real,
}

/// Absolute residuals of the fractional integration-by-parts identities for
/// an admissible pair `(f, g)`.
pub fn frac_ibp_residuals(
    order: FracOrder,
    f: &LatticeFn,
    g: &LatticeFn,
    policy: RightEdgePolicy,
) -> Result<IbpResiduals> {
    let alpha = order.require_derivative_range()?;
    let complement = FracOrder::integral(1.0 - alpha)?;

    // adjointness of the integral pair: <g, ileft(alpha, f)> = <f, iright(alpha, g)>
    let lhs_adj = jackson_int_full(&g.mul(&ileft(order, f)?)?)?;
    let rhs_adj = jackson_int_full(&f.mul(&iright(order, g)?)?)?;
    let integral_adjointness = (lhs_adj - rhs_adj).abs();

    // int f D^a_{0+} g = [-f(x/q) I^{1-a}_{0+} g(x)]_0^a + int g cD^a_{a-} f
    let lhs_rl = jackson_int_full(&f.mul(&dleft_rl(order, g)?)?)?;
    let ileft_g = ileft(complement, g)?;
    let f_edge = policy.edge_value();
    // the boundary bracket at 0 vanishes: I^{1-a}_{0+} g (0) = 0
    let bracket_rl = -f_edge * ileft_g.value(0);
    let rhs_rl = jackson_int_full(&g.mul(&caputo_right(order, f, policy)?)?)?;
    let rl_left_caputo_right = (lhs_rl - bracket_rl - rhs_rl).abs();

    // int g cD^a_{0+} f = [(I^{1-a}_{a-} g)(x/q) f(x)]_0^a + int f D^a_{a-} g
    let lhs_c = jackson_int_full(&g.mul(&caputo_left(order, f)?)?)?;
    let iright_g = iright(complement, g)?;
    let g_at_zero = iright_g
        .zero_limit()
        .ok_or_else(|| QError::NoZeroLimit("right integral of g has no zero limit".into()))?;
    let f0 = f
        .zero_limit()
        .ok_or_else(|| QError::NoZeroLimit("ibp needs q-regular f".into()))?;
    let bracket_c = policy.edge_value() * f.value(0) - g_at_zero * f0;
    let rhs_c = jackson_int_full(&f.mul(&dright_rl(order, g, policy)?)?)?;
    let caputo_left_rl_right = (lhs_c - bracket_c - rhs_c).abs();

    Ok(IbpResiduals {
        integral_adjointness,
        rl_left_caputo_right,
        caputo_left_rl_right,
    })
}

/// The closed-form constants of the fractional-integral norm inequalities.
#[derive(Debug, Clone, Copy)]
pub struct BoundConstants {
    /// `||I^a_{0+} f|| <= (a^alpha / Gamma_q(alpha+1)) ||f||`
    pub sup_left: Real,
    /// `M_{alpha,1}`: L1 -> L1 constant of the left integral
    pub m_alpha1: Real,
    /// `M_{alpha,2}`: L2 -> L2 constant of the left integral
    pub m_alpha2: Real,
    /// `M~_alpha`: L2 -> sup constant of the left integral (alpha > 1/2)
    pub m_tilde: Option<Real>,
    /// `K_alpha = sqrt(a) M_{alpha,2}`: sup -> L2 constant
    pub k_alpha: Real,
    /// `c_{alpha,0}`: sup -> sup constant of the right integral
    pub c_alpha0: Real,
    /// L1 -> L1 constant of the right integral (alpha < 1)
    pub right_l1: Real,
    /// L2 -> L2 constant of the right integral (branch by alpha vs 1/2)
    pub right_l2: Option<Real>,
    /// `c_alpha` (alpha > 1/2)
    pub c_alpha: Option<Real>,
    /// `gamma_alpha` (1/4 < alpha < 1/2)
    pub gamma_alpha: Option<Real>,
    /// `sigma_alpha` (alpha < 1/2)
    pub sigma_alpha: Option<Real>,
}

/// Jackson quadrature of `int_0^1 (q xi; q)_{alpha-1}^2 d_q xi`.
pub fn kernel_square_integral(alpha: f64, ctx: &QContext) -> Result<Real> {
    let q = ctx.q;
    let mut acc = r(0.0);
    let mut qk = r(1.0);
    for k in 0..TAIL_CAP {
        let p = qcore::qpoch_real(q * qk, alpha - 1.0, ctx)?;
        let term = qk * p * p;
        acc += term;
        qk *= q;
        if k > 4 && term.abs() < 1e-33 * f64::from(acc.abs().max(r(1.0))) {
            break;
        }
    }
    Ok((1.0 - q) * acc)
}

/// Compute every bound constant valid for this `alpha`; constants whose
/// validity range excludes `alpha` come back as `None`.
pub fn bound_constants(order: FracOrder, a: f64, ctx: &QContext) -> Result<BoundConstants> {
    let alpha = order.value();
    if !(alpha > 0.0) {
        return Err(QError::OutOfRange("bound constants need alpha > 0".into()));
    }
    let q = ctx.q;
    let ar = r(a);
    let qq_inf = qcore::qpoch_inf(q, ctx)?;
    let qa_inf = qcore::qpoch_inf(rpowf(q, r(alpha)), ctx)?;
    let gamma_a = qcore::q_gamma(alpha, ctx)?;
    let gamma_a1 = qcore::q_gamma(alpha + 1.0, ctx)?;
    let ker_sq = kernel_square_integral(alpha, ctx)?.sqrt();

    let sup_left = rdiv(rpowf(ar, r(alpha)), gamma_a1);
    let m_alpha1 = rdiv(
        rpowf(ar, r(alpha)) * rpowf(1.0 - q, r(alpha)),
        (1.0 - rpowf(q, r(alpha))) * qq_inf,
    );
    let m_alpha2 = rdiv(rpowf(ar, r(alpha)), gamma_a)
        * rdiv(1.0 - q, 1.0 - rpowf(q, r(2.0 * alpha))).sqrt()
        * ker_sq;
    let m_tilde = if alpha > 0.5 {
        Some(rdiv(rpowf(ar, r(alpha - 0.5)), gamma_a) * ker_sq)
    } else {
        None
    };
    let k_alpha = ar.sqrt() * m_alpha2;
    let c_alpha0 = m_alpha1;
    let right_l1 = if alpha < 1.0 {
        m_alpha1
    } else {
        rdiv(rpowf(ar, r(alpha - 1.0)) * rpowf(1.0 - q, r(alpha - 1.0)), qq_inf)
    };
    // alpha = 1/2 is excluded from the L2 bounds of the right integral
    let right_l2 = if (alpha - 0.5).abs() < 1e-12 {
        None
    } else if alpha < 0.5 {
        Some(rdiv(
            rpowf(1.0 - q, r(alpha - 0.5)) * rpowf(ar, r(alpha)),
            (1.0 - rpowf(q, r(1.0 - 2.0 * alpha))).sqrt() * qq_inf,
        ))
    } else {
        Some(rdiv(
            rpowf(1.0 - q, r(alpha)) * rpowf(ar, r(alpha)),
            qq_inf
                * ((1.0 - rpowf(q, r(2.0 * alpha - 1.0))) * (1.0 - rpowf(q, r(2.0 * alpha))))
                    .sqrt(),
        ))
    };
    let c_alpha = if alpha > 0.5 {
        Some(rdiv(
            rpowf(1.0 - q, r(alpha - 0.5)),
            qq_inf * (1.0 - rpowf(q, r(2.0 * alpha - 1.0))).sqrt(),
        ))
    } else {
        None
    };
    let gamma_alpha = if alpha > 0.25 && alpha < 0.5 {
        Some(
            rdiv(
                qcore::q_gamma(alpha + 0.5, ctx)?,
                qa_inf * qcore::q_gamma(2.0 * alpha + 0.5, ctx)?,
            ) * rdiv(1.0 - q, 1.0 - rpowf(q, r(1.0 - 2.0 * alpha))).sqrt(),
        )
    } else {
        None
    };
    let sigma_alpha = if alpha < 0.5 {
        Some(rdiv(
            rdiv(1.0 - q, 1.0 - rpowf(q, r(1.0 - 2.0 * alpha))).sqrt(),
            qa_inf,
        ))
    } else {
        None
    };

    Ok(BoundConstants {
        sup_left,
        m_alpha1,
        m_alpha2,
        m_tilde,
        k_alpha,
        c_alpha0,
        right_l1,
        right_l2,
        c_alpha,
        gamma_alpha,
        sigma_alpha,
    })
}
