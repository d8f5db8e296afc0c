//! Scalar q-special functions: q-shifted factorials (integer, infinite, and
//! real exponent), the q-gamma and q-beta functions, q-brackets, and the basic
//! hypergeometric series 2phi1.
//!
//! All routines compute in the extended-precision scalar [`Real`] against a
//! shared [`QContext`] that carries the base `q` and the truncation
//! tolerances for infinite products and series.

use crate::error::{QError, Result};
use crate::real::{r, rdiv, rpowf, rpowi, Real};

/// Hard cap on product/series truncation loops.
const ITER_CAP: usize = 1_000_000;

/// Absolute window around nonpositive integers treated as q-gamma poles.
const GAMMA_POLE_WINDOW: f64 = 1e-9;

/// Global numeric configuration: the base `q` and truncation tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    /// The base of the q-calculus, strictly inside (0, 1).
    pub q: Real,
    /// Truncation tolerance for infinite products.
    pub prod_tail_tol: f64,
    /// Truncation tolerance for infinite series.
    pub series_tol: f64,
    /// Default truncation depth for geometric lattices built from this context.
    pub default_lattice_depth: usize,
}

impl QContext {
    /// Build a context with default tolerances (1e-30 product tail, 1e-30
    /// series tail) and the default lattice depth: the smallest `N` with
    /// `q^(N+1) < 1e-14`.
    pub fn new(q: f64) -> Result<Self> {
        Self::with_tols(q, 1e-30, 1e-30)
    }

    /// Build a context with explicit truncation tolerances.
    pub fn with_tols(q: f64, prod_tail_tol: f64, series_tol: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) || !q.is_finite() {
            return Err(QError::InvalidParameter(format!(
                "q must lie strictly in (0, 1), got {q}"
            )));
        }
        if !(prod_tail_tol > 0.0) || !(series_tol > 0.0) {
            return Err(QError::InvalidParameter(
                "tolerances must be positive".into(),
            ));
        }
        let default_lattice_depth = default_depth(q, 1e-14);
        Ok(Self {
            q: r(q),
            prod_tail_tol,
            series_tol,
            default_lattice_depth,
        })
    }
}

/// Smallest `n` with `q^(n+1) < floor`.
pub fn default_depth(q: f64, floor: f64) -> usize {
    let mut n = 0usize;
    let mut p = q;
    while p >= floor && n < ITER_CAP {
        p *= q;
        n += 1;
    }
    n
}

/// Finite q-shifted factorial `(z; q)_n = prod_{j=0}^{n-1} (1 - z q^j)`.
pub fn qpoch_n(z: Real, n: usize, ctx: &QContext) -> Real {
    let mut acc = r(1.0);
    let mut zq = z;
    for _ in 0..n {
        acc *= 1.0 - zq;
        zq *= ctx.q;
    }
    acc
}

/// Infinite q-shifted factorial `(z; q)_inf`, truncated once the geometric
/// tail bound `|z| q^J / (1 - q)` falls below the product tolerance.
pub fn qpoch_inf(z: Real, ctx: &QContext) -> Result<Real> {
    let q = ctx.q;
    let mut acc = r(1.0);
    let mut zq = z;
    let mut j = 0usize;
    while zq.abs() / (1.0 - q) >= ctx.prod_tail_tol {
        acc *= 1.0 - zq;
        zq *= q;
        j += 1;
        if j >= ITER_CAP {
            return Err(QError::NonConvergent(format!(
                "(z; q)_inf tail did not fall below tolerance for z = {}",
                f64::from(z)
            )));
        }
    }
    Ok(acc)
}

/// Real-exponent q-shifted factorial `(z; q)_nu := (z; q)_inf / (z q^nu; q)_inf`.
///
/// For nonnegative integer `nu` this collapses to the finite product. The two
/// infinite products share one truncation depth so that lattice kernel weights
/// like `(q^(m+1); q)_nu` come out cancellation-free and positive.
pub fn qpoch_real(z: Real, nu: f64, ctx: &QContext) -> Result<Real> {
    let rounded = nu.round();
    if (nu - rounded).abs() < 1e-12 && rounded >= 0.0 && rounded <= usize::MAX as f64 {
        return Ok(qpoch_n(z, rounded as usize, ctx));
    }
    let q = ctx.q;
    let znu = z * rpowf(q, r(nu));
    // Shared truncation depth from the larger of the two leading factors.
    let lead = z.abs().max(znu.abs());
    let mut depth = 0usize;
    let mut tail = lead;
    while tail / (1.0 - q) >= ctx.prod_tail_tol {
        tail *= q;
        depth += 1;
        if depth >= ITER_CAP {
            return Err(QError::NonConvergent(format!(
                "(z; q)_nu products did not converge for z = {}, nu = {nu}",
                f64::from(z)
            )));
        }
    }
    let mut num = r(1.0);
    let mut den = r(1.0);
    let mut zj = z;
    let mut znuj = znu;
    for _ in 0..depth {
        num *= 1.0 - zj;
        let d = 1.0 - znuj;
        if d.abs() < 1e-14 {
            return Err(QError::PochhammerSingular {
                z: f64::from(z),
                nu,
            });
        }
        den *= d;
        zj *= q;
        znuj *= q;
    }
    if den == 0.0 {
        return Err(QError::PochhammerSingular {
            z: f64::from(z),
            nu,
        });
    }
    Ok(rdiv(num, den))
}

/// q-gamma function `Gamma_q(x) = (q; q)_inf (1 - q)^(1 - x) / (q^x; q)_inf`.
pub fn q_gamma(x: f64, ctx: &QContext) -> Result<Real> {
    let rounded = x.round();
    if rounded <= 0.0 && (x - rounded).abs() < GAMMA_POLE_WINDOW {
        return Err(QError::GammaPole(x));
    }
    let q = ctx.q;
    let num = qpoch_inf(q, ctx)?;
    let den = qpoch_inf(rpowf(q, r(x)), ctx)?;
    if den == 0.0 {
        return Err(QError::GammaPole(x));
    }
    // the exponent 1 - x is formed in double-double so that no rounding of
    // the parameter leaks into the power
    Ok(rdiv(num * rpowf(1.0 - q, 1.0 - r(x)), den))
}

/// q-beta function `B_q(s, t) = Gamma_q(s) Gamma_q(t) / Gamma_q(s + t)`.
pub fn q_beta(s: f64, t: f64, ctx: &QContext) -> Result<Real> {
    Ok(rdiv(q_gamma(s, ctx)? * q_gamma(t, ctx)?, q_gamma(s + t, ctx)?))
}

/// q-bracket `[beta] = (1 - q^beta) / (1 - q)`.
pub fn q_bracket(beta: f64, ctx: &QContext) -> Real {
    rdiv(1.0 - rpowf(ctx.q, r(beta)), 1.0 - ctx.q)
}

/// Basic hypergeometric series
/// `2phi1(a, b; c; q, z) = sum_k ((a;q)_k (b;q)_k) / ((q;q)_k (c;q)_k) z^k`.
///
/// If `a = q^(-n)` for a nonnegative integer `n` the series terminates and is
/// summed exactly in `n + 1` terms; otherwise `|z| < 1` is required and the
/// series is truncated once the term magnitude falls below the series
/// tolerance.
pub fn phi21(a: Real, b: Real, c: Real, z: Real, ctx: &QContext) -> Result<Real> {
    if let Some(n) = terminating_order(a, ctx.q) {
        return phi21_terminating(n, b, c, z, ctx);
    }
    if z.abs() >= 1.0 {
        return Err(QError::NonConvergent(format!(
            "non-terminating 2phi1 requires |z| < 1, got z = {}",
            f64::from(z)
        )));
    }
    let q = ctx.q;
    let mut acc = r(1.0);
    let mut term = r(1.0);
    let mut aq = a;
    let mut bq = b;
    let mut cq = c;
    let mut qk1 = q;
    for k in 0..ITER_CAP {
        let den = (1.0 - qk1) * (1.0 - cq);
        if den.abs() < 1e-300 {
            return Err(QError::InvalidParameter(format!(
                "2phi1 parameter pole: c = {} hits q^(-{k})",
                f64::from(c)
            )));
        }
        term *= rdiv((1.0 - aq) * (1.0 - bq), den) * z;
        acc += term;
        if term.abs() < ctx.series_tol * f64::from(acc.abs().max(r(1.0))) {
            return Ok(acc);
        }
        aq *= q;
        bq *= q;
        cq *= q;
        qk1 *= q;
    }
    Err(QError::NonConvergent("2phi1 series did not converge".into()))
}

/// Terminating 2phi1 with first parameter `q^(-n)`, summed exactly.
pub fn phi21_terminating(n: usize, b: Real, c: Real, z: Real, ctx: &QContext) -> Result<Real> {
    let q = ctx.q;
    let mut acc = r(1.0);
    let mut term = r(1.0);
    for k in 0..n {
        // factor (1 - q^(k - n)) from (q^(-n); q)_k
        let afac = 1.0 - rpowi(q, k as i32 - n as i32);
        let den = (1.0 - q.powi(k as i32 + 1)) * (1.0 - c * q.powi(k as i32));
        if den.abs() < 1e-300 {
            return Err(QError::InvalidParameter(format!(
                "terminating 2phi1 parameter pole: c = {} hits q^(-{k})",
                f64::from(c)
            )));
        }
        term *= rdiv(afac * (1.0 - b * q.powi(k as i32)), den) * z;
        acc += term;
    }
    Ok(acc)
}

/// Detect whether `a = q^(-n)` for some nonnegative integer `n`.
fn terminating_order(a: Real, q: Real) -> Option<usize> {
    let af = f64::from(a);
    if af <= 0.0 {
        return None;
    }
    let n = -(af.ln() / f64::from(q).ln());
    let rounded = n.round();
    if rounded < -0.25 || rounded > 10_000.0 {
        return None;
    }
    let n_int = rounded.max(0.0) as usize;
    let exact = rpowi(q, -(n_int as i32));
    if f64::from(((a - exact) / exact).abs()) < 1e-10 {
        Some(n_int)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rrecip;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn context_rejects_bad_q() {
        assert!(QContext::new(0.0).is_err());
        assert!(QContext::new(1.0).is_err());
        assert!(QContext::new(-0.5).is_err());
        assert!(QContext::new(1.5).is_err());
        assert!(QContext::new(0.5).is_ok());
    }

    #[test]
    fn qpoch_n_small_cases() {
        let c = ctx(0.5);
        assert_eq!(qpoch_n(r(3.7), 0, &c), 1.0);
        assert!((qpoch_n(r(0.5), 1, &c) - 0.5).abs() < 1e-15);
        // (q; q)_2 = (1 - 0.5)(1 - 0.25) = 0.375
        assert!((qpoch_n(r(0.5), 2, &c) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn qpoch_inf_basics() {
        let c = ctx(0.5);
        assert_eq!(qpoch_inf(r(0.0), &c).unwrap(), 1.0);
        assert_eq!(qpoch_inf(r(1.0), &c).unwrap(), 0.0);
        // oracle: direct product of (1 - 0.5^(j+1)) to machine tolerance
        let mut oracle = 1.0f64;
        for j in 1..60 {
            oracle *= 1.0 - 0.5f64.powi(j);
        }
        let got = qpoch_inf(r(0.5), &c).unwrap();
        assert!(
            (got - oracle).abs() < 1e-13,
            "got {got}, oracle {oracle}"
        );
        assert!((got - 0.288788095087).abs() < 1e-10);
    }

    #[test]
    fn qpoch_real_collapses_to_integer_orders() {
        let c = ctx(0.5);
        for &z in &[0.3, -0.7, 0.9] {
            for n in 0..6usize {
                let exact = qpoch_n(r(z), n, &c);
                let real = qpoch_real(r(z), n as f64, &c).unwrap();
                assert!(
                    (real - exact).abs() <= 1e-12 * f64::from(exact.abs().max(r(1.0))),
                    "z={z} n={n}: {real} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn qpoch_real_zero_at_one() {
        let c = ctx(0.5);
        assert_eq!(qpoch_real(r(1.0), 0.7, &c).unwrap(), 0.0);
    }

    #[test]
    fn qpoch_real_ratio_cross_check() {
        let c = ctx(0.5);
        // (q^2; q)_0.5 = (q^2; q)_inf / (q^2.5; q)_inf
        let lhs = qpoch_real(r(0.25), 0.5, &c).unwrap();
        let rhs = rdiv(
            qpoch_inf(r(0.25), &c).unwrap(),
            qpoch_inf(rpowf(r(0.5), r(2.5)), &c).unwrap(),
        );
        assert!((lhs - rhs).abs() < 1e-25 * f64::from(rhs.abs()));
    }

    #[test]
    fn qpoch_real_splitting_identity() {
        // (z; q)_{mu+nu} = (z; q)_mu (z q^mu; q)_nu
        let c = ctx(0.5);
        for &(mu, nu) in &[(0.3, 0.9), (1.2, 0.45), (-0.4, 0.8), (0.6, -0.25)] {
            for &z in &[0.2, 0.5, -0.3] {
                let lhs = qpoch_real(r(z), mu + nu, &c).unwrap();
                let rhs = qpoch_real(r(z), mu, &c).unwrap()
                    * qpoch_real(r(z) * rpowf(c.q, r(mu)), nu, &c).unwrap();
                // mu + nu is rounded in f64, which shifts the order by
                // ~1e-16 before the identity is even stated
                assert!(
                    (lhs - rhs).abs() <= 5e-15 * f64::from(lhs.abs().max(r(1.0))),
                    "mu={mu} nu={nu} z={z}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn q_gamma_small_integers() {
        let c = ctx(0.5);
        assert!((q_gamma(1.0, &c).unwrap() - 1.0).abs() < 1e-25);
        assert!((q_gamma(2.0, &c).unwrap() - 1.0).abs() < 1e-25);
        // Gamma_q(3) = [2]_q = 1 + q = 1.5 at q = 0.5
        assert!((q_gamma(3.0, &c).unwrap() - 1.5).abs() < 1e-25);
    }

    #[test]
    fn q_gamma_recurrence() {
        for &q in &[0.3, 0.5, 0.7] {
            let c = ctx(q);
            for &x in &[0.1, 0.5, 1.3, 2.7] {
                let lhs = q_gamma(x + 1.0, &c).unwrap();
                let rhs = q_bracket(x, &c) * q_gamma(x, &c).unwrap();
                // x + 1 is rounded in f64 before reaching q_gamma
                assert!(
                    ((lhs - rhs) / rhs).abs() < 5e-15,
                    "q={q} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn q_gamma_pole_rejection() {
        let c = ctx(0.5);
        assert!(q_gamma(0.0, &c).is_err());
        assert!(q_gamma(-2.0, &c).is_err());
        assert!(q_gamma(-1.0 + 1e-12, &c).is_err());
    }

    #[test]
    fn q_beta_symmetry_and_special_value() {
        let c = ctx(0.5);
        let b1 = q_beta(0.7, 1.9, &c).unwrap();
        let b2 = q_beta(1.9, 0.7, &c).unwrap();
        assert!((b1 - b2).abs() < 1e-28 * f64::from(b1.abs()));
        // B_q(1, t) = 1/[t]_q
        for &t in &[0.4, 1.3, 2.6] {
            let lhs = q_beta(1.0, t, &c).unwrap();
            let rhs = rrecip(q_bracket(t, &c));
            // 1 + t is rounded in f64 inside the beta quotient
            assert!((lhs - rhs).abs() < 5e-15 * f64::from(rhs.abs()));
        }
    }

    #[test]
    fn q_bracket_values() {
        let c = ctx(0.5);
        assert_eq!(q_bracket(0.0, &c), 0.0);
        assert!((q_bracket(1.0, &c) - 1.0).abs() < 1e-25);
        assert!((q_bracket(2.0, &c) - 1.5).abs() < 1e-25);
        // strictly increasing in beta
        let mut prev = f64::NEG_INFINITY;
        for i in 0..20 {
            let v = f64::from(q_bracket(0.3 * i as f64, &c));
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn phi21_trivial_cases() {
        let c = ctx(0.5);
        // z = 0: only the k = 0 term survives
        assert_eq!(phi21(r(0.3), r(0.7), r(0.9), r(0.0), &c).unwrap(), 1.0);
        // a = q^0 = 1 terminates immediately
        assert_eq!(phi21(r(1.0), r(0.7), r(0.9), r(0.4), &c).unwrap(), 1.0);
    }

    #[test]
    fn phi21_terminating_is_polynomial() {
        // evaluation at n + 2 points interpolates exactly to degree n
        let c = ctx(0.5);
        let n = 3usize;
        let b = r(0.3);
        let cc = r(0.8);
        // a dyadic grid keeps the spacing exactly uniform in f64, so the
        // order-(n+1) differences of a degree-n polynomial cancel exactly
        let xs: Vec<f64> = (1..=n + 2).map(|i| 0.125 * i as f64).collect();
        let ys: Vec<Real> = xs
            .iter()
            .map(|&x| phi21_terminating(n, b, cc, r(x), &c).unwrap())
            .collect();
        // finite differences of order n + 1 of a degree-n polynomial on a
        // uniform grid vanish
        let mut diff = ys.clone();
        for _ in 0..n + 1 {
            diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        }
        assert!(diff[0].abs() < 1e-28, "degree-{n} check: {}", diff[0]);
    }

    #[test]
    fn phi21_nonconvergent_rejected() {
        let c = ctx(0.5);
        assert!(phi21(r(0.3), r(0.7), r(0.9), r(1.2), &c).is_err());
    }

    #[test]
    fn phi21_worked_gamma_ratio_identity() {
        // 2phi1(q^(-m), q^(mu+1); q^(1-m-alpha); q, q) appears in the closed
        // form of the right fractional integral of a power-law weight:
        //   b^(alpha+mu) (1-q)^alpha (q^alpha; q)_m / (q; q)_m (q; q)_mu
        //     * 2phi1(...) = Gamma_q(mu+1)/Gamma_q(mu+alpha+1)
        //                    * b^(alpha+mu) (q^(m+1); q)_{mu+alpha}
        let c = ctx(0.5);
        let q = c.q;
        let alpha = 0.6;
        let mu = 0.8;
        for m in 0..6usize {
            let lhs = rdiv(
                rpowf(1.0 - q, r(alpha)) * qpoch_real(rpowf(q, r(alpha)), m as f64, &c).unwrap(),
                qpoch_n(q, m, &c),
            ) * qpoch_real(q, mu, &c).unwrap()
                * phi21_terminating(
                    m,
                    rpowf(q, r(mu + 1.0)),
                    rpowf(q, r(1.0 - m as f64 - alpha)),
                    q,
                    &c,
                )
                .unwrap();
            let rhs = rdiv(
                q_gamma(mu + 1.0, &c).unwrap(),
                q_gamma(mu + alpha + 1.0, &c).unwrap(),
            ) * qpoch_real(q.powi(m as i32 + 1), mu + alpha, &c).unwrap();
            // the exponent sums (mu + 1, 1 - m - alpha, mu + alpha) are
            // rounded in f64 when the parameters are formed
            assert!(
                (lhs - rhs).abs() < 5e-15 * f64::from(rhs.abs().max(r(1.0))),
                "m={m}: {lhs} vs {rhs}"
            );
        }
    }
}
