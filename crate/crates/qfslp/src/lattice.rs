//! Truncated geometric lattices `A_{q,a} = {a q^j}`, lattice-sampled
//! functions, Jackson q-derivatives and q-integrals, norms and inner
//! products.
//!
//! A [`Lattice`] stores the points `a q^j` for `j = 0..=N` together with the
//! abstract point 0. A [`LatticeFn`] stores one value per stored point plus
//! the q-regular limit at zero when it exists; functions that blow up at 0
//! (like `x^(-alpha)`) are admitted without a zero limit. When the function
//! came from an analytic expression the closure is kept alongside the
//! samples so that infinite Jackson tails can be summed past the truncation
//! depth instead of being dropped. All values are carried in the
//! extended-precision scalar [`Real`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{QError, Result};
use crate::qcore::QContext;
use crate::real::{r, rdiv, Real};

/// Analytic extension of a sampled function, used to evaluate Jackson tails
/// below the lattice floor.
pub type ScalarFn = Arc<dyn Fn(Real) -> Real + Send + Sync>;

/// Relative floor below which infinite Jackson tails are cut.
const TAIL_TOL: f64 = 1e-33;

/// Iteration cap for closure-extended tails.
const TAIL_CAP: usize = 100_000;

/// A truncated geometric grid `{a q^j : j = 0..=N}` plus the point 0.
#[derive(Debug)]
pub struct Lattice {
    /// Base of the geometric progression, from the ambient [`QContext`].
    pub q: Real,
    /// Right endpoint `a > 0`.
    pub a: Real,
    /// Truncation depth `N`; the lattice stores `N + 1` points.
    pub depth: usize,
    points: Vec<Real>,
}

impl Lattice {
    /// Lattice with the context's default depth (smallest `N` with
    /// `q^(N+1) < 1e-14`).
    pub fn new(ctx: &QContext, a: f64) -> Result<Arc<Self>> {
        Self::with_depth(ctx, a, ctx.default_lattice_depth)
    }

    /// Lattice with an explicit truncation depth.
    pub fn with_depth(ctx: &QContext, a: f64, depth: usize) -> Result<Arc<Self>> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(QError::InvalidParameter(format!(
                "lattice endpoint a must be positive, got {a}"
            )));
        }
        if depth == 0 {
            return Err(QError::InvalidParameter(
                "lattice depth must be positive".into(),
            ));
        }
        let q = ctx.q;
        let a = r(a);
        let mut points = Vec::with_capacity(depth + 1);
        let mut x = a;
        for _ in 0..=depth {
            points.push(x);
            x *= q;
        }
        Ok(Arc::new(Self { q, a, depth, points }))
    }

    /// The point `a q^j`.
    #[inline]
    pub fn point(&self, j: usize) -> Real {
        self.points[j]
    }

    /// All stored points, decreasing from `a` to `a q^N`.
    pub fn points(&self) -> &[Real] {
        &self.points
    }

    /// Truncated Jackson tail mass `a q^(N+1)`: the quadrature error budget
    /// a unit-sup-norm function can contribute below the lattice floor.
    pub fn tail_budget(&self) -> Real {
        self.a * self.q.powi(self.depth as i32 + 1)
    }

    fn same_grid(&self, other: &Lattice) -> bool {
        self.q == other.q && self.a == other.a && self.depth == other.depth
    }
}

/// A real-valued function sampled on a [`Lattice`].
#[derive(Clone)]
pub struct LatticeFn {
    lattice: Arc<Lattice>,
    values: Vec<Real>,
    zero_limit: Option<Real>,
    extend: Option<ScalarFn>,
}

impl std::fmt::Debug for LatticeFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LatticeFn")
            .field("depth", &self.lattice.depth)
            .field("zero_limit", &self.zero_limit)
            .field("has_extend", &self.extend.is_some())
            .finish()
    }
}

impl LatticeFn {
    /// Sample a closure at every lattice point. `zero_limit` is the
    /// q-regular value at 0, or `None` for functions without one.
    pub fn sample(
        lattice: &Arc<Lattice>,
        f: ScalarFn,
        zero_limit: Option<Real>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(lattice.depth + 1);
        for (j, &x) in lattice.points().iter().enumerate() {
            let v = f(x);
            if !f64::from(v).is_finite() {
                return Err(QError::Evaluation {
                    index: j,
                    x: f64::from(x),
                    reason: format!("non-finite value {}", f64::from(v)),
                });
            }
            values.push(v);
        }
        Ok(Self {
            lattice: lattice.clone(),
            values,
            zero_limit,
            extend: Some(f),
        })
    }

    /// Wrap a raw value vector (no analytic extension).
    pub fn from_values(
        lattice: &Arc<Lattice>,
        values: Vec<Real>,
        zero_limit: Option<Real>,
    ) -> Result<Self> {
        if values.len() != lattice.depth + 1 {
            return Err(QError::InvalidParameter(format!(
                "value vector length {} does not match lattice depth {} + 1",
                values.len(),
                lattice.depth
            )));
        }
        Ok(Self {
            lattice: lattice.clone(),
            values,
            zero_limit,
            extend: None,
        })
    }

    /// Values plus an analytic extension (used by operator outputs that can
    /// evaluate themselves below the lattice floor).
    ///
    /// The extension is memoized: operator compositions stack extension
    /// closures, and without caching each level re-evaluates the one below
    /// it at the same descending lattice points, making deep compositions
    /// exponentially expensive. For q-regular functions the extension is
    /// additionally clamped to the zero limit once the argument falls
    /// [`EXTEND_DEPTH_CAP`] steps below the lattice floor: every consumer
    /// weights such points below the tail tolerance, and the clamp keeps the
    /// recursion depth of stacked extensions bounded.
    pub(crate) fn with_extend(
        lattice: &Arc<Lattice>,
        values: Vec<Real>,
        zero_limit: Option<Real>,
        extend: Option<ScalarFn>,
    ) -> Self {
        debug_assert_eq!(values.len(), lattice.depth + 1);
        let extend = extend.map(|g| {
            let g = memoize(g);
            match zero_limit {
                Some(z) => {
                    let floor = f64::from(lattice.point(lattice.depth))
                        * f64::from(lattice.q).powi(EXTEND_DEPTH_CAP);
                    Arc::new(move |x: Real| if f64::from(x) < floor { z } else { g(x) })
                        as ScalarFn
                }
                None => g,
            }
        });
        Self {
            lattice: lattice.clone(),
            values,
            zero_limit,
            extend,
        }
    }

    /// The constant function `c`.
    pub fn constant(lattice: &Arc<Lattice>, c: f64) -> Self {
        let cr = r(c);
        Self {
            lattice: lattice.clone(),
            values: vec![cr; lattice.depth + 1],
            zero_limit: Some(cr),
            extend: Some(Arc::new(move |_| cr)),
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// Value at `a q^j`.
    #[inline]
    pub fn value(&self, j: usize) -> Real {
        self.values[j]
    }

    pub fn values(&self) -> &[Real] {
        &self.values
    }

    /// The q-regular limit at 0, when present.
    pub fn zero_limit(&self) -> Option<Real> {
        self.zero_limit
    }

    /// Evaluate below the lattice floor: closure when available, zero limit
    /// otherwise.
    pub(crate) fn extend_value(&self, x: Real) -> Option<Real> {
        if let Some(f) = &self.extend {
            Some(f(x))
        } else {
            self.zero_limit
        }
    }

    pub(crate) fn extend_fn(&self) -> Option<&ScalarFn> {
        self.extend.as_ref()
    }

    /// Soft q-regularity diagnostic: `|f(a q^N) - f(0)|` when a zero limit is
    /// stored.
    pub fn regularity_gap(&self) -> Option<Real> {
        self.zero_limit
            .map(|z| (self.values[self.lattice.depth] - z).abs())
    }

    fn check_same_lattice(&self, other: &LatticeFn) -> Result<()> {
        if !self.lattice.same_grid(&other.lattice) {
            return Err(QError::InvalidParameter(
                "lattice functions live on different grids".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise combination of two lattice functions.
    fn zip(
        &self,
        other: &LatticeFn,
        op: impl Fn(Real, Real) -> Real + Send + Sync + Copy + 'static,
    ) -> Result<Self> {
        self.check_same_lattice(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| op(u, v))
            .collect();
        let zero_limit = match (self.zero_limit, other.zero_limit) {
            (Some(u), Some(v)) => Some(op(u, v)),
            _ => None,
        };
        let extend = match (&self.extend, &other.extend) {
            (Some(f), Some(g)) => {
                let (f, g) = (f.clone(), g.clone());
                Some(Arc::new(move |x: Real| op(f(x), g(x))) as ScalarFn)
            }
            _ => None,
        };
        Ok(Self {
            lattice: self.lattice.clone(),
            values,
            zero_limit,
            extend,
        })
    }

    pub fn add(&self, other: &LatticeFn) -> Result<Self> {
        self.zip(other, |u, v| u + v)
    }

    pub fn sub(&self, other: &LatticeFn) -> Result<Self> {
        self.zip(other, |u, v| u - v)
    }

    pub fn mul(&self, other: &LatticeFn) -> Result<Self> {
        self.zip(other, |u, v| u * v)
    }

    pub fn div(&self, other: &LatticeFn) -> Result<Self> {
        self.zip(other, rdiv)
    }

    pub fn scale(&self, c: Real) -> Self {
        let values = self.values.iter().map(|&v| c * v).collect();
        let extend = self.extend.as_ref().map(|f| {
            let f = f.clone();
            Arc::new(move |x: Real| c * f(x)) as ScalarFn
        });
        Self {
            lattice: self.lattice.clone(),
            values,
            zero_limit: self.zero_limit.map(|z| c * z),
            extend,
        }
    }

    pub fn abs(&self) -> Self {
        let values = self.values.iter().map(|v| v.abs()).collect();
        let extend = self.extend.as_ref().map(|f| {
            let f = f.clone();
            Arc::new(move |x: Real| f(x).abs()) as ScalarFn
        });
        Self {
            lattice: self.lattice.clone(),
            values,
            zero_limit: self.zero_limit.map(|z| z.abs()),
            extend,
        }
    }

    pub fn add_scalar(&self, c: Real) -> Self {
        let values = self.values.iter().map(|&v| v + c).collect();
        let extend = self.extend.as_ref().map(|f| {
            let f = f.clone();
            Arc::new(move |x: Real| f(x) + c) as ScalarFn
        });
        Self {
            lattice: self.lattice.clone(),
            values,
            zero_limit: self.zero_limit.map(|z| z + c),
            extend,
        }
    }

    /// `g(x) := f(qx)` on the lattice (shifts samples down one index; the
    /// bottom point is filled from the closure or zero limit).
    pub fn shift_down(&self) -> Result<Self> {
        let n = self.lattice.depth;
        let mut values = Vec::with_capacity(n + 1);
        values.extend_from_slice(&self.values[1..]);
        let below = self.lattice.point(n) * self.lattice.q;
        let bottom = self
            .extend_value(below)
            .ok_or_else(|| QError::NoZeroLimit("shift below the lattice floor".into()))?;
        values.push(bottom);
        let q = self.lattice.q;
        let extend = self.extend.as_ref().map(|f| {
            let f = f.clone();
            Arc::new(move |x: Real| f(q * x)) as ScalarFn
        });
        Ok(Self {
            lattice: self.lattice.clone(),
            values,
            zero_limit: self.zero_limit,
            extend,
        })
    }

    /// Sup norm over the stored points and the zero limit.
    pub fn sup_norm(&self) -> Real {
        let mut m = self
            .values
            .iter()
            .fold(r(0.0), |acc, v| acc.max(v.abs()));
        if let Some(z) = self.zero_limit {
            m = m.max(z.abs());
        }
        m
    }

    /// L1 norm `int_0^a |f| d_q x`.
    pub fn l1_norm(&self) -> Result<Real> {
        jackson_int_full(&self.abs())
    }

    /// L2 norm `sqrt(int_0^a f^2 d_q x)`.
    pub fn l2_norm(&self) -> Result<Real> {
        Ok(jackson_int_full(&self.mul(self)?)?.max(r(0.0)).sqrt())
    }
}

/// Jackson q-derivative `D_q f(x) = (f(x) - f(qx)) / ((1 - q) x)`.
///
/// At the last stored point the slope toward the zero limit is used, keeping
/// the output full-support; the value at 0 is the stabilized limit of the
/// derivative sequence when it settles.
pub fn d_q(f: &LatticeFn) -> Result<LatticeFn> {
    let lat = f.lattice();
    let n = lat.depth;
    if n < 1 {
        return Err(QError::InvalidParameter(
            "d_q needs at least 2 lattice points".into(),
        ));
    }
    let q = lat.q;
    let mut values = Vec::with_capacity(n + 1);
    for j in 0..n {
        let x = lat.point(j);
        values.push(rdiv(f.value(j) - f.value(j + 1), (1.0 - q) * x));
    }
    let xn = lat.point(n);
    if let Some(g) = f.extend_fn() {
        values.push(rdiv(f.value(n) - g(q * xn), (1.0 - q) * xn));
    } else if let Some(z) = f.zero_limit() {
        values.push(rdiv(f.value(n) - z, (1.0 - q) * xn));
    } else {
        return Err(QError::NoZeroLimit("d_q at the last lattice point".into()));
    }
    let zero_limit = stabilized_tail(&values);
    let extend = f.extend_fn().map(|g| {
        let g = g.clone();
        Arc::new(move |x: Real| rdiv(g(x) - g(q * x), (1.0 - q) * x)) as ScalarFn
    });
    Ok(LatticeFn {
        lattice: lat.clone(),
        values,
        zero_limit,
        extend,
    })
}

/// Backward q-derivative `D_{1/q} f(x) = (f(x) - f(x/q)) / ((1 - 1/q) x)`.
///
/// The head point `x = a` needs the off-lattice value `f(a/q)`, supplied by
/// the caller's edge policy.
pub fn d_qinv(f: &LatticeFn, head: Real) -> LatticeFn {
    let lat = f.lattice();
    let n = lat.depth;
    let q = lat.q;
    // (1 - 1/q) x = (q - 1) x / q; multiply through by q to keep the
    // quotient a single accurate division
    let mut values = Vec::with_capacity(n + 1);
    values.push(rdiv(q * (f.value(0) - head), (q - 1.0) * lat.point(0)));
    for j in 1..=n {
        values.push(rdiv(
            q * (f.value(j) - f.value(j - 1)),
            (q - 1.0) * lat.point(j),
        ));
    }
    let zero_limit = stabilized_tail(&values);
    LatticeFn {
        lattice: lat.clone(),
        values,
        zero_limit,
        extend: None,
    }
}

/// Steps below the lattice floor past which a q-regular extension is
/// clamped to its zero limit. Consumers weight a point `k` steps below the
/// floor by at most `O(q^k)`, so at this depth the clamp is exact to well
/// beyond working precision.
pub(crate) const EXTEND_DEPTH_CAP: i32 = 130;

/// Wrap a scalar extension in a point-value cache keyed by the exact
/// double-double argument.
pub(crate) fn memoize(g: ScalarFn) -> ScalarFn {
    let cache: Mutex<HashMap<(u64, u64), Real>> = Mutex::new(HashMap::new());
    Arc::new(move |x: Real| {
        let key = (x.hi().to_bits(), x.lo().to_bits());
        if let Some(&v) = cache.lock().unwrap().get(&key) {
            return v;
        }
        let v = g(x);
        cache.lock().unwrap().insert(key, v);
        v
    })
}

/// Zero limit of a derivative sequence: the last value if the bottom of the
/// sequence has settled, `None` otherwise.
pub(crate) fn stabilized_tail(values: &[Real]) -> Option<Real> {
    let n = values.len();
    if n < 3 {
        return None;
    }
    let (v1, v2, v3) = (values[n - 3], values[n - 2], values[n - 1]);
    let scale = v3.abs().max(r(1.0));
    if (v3 - v2).abs() <= 1e-7 * scale && (v2 - v1).abs() <= 1e-6 * scale {
        Some(v3)
    } else {
        None
    }
}

/// Sum the Jackson tail `sum_{i > N} q^i f(a q^i)` past the lattice floor.
///
/// Uses the analytic extension when the function carries one, the zero limit
/// otherwise. Functions with neither must have geometrically decaying
/// summands; the last stored terms are checked and the tail dropped.
fn jackson_tail(f: &LatticeFn) -> Result<Real> {
    let lat = f.lattice();
    let q = lat.q;
    let n = lat.depth;
    let qn1 = q.powi(n as i32 + 1);
    if let Some(g) = f.extend_fn() {
        let mut acc = r(0.0);
        let mut qi = qn1;
        let mut x = lat.point(n) * q;
        for _ in 0..TAIL_CAP {
            let term = qi * g(x);
            acc += term;
            if term.abs() < TAIL_TOL * f64::from(acc.abs().max(r(1.0))) {
                return Ok(acc);
            }
            qi *= q;
            x *= q;
        }
        return Err(QError::NonConvergent(
            "Jackson tail did not converge under the analytic extension".into(),
        ));
    }
    if let Some(z) = f.zero_limit() {
        return Ok(rdiv(z * qn1, 1.0 - q));
    }
    // no extension: require decaying summands and drop the tail
    if n >= 2 {
        let t1 = (q.powi(n as i32 - 1) * f.value(n - 1)).abs();
        let t2 = (q.powi(n as i32) * f.value(n)).abs();
        if t2 > t1 && t2 > 1e-13 {
            return Err(QError::NonDecayingSummand(n));
        }
    }
    Ok(r(0.0))
}

/// Jackson q-integral `int_0^(a q^j) f d_q t = a (1 - q) sum_{i >= j} q^i f(a q^i)`.
pub fn jackson_int(f: &LatticeFn, j: usize) -> Result<Real> {
    let lat = f.lattice();
    let n = lat.depth;
    if j > n {
        return Err(QError::InvalidParameter(format!(
            "upper index {j} exceeds lattice depth {n}"
        )));
    }
    let q = lat.q;
    // powers q^i by running product (a powi per term would dominate)
    let mut qp = Vec::with_capacity(n + 1);
    let mut qi = r(1.0);
    for _ in 0..=n {
        qp.push(qi);
        qi *= q;
    }
    // sum from the small terms up for stability
    let mut acc = jackson_tail(f)?;
    for i in (j..=n).rev() {
        acc += qp[i] * f.value(i);
    }
    Ok(lat.a * (1.0 - q) * acc)
}

/// Full Jackson q-integral `int_0^a f d_q t`.
pub fn jackson_int_full(f: &LatticeFn) -> Result<Real> {
    jackson_int(f, 0)
}

/// Endpoint of a range q-integral: zero or a lattice index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    /// The lattice point `a q^j`.
    Point(usize),
}

/// Jackson q-integral between two lattice endpoints,
/// `int_lower^upper f d_q t`; an exact finite sum when both endpoints are
/// lattice points.
pub fn jackson_int_range(f: &LatticeFn, lower: Endpoint, upper: Endpoint) -> Result<Real> {
    let lat = f.lattice();
    let n = lat.depth;
    let check = |e: Endpoint| -> Result<()> {
        if let Endpoint::Point(j) = e {
            if j > n {
                return Err(QError::InvalidParameter(format!(
                    "endpoint index {j} exceeds lattice depth {n}"
                )));
            }
        }
        Ok(())
    };
    check(lower)?;
    check(upper)?;
    match (lower, upper) {
        (Endpoint::Zero, Endpoint::Zero) => Ok(r(0.0)),
        (Endpoint::Zero, Endpoint::Point(j)) => jackson_int(f, j),
        (Endpoint::Point(j), Endpoint::Zero) => Ok(-jackson_int(f, j)?),
        (Endpoint::Point(jl), Endpoint::Point(ju)) => {
            // lower = a q^jl <= upper = a q^ju means jl >= ju
            if jl < ju {
                return Ok(-jackson_int_range(f, upper, lower)?);
            }
            let q = lat.q;
            let mut qp = Vec::with_capacity(jl);
            let mut qi = r(1.0);
            for _ in 0..jl {
                qp.push(qi);
                qi *= q;
            }
            let mut acc = r(0.0);
            for i in (ju..jl).rev() {
                acc += qp[i] * f.value(i);
            }
            Ok(lat.a * (1.0 - q) * acc)
        }
    }
}

/// Sup, L1, L2 norms and the (optionally weighted) inner product of a pair.
#[derive(Debug, Clone, Copy)]
pub struct NormReport {
    pub sup: Real,
    pub l1: Real,
    pub l2: Real,
    pub inner: Real,
}

/// Inner product `<f, g>_w = int_0^a f g w d_q u` (w omitted means weight 1).
pub fn inner_product(f: &LatticeFn, g: &LatticeFn, w: Option<&LatticeFn>) -> Result<Real> {
    let mut prod = f.mul(g)?;
    if let Some(w) = w {
        check_positive_weight(w)?;
        prod = prod.mul(w)?;
    }
    jackson_int_full(&prod)
}

fn check_positive_weight(w: &LatticeFn) -> Result<()> {
    if w.values().iter().any(|&v| v <= 0.0) {
        return Err(QError::InvalidParameter(
            "weight function must be strictly positive on the lattice".into(),
        ));
    }
    Ok(())
}

/// Norms of `f` together with `<f, g>_w`.
pub fn norms_and_inner(
    f: &LatticeFn,
    g: &LatticeFn,
    w: Option<&LatticeFn>,
) -> Result<NormReport> {
    Ok(NormReport {
        sup: f.sup_norm(),
        l1: f.l1_norm()?,
        l2: f.l2_norm()?,
        inner: inner_product(f, g, w)?,
    })
}

/// Residual of the q-integration-by-parts rule
/// `int_0^a f D_q g = [f g]_0^a - int_0^a D_q f(x) g(qx) d_q x`.
pub fn ibp_residual(f: &LatticeFn, g: &LatticeFn) -> Result<Real> {
    let f0 = f
        .zero_limit()
        .ok_or_else(|| QError::NoZeroLimit("ibp_residual needs q-regular f".into()))?;
    let g0 = g
        .zero_limit()
        .ok_or_else(|| QError::NoZeroLimit("ibp_residual needs q-regular g".into()))?;
    let dg = d_q(g)?;
    let df = d_q(f)?;
    let lhs = jackson_int_full(&f.mul(&dg)?)?;
    let boundary = f.value(0) * g.value(0) - f0 * g0;
    let g_shift = g.shift_down()?;
    let rhs = jackson_int_full(&df.mul(&g_shift)?)?;
    Ok((lhs - boundary + rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rpowf;
    use proptest::prelude::*;

    fn setup(q: f64, a: f64, depth: usize) -> (QContext, Arc<Lattice>) {
        let ctx = QContext::new(q).unwrap();
        let lat = Lattice::with_depth(&ctx, a, depth).unwrap();
        (ctx, lat)
    }

    fn poly(lat: &Arc<Lattice>, coeffs: Vec<f64>) -> LatticeFn {
        let c = coeffs.clone();
        LatticeFn::sample(
            lat,
            Arc::new(move |x: Real| c.iter().rev().fold(r(0.0), |acc, &ci| acc * x + ci)),
            Some(r(coeffs[0])),
        )
        .unwrap()
    }

    #[test]
    fn sample_basics() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let one = LatticeFn::constant(&lat, 1.0);
        assert!(one.values().iter().all(|&v| v == 1.0));
        assert_eq!(one.zero_limit().unwrap(), 1.0);

        let ident = LatticeFn::sample(&lat, Arc::new(|x| x), Some(r(0.0))).unwrap();
        assert_eq!(ident.value(0), 1.0);
        assert!((ident.value(3) - 0.125).abs() < 1e-15);

        // x^(-1/2) diverges at 0: admitted without a zero limit
        let sing =
            LatticeFn::sample(&lat, Arc::new(|x: Real| rpowf(x, r(-0.5))), None).unwrap();
        assert!(sing.zero_limit().is_none());
        assert!(sing.value(10) > sing.value(0));
    }

    #[test]
    fn d_q_on_powers() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let c = LatticeFn::constant(&lat, 3.2);
        let dc = d_q(&c).unwrap();
        assert!(dc.sup_norm() < 1e-25);

        let ident = LatticeFn::sample(&lat, Arc::new(|x| x), Some(r(0.0))).unwrap();
        let di = d_q(&ident).unwrap();
        assert!(di.values().iter().all(|&v| (v - 1.0).abs() < 1e-25));
        assert_eq!(di.zero_limit().unwrap(), 1.0);

        // D_q x^2 = (1 + q) x
        let sq = LatticeFn::sample(&lat, Arc::new(|x| x * x), Some(r(0.0))).unwrap();
        let ds = d_q(&sq).unwrap();
        for (j, &x) in lat.points().iter().enumerate() {
            assert!((ds.value(j) - 1.5 * x).abs() < 1e-25, "j={j}");
        }
    }

    #[test]
    fn d_qinv_on_powers() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let c = LatticeFn::constant(&lat, 2.0);
        let dc = d_qinv(&c, r(2.0));
        for j in 0..=lat.depth {
            assert!(dc.value(j).abs() < 1e-25);
        }
        // D_{1/q} x = 1 at interior points
        let ident = LatticeFn::sample(&lat, Arc::new(|x| x), Some(r(0.0))).unwrap();
        let di = d_qinv(&ident, rdiv(lat.a, lat.q));
        for j in 0..=lat.depth {
            assert!((di.value(j) - 1.0).abs() < 1e-25, "j={j}");
        }
    }

    #[test]
    fn jackson_integral_closed_forms() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let one = LatticeFn::constant(&lat, 1.0);
        assert!((jackson_int_full(&one).unwrap() - 1.0).abs() < 1e-25);

        // int_0^a t d_q t = a^2/(1+q)
        let ident = LatticeFn::sample(&lat, Arc::new(|x| x), Some(r(0.0))).unwrap();
        assert!((jackson_int_full(&ident).unwrap() - r(1.0) / 1.5).abs() < 1e-25);

        // int_0^1 t^0.5 d_q t = (1-q)/(1-q^1.5)
        let root = LatticeFn::sample(&lat, Arc::new(|x: Real| x.sqrt()), Some(r(0.0))).unwrap();
        let expect = rdiv(r(0.5), 1.0 - rpowf(r(0.5), r(1.5)));
        assert!((jackson_int_full(&root).unwrap() - expect).abs() < 1e-25);
    }

    #[test]
    fn jackson_range_finite_sums() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let f = poly(&lat, vec![0.3, -1.2, 0.8]);
        assert_eq!(
            jackson_int_range(&f, Endpoint::Point(4), Endpoint::Point(4)).unwrap(),
            0.0
        );
        // int_{qa}^a f = a(1-q) f(a)
        let one_term = jackson_int_range(&f, Endpoint::Point(1), Endpoint::Point(0)).unwrap();
        assert!((one_term - 0.5 * f.value(0)).abs() < 1e-25);
        // int_{a q^2}^a 1 = a (1 - q^2)
        let one = LatticeFn::constant(&lat, 1.0);
        let two_terms =
            jackson_int_range(&one, Endpoint::Point(2), Endpoint::Point(0)).unwrap();
        assert!((two_terms - 0.75).abs() < 1e-25);
    }

    #[test]
    fn norm_chain_inequality() {
        // ||f||_1 <= sqrt(a) ||f||_2 <= a ||f||
        let (_, lat) = setup(0.5, 1.0, 48);
        for seed in 0..20u64 {
            let coeffs: Vec<f64> = (0..4)
                .map(|i| ((seed as f64 + 1.3) * (i as f64 + 0.7)).sin())
                .collect();
            let f = poly(&lat, coeffs);
            let l1 = f.l1_norm().unwrap();
            let l2 = f.l2_norm().unwrap();
            let sup = f.sup_norm();
            assert!(l1 <= l2 + 1e-25, "seed {seed}: {l1} vs {l2}");
            assert!(l2 <= sup + 1e-25, "seed {seed}: {l2} vs {sup}");
        }
    }

    #[test]
    fn inner_is_l2_squared() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let f = poly(&lat, vec![0.4, 1.1, -0.6]);
        let ip = inner_product(&f, &f, None).unwrap();
        let l2 = f.l2_norm().unwrap();
        assert!((ip - l2 * l2).abs() < 1e-25);
    }

    #[test]
    fn nonpositive_weight_rejected() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let f = LatticeFn::constant(&lat, 1.0);
        let w = LatticeFn::sample(&lat, Arc::new(|x| x - 0.3), Some(r(-0.3))).unwrap();
        assert!(inner_product(&f, &f, Some(&w)).is_err());
    }

    #[test]
    fn fundamental_theorem() {
        // jackson_int(d_q f, x) = f(x) - f(0)
        let (_, lat) = setup(0.5, 1.0, 48);
        let f = poly(&lat, vec![0.7, -0.4, 1.3, 0.2]);
        let df = d_q(&f).unwrap();
        for j in (0..=lat.depth).step_by(7) {
            let lhs = jackson_int(&df, j).unwrap();
            let rhs = f.value(j) - 0.7;
            assert!((lhs - rhs).abs() < 1e-25, "j={j}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn ibp_residual_small_for_regular_pairs() {
        let (_, lat) = setup(0.5, 1.0, 48);
        let one = LatticeFn::constant(&lat, 1.0);
        let g = poly(&lat, vec![0.2, 0.9, -0.5]);
        assert!(ibp_residual(&one, &g).unwrap() < 1e-25);
        let x = LatticeFn::sample(&lat, Arc::new(|x| x), Some(r(0.0))).unwrap();
        assert!(ibp_residual(&x, &x).unwrap() < 1e-25);
    }

    proptest! {
        #[test]
        fn prop_linearity_and_positivity(
            c0 in -1.0f64..1.0, c1 in -1.0f64..1.0, c2 in -1.0f64..1.0,
            s in -3.0f64..3.0,
        ) {
            let (_, lat) = setup(0.5, 1.0, 48);
            let f = poly(&lat, vec![c0, c1, c2]);
            let g = poly(&lat, vec![c2, c0, c1]);
            // linearity of the Jackson integral
            let lhs = jackson_int_full(&f.scale(r(s)).add(&g).unwrap()).unwrap();
            let rhs = r(s) * jackson_int_full(&f).unwrap() + jackson_int_full(&g).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-24);
            // linearity of d_q
            let d_lhs = d_q(&f.scale(r(s)).add(&g).unwrap()).unwrap();
            let d_rhs = d_q(&f).unwrap().scale(r(s)).add(&d_q(&g).unwrap()).unwrap();
            // the deepest difference quotient divides by (1-q) a q^N ~ 2e-15,
            // amplifying component rounding to ~1e-16
            prop_assert!(d_lhs.sub(&d_rhs).unwrap().sup_norm() < 1e-14 * (1.0 + s.abs()));
            // positivity
            let pos = f.mul(&f).unwrap();
            prop_assert!(jackson_int_full(&pos).unwrap() >= 0.0);
        }

        #[test]
        fn prop_ibp_residual_within_budget(
            c0 in -1.0f64..1.0, c1 in -1.0f64..1.0,
            d0 in -1.0f64..1.0, d1 in -1.0f64..1.0,
        ) {
            let (_, lat) = setup(0.5, 1.0, 48);
            let f = poly(&lat, vec![c0, c1, 0.3]);
            let g = poly(&lat, vec![d0, d1, -0.2]);
            prop_assert!(ibp_residual(&f, &g).unwrap() < 1e-24);
        }

        #[test]
        fn prop_prefix_derivative_inverts(j in 0usize..40) {
            // d_q of the Jackson prefix recovers f at interior points
            let (_, lat) = setup(0.5, 1.0, 48);
            let f = poly(&lat, vec![0.4, -0.9, 0.15]);
            let mut prefix = Vec::with_capacity(lat.depth + 1);
            for i in 0..=lat.depth {
                prefix.push(jackson_int(&f, i).unwrap());
            }
            let pf = LatticeFn::from_values(&lat, prefix, Some(r(0.0))).unwrap();
            let dpf = d_q(&pf).unwrap();
            prop_assert!((dpf.value(j) - f.value(j)).abs() < 1e-22);
        }
    }
}
