//! The extended-precision scalar used by the numeric core.
//!
//! Identities on a geometric lattice truncated at depth `N` involve
//! difference quotients whose denominators reach `a q^N ~ 1e-15`; any
//! uncorrelated rounding noise in the operands is amplified by up to
//! `1/(a q^N) ~ 1e15`. Plain `f64` arithmetic therefore cannot certify
//! sup-residuals at the 1e-9 level over the full lattice, while
//! double-double arithmetic (~1e-31 component-wise rounding) leaves
//! amplified noise near 1e-16. The core computes in [`Real`] throughout and
//! converts to `f64` only at reporting boundaries.
//!
//! The crate-provided transcendentals stop near 1e-18 relative accuracy, so
//! `exp`/`ln`/`powf` are re-derived here from the (fully accurate)
//! double-double arithmetic: a range-reduced Taylor series for `exp` and a
//! Newton iteration seeded by the `f64` logarithm for `ln`.

pub use twofloat::TwoFloat as Real;

/// Shorthand conversion from `f64` (exact).
#[inline]
pub fn r(x: f64) -> Real {
    Real::from(x)
}

/// Accurate division of two [`Real`] values.
///
/// The crate's `TwoFloat / TwoFloat` operator computes its reciprocal
/// residual without a fused multiply-add and comes out only `f64`-accurate
/// (`1/3` loses its low component entirely). One residual correction against
/// the (accurate) double-double multiply restores full precision:
/// `q + (a - q b) / b` with the correction evaluated in `f64`.
#[inline]
pub fn rdiv(a: Real, b: Real) -> Real {
    let q = a / b;
    let res = a - q * b;
    q + res.hi() / b.hi()
}

/// Accurate reciprocal (see [`rdiv`]).
#[inline]
pub fn rrecip(b: Real) -> Real {
    rdiv(r(1.0), b)
}

/// Integer power with an accurate reciprocal for negative exponents (the
/// crate's `powi` routes negative exponents through its low-precision
/// division).
pub fn rpowi(x: Real, n: i32) -> Real {
    if n >= 0 {
        x.powi(n)
    } else {
        rrecip(x).powi(-n)
    }
}

/// `exp(x)` to full double-double accuracy via `x = k ln 2 + t`,
/// `|t| <= (ln 2)/2`, and a Taylor series in `t`.
pub fn rexp(x: Real) -> Real {
    let xf = f64::from(x);
    if !xf.is_finite() {
        return r(f64::NAN);
    }
    // exponents beyond +-700 under/overflow f64 anyway
    if xf < -745.0 {
        return r(0.0);
    }
    let k = (xf / std::f64::consts::LN_2).round();
    let t = x - twofloat::consts::LN_2 * r(k);
    let mut term = r(1.0);
    let mut sum = r(1.0);
    for n in 1..=26 {
        // division by an exact f64 keeps full double-double accuracy
        term = term * t / (n as f64);
        sum += term;
    }
    sum * rpowi(r(2.0), k as i32)
}

/// `ln(x)` for `x > 0` to full double-double accuracy: `f64` seed plus two
/// Newton steps `y <- y + x exp(-y) - 1`.
pub fn rln(x: Real) -> Real {
    let xf = f64::from(x);
    if !(xf > 0.0) {
        return r(f64::NAN);
    }
    let mut y = r(xf.ln());
    for _ in 0..2 {
        y += x * rexp(-y) - 1.0;
    }
    y
}

/// `x^e` for `x > 0` (and `x = 0` with `e > 0`) to full double-double
/// accuracy; integer exponents dispatch to the exact binary power.
pub fn rpowf(x: Real, e: Real) -> Real {
    if x == 0.0 {
        return if e > 0.0 { r(0.0) } else { r(f64::NAN) };
    }
    if e == 0.0 {
        return r(1.0);
    }
    let ef = f64::from(e);
    if ef.fract() == 0.0 && f64::from(e - ef) == 0.0 && ef.abs() < 2.0_f64.powi(30) {
        return rpowi(x, ef as i32);
    }
    rexp(e * rln(x))
}
