//! Coefficient continuations `ḡ⁽ˢ⁾(0)` of the catalog examples.

use num_complex::Complex;

use super::coefficient::{ln_add, CoefficientFn, TransformKind};
use crate::error::{Error, Result};
use crate::kernel::{ln_gamma_r, log_gamma_c};
use crate::scalar::{cplx, real, CompensatedComplex, Real};
use crate::special::{bessel_i0, hyp1f1_c, hyp1f2_c, upper_gamma_cf_c};

/// Above this value of `(ac)²` the A.6 coefficient switches from the
/// `e^y − Σ` form to the incomplete-gamma continued fraction.
pub const A6_CF_THRESHOLD: f64 = 2.0;

const P_SERIES_MAX: usize = 2000;

pub(crate) fn positive<T: Real>(name: &'static str, v: T) -> Result<T> {
    if v > T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter { name, value: v.to_f64_lossy(), reason: "must be positive and finite" })
    }
}

fn i_pi<T: Real>() -> Complex<T> {
    cplx(T::zero(), T::PI())
}

/// A.1: `ḡ⁽ˢ⁾(0) = a^{2s}`.
pub fn coef_a1<T: Real>(a: T) -> Result<CoefficientFn<T>> {
    let ln_a = positive("a", a)?.ln();
    let two = T::lit(2.0);
    Ok(CoefficientFn::from_log("a1", TransformKind::Theorem1, -T::one(), true, move |s| Ok(s * (two * ln_a)))
        .with_params(&[("a", a)]))
}

/// A.2: `a^{2s} 1F1(−s; 1; −c²/4a²)`, the continuation of `a^{2m} L_m(−c²/4a²)`.
pub fn coef_a2<T: Real>(a: T, c: T) -> Result<CoefficientFn<T>> {
    let ln_a = positive("a", a)?.ln();
    positive("c", c)?;
    let z = -(c * c) / (T::lit(4.0) * a * a);
    let two = T::lit(2.0);
    Ok(CoefficientFn::from_log("a2", TransformKind::Theorem1, -T::one(), true, move |s| {
        Ok(s * (two * ln_a) + hyp1f1_c(-s, T::one(), z)?.ln())
    })
    .with_params(&[("a", a), ("c", c)]))
}

/// A.3: `a^{−2s−2n−2} Γ(s+n+1)/Γ(n+1)`.
pub fn coef_a3<T: Real>(a: T, n: usize) -> Result<CoefficientFn<T>> {
    let ln_a = positive("a", a)?.ln();
    let nn = T::of(n);
    let ln_norm = ln_gamma_r(nn + T::one())?;
    let two = T::lit(2.0);
    Ok(CoefficientFn::from_log("a3", TransformKind::Theorem1, -T::one(), true, move |s| {
        let shift = s + real(nn + T::one());
        Ok(-(s * two + real(two * nn + two)) * ln_a + log_gamma_c(shift)? - real(ln_norm))
    })
    .with_params(&[("a", a), ("n", nn)]))
}

/// A.4: `a^{−2s−2n−3} Γ(s+n+3/2)/Γ(n+3/2)`.
pub fn coef_a4<T: Real>(a: T, n: usize) -> Result<CoefficientFn<T>> {
    let ln_a = positive("a", a)?.ln();
    let nn = T::of(n);
    let half = T::lit(1.5);
    let ln_norm = ln_gamma_r(nn + half)?;
    let two = T::lit(2.0);
    Ok(CoefficientFn::from_log("a4", TransformKind::Theorem1, -T::one(), true, move |s| {
        let shift = s + real(nn + half);
        Ok(-(s * two + real(two * nn + T::lit(3.0))) * ln_a + log_gamma_c(shift)? - real(ln_norm))
    })
    .with_params(&[("a", a), ("n", nn)]))
}

/// A.5: `c^{−2s−2}Γ(s+1)I₀(ac) − (a/2)^{2s+2} 1F2(1; s+2, s+2; a²c²/4)/((s+1)Γ(s+2))`.
///
/// The two terms are attached as parts: the second integrates to zero for
/// `q > a` and is evaluated on its own contour.
pub fn coef_a5<T: Real>(a: T, c: T) -> Result<CoefficientFn<T>> {
    positive("a", a)?;
    let ln_c = positive("c", c)?.ln();
    let ln_i0 = bessel_i0(a * c)?.ln();
    let ln_half_a = (a / T::lit(2.0)).ln();
    let z = (a * c / T::lit(2.0)).powi(2);
    let two = T::lit(2.0);
    let one = real::<T>(T::one());

    let first = move |s: Complex<T>| -> Result<Complex<T>> {
        Ok(-(s * two + real(two)) * ln_c + log_gamma_c(s + one)? + real(ln_i0))
    };
    let second = move |s: Complex<T>| -> Result<Complex<T>> {
        let b = s + real(two);
        Ok((s * two + real(two)) * ln_half_a + hyp1f2_c(T::one(), b, b, z)?.ln() - (s + one).ln() - log_gamma_c(b)?
            + i_pi())
    };
    let params = [("a", a), ("c", c)];
    let p1 = CoefficientFn::from_log("a5:bessel", TransformKind::Theorem1, -T::one(), true, first).with_params(&params);
    let p2 = CoefficientFn::from_log("a5:1f2", TransformKind::Theorem1, -T::one(), true, second).with_params(&params);
    Ok(CoefficientFn::from_log("a5", TransformKind::Theorem1, -T::one(), true, move |s| Ok(ln_add(first(s)?, second(s)?)))
        .with_params(&params)
        .with_parts(vec![p1, p2]))
}

/// `ln Σ_{p≥0} y^p / (b)_p`, summed in ascending order.
fn ln_pochhammer_series<T: Real>(b: Complex<T>, y: T) -> Result<Complex<T>> {
    let mut acc = CompensatedComplex::new();
    let mut term = real::<T>(T::one());
    acc.add(term);
    for p in 0..P_SERIES_MAX {
        term = term * y / (b + real(T::of(p)));
        acc.add(term);
        let s = acc.value();
        if term.norm() <= T::epsilon() * T::lit(0.1) * s.norm() {
            return Ok(s.ln());
        }
    }
    Err(Error::NonConvergence { what: "coef_a6 p-series", terms: P_SERIES_MAX })
}

/// A.6: `c^{−2s−2}Γ(s+1)[e^{(ac)²} − (ac)^{2s+2} Σ_p (ac)^{2p}/Γ(p+s+2)]`.
///
/// For `(ac)² > 2` the bracket is formed as `e^y Γ(s+1, y)/Γ(s+1)` and the
/// coefficient becomes `a^{2s+2}·e^y y^{−s−1} Γ(s+1, y)`, which avoids the
/// cancellation against `e^{(ac)²}`.
pub fn coef_a6<T: Real>(a: T, c: T) -> Result<CoefficientFn<T>> {
    let ln_a = positive("a", a)?.ln();
    let ln_c = positive("c", c)?.ln();
    let y = (a * c) * (a * c);
    let ln_y = y.ln();
    let two = T::lit(2.0);
    let one = real::<T>(T::one());
    let use_cf = y > T::lit(A6_CF_THRESHOLD);
    let f = move |s: Complex<T>| -> Result<Complex<T>> {
        if use_cf {
            return Ok((s * two + real(two)) * ln_a + upper_gamma_cf_c(s + one, y)?.ln());
        }
        let b = s + real(two);
        let ln_tail = (s + one) * ln_y - log_gamma_c(b)? + ln_pochhammer_series(b, y)?;
        let bracket = ln_add(real(y), ln_tail + i_pi());
        Ok(-(s * two + real(two)) * ln_c + log_gamma_c(s + one)? + bracket)
    };
    Ok(CoefficientFn::from_log("a6", TransformKind::Theorem1, -T::one(), true, f).with_params(&[("a", a), ("c", c)]))
}

/// A.7 (second representation): `h̄⁽ˢ⁾(0) = π^{−1/2} a^{−4s−2} Γ(s+1/2)`.
pub fn coef_a7<T: Real>(a: T) -> Result<CoefficientFn<T>> {
    let ln_a = positive("a", a)?.ln();
    let ln_sqrt_pi = T::lit(0.5) * T::PI().ln();
    let half = real::<T>(T::lit(0.5));
    Ok(CoefficientFn::from_log("a7", TransformKind::Theorem2, -T::lit(0.5), true, move |s| {
        Ok(-(s * T::lit(4.0) + real(T::lit(2.0))) * ln_a + log_gamma_c(s + half)? - real(ln_sqrt_pi))
    })
    .with_params(&[("a", a)]))
}
