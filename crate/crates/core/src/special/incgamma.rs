//! Upper incomplete gamma functions.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, Real, EULER_GAMMA};

const CF_MAX_ITER: usize = 10_000;

/// `Γ(0, x) = E1(x)` for `x > 0`: alternating series below 1, Lentz continued
/// fraction above.
pub fn incomplete_gamma_upper0<T: Real>(x: T) -> Result<T> {
    check(x)?;
    if x < T::one() {
        Ok(e1_series(x))
    } else {
        Ok(e1_scaled_cf(x)? * (-x).exp())
    }
}

/// `e^x Γ(0, x)`, safe for large `x`.
pub fn incomplete_gamma_upper0_scaled<T: Real>(x: T) -> Result<T> {
    check(x)?;
    if x < T::one() {
        Ok(e1_series(x) * x.exp())
    } else {
        e1_scaled_cf(x)
    }
}

fn check<T: Real>(x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { function: "incomplete_gamma_upper0", value: x.to_f64_lossy(), reason: "requires x > 0" })
    }
}

fn e1_series<T: Real>(x: T) -> T {
    let mut sum = T::zero();
    let mut term = T::one();
    for k in 1..200usize {
        let kk = T::of(k);
        term = -term * x / kk;
        let d = -term / kk;
        sum = sum + d;
        if d.abs() < T::epsilon() * T::lit(1e-2) * sum.abs() {
            break;
        }
    }
    -T::lit(EULER_GAMMA) - x.ln() + sum
}

fn e1_scaled_cf<T: Real>(x: T) -> Result<T> {
    let tiny = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one();
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..CF_MAX_ITER {
        let an = -T::of(i * i);
        b = b + T::lit(2.0);
        d = (an * d + b).recip();
        c = b + an / c;
        let del = c * d;
        h = h * del;
        if (del - T::one()).abs() <= T::epsilon() {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence { what: "incomplete_gamma_upper0", terms: CF_MAX_ITER })
}

/// Legendre continued fraction for the upper incomplete gamma function with
/// complex order: returns `F` with `Γ(a, y) = e^{-y} y^a F(a, y)`, `y > 0`.
pub(crate) fn upper_gamma_cf_c<T: Real>(a: Complex<T>, y: T) -> Result<Complex<T>> {
    // complex division squares the divisor's modulus, so keep tiny² representable
    let tiny = real::<T>(T::min_positive_value().sqrt() / T::epsilon());
    let one = real::<T>(T::one());
    // modified Lentz for the denominator b0 + a1/(b1 + a2/(b2 + ...))
    let mut b = real::<T>(y + T::one()) - a;
    let mut f = if b.norm() < tiny.re { tiny } else { b };
    let mut c = f;
    let mut d = real::<T>(T::zero());
    for n in 1..CF_MAX_ITER {
        let nn = T::of(n);
        let an = real::<T>(-nn) * (real(nn) - a);
        b = b + real(T::lit(2.0));
        d = an * d + b;
        if d.norm() < tiny.re {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < tiny.re {
            c = tiny;
        }
        d = one / d;
        let del = c * d;
        f = f * del;
        if (del - one).norm() <= T::epsilon() * T::lit(16.0) {
            return Ok(one / f);
        }
    }
    Err(Error::NonConvergence { what: "upper incomplete gamma continued fraction", terms: CF_MAX_ITER })
}
