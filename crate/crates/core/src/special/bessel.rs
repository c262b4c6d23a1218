//! Real-argument Bessel functions of integer and half-integer order.
//!
//! `J0`/`J1`: power series for `x <= 8`, periodic trapezoidal rule on the
//! Bessel integral for `8 < x <= 25`, Hankel asymptotic expansion beyond.
//! `I0`/`I1`: power series for `x <= 30`, asymptotic expansion beyond.
//! `K0`/`K1`: logarithmic series for `x <= 2`, Temme's continued fraction beyond.

use crate::error::{Error, Result};
use crate::scalar::{Real, EULER_GAMMA};

pub(crate) const J_SERIES_MAX: f64 = 8.0;
pub(crate) const J_ASYMPTOTIC_MIN: f64 = 25.0;
pub(crate) const I_ASYMPTOTIC_MIN: f64 = 30.0;
pub(crate) const K_SERIES_MAX: f64 = 2.0;

fn domain<T: Real>(function: &'static str, x: T, reason: &'static str) -> Error {
    Error::Domain { function, value: x.to_f64_lossy(), reason }
}

fn require_nonnegative<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x >= T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(domain(function, x, "requires x >= 0"))
    }
}

fn require_positive<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(domain(function, x, "requires x > 0"))
    }
}

/// `Σ_k (∓x²/4)^k / (k!(k+ν)!)` for ν ∈ {0, 1}; `alternating` selects J vs I.
fn power_series<T: Real>(x: T, order: usize, alternating: bool) -> T {
    let y = x * x / T::lit(4.0);
    let y = if alternating { -y } else { y };
    let mut term = T::one();
    for k in 1..=order {
        term = term / T::of(k);
    }
    let mut sum = term;
    let mut k = 0usize;
    loop {
        k += 1;
        term = term * y / (T::of(k) * T::of(k + order));
        sum = sum + term;
        if term.abs() <= T::epsilon() * T::lit(1e-3) * sum.abs().max(T::min_positive_value()) && T::of(k) > x {
            break;
        }
        if k > 2000 {
            break;
        }
    }
    sum
}

/// `J_n(x) = (1/π) ∫_0^π cos(nθ - x sin θ) dθ` by the trapezoidal rule, which
/// is spectrally accurate for this periodic integrand.
pub(crate) fn bessel_j_trapezoid<T: Real>(order: usize, x: T) -> T {
    let m = x.ceil().to_usize().unwrap_or(0) + 40;
    let h = T::PI() / T::of(m);
    let n = T::of(order);
    let f = |theta: T| (n * theta - x * theta.sin()).cos();
    let mut sum = T::lit(0.5) * (f(T::zero()) + f(T::PI()));
    for j in 1..m {
        sum = sum + f(T::of(j) * h);
    }
    sum / T::of(m)
}

/// Hankel large-argument series `P(ν,x)`, `Q(ν,x)` for integer ν, truncated at
/// the smallest term.
fn hankel_pq<T: Real>(order: usize, x: T) -> (T, T) {
    let mu = T::of(4 * order * order);
    let eight_x = T::lit(8.0) * x;
    // P = a0 - a2 + a4 - ..., Q = a1 - a3 + a5 - ...
    let mut pq = [T::one(), T::zero()];
    let mut term = T::one();
    for k in 1..200usize {
        let odd = T::of(2 * k - 1);
        let next = term * (mu - odd * odd) / (T::of(k) * eight_x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        pq[k % 2] = pq[k % 2] + signed;
        if term.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    (pq[0], pq[1])
}

pub(crate) fn bessel_j_asymptotic<T: Real>(order: usize, x: T) -> T {
    let (p, q) = hankel_pq::<T>(order, x);
    let (s, c) = (x.sin(), x.cos());
    let r = T::FRAC_1_SQRT_2();
    // χ = x - (2ν+1)π/4
    let (cos_chi, sin_chi) = match order {
        0 => ((c + s) * r, (s - c) * r),
        _ => ((s - c) * r, -(s + c) * r),
    };
    (T::lit(2.0) / (T::PI() * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0<T: Real>(x: T) -> Result<T> {
    require_nonnegative("bessel_j0", x)?;
    Ok(if x <= T::lit(J_SERIES_MAX) {
        power_series(x, 0, true)
    } else if x <= T::lit(J_ASYMPTOTIC_MIN) {
        bessel_j_trapezoid(0, x)
    } else {
        bessel_j_asymptotic(0, x)
    })
}

/// Bessel function of the first kind, order one.
pub fn bessel_j1<T: Real>(x: T) -> Result<T> {
    require_nonnegative("bessel_j1", x)?;
    Ok(if x <= T::lit(J_SERIES_MAX) {
        T::lit(0.5) * x * power_series(x, 1, true)
    } else if x <= T::lit(J_ASYMPTOTIC_MIN) {
        bessel_j_trapezoid(1, x)
    } else {
        bessel_j_asymptotic(1, x)
    })
}

/// `e^{-x} I_ν(x)` by the large-argument expansion.
fn bessel_i_asymptotic_scaled<T: Real>(order: usize, x: T) -> T {
    let mu = T::of(4 * order * order);
    let eight_x = T::lit(8.0) * x;
    let mut sum = T::one();
    let mut term = T::one();
    for k in 1..200usize {
        let odd = T::of(2 * k - 1);
        let next = -term * (mu - odd * odd) / (T::of(k) * eight_x);
        if next.abs() >= term.abs() || next.abs() < T::epsilon() * T::lit(1e-3) {
            break;
        }
        term = next;
        sum = sum + term;
    }
    sum / (T::lit(2.0) * T::PI() * x).sqrt()
}

fn bessel_i_scaled<T: Real>(order: usize, x: T) -> T {
    if x <= T::lit(I_ASYMPTOTIC_MIN) {
        let s = power_series(x, order, false);
        let s = if order == 1 { T::lit(0.5) * x * s } else { s };
        s * (-x).exp()
    } else {
        bessel_i_asymptotic_scaled(order, x)
    }
}

/// Exponentially scaled `e^{-x} I0(x)`.
pub fn bessel_i0e<T: Real>(x: T) -> Result<T> {
    require_nonnegative("bessel_i0e", x)?;
    Ok(bessel_i_scaled(0, x))
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0<T: Real>(x: T) -> Result<T> {
    require_nonnegative("bessel_i0", x)?;
    if x <= T::lit(I_ASYMPTOTIC_MIN) {
        return Ok(power_series(x, 0, false));
    }
    finish_exp(bessel_i_asymptotic_scaled(0, x), x, "bessel_i0")
}

/// Modified Bessel function of the first kind, order one.
pub fn bessel_i1<T: Real>(x: T) -> Result<T> {
    require_nonnegative("bessel_i1", x)?;
    if x <= T::lit(I_ASYMPTOTIC_MIN) {
        return Ok(T::lit(0.5) * x * power_series(x, 1, false));
    }
    finish_exp(bessel_i_asymptotic_scaled(1, x), x, "bessel_i1")
}

fn finish_exp<T: Real>(scaled: T, x: T, function: &'static str) -> Result<T> {
    let v = scaled * x.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { function })
    }
}

/// `(K0(x), K1(x))` for `0 < x <= 2` from the logarithmic series.
fn k01_series<T: Real>(x: T) -> (T, T) {
    let y = x * x / T::lit(4.0);
    let ln_half = (x / T::lit(2.0)).ln();
    let i0 = power_series(x, 0, false);
    let i1 = T::lit(0.5) * x * power_series(x, 1, false);
    let gamma = T::lit(EULER_GAMMA);
    // Σ y^k/(k!)² ψ(k+1) and Σ y^k/(k!(k+1)!) (ψ(k+1)+ψ(k+2))
    let mut t0 = T::one();
    let mut t1 = T::one();
    let mut psi_k1 = -gamma;
    let mut s0 = t0 * psi_k1;
    let mut s1 = t1 * (psi_k1 + psi_k1 + T::one());
    for k in 1..200usize {
        let kk = T::of(k);
        t0 = t0 * y / (kk * kk);
        t1 = t1 * y / (kk * (kk + T::one()));
        psi_k1 = psi_k1 + kk.recip();
        let psi_k2 = psi_k1 + (kk + T::one()).recip();
        let d0 = t0 * psi_k1;
        let d1 = t1 * (psi_k1 + psi_k2);
        s0 = s0 + d0;
        s1 = s1 + d1;
        if d0.abs() < T::epsilon() * T::lit(1e-3) * s0.abs() && d1.abs() < T::epsilon() * T::lit(1e-3) * s1.abs() {
            break;
        }
    }
    let k0 = -ln_half * i0 + s0;
    let k1 = x.recip() + i1 * ln_half - T::lit(0.25) * x * s1;
    (k0, k1)
}

/// `(e^x K0(x), e^x K1(x))` for `x >= 2` by Temme's continued fraction.
fn k01_scaled_cf<T: Real>(x: T) -> Result<(T, T)> {
    let two = T::lit(2.0);
    let mut b = two * (T::one() + x);
    let mut d = b.recip();
    let mut h = d;
    let mut delh = d;
    let mut q1 = T::zero();
    let mut q2 = T::one();
    let a1 = T::lit(0.25);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = T::one() + q * delh;
    let mut converged = false;
    for i in 1..100_000usize {
        let fi = T::of(i);
        a = a - two * fi;
        c = -a * c / (fi + T::one());
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = (b + a * d).recip();
        delh = (b * d - T::one()) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < T::epsilon() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { what: "bessel_k continued fraction", terms: 100_000 });
    }
    h = a1 * h;
    let k0 = (T::PI() / (two * x)).sqrt() / s;
    let k1 = k0 * (x + T::lit(0.5) - h) / x;
    Ok((k0, k1))
}

/// `(e^x K0(x), e^x K1(x))` over the whole positive axis.
pub(crate) fn k01_scaled<T: Real>(x: T) -> Result<(T, T)> {
    if x <= T::lit(K_SERIES_MAX) {
        let (k0, k1) = k01_series(x);
        let e = x.exp();
        Ok((k0 * e, k1 * e))
    } else {
        k01_scaled_cf(x)
    }
}

fn k01<T: Real>(x: T) -> Result<(T, T)> {
    if x <= T::lit(K_SERIES_MAX) {
        Ok(k01_series(x))
    } else {
        let (a, b) = k01_scaled_cf(x)?;
        let e = (-x).exp();
        Ok((a * e, b * e))
    }
}

/// Macdonald function `K0(x)`.
pub fn bessel_k0<T: Real>(x: T) -> Result<T> {
    require_positive("bessel_k0", x)?;
    k01(x).map(|p| p.0)
}

/// Exponentially scaled `e^x K0(x)`.
pub fn bessel_k0e<T: Real>(x: T) -> Result<T> {
    require_positive("bessel_k0e", x)?;
    k01_scaled(x).map(|p| p.0)
}

/// Macdonald function `K1(x)`.
pub fn bessel_k1<T: Real>(x: T) -> Result<T> {
    require_positive("bessel_k1", x)?;
    k01(x).map(|p| p.1)
}

/// `K_n(x)` by forward recurrence from `K0`, `K1`.
pub fn bessel_kn<T: Real>(n: usize, x: T) -> Result<T> {
    require_positive("bessel_kn", x)?;
    let (k0, k1) = k01(x)?;
    if n == 0 {
        return Ok(k0);
    }
    let (mut prev, mut cur) = (k0, k1);
    for j in 1..n {
        let next = prev + T::lit(2.0) * T::of(j) / x * cur;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow { function: "bessel_kn" })
    }
}

/// `K_{n+1/2}(x) = sqrt(π/2x) e^{-x} Σ_{k=0}^{n} (n+k)!/(k!(n-k)!(2x)^k)`.
pub fn bessel_k_half<T: Real>(n: usize, x: T) -> Result<T> {
    require_positive("bessel_k_half", x)?;
    let two_x = T::lit(2.0) * x;
    // term_k = (n+k)!/(k!(n-k)!) / (2x)^k; term_0 = 1
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..=n {
        term = term * T::of(n + k) * T::of(n + 1 - k) / (T::of(k) * two_x);
        sum = sum + term;
    }
    Ok((T::PI() / two_x).sqrt() * (-x).exp() * sum)
}

/// `k`-th positive zero of `J0`: McMahon's expansion polished by Newton steps.
pub fn bessel_j0_zeros<T: Real>(k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::InvalidParameter { name: "k", value: 0.0, reason: "zero index is not defined" });
    }
    let beta = (T::of(k) - T::lit(0.25)) * T::PI();
    let b8 = T::lit(8.0) * beta;
    let b2 = b8 * b8;
    let mut z = beta + b8.recip() * (T::one() - T::lit(124.0 / 3.0) / b2 + T::lit(120_928.0 / 15.0) / (b2 * b2));
    for _ in 0..8 {
        let j0 = bessel_j0(z)?;
        let j1 = bessel_j1(z)?;
        let dz = j0 / j1;
        z = z + dz;
        if dz.abs() <= T::epsilon() * z {
            break;
        }
    }
    Ok(z)
}
