//! Direct quadrature references that share nothing with the contour engine.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;
use crate::scalar::Real;
use crate::special::{bessel_j0, bessel_j0_zeros};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealResult<T> {
    pub value: T,
    pub error_estimate: T,
    /// Cells (Hankel) or chunks (Mellin) actually integrated.
    pub segments: usize,
}

pub const MAX_CELLS: usize = 600;
const WYNN_WINDOW: usize = 25;
const WYNN_DEPTH: usize = 12;
const NEGLIGIBLE_RUN: usize = 3;
/// Consecutive extrapolated values whose spread must fall within tolerance.
const STABLE_ESTIMATES: usize = 8;
/// Cells whose magnitudes all exceed those `GROWTH_WINDOW` cells earlier
/// signal a non-decaying integrand.
const GROWTH_WINDOW: usize = 20;

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "tol", value: tol.to_f64_lossy(), reason: "must be positive" })
    }
}

/// Wynn's epsilon algorithm; returns the last entry of the deepest even
/// column (at most `WYNN_DEPTH`).
fn wynn_epsilon<T: Real>(s: &[T]) -> T {
    let mut prev: Vec<T> = vec![T::zero(); s.len() + 1];
    let mut cur: Vec<T> = s.to_vec();
    let mut best = *s.last().expect("non-empty sequence");
    for k in 1..=WYNN_DEPTH.min(s.len() - 1) {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == T::zero() {
                return best;
            }
            next.push(prev[i + 1] + d.recip());
        }
        if next.iter().any(|v| !v.is_finite()) {
            return best;
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            best = *cur.last().expect("non-empty column");
        }
    }
    best
}

/// `∫₀^∞ x f(x) J₀(qx) dx` by integrating between the zeros of `J₀(qx)` and
/// accelerating the partial sums with the epsilon algorithm.
pub fn hankel0_direct<T: Real, F: Fn(T) -> T>(f: F, q: T, tol: T) -> Result<RealResult<T>> {
    if !(q > T::zero() && q.is_finite()) {
        return Err(Error::InvalidParameter { name: "q", value: q.to_f64_lossy(), reason: "requires q > 0" });
    }
    check_tol(tol)?;
    let g = |x: T| x * f(x) * bessel_j0(q * x).unwrap_or(T::nan());
    let cell_tol = tol * T::lit(0.1);
    let mut lo = T::zero();
    let mut sums: Vec<T> = Vec::new();
    let mut cells: Vec<T> = Vec::new();
    let mut sum = T::zero();
    let mut cell_err = T::zero();
    let mut negligible = 0;
    let mut estimates: Vec<T> = Vec::new();
    for k in 1..=MAX_CELLS {
        let hi = bessel_j0_zeros::<T>(k)? / q;
        let scale = sum.abs();
        let r = quad::integrate(g, lo, hi, cell_tol * scale, cell_tol, 400)?;
        if !r.converged {
            return Err(Error::Quadrature { lo: lo.to_f64_lossy(), hi: hi.to_f64_lossy(), reason: "cell did not converge" });
        }
        lo = hi;
        sum = sum + r.value;
        cell_err = cell_err + r.error;
        sums.push(sum);
        cells.push(r.value);

        if k >= GROWTH_WINDOW + 5 {
            let recent = cells[k - 5..].iter().fold(T::infinity(), |m, v| m.min(v.abs()));
            let earlier = cells[k - GROWTH_WINDOW - 5..k - GROWTH_WINDOW].iter().fold(T::zero(), |m, v| m.max(v.abs()));
            if recent > earlier {
                return Err(Error::TailNotDecaying { edge: recent.to_f64_lossy(), peak: earlier.to_f64_lossy() });
            }
        }

        if r.value.abs() <= T::lit(1e-3) * tol * sum.abs() {
            negligible += 1;
            if negligible >= NEGLIGIBLE_RUN {
                return Ok(RealResult { value: sum, error_estimate: cell_err, segments: k });
            }
        } else {
            negligible = 0;
        }

        if sums.len() >= 6 {
            let start = sums.len().saturating_sub(WYNN_WINDOW);
            let est = wynn_epsilon(&sums[start..]);
            estimates.push(est);
            if estimates.len() >= STABLE_ESTIMATES {
                let recent = &estimates[estimates.len() - STABLE_ESTIMATES..];
                let spread = recent.iter().fold(T::zero(), |m, v| m.max((*v - est).abs()));
                let target = cell_tol * est.abs();
                let shrinking = cells[k - 1].abs() < cells[k - 3].abs();
                if shrinking && spread <= target {
                    return Ok(RealResult { value: est, error_estimate: spread + cell_err, segments: k });
                }
            }
        }
    }
    let tail = &cells[cells.len() - 10..];
    let alternating = tail.windows(2).all(|w| w[0] * w[1] < T::zero());
    if alternating {
        Err(Error::NonConvergence { what: "hankel0_direct", terms: MAX_CELLS })
    } else {
        Err(Error::TailNotAlternating { cells: MAX_CELLS })
    }
}

/// Width of the `ln x` chunks used by [`mellin_forward`].
const MELLIN_CHUNK: f64 = 8.0;

/// `∫₀^∞ x^{s−1} g(x) dx`, integrated in `u = ln x` up to `x = upper`, with
/// the remainder past `upper` bounded from the local power-law decay.
pub fn mellin_forward<T: Real, G: Fn(T) -> T>(g: G, s: T, upper: T, tol: T) -> Result<RealResult<T>> {
    if !(s > T::zero() && s.is_finite()) {
        return Err(Error::InvalidParameter { name: "s", value: s.to_f64_lossy(), reason: "requires s > 0" });
    }
    if !(upper > T::zero() && upper.is_finite()) {
        return Err(Error::InvalidParameter { name: "upper", value: upper.to_f64_lossy(), reason: "requires upper > 0" });
    }
    check_tol(tol)?;
    let h = |u: T| (s * u).exp() * g(u.exp());
    let u_lo = (tol * T::lit(1e-4)).ln() / s;
    let u_hi = upper.ln();
    if u_hi <= u_lo {
        return Err(Error::InvalidParameter { name: "upper", value: upper.to_f64_lossy(), reason: "below the lower cut-off" });
    }
    let width = T::lit(MELLIN_CHUNK);
    let mut total = T::zero();
    let mut err = T::zero();
    let mut chunks = 0;
    let mut a = u_lo;
    while a < u_hi {
        let b = (a + width).min(u_hi);
        let r = quad::integrate(h, a, b, T::zero(), tol * T::lit(1e-2), 1000)?;
        if !r.converged {
            return Err(Error::Quadrature { lo: a.exp().to_f64_lossy(), hi: b.exp().to_f64_lossy(), reason: "chunk did not converge" });
        }
        total = total + r.value;
        err = err + r.error;
        chunks += 1;
        a = b;
    }
    // below x = e^{u_lo} the integrand behaves like g(0) x^{s-1}
    let lower_tail = h(u_lo).abs() / s;
    if !lower_tail.is_finite() {
        return Err(Error::Quadrature { lo: 0.0, hi: u_lo.exp().to_f64_lossy(), reason: "endpoint singularity is not integrable" });
    }
    let edge = h(u_hi).abs();
    let upper_tail = if edge == T::zero() {
        T::zero()
    } else {
        let step = T::lit(0.5);
        let rate = (h(u_hi - step).abs().ln() - edge.ln()) / step;
        if !(rate > T::zero()) {
            return Err(Error::Quadrature { lo: upper.to_f64_lossy(), hi: f64::INFINITY, reason: "integrand does not decay past upper" });
        }
        edge / rate
    };
    let tail = lower_tail + upper_tail;
    if tail > tol * total.abs() {
        return Err(Error::Quadrature { lo: upper.to_f64_lossy(), hi: f64::INFINITY, reason: "tail bound exceeds tolerance" });
    }
    Ok(RealResult { value: total, error_estimate: err + tail, segments: chunks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::gamma_r;
    use crate::special::bessel_k0;

    #[test]
    fn gaussian_transform() {
        let r = hankel0_direct(|x: f64| (-x * x).exp(), 2.0, 1e-12).unwrap();
        let exact = (-1f64).exp() / 2.0;
        assert!((r.value - exact).abs() < 1e-13);
        assert!(r.error_estimate < 1e-11);
    }

    #[test]
    fn algebraic_decay_transform() {
        let r = hankel0_direct(|x: f64| 1.0 / (x * x + 1.0), 1.0, 1e-11).unwrap();
        let exact = bessel_k0(1.0).unwrap();
        assert!((r.value - exact).abs() < 1e-9, "{} vs {exact}", r.value);
        assert!(r.segments > NEGLIGIBLE_RUN);
    }

    #[test]
    fn zero_function() {
        let r = hankel0_direct(|_x: f64| 0.0, 3.0, 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn halving_tolerance_is_self_consistent() {
        let f = |x: f64| (-0.25 * x * x).exp() / (x * x + 0.25);
        for &q in &[2.0, 5.0, 10.0] {
            let coarse = hankel0_direct(f, q, 1e-8).unwrap();
            let fine = hankel0_direct(f, q, 5e-9).unwrap();
            assert!((coarse.value - fine.value).abs() <= coarse.error_estimate.max(1e-15), "q={q}");
        }
    }

    #[test]
    fn beating_integrand_estimate_covers_error() {
        use crate::catalog::closed_form;
        use crate::{Example, Params};
        for &(a, q) in &[(2.0f64, 3.0f64), (2.0, 2.5), (1.0, 1.5), (0.5, 0.6)] {
            let p = Params::new().with_a(a).with_c(1.0);
            let f = Example::A5.integrand(&p).unwrap();
            let exact = closed_form(Example::A5, q, &p).unwrap();
            for &tol in &[1e-6, 1e-8] {
                let r = hankel0_direct(&*f, q, tol).unwrap();
                assert!((r.value - exact).abs() <= r.error_estimate, "a={a} q={q} tol={tol}");
            }
        }
    }

    #[test]
    fn non_decaying_tail_is_reported() {
        assert!(hankel0_direct(|x: f64| x, 1.0, 1e-8).is_err());
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        let s: Vec<f64> = (1..=20)
            .scan(0.0, |acc, k| {
                *acc += (-1f64).powi(k + 1) / k as f64;
                Some(*acc)
            })
            .collect();
        assert!((wynn_epsilon(&s) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn mellin_of_exponential_is_gamma() {
        let r = mellin_forward(|x: f64| (-x).exp(), 0.3, 1e3, 1e-10).unwrap();
        assert!((r.value - gamma_r(0.3).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn master_theorem_instance() {
        for &s in &[0.2f64, 0.5, 0.8] {
            let r = mellin_forward(|x: f64| 1.0 / (1.0 + x), s, 1e80, 1e-8).unwrap();
            let exact = std::f64::consts::PI / (std::f64::consts::PI * s).sin();
            assert!((r.value / exact - 1.0).abs() < 1e-7, "s={s}: {}", r.value);
        }
    }

    #[test]
    fn mellin_tail_too_large_is_an_error() {
        let r = mellin_forward(|x: f64| 1.0 / (1.0 + x), 0.8, 1e3, 1e-8);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
        assert!(mellin_forward(|x: f64| x, 0.5, 1e3, 1e-8).is_err());
    }
}
