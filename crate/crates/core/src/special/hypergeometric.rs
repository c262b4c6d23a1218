//! Hypergeometric series with complex parameters and the optimally truncated
//! `2F0` asymptotic series.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 100_000;

/// An asymptotic series value together with the magnitude of the first
/// omitted term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticValue<T> {
    pub value: T,
    pub error_bound: T,
    pub terms_used: usize,
}

fn series_tolerance<T: Real>() -> T {
    T::lit(1e-14).max(T::epsilon())
}

fn check_lower_param<T: Real>(name: &'static str, b: Complex<T>) -> Result<()> {
    if b.im == T::zero() && b.re <= T::zero() && b.re == b.re.round() {
        return Err(Error::InvalidParameter {
            name,
            value: b.re.to_f64_lossy(),
            reason: "lower parameter must not be a non-positive integer",
        });
    }
    Ok(())
}

/// Sums `Σ t_k` where `t_{k+1} = t_k · ratio(k)`, stopping once the terms are
/// shrinking and below the relative tolerance.
fn sum_series<T: Real>(what: &'static str, mut ratio: impl FnMut(usize) -> Complex<T>) -> Result<Complex<T>> {
    let tol = series_tolerance::<T>();
    let mut term = real::<T>(T::one());
    let mut sum = term;
    for k in 0..MAX_SERIES_TERMS {
        let r = ratio(k);
        let next = term * r;
        if next == Complex::new(T::zero(), T::zero()) {
            return Ok(sum);
        }
        sum = sum + next;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Overflow { function: what });
        }
        if r.norm() < T::one() && next.norm() <= tol * sum.norm() {
            return Ok(sum);
        }
        term = next;
    }
    Err(Error::NonConvergence { what, terms: MAX_SERIES_TERMS })
}

/// Kummer's `1F1(a; b; z)` for complex `a` and real `b`, `z`.
pub fn hyp1f1_c<T: Real>(a: Complex<T>, b: T, z: T) -> Result<Complex<T>> {
    check_lower_param("b", real(b))?;
    sum_series("hyp1f1_c", |k| {
        let kk = T::of(k);
        (a + real(kk)) * real(z / ((b + kk) * (kk + T::one())))
    })
}

/// `1F2(a1; b1, b2; z)` for real `a1`, `z` and complex lower parameters.
pub fn hyp1f2_c<T: Real>(a1: T, b1: Complex<T>, b2: Complex<T>, z: T) -> Result<Complex<T>> {
    check_lower_param("b1", b1)?;
    check_lower_param("b2", b2)?;
    sum_series("hyp1f2_c", |k| {
        let kk = T::of(k);
        real::<T>((a1 + kk) * z / (kk + T::one())) / ((b1 + real(kk)) * (b2 + real(kk)))
    })
}

/// The divergent series `2F0(a1, a2; ; z)` for `z <= 0`, summed up to (not
/// including) its smallest term.
pub fn hyp2f0_asymptotic<T: Real>(a1: T, a2: T, z: T) -> Result<AsymptoticValue<T>> {
    if z > T::zero() || !z.is_finite() {
        return Err(Error::Domain { function: "hyp2f0_asymptotic", value: z.to_f64_lossy(), reason: "requires z <= 0" });
    }
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 0..MAX_SERIES_TERMS {
        let kk = T::of(k);
        let next = term * (a1 + kk) * (a2 + kk) * z / (kk + T::one());
        if next == T::zero() {
            // terminating polynomial (or z = 0)
            return Ok(AsymptoticValue { value: sum + term, error_bound: T::zero(), terms_used: k + 1 });
        }
        if next.abs() >= term.abs() {
            if k == 0 {
                return Err(Error::Divergent { what: "hyp2f0_asymptotic", z: z.to_f64_lossy() });
            }
            return Ok(AsymptoticValue { value: sum, error_bound: term.abs(), terms_used: k });
        }
        sum = sum + term;
        term = next;
    }
    Err(Error::NonConvergence { what: "hyp2f0_asymptotic", terms: MAX_SERIES_TERMS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use crate::special::laguerre_gen;

    type C = Complex<f64>;

    #[test]
    fn kummer_polynomial_cases() {
        for &z in &[-3.0, -0.25, 0.0, 0.7, 4.0] {
            let v = hyp1f1_c(C::new(-1.0, 0.0), 1.0, z).unwrap();
            assert!((v.re - (1.0 - z)).abs() < 1e-15);
            for m in 0..=30 {
                let v = hyp1f1_c(C::new(-(m as f64), 0.0), 1.0, z).unwrap();
                let l = laguerre_gen(m, 0.0, z).unwrap();
                // the terms' absolute sum is L_m(-|z|); rounding scales with it
                let scale = laguerre_gen(m, 0.0, -z.abs()).unwrap();
                assert!((v.re - l).abs() <= 1e-14 * scale, "m={m} z={z}: {} vs {l}", v.re);
                assert_eq!(v.im, 0.0);
            }
        }
    }

    #[test]
    fn kummer_schwarz_symmetry_and_exp() {
        let a = hyp1f1_c(C::new(0.3, 2.0), 1.0, -0.7).unwrap();
        let b = hyp1f1_c(C::new(0.3, -2.0), 1.0, -0.7).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
        // 1F1(a; a; z) = e^z
        let v = hyp1f1_c(C::new(2.5, 0.0), 2.5, 3.0).unwrap();
        assert!((v.re / 3f64.exp() - 1.0).abs() < 1e-14);
        assert!(hyp1f1_c(C::new(1.0, 0.0), -2.0, 1.0).is_err());
    }

    #[test]
    fn one_f_two_leading_terms() {
        let v = hyp1f2_c(1.0, C::new(2.0, 0.0), C::new(2.0, 0.0), 0.0).unwrap();
        assert_eq!(v, C::new(1.0, 0.0));
        let z = 1e-4;
        let v = hyp1f2_c(1.0, C::new(2.0, 0.0), C::new(2.0, 0.0), z).unwrap();
        // 1 + z/4 + z²/36 + ...
        assert!((v.re - (1.0 + z / 4.0)).abs() < z * z / 30.0);
        // 1F2(1; 2, 2; y) relates to I0: I0(2√y) = 1 + y·1F2(1; 2, 2; y)
        let y: f64 = 0.8;
        let v = hyp1f2_c(1.0, C::new(2.0, 0.0), C::new(2.0, 0.0), y).unwrap();
        let i0 = crate::special::bessel_i0(2.0 * y.sqrt()).unwrap();
        assert!((1.0 + y * v.re - i0).abs() < 1e-14);
    }

    #[test]
    fn two_f_zero_at_origin() {
        let v = hyp2f0_asymptotic(1.0, 1.0, 0.0).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.error_bound, 0.0);
        assert!(hyp2f0_asymptotic(1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn two_f_zero_against_stieltjes_integral() {
        // 2F0(1,1;-z) ~ ∫_0^∞ e^{-t}/(1+zt) dt
        for &z in &[0.02, 0.05, 0.1] {
            let v = hyp2f0_asymptotic(1.0, 1.0, -z).unwrap();
            let oracle = quad::integrate_to_infinity(|t: f64| (-t).exp() / (1.0 + z * t), 0.0, 1e-16, 1e-15, 500)
                .unwrap()
                .value;
            assert!((v.value - oracle).abs() <= v.error_bound, "z={z}: {} vs {oracle} bound {}", v.value, v.error_bound);
        }
    }

    #[test]
    fn two_f_zero_bound_shrinks_with_z() {
        let small = hyp2f0_asymptotic(1.0, 1.0, -0.02).unwrap();
        let large = hyp2f0_asymptotic(1.0, 1.0, -0.1).unwrap();
        assert!(small.error_bound < large.error_bound);
        assert!(small.terms_used > large.terms_used);
    }

    #[test]
    fn two_f_zero_divergence() {
        // |t1| = a1·a2·|z| ≥ 1 ⇒ immediately divergent
        assert!(matches!(hyp2f0_asymptotic(2.0, 2.0, -0.5), Err(Error::Divergent { .. })));
    }
}
