//! Series representations of the A.6 transform
//! `∫₀^∞ x e^{-a²x²} J₀(qx)/(x²+c²) dx`.
//!
//! With `x = q²/4a²`, `y = (ac)²` and `w = y/x`:
//!
//! ```text
//! A₆(q) = e^y K₀(qc) − ½ e^{-x} Σ_p y^p Ψ(p+1, 1; x)
//!       = e^y K₀(qc) − (1/2x) e^{-x} Σ_p w^p ₂F₀(p+1, p+1; ; −1/x)
//! ```

use super::coefficients::positive;
use crate::asymptotics::SeriesResult;
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::special::{bessel_k0e, hyp2f0_asymptotic, incomplete_gamma_upper0_scaled, tricomi_psi};

fn check_q<T: Real>(q: T) -> Result<T> {
    if q > T::zero() && q.is_finite() {
        Ok(q)
    } else {
        Err(Error::InvalidParameter { name: "q", value: q.to_f64_lossy(), reason: "requires q > 0" })
    }
}

fn check_terms(max_terms: usize) -> Result<()> {
    if max_terms == 0 {
        return Err(Error::InvalidParameter { name: "max_terms", value: 0.0, reason: "requires at least one term" });
    }
    Ok(())
}

/// `e^{y} K₀(qc)` without intermediate overflow.
fn leading<T: Real>(y: T, qc: T) -> Result<T> {
    Ok((y - qc).exp() * bessel_k0e(qc)?)
}

/// The `Ψ` form. Terms are summed in ascending order until they fall below
/// `1e-14` of the running sum.
pub fn a6_series_psi<T: Real>(q: T, a: T, c: T, max_terms: usize) -> Result<SeriesResult<T>> {
    let q = check_q(q)?;
    let a = positive("a", a)?;
    let c = positive("c", c)?;
    check_terms(max_terms)?;
    let x = q * q / (T::lit(4.0) * a * a);
    let y = (a * c) * (a * c);
    let lead = leading(y, q * c)?;
    let ln_pre = -x - T::lit(2.0).ln();
    let ln_y = y.ln();
    let stop = T::lit(1e-14).max(T::epsilon());

    let mut terms = vec![lead];
    let mut partial_sums = vec![lead];
    let mut acc = CompensatedSum::new();
    acc.add(lead);
    let mut abs_sum = lead.abs();
    for p in 0..max_terms {
        let psi = tricomi_psi(p + 1, x)?;
        let t = -(ln_pre + T::of(p) * ln_y + psi.ln()).exp();
        acc.add(t);
        abs_sum = abs_sum + t.abs();
        terms.push(t);
        partial_sums.push(acc.value());
        // |t_{p+1}/t_p| <= y/(p+1), so the tail is geometric once p+1 > y
        let r = y / T::of(p + 1);
        let small = t.abs() <= stop * acc.value().abs() || t == T::zero();
        if small && r < T::lit(0.5) {
            let tail = t.abs() * r / (T::one() - r);
            let rounding = T::lit(16.0) * T::epsilon() * abs_sum + T::lit(1e-13) * (abs_sum - lead.abs());
            let idx = partial_sums.len() - 1;
            return Ok(SeriesResult {
                value: acc.value(),
                partial_sums,
                truncation_index: idx,
                first_omitted: t.abs() * r,
                error_bound: tail + rounding,
                terms,
            });
        }
    }
    Err(Error::NonConvergence { what: "a6_series_psi", terms: max_terms })
}

/// The `₂F₀` form; valid when `q` is large against `a` and `ac`.
///
/// Each inner value lies in `[0, 1]`, so the outer tail past the last
/// usable index `P` is at most `w^P/(1−w)` in units of the prefactor.
pub fn a6_series_2f0<T: Real>(q: T, a: T, c: T, max_terms: usize) -> Result<SeriesResult<T>> {
    let q = check_q(q)?;
    let a = positive("a", a)?;
    let c = positive("c", c)?;
    check_terms(max_terms)?;
    let x = q * q / (T::lit(4.0) * a * a);
    let y = (a * c) * (a * c);
    let w = y / x;
    if w >= T::one() {
        return Err(Error::AsymptoticRegime {
            what: "a6_series_2f0",
            reason: format!("(2a²c/q)² = {} must be below 1", w.to_f64_lossy()),
        });
    }
    let lead = leading(y, q * c)?;
    let pre = (-x).exp() / (T::lit(2.0) * x);
    let z = -x.recip();

    let mut terms = vec![lead];
    let mut partial_sums = vec![lead];
    let mut acc = CompensatedSum::new();
    acc.add(lead);
    let mut inner_err = T::zero();
    let mut abs_sum = lead.abs();
    let mut wp = T::one();
    let mut used = 0;
    for p in 0..max_terms {
        let ap = T::of(p + 1);
        let inner = match hyp2f0_asymptotic(ap, ap, z) {
            Ok(v) => v,
            Err(Error::Divergent { .. }) if p > 0 => break,
            Err(Error::Divergent { .. }) => {
                return Err(Error::AsymptoticRegime {
                    what: "a6_series_2f0",
                    reason: format!("q²/4a² = {} is too small for the inner expansion", x.to_f64_lossy()),
                })
            }
            Err(e) => return Err(e),
        };
        let t = -pre * wp * inner.value;
        acc.add(t);
        abs_sum = abs_sum + t.abs();
        inner_err = inner_err + pre * wp * inner.error_bound;
        terms.push(t);
        partial_sums.push(acc.value());
        used = p + 1;
        wp = wp * w;
        if wp == T::zero() {
            break;
        }
    }
    let outer_tail = pre * wp / (T::one() - w);
    let error_bound = outer_tail + inner_err + T::lit(16.0) * T::epsilon() * abs_sum;
    Ok(SeriesResult {
        value: acc.value(),
        partial_sums,
        truncation_index: used,
        first_omitted: pre * wp,
        error_bound,
        terms,
    })
}

/// `A₆(0) = ½ e^{(ac)²} Γ(0, (ac)²)`.
pub fn a6_q_zero<T: Real>(a: T, c: T) -> Result<T> {
    let a = positive("a", a)?;
    let c = positive("c", c)?;
    Ok(T::lit(0.5) * incomplete_gamma_upper0_scaled((a * c) * (a * c))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hankel0_direct;
    use crate::quad;
    use crate::special::bessel_k0;

    fn direct(q: f64, a: f64, c: f64) -> f64 {
        let f = move |x: f64| (-a * a * x * x).exp() / (x * x + c * c);
        hankel0_direct(f, q, 1e-11).unwrap().value
    }

    #[test]
    fn psi_series_against_oscillatory_quadrature() {
        for &(a, c, q) in &[(1.0, 1.0, 2.0), (0.5, 0.5, 5.0), (1.0, 1.0, 10.0), (0.5, 0.5, 2.0)] {
            let r = a6_series_psi(q, a, c, 200).unwrap();
            let d = direct(q, a, c);
            assert!((r.value - d).abs() < 1e-8 * d.abs(), "{a},{c},{q}: {} vs {d}", r.value);
            assert!(r.error_bound < 1e-10 * d.abs());
        }
    }

    #[test]
    fn psi_series_collapses_to_k0_as_a_vanishes() {
        let r = a6_series_psi(2.0f64, 1e-4, 1.0, 200).unwrap();
        assert!((r.value - bessel_k0(2.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn series_forms_agree() {
        for &(a, c, q) in &[(0.5f64, 0.5, 5.0), (0.5, 0.5, 10.0), (1.0, 1.0, 5.0), (1.0, 1.0, 10.0)] {
            let p = a6_series_psi(q, a, c, 200).unwrap();
            let f = a6_series_2f0(q, a, c, 50).unwrap();
            assert!((p.value - f.value).abs() <= p.error_bound + f.error_bound, "{a},{c},{q}");
        }
    }

    #[test]
    fn inner_values_are_probabilities() {
        let r = a6_series_2f0(10.0, 1.0, 1.0, 50).unwrap();
        let pre = (-25.0f64).exp() / 50.0;
        for (p, t) in r.terms[1..].iter().enumerate() {
            let inner = -t / (pre * 0.04f64.powi(p as i32));
            assert!((0.0..=1.0).contains(&inner), "p={p}: {inner}");
        }
    }

    #[test]
    fn large_q_ratio() {
        let (a, c) = (1.0, 1.0);
        let q = 15.0;
        let r = a6_series_2f0(q, a, c, 50).unwrap();
        let lead = 1f64.exp() * bessel_k0(15.0).unwrap();
        assert!((r.value / lead - 1.0).abs() < 1e-4);
    }

    #[test]
    fn small_q_rejected_by_2f0() {
        assert!(matches!(a6_series_2f0(0.5, 1.0, 1.0, 20), Err(Error::AsymptoticRegime { .. })));
        assert!(matches!(a6_series_2f0(1.0, 1.0, 2.0, 20), Err(Error::AsymptoticRegime { .. })));
    }

    #[test]
    fn q_zero_values() {
        let v = a6_q_zero(1.0, 1.0).unwrap();
        assert!((v - 0.5 * 1f64.exp() * 0.219_383_934_395_520_3).abs() < 1e-14);
        let r = quad::integrate_to_infinity(|x: f64| x * (-x * x).exp() / (x * x + 1.0), 0.0, 1e-14, 1e-13, 500).unwrap();
        assert!((v - r.value).abs() < 1e-9);
        let big = a6_q_zero(1.0f64, 30.0).unwrap();
        assert!((big * 2.0 * 900.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn psi_series_approaches_q_zero_limit() {
        let r = a6_series_psi(1e-3f64, 1.0, 1.0, 400).unwrap();
        assert!((r.value - a6_q_zero(1.0, 1.0).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn partial_sums_are_cumulative() {
        let r = a6_series_psi(2.0, 1.0, 1.0, 200).unwrap();
        let mut s = 0.0f64;
        for (t, ps) in r.terms.iter().zip(&r.partial_sums) {
            s += t;
            assert!((s - ps).abs() < 1e-15);
        }
        assert_eq!(r.value, r.partial_sums[r.truncation_index]);
    }

    #[test]
    fn truncated_psi_series_reports_nonconvergence() {
        assert!(matches!(a6_series_psi(2.0, 3.0, 3.0, 5), Err(Error::NonConvergence { .. })));
    }
}
