//! Large-`q` expansions of Hankel-type integrals from the derivatives of `f`
//! at the origin, summed with optimal truncation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::bessel_k0e;

/// Derivatives `f⁽ᵏ⁾(0)`, `k = 0..K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeTable<T> {
    pub values: Vec<T>,
    pub origin: String,
}

impl<T: Real> DerivativeTable<T> {
    pub fn new(values: Vec<T>, origin: impl Into<String>) -> Result<Self> {
        if let Some((k, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "derivative",
                value: v.to_f64_lossy(),
                reason: if k == 0 { "f(0) must be finite" } else { "derivative entries must be finite" },
            });
        }
        Ok(DerivativeTable { values, origin: origin.into() })
    }

    /// Table of `f(x) = e^{-λx}`: `f⁽ᵏ⁾(0) = (−λ)^k`.
    pub fn exponential(lambda: T, len: usize) -> Self {
        let mut values = Vec::with_capacity(len);
        let mut v = T::one();
        for _ in 0..len {
            values.push(v);
            v = v * -lambda;
        }
        DerivativeTable { values, origin: "exp".into() }
    }

    fn get(&self, k: usize) -> Result<T> {
        self.values
            .get(k)
            .copied()
            .ok_or(Error::InsufficientDerivatives { needed: k, available: self.values.len() })
    }
}

/// An optimally truncated asymptotic (or convergent) series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesResult<T> {
    pub value: T,
    pub partial_sums: Vec<T>,
    pub truncation_index: usize,
    pub first_omitted: T,
    /// Error bound reported for `value`; for the asymptotic series this is
    /// `first_omitted`.
    pub error_bound: T,
    /// All computed terms, including the first omitted one when available.
    pub terms: Vec<T>,
}

/// Chooses the truncation index: stop just before the first local minimum of
/// `|t_k|` among the first `max_terms` terms.
fn truncate<T: Real>(terms: Vec<T>, max_terms: usize) -> SeriesResult<T> {
    let mut partial_sums = Vec::with_capacity(max_terms);
    let mut acc = T::zero();
    for t in terms.iter().take(max_terms) {
        acc = acc + *t;
        partial_sums.push(acc);
    }
    let mut idx = max_terms - 1;
    for k in 0..max_terms.min(terms.len() - 1) {
        let tail_zero = terms[k..].iter().all(|t| *t == T::zero());
        if tail_zero || (terms[k] != T::zero() && terms[k + 1].abs() >= terms[k].abs()) {
            idx = k.saturating_sub(1).min(max_terms - 1);
            break;
        }
    }
    let first_omitted = terms.get(idx + 1).map(|t| t.abs()).unwrap_or(T::zero());
    SeriesResult { value: partial_sums[idx], partial_sums, truncation_index: idx, first_omitted, error_bound: first_omitted, terms }
}

fn check_inputs<T: Real>(q: T, max_terms: usize) -> Result<()> {
    if !(q > T::zero() && q.is_finite()) {
        return Err(Error::InvalidParameter { name: "q", value: q.to_f64_lossy(), reason: "requires q > 0" });
    }
    if max_terms == 0 {
        return Err(Error::InvalidParameter { name: "max_terms", value: 0.0, reason: "requires at least one term" });
    }
    Ok(())
}

/// `(−1)^m C(2m, m)/4^m = (−1)^m (2m−1)!!/(2^m m!)` for `m = 0..=count`.
fn central_coeffs<T: Real>(count: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(count + 1);
    let mut c = T::one();
    for m in 0..=count {
        out.push(c);
        let mm = T::of(m);
        c = -c * (T::lit(2.0) * mm + T::one()) / (T::lit(2.0) * (mm + T::one()));
    }
    out
}

/// `∫₀^∞ J₀(qx) f(x) dx ~ Σ_m (−1)^m (2m−1)!!/(2^m m!) f⁽²ᵐ⁾(0)/q^{2m+1}`.
pub fn willis_j0_series<T: Real>(derivs: &DerivativeTable<T>, q: T, max_terms: usize) -> Result<SeriesResult<T>> {
    check_inputs(q, max_terms)?;
    let coeffs = central_coeffs::<T>(max_terms);
    let inv_q2 = (q * q).recip();
    let mut terms = Vec::with_capacity(max_terms + 1);
    let mut pow = q.recip();
    for m in 0..=max_terms {
        let d = match derivs.get(2 * m) {
            Ok(d) => d,
            Err(e) if m < max_terms => return Err(e),
            Err(_) => break,
        };
        terms.push(coeffs[m] * d * pow);
        pow = pow * inv_q2;
    }
    Ok(truncate(terms, max_terms))
}

/// `∫₀^∞ J₁(qx) f(x) dx ~ f(0)/q + Σ_m (−1)^m (2m−1)!!/(2^m m!) f⁽²ᵐ⁺¹⁾(0)/q^{2m+2}`.
pub fn willis_j1_series<T: Real>(derivs: &DerivativeTable<T>, q: T, max_terms: usize) -> Result<SeriesResult<T>> {
    check_inputs(q, max_terms)?;
    let coeffs = central_coeffs::<T>(max_terms);
    let inv_q2 = (q * q).recip();
    let mut terms = Vec::with_capacity(max_terms + 1);
    terms.push(derivs.get(0)? / q);
    let mut pow = inv_q2;
    for j in 1..=max_terms {
        let d = match derivs.get(2 * j - 1) {
            Ok(d) => d,
            Err(e) if j < max_terms => return Err(e),
            Err(_) => break,
        };
        terms.push(coeffs[j - 1] * d * pow);
        pow = pow * inv_q2;
    }
    Ok(truncate(terms, max_terms))
}

/// `∫₀^∞ x f(x) J₀(qx) dx ~ q⁻³ Σ_m (−1)^{m+1} (2m+1)!/(m!)² f⁽²ᵐ⁺¹⁾(0) (2q)^{−2m}`.
pub fn hankel0_odd_series<T: Real>(derivs: &DerivativeTable<T>, q: T, max_terms: usize) -> Result<SeriesResult<T>> {
    check_inputs(q, max_terms)?;
    let inv_4q2 = (T::lit(4.0) * q * q).recip();
    let mut terms = Vec::with_capacity(max_terms + 1);
    // c_m = (−1)^{m+1} (2m+1)!/(m!)²
    let mut c = -T::one();
    let mut pow = (q * q * q).recip();
    for m in 0..=max_terms {
        let d = match derivs.get(2 * m + 1) {
            Ok(d) => d,
            Err(e) if m < max_terms => return Err(e),
            Err(_) => break,
        };
        terms.push(c * d * pow);
        let mm = T::of(m);
        c = -c * (T::lit(2.0) * mm + T::lit(2.0)) * (T::lit(2.0) * mm + T::lit(3.0)) / ((mm + T::one()) * (mm + T::one()));
        pow = pow * inv_4q2;
    }
    Ok(truncate(terms, max_terms))
}

/// Leading large-`q` term of a transform, with a regime warning.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingTerm<T> {
    pub value: T,
    pub warning: Option<String>,
}

/// Below this value of `qc` the A.6 leading term is flagged.
pub const A6_LARGE_Q_MIN: f64 = 5.0;

/// `A₆(q) ≍ e^{(ac)²} K₀(qc)`.
pub fn a6_large_q<T: Real>(q: T, a: T, c: T) -> Result<LeadingTerm<T>> {
    for (name, v) in [("q", q), ("a", a), ("c", c)] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::InvalidParameter { name, value: v.to_f64_lossy(), reason: "must be positive" });
        }
    }
    let qc = q * c;
    let y = (a * c) * (a * c);
    let value = (y - qc + bessel_k0e(qc)?.ln()).exp();
    let warning = (qc < T::lit(A6_LARGE_Q_MIN))
        .then(|| format!("qc = {} is below {A6_LARGE_Q_MIN}; leading term outside its regime", qc.to_f64_lossy()));
    Ok(LeadingTerm { value, warning })
}
