use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex;
use serde::Serialize;

use crate::error::Result;
use crate::mellin_barnes::{estimate_growth, GrowthProfile};
use crate::scalar::{real, Real};

/// Which Hankel-to-Mellin representation a coefficient feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    /// `f(x) = g(x²)`, coefficient `ḡ⁽ˢ⁾(0)`.
    Theorem1,
    /// `f(x) = h(x⁴)`, coefficient `h̄⁽ˢ⁾(0)`.
    Theorem2,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Theorem1 => "theorem1",
            TransformKind::Theorem2 => "theorem2",
        }
    }

    /// Left edge of the abscissa range imposed by the Gamma factors of the
    /// transform kernel.
    pub fn kernel_lower<T: Real>(self) -> T {
        match self {
            TransformKind::Theorem1 => -T::one(),
            TransformKind::Theorem2 => -T::lit(0.5),
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type LnEval<T> = Arc<dyn Fn(Complex<T>) -> Result<Complex<T>> + Send + Sync>;

/// A coefficient continuation `s ↦ ḡ⁽ˢ⁾(0)` (or `h̄⁽ˢ⁾(0)`), stored through
/// its logarithm so that contours far from the origin stay in range.
///
/// A coefficient may carry additive `parts`; the automatic transform
/// integrates each part on its own contour.
#[derive(Clone)]
pub struct CoefficientFn<T: Real> {
    pub label: String,
    pub kind: TransformKind,
    pub strip_min: T,
    pub real_symmetric: bool,
    pub params: Vec<(String, T)>,
    ln_eval: LnEval<T>,
    parts: Vec<CoefficientFn<T>>,
    growth: Arc<OnceLock<GrowthProfile<T>>>,
}

impl<T: Real> CoefficientFn<T> {
    /// Builds a coefficient from a function returning `ln ḡ(s)`.
    pub fn from_log<F>(label: impl Into<String>, kind: TransformKind, strip_min: T, real_symmetric: bool, f: F) -> Self
    where
        F: Fn(Complex<T>) -> Result<Complex<T>> + Send + Sync + 'static,
    {
        CoefficientFn {
            label: label.into(),
            kind,
            strip_min,
            real_symmetric,
            params: Vec::new(),
            ln_eval: Arc::new(f),
            parts: Vec::new(),
            growth: Arc::new(OnceLock::new()),
        }
    }

    /// Builds a coefficient from a function returning `ḡ(s)` directly.
    pub fn from_value<F>(label: impl Into<String>, kind: TransformKind, strip_min: T, real_symmetric: bool, f: F) -> Self
    where
        F: Fn(Complex<T>) -> Result<Complex<T>> + Send + Sync + 'static,
    {
        Self::from_log(label, kind, strip_min, real_symmetric, move |s| f(s).map(|v| v.ln()))
    }

    pub fn with_params(mut self, params: &[(&str, T)]) -> Self {
        self.params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self
    }

    /// Attaches additive pieces whose sum is this coefficient.
    pub fn with_parts(mut self, parts: Vec<CoefficientFn<T>>) -> Self {
        self.parts = parts;
        self
    }

    pub fn parts(&self) -> &[CoefficientFn<T>] {
        &self.parts
    }

    pub fn param(&self, name: &str) -> Option<T> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn ln_evaluate(&self, s: Complex<T>) -> Result<Complex<T>> {
        (self.ln_eval)(s)
    }

    pub fn evaluate(&self, s: Complex<T>) -> Result<Complex<T>> {
        let v = self.ln_evaluate(s)?.exp();
        if s.im == T::zero() && self.real_symmetric {
            Ok(real(v.re))
        } else {
            Ok(v)
        }
    }

    /// Growth profile on the default sampling grid, computed once.
    pub fn growth(&self) -> Result<GrowthProfile<T>> {
        if let Some(g) = self.growth.get() {
            return Ok(g.clone());
        }
        let lo = self.strip_min.max(self.kind.kernel_lower());
        let width = -lo;
        let v: Vec<T> = [0.25, 0.5, 0.75].iter().map(|&f| lo + T::lit(f) * width).collect();
        let g = estimate_growth(self, &v, T::lit(DEFAULT_GROWTH_WMAX))?;
        Ok(self.growth.get_or_init(|| g).clone())
    }
}

/// Largest `|Im s|` sampled by [`CoefficientFn::growth`].
pub const DEFAULT_GROWTH_WMAX: f64 = 40.0;

impl<T: Real> fmt::Debug for CoefficientFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientFn")
            .field("label", &self.label)
            .field("kind", &self.kind)
            .field("strip_min", &self.strip_min)
            .field("real_symmetric", &self.real_symmetric)
            .field("params", &self.params)
            .field("parts", &self.parts.len())
            .finish()
    }
}

/// `ln(e^x + e^y)` without leaving the floating-point range.
pub(crate) fn ln_add<T: Real>(x: Complex<T>, y: Complex<T>) -> Complex<T> {
    if x.re == T::neg_infinity() {
        return y;
    }
    if y.re == T::neg_infinity() {
        return x;
    }
    let (big, small) = if x.re >= y.re { (x, y) } else { (y, x) };
    big + (real::<T>(T::one()) + (small - big).exp()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_add_matches_direct_sum() {
        let x = Complex::new(0.3f64, 0.2);
        let y = Complex::new(-1.1f64, 2.0);
        let direct = x.exp() + y.exp();
        assert!((ln_add(x, y).exp() - direct).norm() < 1e-15);
        // huge magnitudes
        let x = Complex::new(800.0f64, 0.0);
        let y = Complex::new(799.0f64, std::f64::consts::PI);
        let l = ln_add(x, y);
        assert!((l.re - (800.0 + (1.0 - (-1.0f64).exp()).ln())).abs() < 1e-12);
    }

    #[test]
    fn ln_add_with_zero_operand() {
        let x = Complex::new(f64::NEG_INFINITY, 0.0);
        let y = Complex::new(1.0, 0.5);
        assert_eq!(ln_add(x, y), y);
    }

    #[test]
    fn from_value_round_trip() {
        let c = CoefficientFn::from_value("sq", TransformKind::Theorem1, -1.0, true, |s: Complex<f64>| Ok(s * s + 1.0));
        let v = c.evaluate(Complex::new(2.0, 0.0)).unwrap();
        assert!((v.re - 5.0).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
        assert!(c.parts().is_empty());
        assert_eq!(c.param("a"), None);
    }
}
