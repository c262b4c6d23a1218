//! Vertical-line evaluation of the Mellin–Barnes representations of the
//! order-zero Hankel transform.
//!
//! For `f(x) = g(x²)`:
//!
//! ```text
//! A(q) = 1/(πi q²) ∫_{α-i∞}^{α+i∞} ḡ⁽ˢ⁾(0) Γ(s+1) (q²/4)^{-s} ds
//! ```
//!
//! and for `f(x) = h(x⁴)`:
//!
//! ```text
//! A(q) = 1/(q²√π i) ∫ h̄⁽ˢ⁾(0) Γ(2s+1)/Γ(1/2-s) 2^{6s+1} q^{-4s} ds
//! ```
//!
//! Integrands are handled through their logarithms and rescaled by the
//! largest node value before summation.

use num_complex::Complex;
use serde::Serialize;

use crate::catalog::{CoefficientFn, TransformKind};
use crate::error::{Error, Result};
use crate::kernel::log_gamma_c;
use crate::scalar::{cplx, real, CompensatedComplex, CompensatedSum, Real};

/// Slack above π/2 within which a fitted growth rate is still accepted as a
/// boundary case.
pub const GROWTH_SLACK: f64 = 0.25;
/// Margin below π/2 required for a growth profile to count as admissible.
pub const GROWTH_MARGIN: f64 = 0.05;
/// Largest distance the automatic contour moves right of the strip edge.
pub const ALPHA_SHIFT_CAP: f64 = 500.0;
/// Hard cap on the truncation height chosen automatically.
pub const HALF_HEIGHT_CAP: f64 = 4000.0;
/// Hard cap on fine-grid nodes per side.
pub const MAX_NODES_PER_SIDE: usize = 400_000;

/// A truncated, discretised vertical contour `Re s = alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourSpec<T> {
    pub alpha: T,
    pub half_height: T,
    pub step: T,
    pub tolerance: T,
}

impl<T: Real> ContourSpec<T> {
    pub fn new(alpha: T, half_height: T, step: T, tolerance: T) -> Result<Self> {
        let c = ContourSpec { alpha, half_height, step, tolerance };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::InvalidContour { reason: "alpha must be finite" });
        }
        if !(self.step > T::zero() && self.step.is_finite()) {
            return Err(Error::InvalidContour { reason: "step must be positive" });
        }
        if !(self.half_height >= T::lit(10.0) * self.step && self.half_height.is_finite()) {
            return Err(Error::InvalidContour { reason: "half_height must be at least 10 steps" });
        }
        if !(self.tolerance > T::zero() && self.tolerance < T::one()) {
            return Err(Error::InvalidContour { reason: "tolerance must lie in (0, 1)" });
        }
        let per_side = (self.half_height / self.step).ceil().to_usize().unwrap_or(usize::MAX);
        if per_side.saturating_mul(2) > MAX_NODES_PER_SIDE {
            return Err(Error::InvalidContour { reason: "too many nodes" });
        }
        Ok(())
    }

    /// Requires `alpha` strictly right of `lower`.
    pub fn check_strip(&self, lower: T, what: &'static str) -> Result<()> {
        if self.alpha > lower {
            Ok(())
        } else {
            Err(Error::ContourOutsideStrip { alpha: self.alpha.to_f64_lossy(), lower: lower.to_f64_lossy(), what })
        }
    }
}

/// Raw result of [`integrate_contour`]: `(1/2πi) ∫ F(s) ds`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourIntegral<T> {
    pub value: Complex<T>,
    pub error_estimate: T,
    pub refinement_diff: T,
    pub tail_bound: T,
    pub rounding: T,
    /// `(1/2π) ∫ |F| dw` over the truncated line.
    pub l1: T,
    pub nodes: usize,
}

/// Growth fit `ln|ḡ(v+iw)| ≈ ln C + P v + R|w|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthProfile<T> {
    /// `|R|`, compared with π/2.
    pub a_est: T,
    pub p_est: T,
    pub c_est: T,
    pub admissible: bool,
    /// Signed rate `R`: negative means decay along the imaginary direction.
    pub w_rate: T,
    /// RMS residual of the fit.
    pub residual: T,
}

/// A transform value with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub imag_residue: T,
    pub nodes: usize,
    pub tail_bound: T,
    /// One contour per integrated part.
    pub contours: Vec<ContourSpec<T>>,
    pub warnings: Vec<String>,
}

/// Automatic contour together with the warnings raised while sizing it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourPlan<T> {
    pub contour: ContourSpec<T>,
    pub warnings: Vec<String>,
}

/// How the automatic driver places the contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaChoice<T> {
    /// Minimise `∫|F|` over the abscissa.
    Optimal,
    /// A second abscissa derived from the optimal one, for path-independence checks.
    Alternate,
    Fixed(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoOptions<T> {
    pub alpha: AlphaChoice<T>,
    /// Absolute magnitude (in transform units) against which tails and
    /// refinement differences may be judged instead of the part's own value.
    pub abs_scale: Option<T>,
}

impl<T> Default for AutoOptions<T> {
    fn default() -> Self {
        AutoOptions { alpha: AlphaChoice::Optimal, abs_scale: None }
    }
}

fn node<T: Real, F>(lnf: &F, s: Complex<T>) -> Result<Complex<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let l = lnf(s)?;
    if l.re == T::neg_infinity() {
        return Ok(cplx(T::neg_infinity(), T::zero()));
    }
    if l.re.is_nan() || l.im.is_nan() || l.re == T::infinity() || l.im.is_infinite() {
        return Err(Error::NonFiniteIntegrand { re: s.re.to_f64_lossy(), im: s.im.to_f64_lossy() });
    }
    Ok(l)
}

/// Tail beyond the last node from the decay between two late nodes: the
/// larger of an exponential and a power-law extrapolation.
fn side_tail<T: Real>(mags: &[T], h: T) -> Option<T> {
    let n = mags.len() - 1;
    let f2 = mags[n];
    if f2 == T::zero() {
        return Some(T::zero());
    }
    let j = (n / 8).max(2).min(n);
    let f1 = mags[n - j];
    if !(f1 > f2) {
        return None;
    }
    let d = T::of(j) * h;
    let top = T::of(n) * h;
    let ratio = (f1 / f2).ln();
    let exp_tail = f2 * d / ratio;
    let p = ratio / (top / (top - d)).ln();
    if p <= T::one() {
        return None;
    }
    Some(exp_tail.max(f2 * top / (p - T::one())))
}

pub(crate) fn integrate_ln<T: Real, F>(lnf: F, contour: &ContourSpec<T>, abs_floor: T) -> Result<ContourIntegral<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    contour.validate()?;
    let h = contour.step * T::lit(0.5);
    let n = 2 * (contour.half_height / contour.step).ceil().to_usize().unwrap_or(1).max(1);
    let alpha = contour.alpha;
    let mut up = Vec::with_capacity(n + 1);
    let mut down = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let w = T::of(k) * h;
        up.push(node(&lnf, cplx(alpha, w))?);
        down.push(if k == 0 { up[0] } else { node(&lnf, cplx(alpha, -w))? });
    }
    let nodes = 2 * n + 1;
    let m = up.iter().chain(down.iter()).map(|l| l.re).fold(T::neg_infinity(), T::max);
    let two_pi = T::lit(2.0) * T::PI();
    if m == T::neg_infinity() {
        let z = T::zero();
        return Ok(ContourIntegral {
            value: real(z),
            error_estimate: z,
            refinement_diff: z,
            tail_bound: z,
            rounding: z,
            l1: z,
            nodes,
        });
    }
    let scaled = |l: &Complex<T>| (l - real(m)).exp();
    let eu: Vec<Complex<T>> = up.iter().map(scaled).collect();
    let ed: Vec<Complex<T>> = down.iter().map(scaled).collect();

    let mut fine = CompensatedComplex::new();
    let mut coarse = CompensatedComplex::new();
    let mut abs = CompensatedSum::new();
    fine.add(eu[0]);
    coarse.add(eu[0]);
    abs.add(eu[0].norm());
    for k in 1..=n {
        let pair = eu[k] + ed[k];
        fine.add(pair);
        if k % 2 == 0 {
            coarse.add(pair);
        }
        abs.add(eu[k].norm() + ed[k].norm());
    }
    let fine = fine.value() * h;
    let coarse = coarse.value() * (h + h);
    let l1 = abs.value() * h;

    // back to absolute units, dividing by 2π
    let unscale = |x: T| if x == T::zero() { T::zero() } else { (x.ln() + m).exp() / two_pi };

    let edge = eu[n].norm().max(ed[n].norm());
    let edge_abs = unscale(edge);
    let edge_ok = edge <= contour.tolerance || edge_abs <= abs_floor;
    if !edge_ok {
        return Err(Error::TailNotDecaying {
            edge: (edge.ln() + m).exp().to_f64_lossy(),
            peak: m.exp().to_f64_lossy(),
        });
    }
    let mut tail = T::zero();
    for side in [&eu, &ed] {
        let mags: Vec<T> = side.iter().map(|z| z.norm()).collect();
        match side_tail(&mags, h) {
            Some(t) => tail = tail + t,
            None if edge_abs <= abs_floor => tail = tail + edge * T::of(n) * h,
            None => {
                return Err(Error::TailNotDecaying {
                    edge: (edge.ln() + m).exp().to_f64_lossy(),
                    peak: m.exp().to_f64_lossy(),
                })
            }
        }
    }
    let value = if fine.norm() == T::zero() { real(T::zero()) } else { (fine.ln() + real(m)).exp() / two_pi };
    let refinement_diff = unscale((fine - coarse).norm());
    let tail_bound = unscale(tail);
    let l1 = unscale(l1);
    let rounding = T::lit(16.0) * T::epsilon() * l1;
    Ok(ContourIntegral {
        value,
        error_estimate: refinement_diff + tail_bound + rounding,
        refinement_diff,
        tail_bound,
        rounding,
        l1,
        nodes,
    })
}

/// `(1/2πi) ∫_{α−iT}^{α+iT} F(s) ds` by the trapezoidal rule at spacing
/// `step/2`, with the `step` grid as the refinement reference.
pub fn integrate_contour<T: Real, F>(integrand: F, contour: &ContourSpec<T>) -> Result<ContourIntegral<T>>
where
    F: Fn(Complex<T>) -> Complex<T>,
{
    integrate_ln(|s| Ok(integrand(s).ln()), contour, T::zero())
}

/// Solves a 3×3 system by Gaussian elimination with partial pivoting.
fn solve3<T: Real>(mut a: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col].abs() <= T::epsilon() * T::lit(1e3) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Least-squares fit of `ln|coef(v+iw)|` on the grid `v_samples ×
/// {w_max/4 … w_max}` (both signs of `w` unless the coefficient is
/// real-symmetric).
pub fn estimate_growth<T: Real>(coef: &CoefficientFn<T>, v_samples: &[T], w_max: T) -> Result<GrowthProfile<T>> {
    if v_samples.is_empty() || !(w_max > T::zero()) {
        return Err(Error::InvalidParameter { name: "w_max", value: w_max.to_f64_lossy(), reason: "empty growth grid" });
    }
    let mut pts: Vec<(T, T, T)> = Vec::new();
    for &v in v_samples {
        for j in 0..8 {
            let w = w_max * (T::lit(0.25) + T::lit(0.75) * T::of(j) / T::lit(7.0));
            let signs: &[T] = if coef.real_symmetric { &[T::one()] } else { &[T::one(), -T::one()] };
            for &sg in signs {
                let y = coef.ln_evaluate(cplx(v, sg * w))?.re;
                if !y.is_finite() {
                    return Err(Error::NonFiniteIntegrand { re: v.to_f64_lossy(), im: (sg * w).to_f64_lossy() });
                }
                pts.push((v, w, y));
            }
        }
    }
    let mut ata = [[T::zero(); 3]; 3];
    let mut atb = [T::zero(); 3];
    for &(v, w, y) in &pts {
        let row = [T::one(), v, w];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] = ata[i][j] + row[i] * row[j];
            }
            atb[i] = atb[i] + row[i] * y;
        }
    }
    let [c, p, r] = match solve3(ata, atb) {
        Some(x) => x,
        None => {
            // single abscissa: drop the v column
            let sub = [[ata[0][0], ata[0][2]], [ata[2][0], ata[2][2]]];
            let det = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0];
            let c = (atb[0] * sub[1][1] - sub[0][1] * atb[2]) / det;
            let r = (sub[0][0] * atb[2] - sub[1][0] * atb[0]) / det;
            [c, T::zero(), r]
        }
    };
    let ss: T = pts.iter().map(|&(v, w, y)| (y - c - p * v - r * w).powi(2)).sum();
    let residual = (ss / T::of(pts.len())).sqrt();
    let a_est = r.abs();
    Ok(GrowthProfile {
        a_est,
        p_est: p,
        c_est: c.exp(),
        admissible: a_est < T::FRAC_PI_2() - T::lit(GROWTH_MARGIN),
        w_rate: r,
        residual,
    })
}

/// Growth profile plus the acceptance decision the automatic contour applies:
/// admissible, accepted at the boundary with warnings, or rejected.
pub fn growth_policy<T: Real>(coef: &CoefficientFn<T>) -> Result<(GrowthProfile<T>, Vec<String>)> {
    let g = coef.growth()?;
    if g.admissible {
        return Ok((g, Vec::new()));
    }
    if g.w_rate < T::FRAC_PI_2() + T::lit(GROWTH_SLACK) {
        let msg = format!(
            "boundary growth: fitted rate {:.4} along Im s (|rate| not below pi/2); accepted, truncation from observed decay",
            g.w_rate.to_f64_lossy()
        );
        return Ok((g, vec![msg]));
    }
    Err(Error::InadmissibleGrowth { rate: g.w_rate.to_f64_lossy() })
}

/// `ln` of the transform kernel multiplying the coefficient.
fn kernel_ln<T: Real>(kind: TransformKind, q: T) -> impl Fn(Complex<T>) -> Result<Complex<T>> {
    let ln_x = (q * q / T::lit(4.0)).ln();
    let ln2 = T::LN_2();
    let ln_q = q.ln();
    let one = real::<T>(T::one());
    let half = real::<T>(T::lit(0.5));
    move |s: Complex<T>| match kind {
        TransformKind::Theorem1 => Ok(log_gamma_c(s + one)? - s * ln_x),
        TransformKind::Theorem2 => {
            let num = log_gamma_c(s * T::lit(2.0) + one)?;
            let den = match log_gamma_c(half - s) {
                Ok(v) => v,
                // 1/Γ vanishes at the poles of Γ
                Err(Error::PoleProximity { .. }) => return Ok(cplx(T::neg_infinity(), T::zero())),
                Err(e) => return Err(e),
            };
            Ok(num - den + (s * T::lit(6.0) + one) * ln2 - s * (T::lit(4.0) * ln_q))
        }
    }
}

fn prefactor<T: Real>(kind: TransformKind, q: T) -> T {
    match kind {
        TransformKind::Theorem1 => T::lit(2.0) / (q * q),
        TransformKind::Theorem2 => T::lit(2.0) * T::PI().sqrt() / (q * q),
    }
}

fn check_q<T: Real>(q: T) -> Result<()> {
    if q > T::zero() && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "q", value: q.to_f64_lossy(), reason: "requires q > 0" })
    }
}

fn lower_edge<T: Real>(coef: &CoefficientFn<T>) -> T {
    coef.strip_min.max(coef.kind.kernel_lower())
}

fn full_ln<T: Real>(coef: &CoefficientFn<T>, q: T) -> impl Fn(Complex<T>) -> Result<Complex<T>> + '_ {
    let k = kernel_ln(coef.kind, q);
    move |s| {
        let c = coef.ln_evaluate(s)?;
        if c.re == T::neg_infinity() {
            return Ok(c);
        }
        Ok(c + k(s)?)
    }
}

fn finish<T: Real>(
    coef: &CoefficientFn<T>,
    q: T,
    integrals: &[ContourIntegral<T>],
    contours: Vec<ContourSpec<T>>,
    warnings: Vec<String>,
) -> Result<TransformResult<T>> {
    let pre = prefactor(coef.kind, q);
    let mut value = CompensatedComplex::new();
    let mut err = T::zero();
    let mut tail = T::zero();
    let mut nodes = 0;
    for r in integrals {
        value.add(r.value);
        err = err + r.error_estimate;
        tail = tail + r.tail_bound;
        nodes += r.nodes;
    }
    let v = value.value() * pre;
    let err = err * pre;
    let imag = v.im.abs();
    if !coef.real_symmetric && imag > T::lit(10.0) * err {
        return Err(Error::ComplexResult { imag: imag.to_f64_lossy() });
    }
    if imag > T::lit(10.0) * err + T::min_positive_value() {
        return Err(Error::ComplexResult { imag: imag.to_f64_lossy() });
    }
    Ok(TransformResult { value: v.re, error_estimate: err, imag_residue: imag, nodes, tail_bound: tail * pre, contours, warnings })
}

fn transform_on<T: Real>(
    coef: &CoefficientFn<T>,
    q: T,
    contour: &ContourSpec<T>,
    expected: TransformKind,
) -> Result<TransformResult<T>> {
    if coef.kind != expected {
        return Err(Error::KindMismatch { label: coef.label.clone(), expected: expected.name(), actual: coef.kind.name() });
    }
    check_q(q)?;
    contour.validate()?;
    contour.check_strip(lower_edge(coef), expected.name())?;
    let (_, warnings) = growth_policy(coef)?;
    let r = integrate_ln(full_ln(coef, q), contour, T::zero())?;
    finish(coef, q, &[r], vec![*contour], warnings)
}

/// `A(q)` for `f(x) = g(x²)` on a caller-supplied contour.
///
/// Any abscissa right of `max(strip_min, −1)` is accepted: the coefficient
/// is regular on the right half-plane, so the value does not depend on it.
pub fn theorem1_transform<T: Real>(coef: &CoefficientFn<T>, q: T, contour: &ContourSpec<T>) -> Result<TransformResult<T>> {
    transform_on(coef, q, contour, TransformKind::Theorem1)
}

/// `A(q)` for `f(x) = h(x⁴)` on a caller-supplied contour.
pub fn theorem2_transform<T: Real>(coef: &CoefficientFn<T>, q: T, contour: &ContourSpec<T>) -> Result<TransformResult<T>> {
    transform_on(coef, q, contour, TransformKind::Theorem2)
}

/// Estimate of `ln ∫|F(α+iw)| dw` from a coarse scan.
fn ln_l1<T: Real, F>(lnf: &F, alpha: T, width: T, symmetric: bool) -> Option<T>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let dw = T::lit(0.25) * width.sqrt().max(T::one());
    let mut vals: Vec<T> = Vec::new();
    let mut peak = T::neg_infinity();
    let cap = T::lit(200.0);
    let mut k = 0usize;
    loop {
        let w = T::of(k) * dw;
        if w > cap {
            break;
        }
        let mut l = node(lnf, cplx(alpha, w)).ok()?.re;
        if !symmetric && k > 0 {
            l = l.max(node(lnf, cplx(alpha, -w)).ok()?.re);
        }
        peak = peak.max(l);
        vals.push(l);
        if k >= 8 && l < peak - T::lit(14.0) {
            break;
        }
        k += 1;
    }
    if peak == T::neg_infinity() {
        return Some(T::neg_infinity());
    }
    let s: T = vals.iter().map(|&l| (l - peak).exp()).sum();
    Some(peak + (s * dw).ln())
}

fn optimal_alpha<T: Real, F>(lnf: &F, lower: T, symmetric: bool) -> T
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let mut best = (lower + T::lit(0.5), T::infinity());
    let mut d = T::lit(0.3);
    while d <= T::lit(ALPHA_SHIFT_CAP) {
        let alpha = lower + d;
        if let Some(c) = ln_l1(lnf, alpha, d, symmetric) {
            if c < best.1 {
                best = (alpha, c);
            }
        }
        d = d * T::lit(1.25);
    }
    best.0
}

fn alternate_alpha<T: Real>(alpha: T, lower: T) -> T {
    let d = alpha - lower;
    if d > T::lit(0.5) {
        lower + T::lit(0.6) * d
    } else {
        alpha + T::lit(0.5)
    }
}

/// Smallest height where `R·T + Re[ln K(α+iT) − ln K(α)]` drops below `ln eps`.
fn envelope_height<T: Real>(kind: TransformKind, q: T, alpha: T, rate: T, eps: T) -> Result<Option<T>> {
    let k = kernel_ln(kind, q);
    let base = k(real(alpha))?.re;
    let target = eps.ln();
    let dt = T::lit(0.25);
    let mut t = T::lit(2.0);
    while t <= T::lit(HALF_HEIGHT_CAP) {
        let env = rate * t + k(cplx(alpha, t))?.re - base;
        if env < target {
            return Ok(Some(t));
        }
        t = t + dt;
    }
    Ok(None)
}

/// Height beyond which the sampled `|F|` stays below `eps·peak` (or the
/// absolute floor).
fn observed_height<T: Real, F>(lnf: &F, alpha: T, eps: T, abs_floor_ln: T, symmetric: bool) -> Result<Option<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let dw = T::lit(0.5);
    let mut peak = T::neg_infinity();
    let mut last_above = T::zero();
    let mut k = 0usize;
    loop {
        let w = T::of(k) * dw;
        if w > T::lit(HALF_HEIGHT_CAP) {
            return Ok(None);
        }
        let mut l = node(lnf, cplx(alpha, w))?.re;
        if !symmetric && k > 0 {
            l = l.max(node(lnf, cplx(alpha, -w))?.re);
        }
        peak = peak.max(l);
        let threshold = (peak + eps.ln()).max(abs_floor_ln);
        if l > threshold {
            last_above = w;
        } else if w > T::lit(1.5) * last_above + T::lit(4.0) {
            return Ok(Some(last_above + dw));
        }
        k += 1;
    }
}

struct PartRun<T> {
    contour: ContourSpec<T>,
    integral: ContourIntegral<T>,
    warnings: Vec<String>,
}

fn run_part<T: Real>(
    part: &CoefficientFn<T>,
    q: T,
    tol: T,
    alpha_choice: AlphaChoice<T>,
    growth: &GrowthProfile<T>,
    abs_ref: T,
) -> Result<PartRun<T>> {
    let kind = part.kind;
    let lower = lower_edge(part);
    let lnf = full_ln(part, q);
    let pre = prefactor(kind, q);
    let symmetric = part.real_symmetric;
    let alpha = match alpha_choice {
        AlphaChoice::Optimal => optimal_alpha(&lnf, lower, symmetric),
        AlphaChoice::Alternate => alternate_alpha(optimal_alpha(&lnf, lower, symmetric), lower),
        AlphaChoice::Fixed(a) => a,
    };
    if !(alpha > lower) {
        return Err(Error::ContourOutsideStrip { alpha: alpha.to_f64_lossy(), lower: lower.to_f64_lossy(), what: kind.name() });
    }
    let two_pi = T::lit(2.0) * T::PI();
    // absolute floor in integral units and in |F| units
    let abs_floor = tol * T::lit(1e-3) * abs_ref / pre;
    let abs_floor_ln = if abs_floor > T::zero() { (abs_floor * two_pi).ln() } else { T::neg_infinity() };
    let eps = tol * T::lit(1e-2);
    let mut warnings = Vec::new();

    let height = if growth.admissible {
        envelope_height(kind, q, alpha, growth.w_rate, eps)?
    } else {
        warnings.push("half-height from observed integrand decay".to_string());
        observed_height(&lnf, alpha, eps, abs_floor_ln, symmetric)?
    };
    let mut height = match height {
        Some(t) => t,
        None => {
            warnings.push(format!("half-height capped at {HALF_HEIGHT_CAP}"));
            T::lit(HALF_HEIGHT_CAP)
        }
    };
    let d = (alpha - lower).min(T::lit(2.0));
    let mut step = (T::PI() * d / (T::lit(100.0) / tol).ln()).min(T::one()).max(T::lit(1e-3));
    height = height.max(T::lit(10.0) * step);

    let mut last: Option<(ContourSpec<T>, ContourIntegral<T>)> = None;
    for _ in 0..40 {
        let contour = ContourSpec { alpha, half_height: height, step, tolerance: eps };
        if contour.validate().is_err() {
            break;
        }
        let r = match integrate_ln(&lnf, &contour, abs_floor) {
            Ok(r) => r,
            Err(Error::TailNotDecaying { .. }) if height < T::lit(HALF_HEIGHT_CAP) => {
                height = (height * T::lit(1.5)).min(T::lit(HALF_HEIGHT_CAP));
                continue;
            }
            Err(e) => return Err(e),
        };
        let scale = r.value.re.abs().max(abs_ref / pre);
        let target = tol * T::lit(0.1) * scale;
        let floor = T::lit(64.0) * T::epsilon() * r.l1;
        last = Some((contour, r));
        if r.tail_bound > target.max(floor) && height < T::lit(HALF_HEIGHT_CAP) {
            height = (height * T::lit(1.5)).min(T::lit(HALF_HEIGHT_CAP));
            continue;
        }
        if r.refinement_diff > target.max(floor) {
            step = step * T::lit(0.5);
            height = height.max(T::lit(10.0) * step);
            continue;
        }
        break;
    }
    let (contour, integral) = last.ok_or(Error::InvalidContour { reason: "automatic sizing exhausted the node budget" })?;
    Ok(PartRun { contour, integral, warnings })
}

/// Automatically sized contour for the whole coefficient.
pub fn auto_contour<T: Real>(coef: &CoefficientFn<T>, q: T, tol: T) -> Result<ContourPlan<T>> {
    check_q(q)?;
    check_tol(tol)?;
    let (growth, mut warnings) = growth_policy(coef)?;
    let run = run_part(coef, q, tol, AlphaChoice::Optimal, &growth, T::zero())?;
    check_reached(&run.integral, tol, T::zero())?;
    warnings.extend(run.warnings);
    Ok(ContourPlan { contour: run.contour, warnings })
}

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if tol > T::zero() && tol < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "tol", value: tol.to_f64_lossy(), reason: "requires 0 < tol < 1" })
    }
}

fn check_reached<T: Real>(r: &ContourIntegral<T>, tol: T, abs_ref_integral: T) -> Result<()> {
    let scale = r.value.re.abs().max(abs_ref_integral);
    if r.error_estimate <= tol * scale || r.error_estimate <= T::lit(64.0) * T::epsilon() * r.l1 {
        Ok(())
    } else {
        Err(Error::ToleranceUnreachable {
            requested: tol.to_f64_lossy(),
            best: (r.error_estimate / scale).to_f64_lossy(),
        })
    }
}

/// Transform with automatic contour placement and sizing. Coefficients with
/// parts are integrated part by part, each on its own contour.
pub fn transform_auto<T: Real>(coef: &CoefficientFn<T>, q: T, tol: T) -> Result<TransformResult<T>> {
    transform_auto_with(coef, q, tol, AutoOptions::default())
}

pub fn transform_auto_with<T: Real>(
    coef: &CoefficientFn<T>,
    q: T,
    tol: T,
    options: AutoOptions<T>,
) -> Result<TransformResult<T>> {
    check_q(q)?;
    check_tol(tol)?;
    let (growth, mut warnings) = growth_policy(coef)?;
    let single = [coef.clone()];
    let parts: &[CoefficientFn<T>] = if coef.parts().is_empty() { &single } else { coef.parts() };
    let pre = prefactor(coef.kind, q);
    let mut abs_ref = options.abs_scale.unwrap_or(T::zero());
    let mut integrals = Vec::with_capacity(parts.len());
    let mut contours = Vec::with_capacity(parts.len());
    for part in parts {
        let run = run_part(part, q, tol, options.alpha, &growth, abs_ref)?;
        abs_ref = abs_ref.max(run.integral.value.re.abs() * pre);
        for w in run.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        integrals.push(run.integral);
        contours.push(run.contour);
    }
    let result = finish(coef, q, &integrals, contours, warnings)?;
    let scale = result.value.abs().max(options.abs_scale.unwrap_or(T::zero()));
    let l1: T = integrals.iter().map(|r| r.l1).fold(T::zero(), |a, b| a + b) * pre;
    if result.error_estimate > tol * scale && result.error_estimate > T::lit(64.0) * T::epsilon() * l1 {
        return Err(Error::ToleranceUnreachable {
            requested: tol.to_f64_lossy(),
            best: (result.error_estimate / scale).to_f64_lossy(),
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{coef_a1, coef_a2, coef_a3, coef_a6};
    use crate::kernel::gamma_c;
    use crate::special::bessel_k0;

    type C = Complex<f64>;

    #[test]
    fn gamma_inverse_mellin_is_exponential() {
        let c = ContourSpec::new(1.0, 40.0, 0.2, 1e-10).unwrap();
        let r = integrate_contour(|s: C| gamma_c(s).unwrap(), &c).unwrap();
        assert!((r.value.re - (-1.0f64).exp()).abs() < 1e-10);
        assert!(r.value.im.abs() < 1e-14);
        assert!(r.error_estimate < 1e-8);
    }

    #[test]
    fn gamma_squared_gives_bessel_k0() {
        let c = ContourSpec::new(0.5, 30.0, 0.2, 1e-10).unwrap();
        let r = integrate_contour(|s: C| gamma_c(s).unwrap().powi(2), &c).unwrap();
        let expect = 2.0 * bessel_k0(2.0).unwrap();
        assert!((r.value.re - expect).abs() < 1e-10, "{} vs {expect}", r.value.re);
    }

    #[test]
    fn zero_integrand() {
        let c = ContourSpec::new(-0.5, 10.0, 0.5, 1e-8).unwrap();
        let r = integrate_contour(|_s: C| C::new(0.0, 0.0), &c).unwrap();
        assert_eq!(r.value, C::new(0.0, 0.0));
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn non_decaying_tail_and_nan_rejected() {
        let c = ContourSpec::new(0.5, 10.0, 0.5, 1e-8).unwrap();
        assert!(matches!(integrate_contour(|_s: C| C::new(1.0, 0.0), &c), Err(Error::TailNotDecaying { .. })));
        assert!(matches!(integrate_contour(|_s: C| C::new(f64::NAN, 0.0), &c), Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn contour_validation() {
        assert!(ContourSpec::new(-0.5, 1.0, 0.5, 1e-8).is_err());
        assert!(ContourSpec::new(-0.5, 10.0, 0.0, 1e-8).is_err());
        assert!(ContourSpec::new(-0.5, 10.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn refinement_converges_geometrically() {
        let coef = coef_a1(1.0).unwrap();
        let lnf = full_ln(&coef, 2.0);
        let diff = |h: f64| {
            let c = ContourSpec::new(-0.5, 30.0, h, 1e-12).unwrap();
            integrate_ln(&lnf, &c, 0.0).unwrap().refinement_diff
        };
        let (d1, d2) = (diff(1.0), diff(0.5));
        assert!(d2 * 10.0 <= d1, "{d1} -> {d2}");
    }

    #[test]
    fn theorem1_on_fixed_contour() {
        let coef = coef_a1(1.0).unwrap();
        let c = ContourSpec::new(-0.5, 30.0, 0.25, 1e-12).unwrap();
        let r = theorem1_transform(&coef, 2.0, &c).unwrap();
        let expect = 0.5 * (-1.0f64).exp();
        assert!((r.value - expect).abs() < 1e-11);
        assert!(r.imag_residue <= 10.0 * r.error_estimate);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn kind_and_strip_checks() {
        let coef = coef_a1(1.0).unwrap();
        let c = ContourSpec::new(-0.25, 30.0, 0.25, 1e-12).unwrap();
        assert!(matches!(theorem2_transform(&coef, 1.0, &c), Err(Error::KindMismatch { .. })));
        let bad = ContourSpec::new(-1.5, 30.0, 0.25, 1e-12).unwrap();
        assert!(matches!(theorem1_transform(&coef, 1.0, &bad), Err(Error::ContourOutsideStrip { .. })));
        assert!(theorem1_transform(&coef, 0.0, &c).is_err());
    }

    #[test]
    fn growth_profiles() {
        let g = coef_a1(1.0).unwrap().growth().unwrap();
        assert!(g.a_est < 1e-12 && g.admissible);
        let g = coef_a3(1.0, 0).unwrap().growth().unwrap();
        assert!((g.a_est - std::f64::consts::FRAC_PI_2).abs() < 0.1, "{g:?}");
        assert!(!g.admissible);
        assert!(g.w_rate < 0.0);
        let g = coef_a2(1.0, 1.0).unwrap().growth().unwrap();
        assert!(g.admissible, "{g:?}");
    }

    #[test]
    fn inadmissible_growth_refused() {
        // e^{s²}-type growth along Im s is beyond any admissible rate
        let coef = CoefficientFn::from_log("grow", TransformKind::Theorem1, -1.0, true, |s: C| Ok(s * s * -0.05));
        let c = ContourSpec::new(-0.5, 30.0, 0.25, 1e-8).unwrap();
        assert!(matches!(theorem1_transform(&coef, 1.0, &c), Err(Error::InadmissibleGrowth { .. })));
    }

    #[test]
    fn auto_contour_a1_sizes() {
        let coef = coef_a1(1.0).unwrap();
        let loose = auto_contour(&coef, 2.0, 1e-6).unwrap();
        let tight = auto_contour(&coef, 2.0, 1e-10).unwrap();
        assert!(tight.contour.half_height > loose.contour.half_height);
        assert!(tight.contour.step <= loose.contour.step);
        assert!(tight.warnings.is_empty());
        assert!(tight.contour.half_height > 8.0 && tight.contour.half_height < 60.0);
    }

    #[test]
    fn auto_contour_boundary_growth_warns() {
        let plan = auto_contour(&coef_a3(1.0, 0).unwrap(), 2.0, 1e-8).unwrap();
        assert!(plan.warnings.iter().any(|w| w.contains("observed")));
        assert!(plan.warnings.iter().any(|w| w.contains("boundary growth")));
        // Γ(s+1)·y^{s+1}/Γ(s+2) is only algebraic in Im s
        let plan = auto_contour(&coef_a6(1.0, 1.0).unwrap(), 2.0, 1e-8).unwrap();
        assert!(plan.warnings.is_empty());
    }

    #[test]
    fn auto_transform_far_tail_a1() {
        // e^{-100}/(2·0.25): needs the contour shifted to the saddle
        let coef = coef_a1(0.5).unwrap();
        let r = transform_auto(&coef, 10.0, 1e-10).unwrap();
        let expect = (-100.0f64).exp() / 0.5;
        assert!(((r.value - expect) / expect).abs() < 1e-9, "{} vs {expect}", r.value);
        assert!(r.contours[0].alpha > 10.0);
    }

    #[test]
    fn solve3_identity() {
        let x = solve3([[2.0, 0.0, 0.0], [0.0, 3.0, 0.0], [1.0, 0.0, 1.0]], [2.0, 6.0, 4.0]).unwrap();
        assert_eq!(x, [1.0, 2.0, 3.0]);
        assert!(solve3([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]], [1.0, 1.0, 1.0]).is_none());
    }
}
