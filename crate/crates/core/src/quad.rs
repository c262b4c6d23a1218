//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, lo: T, hi: T) -> Result<Segment<T>> {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let radius = half * (hi - lo);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(non_finite(lo, hi));
    }
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = radius * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        if !f1.is_finite() || !f2.is_finite() {
            return Err(non_finite(lo, hi));
        }
        kron = kron + T::lit(WGK[j]) * (f1 + f2);
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    Ok(Segment {
        lo,
        hi,
        value: kron * radius,
        error: ((kron - gauss) * radius).abs(),
    })
}

fn non_finite<T: Real>(lo: T, hi: T) -> Error {
    Error::Quadrature {
        lo: lo.to_f64_lossy(),
        hi: hi.to_f64_lossy(),
        reason: "non-finite integrand",
    }
}

/// Integrates `f` over `[a, b]` until the summed Kronrod–Gauss error falls
/// below `max(abs_tol, rel_tol·|I|)` or `max_intervals` is reached.
pub fn integrate<T, F>(mut f: F, a: T, b: T, abs_tol: T, rel_tol: T, max_intervals: usize) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if a == b {
        return Ok(QuadResult { value: T::zero(), error: T::zero(), intervals: 0, converged: true });
    }
    let mut segs = vec![kronrod(&mut f, a, b)?];
    loop {
        let total: T = segs.iter().map(|s| s.value).sum();
        let err: T = segs.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * total.abs());
        if err <= target || segs.len() >= max_intervals {
            return Ok(QuadResult {
                value: total,
                error: err,
                intervals: segs.len(),
                converged: err <= target,
            });
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (i, s)| if s.error > best.1 { (i, s.error) } else { best });
        let worst = segs.swap_remove(idx);
        let mid = T::lit(0.5) * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval can no longer be split in this precision
            segs.push(worst);
            let total: T = segs.iter().map(|s| s.value).sum();
            let err: T = segs.iter().map(|s| s.error).sum();
            return Ok(QuadResult { value: total, error: err, intervals: segs.len(), converged: false });
        }
        segs.push(kronrod(&mut f, worst.lo, mid)?);
        segs.push(kronrod(&mut f, mid, worst.hi)?);
    }
}

/// Integrates over `[a, ∞)` through the map `x = a + t/(1 - t)`.
pub fn integrate_to_infinity<T, F>(mut f: F, a: T, abs_tol: T, rel_tol: T, max_intervals: usize) -> Result<QuadResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let one = T::one();
    integrate(
        |t: T| {
            let u = one - t;
            let v = f(a + t / u) / (u * u);
            if v.is_finite() {
                v
            } else {
                T::zero()
            }
        },
        T::zero(),
        one,
        abs_tol,
        rel_tol,
        max_intervals,
    )
}
