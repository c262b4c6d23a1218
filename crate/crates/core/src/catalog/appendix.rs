use super::coefficients::positive;
use crate::error::Result;
use crate::kernel::ln_gamma_r;
use crate::scalar::Real;
use crate::special::laguerre_gen;

/// `g⁽ᵐ⁾(0)` for `g(z) = e^{-a²z} J_{2n}(c√z)`:
///
/// ```text
/// (−1)^m m!/(m+n)! · a^{2m} (−c²/4a²)ⁿ · L^{2n}_{m−n}(−c²/4a²)
/// ```
///
/// which vanishes for `m < n`.
pub fn appendix_a_derivatives<T: Real>(m: usize, n: usize, a: T, c: T) -> Result<T> {
    let a = positive("a", a)?;
    let c = positive("c", c)?;
    if m < n {
        return Ok(T::zero());
    }
    let ratio = c * c / (T::lit(4.0) * a * a);
    let lag = laguerre_gen(m - n, T::of(2 * n), -ratio)?;
    let ln_mag = ln_gamma_r(T::of(m + 1))? - ln_gamma_r(T::of(m + n + 1))?
        + T::of(2 * m) * a.ln()
        + T::of(n) * ratio.ln();
    let sign = if (m + n) % 2 == 0 { T::one() } else { -T::one() };
    Ok(sign * ln_mag.exp() * lag)
}
