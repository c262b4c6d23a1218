use crate::error::{Error, Result};
use crate::kernel::ln_gamma_r;
use crate::quad;
use crate::scalar::Real;

/// Tricomi's confluent function `Ψ(a, 1; x)` for integer `a >= 1`, `x > 0`,
/// from `Γ(a) Ψ = ∫_0^∞ e^{-xt} t^{a-1} (1+t)^{-a} dt` with `t = e^u`.
pub fn tricomi_psi<T: Real>(a: usize, x: T) -> Result<T> {
    if a == 0 {
        return Err(Error::InvalidParameter { name: "a", value: 0.0, reason: "requires a >= 1" });
    }
    if !(x > T::zero() && x.is_finite()) {
        return Err(Error::Domain { function: "tricomi_psi", value: x.to_f64_lossy(), reason: "requires x > 0" });
    }
    let aa = T::of(a);
    let integrand = |u: T| {
        let t = u.exp();
        let ln_ratio = if u > T::zero() { -(-u).exp().ln_1p() } else { u - t.ln_1p() };
        (-x * t + aa * ln_ratio).exp()
    };
    // the integrand is below e^{-46} outside [u_lo, u_hi]
    let u_lo = -T::lit(46.0) / aa - T::lit(2.0);
    let u_hi = (T::lit(60.0) / x).ln().max(u_lo + T::one());
    let r = quad::integrate(integrand, u_lo, u_hi, T::zero(), T::lit(1e-14).max(T::epsilon() * T::lit(8.0)), 2000)?;
    let v = r.value * (-ln_gamma_r(aa)?).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { function: "tricomi_psi" })
    }
}
