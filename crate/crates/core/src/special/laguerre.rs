use crate::error::{Error, Result};
use crate::scalar::Real;

/// Generalized Laguerre polynomial `L_n^α(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
pub fn laguerre_gen<T: Real>(n: usize, alpha: T, x: T) -> Result<T> {
    if !(alpha > -T::one()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha.to_f64_lossy(),
            reason: "requires alpha > -1",
        });
    }
    let mut prev = T::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = T::one() + alpha - x;
    for k in 1..n {
        let kk = T::of(k);
        let next = ((T::lit(2.0) * kk + T::one() + alpha - x) * cur - (kk + alpha) * prev) / (kk + T::one());
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::Overflow { function: "laguerre_gen" })
    }
}
