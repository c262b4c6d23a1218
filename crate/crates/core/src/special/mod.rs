//! Real-argument special functions used by the coefficient continuations and
//! closed forms.

mod bessel;
mod hypergeometric;
mod incgamma;
mod laguerre;
mod tricomi;

pub use bessel::{
    bessel_i0, bessel_i0e, bessel_i1, bessel_j0, bessel_j0_zeros, bessel_j1, bessel_k0, bessel_k0e, bessel_k1,
    bessel_k_half, bessel_kn,
};
pub use hypergeometric::{hyp1f1_c, hyp1f2_c, hyp2f0_asymptotic, AsymptoticValue, MAX_SERIES_TERMS};
pub(crate) use incgamma::upper_gamma_cf_c;
pub use incgamma::{incomplete_gamma_upper0, incomplete_gamma_upper0_scaled};
pub use laguerre::laguerre_gen;
pub use tricomi::tricomi_psi;
