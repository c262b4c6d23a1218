use super::{Example, Params};
use crate::error::{Error, Result};
use crate::kernel::ln_gamma_r;
use crate::scalar::Real;
use crate::special::{bessel_i0, bessel_i0e, bessel_j0, bessel_k0, bessel_k_half, bessel_kn};

fn require_q<T: Real>(q: T, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero { q >= T::zero() } else { q > T::zero() };
    if ok && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "q", value: q.to_f64_lossy(), reason: "requires q > 0" })
    }
}

/// Tabulated value of the order-zero Hankel transform of each example.
///
/// A.2 uses the Bessel argument `qc/(2a²)`; A.6 has no closed form.
pub fn closed_form<T: Real>(example: Example, q: T, p: &Params<T>) -> Result<T> {
    let a = super::coefficients::positive("a", p.a(example)?)?;
    let two = T::lit(2.0);
    match example {
        Example::A1 => {
            require_q(q, true)?;
            Ok((-(q * q) / (T::lit(4.0) * a * a)).exp() / (two * a * a))
        }
        Example::A2 => {
            require_q(q, true)?;
            let c = super::coefficients::positive("c", p.c(example)?)?;
            let four_a2 = T::lit(4.0) * a * a;
            let arg = q * c / (two * a * a);
            // e^{-(q²+c²)/4a²} I0(qc/2a²) = e^{-(q-c)²/4a²} i0e(qc/2a²)
            Ok((-(q - c) * (q - c) / four_a2).exp() * bessel_i0e(arg)? / (two * a * a))
        }
        Example::A3 => {
            require_q(q, false)?;
            let n = p.n(example)?;
            let ln_pre = T::of(n) * (q / (two * a)).ln() - ln_gamma_r(T::of(n + 1))?;
            Ok(ln_pre.exp() * bessel_kn(n, q * a)?)
        }
        Example::A4 => {
            require_q(q, false)?;
            let n = p.n(example)?;
            let nu = T::of(n) + T::lit(0.5);
            let ln_pre = nu * (q / (two * a)).ln() - ln_gamma_r(nu + T::one())?;
            Ok(ln_pre.exp() * bessel_k_half(n, q * a)?)
        }
        Example::A5 => {
            require_q(q, false)?;
            let c = super::coefficients::positive("c", p.c(example)?)?;
            if q <= a {
                return Err(Error::InvalidParameter { name: "q", value: q.to_f64_lossy(), reason: "A.5 requires q > a" });
            }
            Ok(bessel_i0(a * c)? * bessel_k0(q * c)?)
        }
        Example::A6 => Err(Error::NoClosedForm { example: "a6" }),
        Example::A7 => {
            require_q(q, false)?;
            let x = q * a / two.sqrt();
            Ok(bessel_j0(x)? * bessel_k0(x)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hankel0_direct;

    fn p(a: f64) -> Params<f64> {
        Params::new().with_a(a)
    }

    #[test]
    fn a1_values() {
        assert!((closed_form(Example::A1, 0.0, &p(1.0)).unwrap() - 0.5).abs() < 1e-16);
        assert!((closed_form(Example::A1, 2.0, &p(1.0)).unwrap() - 0.183_939_720_585_721_2).abs() < 1e-15);
    }

    #[test]
    fn a3_a5_values() {
        let k01 = bessel_k0(1.0).unwrap();
        assert!((closed_form(Example::A3, 1.0, &p(1.0).with_n(0)).unwrap() - k01).abs() < 1e-15);
        let v = closed_form(Example::A5, 2.0, &p(1.0).with_c(1.0)).unwrap();
        assert!((v - 1.266_065_877_752_008_4 * 0.113_893_872_749_533_4).abs() < 1e-14);
        assert!(closed_form(Example::A5, 1.0, &p(2.0).with_c(1.0)).is_err());
        assert!(matches!(closed_form(Example::A6, 1.0, &p(1.0).with_c(1.0)), Err(Error::NoClosedForm { .. })));
    }

    #[test]
    fn a2_bessel_argument_settled_by_quadrature() {
        let params = p(1.0).with_c(1.0);
        let f = Example::A2.integrand(&params).unwrap();
        let oracle = hankel0_direct(&*f, 2.0, 1e-11).unwrap();
        let adopted = closed_form(Example::A2, 2.0, &params).unwrap();
        // the literal reading with I0(qc/4a²)
        let literal = 0.5 * (-5.0f64 / 4.0).exp() * bessel_i0(0.5).unwrap();
        assert!((adopted - oracle.value).abs() < 1e-9, "{adopted} vs {}", oracle.value);
        assert!((literal - oracle.value).abs() > 1e-2);
    }

    #[test]
    fn closed_forms_match_oracle() {
        let cases: Vec<(Example, Params<f64>, f64)> = vec![
            (Example::A1, p(0.7), 1.5),
            (Example::A3, p(1.0).with_n(2), 2.0),
            (Example::A4, p(1.0).with_n(1), 1.0),
            (Example::A7, p(1.0), 2.0),
        ];
        for (e, params, q) in cases {
            let f = e.integrand(&params).unwrap();
            let oracle = hankel0_direct(&*f, q, 1e-10).unwrap();
            let v = closed_form(e, q, &params).unwrap();
            assert!((v - oracle.value).abs() < 1e-8 * v.abs().max(1e-3), "{e}: {v} vs {}", oracle.value);
        }
    }
}
