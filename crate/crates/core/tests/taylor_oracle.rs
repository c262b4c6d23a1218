//! Integer points of every coefficient continuation against Taylor
//! coefficients of the generating function, taken from a Cauchy integral.

use hankel_mb::{Example, Params};
use num_complex::Complex;

type C = Complex<f64>;

/// `J₀(w) = (1/π) ∫₀^π cos(w sin θ) dθ`.
fn j0_complex(w: C) -> C {
    let k = 200;
    let h = std::f64::consts::PI / k as f64;
    let mut s = C::new(0.0, 0.0);
    for j in 0..=k {
        let v = (w * (j as f64 * h).sin()).cos();
        s += if j == 0 || j == k { v * 0.5 } else { v };
    }
    s * h / std::f64::consts::PI
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `(−1)^m m! [z^m] g` from `N` points on `|z| = r`.
fn continuation_at(g: &dyn Fn(C) -> C, m: usize, r: f64) -> f64 {
    let n = 96;
    let mut s = C::new(0.0, 0.0);
    for k in 0..n {
        let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        s += g(C::from_polar(r, th)) * C::from_polar(r.powi(-(m as i32)), -(m as f64) * th);
    }
    let coeff = (s / n as f64).re * factorial(m);
    if m % 2 == 0 {
        coeff
    } else {
        -coeff
    }
}

fn check(e: Example, p: Params<f64>, g: &dyn Fn(C) -> C, r: f64) {
    let coef = e.coefficient(&p).unwrap();
    for m in 0..=8usize {
        let v = coef.evaluate(C::new(m as f64, 0.0)).unwrap();
        let o = continuation_at(g, m, r);
        assert_eq!(v.im, 0.0);
        assert!((v.re - o).abs() <= 1e-8 * o.abs().max(1e-12), "{e} m={m}: {} vs {o}", v.re);
    }
}

#[test]
fn a1_gaussian() {
    for a in [0.5, 1.0, 2.0] {
        check(Example::A1, Params::new().with_a(a), &|z| (-z * a * a).exp(), 2.0 / (a * a));
    }
}

#[test]
fn a2_gaussian_times_bessel() {
    for (a, c) in [(1.0, 0.5), (1.0, 1.0), (0.7, 1.5)] {
        check(Example::A2, Params::new().with_a(a).with_c(c), &|z| (-z * a * a).exp() * j0_complex(z.sqrt() * c), 1.0);
    }
}

#[test]
fn a3_a4_rational_and_algebraic() {
    for n in 0..4usize {
        let a: f64 = 1.3;
        let e3 = -(n as f64 + 1.0);
        check(Example::A3, Params::new().with_a(a).with_n(n), &|z| (z + a * a).powf(e3), 0.5 * a * a);
        let e4 = -(n as f64 + 1.5);
        check(Example::A4, Params::new().with_a(a).with_n(n), &|z| (z + a * a).powf(e4), 0.5 * a * a);
    }
}

#[test]
fn a5_bessel_over_quadratic() {
    for (a, c) in [(1.0, 1.0), (0.5, 2.0)] {
        check(Example::A5, Params::new().with_a(a).with_c(c), &|z| j0_complex(z.sqrt() * a) / (z + c * c), 0.5 * c * c);
    }
}

#[test]
fn a6_gaussian_over_quadratic() {
    // (ac)² on both sides of the branch switch in the continuation
    for (a, c) in [(0.5, 0.5), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0)] {
        check(Example::A6, Params::new().with_a(a).with_c(c), &|z| (-z * a * a).exp() / (z + c * c), 0.5 * c * c);
    }
}

#[test]
fn a7_second_representation() {
    // f(x) = h(x⁴) with h(z) = (z + a⁴)^{-1/2}
    for a in [1.0f64, 1.2] {
        let a4 = a.powi(4);
        check(Example::A7, Params::new().with_a(a), &|z| (z + a4).powf(-0.5), 0.5 * a4);
    }
}
