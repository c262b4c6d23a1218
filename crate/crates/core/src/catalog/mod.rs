//! The seven worked examples: coefficient continuations, generating
//! functions, closed forms, the A.6 series, and the derivative formula for
//! `e^{-a²z} J_{2n}(c√z)`.

mod a6;
mod appendix;
mod closed;
mod coefficient;
mod coefficients;

use std::fmt;
use std::str::FromStr;

pub use a6::{a6_q_zero, a6_series_2f0, a6_series_psi};
pub use appendix::appendix_a_derivatives;
pub use closed::closed_form;
pub use coefficient::{CoefficientFn, TransformKind, DEFAULT_GROWTH_WMAX};
pub use coefficients::{coef_a1, coef_a2, coef_a3, coef_a4, coef_a5, coef_a6, coef_a7, A6_CF_THRESHOLD};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::bessel_j0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Example {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
}

impl Example {
    pub const ALL: [Example; 7] = [Example::A1, Example::A2, Example::A3, Example::A4, Example::A5, Example::A6, Example::A7];

    pub fn label(self) -> &'static str {
        match self {
            Example::A1 => "a1",
            Example::A2 => "a2",
            Example::A3 => "a3",
            Example::A4 => "a4",
            Example::A5 => "a5",
            Example::A6 => "a6",
            Example::A7 => "a7",
        }
    }

    /// Parameter names the example needs.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            Example::A1 | Example::A7 => &["a"],
            Example::A2 | Example::A5 | Example::A6 => &["a", "c"],
            Example::A3 | Example::A4 => &["a", "n"],
        }
    }

    pub fn kind(self) -> TransformKind {
        match self {
            Example::A7 => TransformKind::Theorem2,
            _ => TransformKind::Theorem1,
        }
    }

    /// Human-readable `f(x)`.
    pub fn formula(self) -> &'static str {
        match self {
            Example::A1 => "exp(-a^2 x^2)",
            Example::A2 => "exp(-a^2 x^2) J0(c x)",
            Example::A3 => "1/(x^2+a^2)^(n+1)",
            Example::A4 => "1/(x^2+a^2)^(n+3/2)",
            Example::A5 => "J0(a x)/(x^2+c^2)",
            Example::A6 => "exp(-a^2 x^2)/(x^2+c^2)",
            Example::A7 => "1/sqrt(x^4+a^4)",
        }
    }

    pub fn coefficient<T: Real>(self, p: &Params<T>) -> Result<CoefficientFn<T>> {
        match self {
            Example::A1 => coef_a1(p.a(self)?),
            Example::A2 => coef_a2(p.a(self)?, p.c(self)?),
            Example::A3 => coef_a3(p.a(self)?, p.n(self)?),
            Example::A4 => coef_a4(p.a(self)?, p.n(self)?),
            Example::A5 => coef_a5(p.a(self)?, p.c(self)?),
            Example::A6 => coef_a6(p.a(self)?, p.c(self)?),
            Example::A7 => coef_a7(p.a(self)?),
        }
    }

    /// The function `f(x)` whose order-zero Hankel transform is tabulated.
    pub fn integrand<T: Real>(self, p: &Params<T>) -> Result<Box<dyn Fn(T) -> T + Send + Sync>> {
        let a = p.a(self)?;
        coefficients::positive("a", a)?;
        let a2 = a * a;
        Ok(match self {
            Example::A1 => Box::new(move |x: T| (-a2 * x * x).exp()),
            Example::A2 => {
                let c = p.c(self)?;
                Box::new(move |x: T| (-a2 * x * x).exp() * bessel_j0(c * x).unwrap_or(T::nan()))
            }
            Example::A3 => {
                let e = -T::of(p.n(self)? + 1);
                Box::new(move |x: T| (x * x + a2).powf(e))
            }
            Example::A4 => {
                let e = -(T::of(p.n(self)?) + T::lit(1.5));
                Box::new(move |x: T| (x * x + a2).powf(e))
            }
            Example::A5 => {
                let c2 = p.c(self)?.powi(2);
                Box::new(move |x: T| bessel_j0(a * x).unwrap_or(T::nan()) / (x * x + c2))
            }
            Example::A6 => {
                let c2 = p.c(self)?.powi(2);
                Box::new(move |x: T| (-a2 * x * x).exp() / (x * x + c2))
            }
            Example::A7 => {
                let a4 = a2 * a2;
                Box::new(move |x: T| (x.powi(4) + a4).sqrt().recip())
            }
        })
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .iter()
            .copied()
            .find(|e| e.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

/// Named example parameters; which ones are needed depends on the example.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Params<T> {
    pub a: Option<T>,
    pub c: Option<T>,
    pub n: Option<usize>,
}

impl<T: Real> Params<T> {
    pub fn new() -> Self {
        Params { a: None, c: None, n: None }
    }

    pub fn with_a(mut self, a: T) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_c(mut self, c: T) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn a(&self, e: Example) -> Result<T> {
        self.a.ok_or(Error::MissingParameter { example: e.label(), name: "a" })
    }

    pub fn c(&self, e: Example) -> Result<T> {
        self.c.ok_or(Error::MissingParameter { example: e.label(), name: "c" })
    }

    pub fn n(&self, e: Example) -> Result<usize> {
        self.n.ok_or(Error::MissingParameter { example: e.label(), name: "n" })
    }

    /// Checks that every parameter the example needs is present.
    pub fn check(&self, e: Example) -> Result<()> {
        for name in e.required() {
            match *name {
                "a" => {
                    self.a(e)?;
                }
                "c" => {
                    self.c(e)?;
                }
                _ => {
                    self.n(e)?;
                }
            }
        }
        Ok(())
    }
}
