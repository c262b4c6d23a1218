use std::fmt;
use std::str::FromStr;

use hankel_mb::catalog::{a6_series_psi, closed_form};
use hankel_mb::mellin_barnes::transform_auto;
use hankel_mb::oracle::hankel0_direct;
use hankel_mb::{Error, Example, Params};

/// Rounding allowance attached to closed-form values, in units of
/// `eps·|value|`.
const CLOSED_FORM_ULPS: f64 = 256.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Contour,
    Oracle,
    Closed,
    Series,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Contour, Method::Oracle, Method::Closed, Method::Series];

    pub fn name(self) -> &'static str {
        match self {
            Method::Contour => "contour",
            Method::Oracle => "oracle",
            Method::Closed => "closed",
            Method::Series => "series",
        }
    }

    pub fn applies_to(self, e: Example) -> bool {
        match self {
            Method::Contour | Method::Oracle => true,
            Method::Closed => e != Example::A6,
            Method::Series => e == Example::A6,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL.iter().copied().find(|m| m.name() == s).ok_or_else(|| format!("unknown method '{s}'"))
    }
}

/// A failure, split by the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownExample(_)
            | Error::MissingParameter { .. }
            | Error::InvalidParameter { .. }
            | Error::NoClosedForm { .. }
            | Error::KindMismatch { .. }
            | Error::ContourOutsideStrip { .. }
            | Error::InvalidContour { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub error: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub contour: f64,
    pub oracle: f64,
    pub terms: usize,
}

pub fn evaluate(e: Example, p: &Params<f64>, q: f64, method: Method, tol: &Tolerances) -> Result<Evaluation, CliError> {
    if !method.applies_to(e) {
        return Err(CliError::Usage(format!("method '{method}' does not apply to {e}")));
    }
    p.check(e)?;
    match method {
        Method::Contour => {
            let r = transform_auto(&e.coefficient(p)?, q, tol.contour)?;
            Ok(Evaluation { value: r.value, error: r.error_estimate, warnings: r.warnings })
        }
        Method::Oracle => {
            let f = e.integrand(p)?;
            let r = hankel0_direct(&*f, q, tol.oracle)?;
            Ok(Evaluation { value: r.value, error: r.error_estimate, warnings: Vec::new() })
        }
        Method::Closed => {
            let v = closed_form(e, q, p)?;
            Ok(Evaluation { value: v, error: CLOSED_FORM_ULPS * f64::EPSILON * v.abs(), warnings: Vec::new() })
        }
        Method::Series => {
            let (a, c) = (p.a(e)?, p.c(e)?);
            let r = a6_series_psi(q, a, c, tol.terms)?;
            Ok(Evaluation { value: r.value, error: r.error_bound, warnings: Vec::new() })
        }
    }
}
