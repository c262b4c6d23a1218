use thiserror::Error;

/// Errors produced by the engine.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {re}{im:+}i lies within 1e-12 of the pole at -{pole}")]
    PoleProximity { re: f64, im: f64, pole: u64 },

    #[error("{function}: result overflows the floating-point range")]
    Overflow { function: &'static str },

    #[error("{function}: argument {value} outside the domain ({reason})")]
    Domain { function: &'static str, value: f64, reason: &'static str },

    #[error("{what}: no convergence after {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("{what}: asymptotic series diverges immediately at z = {z}")]
    Divergent { what: &'static str, z: f64 },

    #[error("non-finite integrand value at s = {re}{im:+}i")]
    NonFiniteIntegrand { re: f64, im: f64 },

    #[error("integrand does not decay: |f| at the truncation height is {edge:e}, peak {peak:e}")]
    TailNotDecaying { edge: f64, peak: f64 },

    #[error("coefficient grows too fast along the contour (fitted rate {rate:.4}, limit pi/2)")]
    InadmissibleGrowth { rate: f64 },

    #[error("contour abscissa {alpha} outside the admissible region (> {lower}) for {what}")]
    ContourOutsideStrip { alpha: f64, lower: f64, what: &'static str },

    #[error("invalid contour: {reason}")]
    InvalidContour { reason: &'static str },

    #[error("coefficient '{label}' belongs to {actual}, not {expected}")]
    KindMismatch { label: String, expected: &'static str, actual: &'static str },

    #[error("cannot reach tolerance {requested:e}; best achievable bound {best:e}")]
    ToleranceUnreachable { requested: f64, best: f64 },

    #[error("result has a significant imaginary part ({imag:e}) but the coefficient is not real-symmetric")]
    ComplexResult { imag: f64 },

    #[error("{what}: parameters outside the asymptotic regime ({reason})")]
    AsymptoticRegime { what: &'static str, reason: String },

    #[error("derivative table too short: need index {needed}, have {available} entries")]
    InsufficientDerivatives { needed: usize, available: usize },

    #[error("oscillatory tail is not alternating within {cells} cells")]
    TailNotAlternating { cells: usize },

    #[error("quadrature failed on [{lo}, {hi}]: {reason}")]
    Quadrature { lo: f64, hi: f64, reason: &'static str },

    #[error("{example} has no closed form")]
    NoClosedForm { example: &'static str },

    #[error("missing parameter '{name}' for example {example}")]
    MissingParameter { example: &'static str, name: &'static str },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("unknown example label '{0}' (expected a1..a7)")]
    UnknownExample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
