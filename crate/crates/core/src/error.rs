use thiserror::Error;

/// Why a window/profile/truncation combination cannot be planned.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("invalid analyticity profile: {0}")]
    InvalidProfile(String),
    #[error("invalid frequency window: {0}")]
    InvalidWindow(String),
    #[error(
        "window ratio omega_d/omega_u = {ratio} exceeds min(alpha, 1/2) = {limit}; \
         the accuracy guarantee does not apply"
    )]
    RatioTooLarge { ratio: f64, limit: f64 },
    #[error(
        "N = {n} is below the required lower bound {required} (omega_u <= pi/h is not certified)"
    )]
    TruncationTooSmall { n: usize, required: f64 },
    #[error("N = {0} is not of the form 2^j - 1")]
    NotPowerOfTwoMinusOne(usize),
    #[error("no N = 2^j - 1 up to 2^31 - 1 reaches epsilon = {epsilon} (best bound {best})")]
    Unreachable { epsilon: f64, best: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("length error: {0}")]
    Length(String),
    #[error("integrand evaluation failed at sample {index} (x = {x}): got {value}")]
    Integrand { index: usize, x: f64, value: String },
    #[error("unknown problem `{0}` (expected one of f1, f2, f2_tilde)")]
    UnknownProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
