use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Compute the spectrum on the whole grid and write it out.
    Transform,
    /// Print the chosen N and the derived parameters.
    Bound,
    /// Compare against the analytic transform; exit 1 if the error exceeds epsilon.
    Validate,
    /// Time the spectrum for N = 511 ..= 8191.
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    F1,
    F2,
    #[value(name = "f2_tilde")]
    F2Tilde,
    /// Gamma(2, 1) CDF recovered from its characteristic function.
    G2,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::F1 => "f1",
            Function::F2 => "f2",
            Function::F2Tilde => "f2_tilde",
            Function::G2 => "g2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Fourier transforms with an a-priori accuracy guarantee on a frequency band.
#[derive(Debug, Clone, Parser)]
#[command(name = "eulerfft", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    #[arg(long, value_enum)]
    pub function: Function,

    /// Lower edge of the guaranteed band.
    #[arg(long = "omega-d", allow_negative_numbers = true)]
    pub omega_d: f64,

    /// Upper edge of the guaranteed band.
    #[arg(long = "omega-u", allow_negative_numbers = true)]
    pub omega_u: f64,

    /// Required absolute accuracy on the band.
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: f64,

    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,

    /// Fill the reference columns and fail (exit 1) if the error exceeds epsilon.
    #[arg(long)]
    pub validate: bool,

    /// Use this N instead of the planned one. Voids the guarantee unless N is a
    /// valid choice for the window.
    #[arg(long = "force-N", value_name = "INT")]
    pub force_n: Option<usize>,

    /// Timing repetitions per N for `bench` (median is reported).
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
}
