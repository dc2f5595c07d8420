//! Fourier transforms of analytic functions with a-priori error control,
//! computed by a truncated Euler-weighted trapezoidal sum and a fractional FFT.
//!
//! The usual entry point is [`compute_spectrum`]: it plans the truncation `N`
//! from an [`AnalyticityProfile`] and a [`FrequencyWindow`] so that the error on
//! `omega_d <= |omega| <= omega_u` stays below `epsilon`, then evaluates the
//! whole grid in `O(N log N)`.

pub mod error;
pub mod exec;
pub mod fft;
pub mod kernel;
pub mod pipeline;
pub mod problems;
pub mod special;

pub use error::{Error, PlanError, Result};
pub use exec::Execution;
pub use fft::{fft, frac_dft, ifft, naive_frac_dft, ComplexSequence};
pub use kernel::{
    choose_n, forced_plan, make_plan, plan, total_bound, AnalyticityProfile, FormulaPlan,
    FrequencyWindow, WeightParams,
};
pub use pipeline::{
    compute_spectrum, compute_spectrum_with, direct_spectrum, evaluate_plan, reconstruct_g2,
    ErrorSummary, SpectrumGrid,
};
pub use problems::{builtin_problem, Builtin, FourierProblem};
pub use special::{bessel_k0, erfc};
