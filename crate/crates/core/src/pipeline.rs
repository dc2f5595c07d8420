//! End-to-end evaluation of the truncated weighted trapezoidal sum
//!
//! ```text
//! V(m) = h * sum_{n=-N-1}^{N} w(|n h|; p, q) f(n h) exp(-i m n h h_tilde),   m = -N-1 ..= N
//! ```
//!
//! on the grid `omega = m * h_tilde`. With the shifted indices `m' = m + N + 1`
//! and `n' = n + N + 1` the sum becomes a fractional DFT with parameter
//! `alpha = h h_tilde / (2 pi)` of the pre-twiddled samples
//! `x_n' = h w f exp(+2 pi i (N+1) n' alpha)`, followed by the post-twiddle
//! `exp(+2 pi i m (N+1) alpha)`. The chirp de-rotation belongs to
//! [`frac_dft`] and is not applied again here.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::fft::{cis_turns, frac_dft, turns, ComplexSequence};
use crate::kernel::{forced_plan, plan, FormulaPlan, FrequencyWindow};
use crate::problems::{heaviside, reference_g2, Builtin, FourierProblem};

/// Computed transform values on the grid `m * h_tilde`, `m = -N-1 ..= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    pub plan: FormulaPlan,
    pub window: FrequencyWindow,
    pub frequencies: Vec<f64>,
    pub values: ComplexSequence,
    /// Exact transform where the problem provides one and it is finite.
    pub reference_values: Vec<Option<Complex64>>,
    /// `omega_d <= |omega| <= omega_u`.
    pub guaranteed: Vec<bool>,
}

/// Largest and mean absolute error over the guaranteed points with a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary {
    pub max_abs_err: f64,
    pub worst_omega: f64,
    pub mean_abs_err: f64,
    pub points: usize,
}

impl SpectrumGrid {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `|value - reference|` per point, where a reference exists.
    pub fn abs_errors(&self) -> Vec<Option<f64>> {
        self.values
            .iter()
            .zip(&self.reference_values)
            .map(|(v, r)| r.map(|r| (v - r).norm()))
            .collect()
    }

    /// Error statistics over guaranteed points; `None` without any reference.
    pub fn error_summary(&self) -> Option<ErrorSummary> {
        let mut summary = ErrorSummary {
            max_abs_err: 0.0,
            worst_omega: f64::NAN,
            mean_abs_err: 0.0,
            points: 0,
        };
        let mut total = 0.0;
        for ((err, &omega), &flag) in self
            .abs_errors()
            .into_iter()
            .zip(&self.frequencies)
            .zip(&self.guaranteed)
        {
            let Some(err) = err.filter(|_| flag) else {
                continue;
            };
            summary.points += 1;
            total += err;
            if err > summary.max_abs_err || summary.worst_omega.is_nan() {
                summary.max_abs_err = err;
                summary.worst_omega = omega;
            }
        }
        if summary.points == 0 {
            return None;
        }
        summary.mean_abs_err = total / summary.points as f64;
        Some(summary)
    }
}

/// Index of `m = -N-1 ..= N` in a grid of length `2(N + 1)`.
#[inline]
fn signed_index(plan: &FormulaPlan, slot: usize) -> i64 {
    slot as i64 - (plan.truncation as i64 + 1)
}

/// `exp(2 pi i k alpha)` for signed `k`.
#[inline]
fn cis_signed(k: i64, alpha: f64) -> Complex64 {
    let z = cis_turns(turns(k.unsigned_abs(), alpha), 1.0);
    if k < 0 {
        z.conj()
    } else {
        z
    }
}

/// `w(|nh|) f(nh)` for `n = -N-1 ..= N`, unscaled and untwiddled.
fn weighted_samples(
    problem: &FourierProblem,
    plan: &FormulaPlan,
    exec: Execution,
) -> Result<ComplexSequence> {
    let raw = map_indexed(plan.len(), exec, |slot| {
        let x = signed_index(plan, slot) as f64 * plan.h;
        let v = problem.eval(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(plan.weight.weight(x.abs()) * v)
        } else {
            Err(Error::Integrand {
                index: slot,
                x,
                value: v.to_string(),
            })
        }
    });
    raw.into_iter().collect()
}

/// The pre-twiddled samples `x_n' = h w(|(n'-N-1) h|) f((n'-N-1) h) exp(+2 pi i (N+1) n' alpha)`.
pub fn sample_weighted_integrand(
    problem: &FourierProblem,
    plan: &FormulaPlan,
) -> Result<ComplexSequence> {
    sample_weighted_integrand_with(problem, plan, Execution::default())
}

pub fn sample_weighted_integrand_with(
    problem: &FourierProblem,
    plan: &FormulaPlan,
    exec: Execution,
) -> Result<ComplexSequence> {
    let alpha = plan.alpha_frac();
    let shift = plan.truncation as u64 + 1;
    let samples = weighted_samples(problem, plan, exec)?;
    Ok(samples
        .into_iter()
        .enumerate()
        .map(|(slot, s)| plan.h * s * cis_turns(turns(shift * slot as u64, alpha), 1.0))
        .collect())
}

fn assemble(
    problem: &FourierProblem,
    plan: FormulaPlan,
    window: FrequencyWindow,
    values: ComplexSequence,
) -> SpectrumGrid {
    let frequencies: Vec<f64> = (0..plan.len())
        .map(|slot| signed_index(&plan, slot) as f64 * plan.h_tilde)
        .collect();
    let reference_values = frequencies
        .iter()
        .map(|&w| {
            problem
                .reference(w)
                .filter(|r| r.re.is_finite() && r.im.is_finite())
        })
        .collect();
    let guaranteed = frequencies.iter().map(|&w| window.contains(w)).collect();
    SpectrumGrid {
        plan,
        window,
        frequencies,
        values,
        reference_values,
        guaranteed,
    }
}

/// Evaluates a given plan with the fractional FFT. Plans whose `N + 1` is not
/// a power of two fall back to [`direct_spectrum_with`].
pub fn evaluate_plan(
    problem: &FourierProblem,
    plan: &FormulaPlan,
    window: &FrequencyWindow,
    exec: Execution,
) -> Result<SpectrumGrid> {
    if !plan.is_fft_compatible() {
        return direct_spectrum_with(problem, plan, window, exec);
    }
    let alpha = plan.alpha_frac();
    let shift = plan.truncation as i64 + 1;
    let x = sample_weighted_integrand_with(problem, plan, exec)?;
    let sums = frac_dft(&x, alpha)?;
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(slot, s)| s * cis_signed(signed_index(plan, slot) * shift, alpha))
        .collect();
    Ok(assemble(problem, *plan, *window, values))
}

/// Plans `N` for the window and evaluates the spectrum with the fractional FFT.
pub fn compute_spectrum(
    problem: &FourierProblem,
    window: &FrequencyWindow,
) -> Result<SpectrumGrid> {
    compute_spectrum_with(problem, window, Execution::default())
}

pub fn compute_spectrum_with(
    problem: &FourierProblem,
    window: &FrequencyWindow,
    exec: Execution,
) -> Result<SpectrumGrid> {
    let plan = plan(window, &problem.profile)?;
    evaluate_plan(problem, &plan, window, exec)
}

/// Literal `O(N^2)` double loop over `m` and `n`; the oracle for the FFT path.
pub fn direct_spectrum(
    problem: &FourierProblem,
    plan: &FormulaPlan,
    window: &FrequencyWindow,
) -> Result<SpectrumGrid> {
    direct_spectrum_with(problem, plan, window, Execution::default())
}

pub fn direct_spectrum_with(
    problem: &FourierProblem,
    plan: &FormulaPlan,
    window: &FrequencyWindow,
    exec: Execution,
) -> Result<SpectrumGrid> {
    let samples = weighted_samples(problem, plan, exec)?;
    let step = plan.h * plan.h_tilde;
    let values = map_indexed(plan.len(), exec, |m_slot| {
        let m = signed_index(plan, m_slot);
        let sum: Complex64 = samples
            .iter()
            .enumerate()
            .map(|(n_slot, s)| {
                let n = signed_index(plan, n_slot);
                let (sin, cos) = (-((m * n) as f64) * step).sin_cos();
                s * Complex64::new(cos, sin)
            })
            .sum();
        plan.h * sum
    });
    Ok(assemble(problem, *plan, *window, values))
}

/// Turns a transform of `f2_tilde` into values of the Gamma(2, 1) CDF by
/// adding the Heaviside step back, and swaps in the CDF as reference.
pub fn add_heaviside(mut grid: SpectrumGrid) -> SpectrumGrid {
    for ((value, reference), &omega) in grid
        .values
        .iter_mut()
        .zip(grid.reference_values.iter_mut())
        .zip(&grid.frequencies)
    {
        *value += heaviside(omega);
        *reference = Some(Complex64::new(reference_g2(omega), 0.0));
    }
    grid
}

/// The Gamma(2, 1) CDF on the grid, computed from its characteristic function.
pub fn reconstruct_g2(window: &FrequencyWindow) -> Result<SpectrumGrid> {
    let problem = Builtin::F2Tilde.problem();
    Ok(add_heaviside(compute_spectrum(&problem, window)?))
}

/// [`reconstruct_g2`] with a caller-chosen `N` (see [`forced_plan`]).
pub fn reconstruct_g2_with_truncation(
    window: &FrequencyWindow,
    truncation: usize,
) -> Result<SpectrumGrid> {
    let problem = Builtin::F2Tilde.problem();
    let plan = forced_plan(window, &problem.profile, truncation)?;
    Ok(add_heaviside(evaluate_plan(
        &problem,
        &plan,
        window,
        Execution::default(),
    )?))
}
