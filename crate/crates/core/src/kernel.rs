//! The continuous Euler weight, a-priori error bounds for the weighted
//! trapezoidal sum, and the parameter planner built on them.
//!
//! All bounds are evaluated in double precision left to right in the order
//! the formulas are usually written. Comparisons against a target accuracy
//! apply a relative slack of [`EPSILON_SLACK`] so that the chosen truncation
//! does not depend on the last bit of a platform's `exp`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, PlanError, Result};
use crate::special::erfc;

/// Relative slack applied when comparing a bound with a target accuracy.
pub const EPSILON_SLACK: f64 = 1e-12;

/// Largest exponent `j` tried by [`choose_n`] (so `N <= 2^31 - 1`).
const MAX_POWER: u32 = 31;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Width `p` and shift `q` of the weight `w(x; p, q) = erfc(x/p - q) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub p: f64,
    pub q: f64,
}

impl WeightParams {
    /// `p > 0` and `q >= 0`, both finite.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0 && q.is_finite() && q >= 0.0) {
            return Err(Error::Domain(format!(
                "weight parameters need p > 0 and q >= 0, got p = {p}, q = {q}"
            )));
        }
        Ok(Self { p, q })
    }

    #[inline]
    pub fn weight(&self, x: f64) -> f64 {
        weight(x, *self)
    }
}

/// The smooth cutoff `w(x; p, q) = erfc(x/p - q) / 2`, evaluated at `x >= 0`.
#[inline]
pub fn weight(x: f64, w: WeightParams) -> f64 {
    0.5 * erfc(x / w.p - w.q)
}

/// Constants describing where the integrand is analytic and bounded: the
/// half-slope `alpha` of the double sector around the real axis, the
/// half-width `d` of the horizontal strip, and the bound `M` on `|f|` there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticityProfile {
    pub sector_slope: f64,
    pub strip_half_width: f64,
    pub modulus_bound: f64,
}

impl AnalyticityProfile {
    pub fn new(sector_slope: f64, strip_half_width: f64, modulus_bound: f64) -> Result<Self> {
        let ok = sector_slope > 0.0
            && sector_slope < 1.0
            && strip_half_width.is_finite()
            && strip_half_width > 0.0
            && modulus_bound.is_finite()
            && modulus_bound > 0.0;
        if !ok {
            return Err(PlanError::InvalidProfile(format!(
                "need 0 < alpha < 1, d > 0, M > 0; got alpha = {sector_slope}, \
                 d = {strip_half_width}, M = {modulus_bound}"
            ))
            .into());
        }
        Ok(Self {
            sector_slope,
            strip_half_width,
            modulus_bound,
        })
    }

    /// Same profile with `M` replaced.
    pub fn with_modulus_bound(self, modulus_bound: f64) -> Result<Self> {
        Self::new(self.sector_slope, self.strip_half_width, modulus_bound)
    }
}

/// The band `[omega_lower, omega_upper]` on which accuracy `epsilon` is requested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyWindow {
    pub omega_lower: f64,
    pub omega_upper: f64,
    pub epsilon: f64,
}

impl FrequencyWindow {
    pub fn new(omega_lower: f64, omega_upper: f64, epsilon: f64) -> Result<Self> {
        if !(omega_lower.is_finite() && omega_upper.is_finite() && omega_lower > 0.0) {
            return Err(PlanError::InvalidWindow(format!(
                "frequencies must be finite and positive, got omega_d = {omega_lower}, \
                 omega_u = {omega_upper}"
            ))
            .into());
        }
        if omega_lower >= omega_upper {
            return Err(PlanError::InvalidWindow(format!(
                "need omega_d < omega_u, got omega_d = {omega_lower}, omega_u = {omega_upper}"
            ))
            .into());
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(PlanError::InvalidWindow(format!(
                "epsilon must be positive, got {epsilon}"
            ))
            .into());
        }
        Ok(Self {
            omega_lower,
            omega_upper,
            epsilon,
        })
    }

    /// Checks `omega_d / omega_u <= min(alpha, 1/2)`.
    pub fn check_against(&self, profile: &AnalyticityProfile) -> Result<()> {
        let ratio = self.omega_lower / self.omega_upper;
        let limit = profile.sector_slope.min(0.5);
        if ratio > limit {
            return Err(PlanError::RatioTooLarge { ratio, limit }.into());
        }
        Ok(())
    }

    /// Whether `|omega|` lies in the closed guaranteed band.
    #[inline]
    pub fn contains(&self, omega: f64) -> bool {
        let a = omega.abs();
        self.omega_lower <= a && a <= self.omega_upper
    }
}

/// Parameters of the truncated weighted trapezoidal sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormulaPlan {
    /// Truncation index `N`; samples run over `n = -N-1 ..= N`.
    #[serde(rename = "N")]
    pub truncation: usize,
    /// Sample spacing `h` in `x`.
    pub h: f64,
    /// Output frequency spacing `omega_u / (N + 1)`.
    pub h_tilde: f64,
    pub weight: WeightParams,
    /// Value of the total error envelope for this `N`.
    pub predicted_bound: f64,
    /// `N` satisfies the lower bound, has the form `2^j - 1` and the envelope
    /// is within epsilon, i.e. the accuracy guarantee holds.
    pub certified: bool,
}

impl FormulaPlan {
    /// Number of samples and of output frequencies, `2(N + 1)`.
    pub fn len(&self) -> usize {
        2 * (self.truncation + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Fractional-DFT parameter `h * h_tilde / (2 pi)`.
    pub fn alpha_frac(&self) -> f64 {
        self.h * self.h_tilde / (2.0 * PI)
    }

    /// `N + 1` is a power of two, so the fractional FFT applies.
    pub fn is_fft_compatible(&self) -> bool {
        (self.truncation + 1).is_power_of_two()
    }
}

fn check_nonzero_omega(omega: f64) -> Result<f64> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::Domain(format!(
            "omega must be finite and nonzero, got {omega}"
        )));
    }
    Ok(omega.abs())
}

/// Bound on `|F(omega) - F_w(omega)|`, the error from weighting the integrand,
/// for any `0 < alpha_prime <= alpha`.
pub fn lemma1_bound(
    omega: f64,
    profile: &AnalyticityProfile,
    w: WeightParams,
    alpha_prime: f64,
) -> Result<f64> {
    let omega = check_nonzero_omega(omega)?;
    if !(alpha_prime > 0.0 && alpha_prime <= profile.sector_slope) {
        return Err(Error::Domain(format!(
            "alpha' must lie in (0, {}], got {alpha_prime}",
            profile.sector_slope
        )));
    }
    let (p, q) = (w.p, w.q);
    let a2 = alpha_prime * alpha_prime;
    let shift = alpha_prime * p / (2.0 * q) * omega - 1.0;
    let gaussian =
        SQRT_PI * p / (1.0 - a2).sqrt() * (-(q * q) * (1.0 - shift * shift / (1.0 - a2))).exp();
    let tail = 2.0 / (omega * alpha_prime) * (-omega * alpha_prime * p * q).exp();
    Ok(profile.modulus_bound * (1.0 + a2).sqrt() * (gaussian + tail))
}

/// Discretization error bound of the infinite trapezoidal sum, valid for
/// `|omega| <= pi / h`.
pub fn lemma2_bound(h: f64, profile: &AnalyticityProfile, w: WeightParams) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Domain(format!("h must be positive, got {h}")));
    }
    let d = profile.strip_half_width;
    let (p, q) = (w.p, w.q);
    let c = profile.modulus_bound * (SQRT_PI / 2.0 + q) * p * ((d / p) * (d / p)).exp();
    // 1 - exp(-2 pi d / h) without cancellation for large h
    let denominator = -(-2.0 * PI * d / h).exp_m1();
    Ok(2.0 * c / denominator * (-PI * d / h).exp())
}

/// Truncation error bound for cutting the sum to `n = -N-1 ..= N`; needs `N h > p q`.
pub fn lemma3_bound(
    truncation: usize,
    h: f64,
    profile: &AnalyticityProfile,
    w: WeightParams,
) -> Result<f64> {
    let (p, q) = (w.p, w.q);
    let reach = truncation as f64 * h;
    // also rejects NaN
    if reach.partial_cmp(&(p * q)) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain(format!(
            "truncation bound needs N h > p q, got N h = {reach}, p q = {}",
            p * q
        )));
    }
    let excess = (reach - p * q) / p;
    Ok(SQRT_PI * p * profile.modulus_bound / 2.0 * (-(excess * excess)).exp())
}

/// Real lower bound on `N` that certifies `omega_u <= pi / h`.
pub fn min_n_constraint(window: &FrequencyWindow, profile: &AnalyticityProfile) -> f64 {
    let (wd, wu) = (window.omega_lower, window.omega_upper);
    2.0 * profile.strip_half_width * (wd + wu) * wu * wu / (PI * wd * wd)
}

/// The three constants `C1(N)`, `C2(N)`, `C3(N)` and the decay factor of the
/// total envelope. Assumes the window has been validated against the profile.
fn envelope_parts(
    truncation: usize,
    window: &FrequencyWindow,
    profile: &AnalyticityProfile,
) -> ([f64; 3], f64) {
    let n = truncation as f64;
    let (wd, wu) = (window.omega_lower, window.omega_upper);
    let d = profile.strip_half_width;
    let m = profile.modulus_bound;

    let quarter = (2.0 * PI * d * (wd + wu) * n / (wd * wd * wd * wd)).powf(0.25);
    let c1 = m
        * (wu * wu + wd * wd).sqrt()
        * (SQRT_PI / (wu * wu - wd * wd).sqrt() * quarter + 2.0 / (wd * wd));
    let c2 = 2.0 * m / (1.0 - (-2.0 * d * wu).exp())
        * (SQRT_PI / 2.0 * quarter + (PI * d * (wd + wu) * n / (2.0 * wd * wd)).sqrt())
        * (d * wd / 4.0).exp();
    let c3 = SQRT_PI * m / 2.0 * quarter;
    let decay = (-(PI * d * wd * wd * n / (2.0 * (wd + wu))).sqrt()).exp();
    ([c1, c2, c3], decay)
}

/// Total error envelope `(C1(N) + C2(N) + C3(N)) exp(-sqrt(pi d wd^2 N / (2 (wd + wu))))`,
/// valid on `omega_d <= |omega| <= omega_u` once `N` meets [`min_n_constraint`].
pub fn total_bound(
    truncation: usize,
    window: &FrequencyWindow,
    profile: &AnalyticityProfile,
) -> Result<f64> {
    window.check_against(profile)?;
    if truncation == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let ([c1, c2, c3], decay) = envelope_parts(truncation, window, profile);
    Ok((c1 + c2 + c3) * decay)
}

#[inline]
fn within(bound: f64, epsilon: f64) -> bool {
    bound <= epsilon * (1.0 + EPSILON_SLACK)
}

/// Smallest `N = 2^j - 1` that meets the lower bound and whose envelope is
/// within `epsilon`.
pub fn choose_n(window: &FrequencyWindow, profile: &AnalyticityProfile) -> Result<usize> {
    window.check_against(profile)?;
    let required = min_n_constraint(window, profile);
    let mut best = f64::INFINITY;
    for j in 1..=MAX_POWER {
        let n = (1usize << j) - 1;
        if (n as f64) < required {
            continue;
        }
        let bound = total_bound(n, window, profile)?;
        best = best.min(bound);
        if within(bound, window.epsilon) {
            return Ok(n);
        }
    }
    Err(PlanError::Unreachable {
        epsilon: window.epsilon,
        best,
    }
    .into())
}

fn is_power_of_two_minus_one(n: usize) -> bool {
    n >= 1 && n.checked_add(1).is_some_and(usize::is_power_of_two)
}

fn derive_plan(
    window: &FrequencyWindow,
    profile: &AnalyticityProfile,
    truncation: usize,
) -> Result<FormulaPlan> {
    let n = truncation as f64;
    let (wd, wu) = (window.omega_lower, window.omega_upper);
    let d = profile.strip_half_width;
    let h = (2.0 * PI * d * (wd + wu) / (wd * wd * n)).sqrt();
    let p = (n * h / wd).sqrt();
    let q = (wd * n * h / 4.0).sqrt();
    let h_tilde = wu / (truncation as f64 + 1.0);
    let predicted_bound = total_bound(truncation, window, profile)?;
    let certified = is_power_of_two_minus_one(truncation)
        && n >= min_n_constraint(window, profile)
        && within(predicted_bound, window.epsilon);
    Ok(FormulaPlan {
        truncation,
        h,
        h_tilde,
        weight: WeightParams::new(p, q)?,
        predicted_bound,
        certified,
    })
}

/// Derives `h`, `p`, `q` and `h_tilde` for a given `N = 2^j - 1` that meets the
/// lower bound of [`min_n_constraint`].
pub fn make_plan(
    window: &FrequencyWindow,
    profile: &AnalyticityProfile,
    truncation: usize,
) -> Result<FormulaPlan> {
    window.check_against(profile)?;
    if !is_power_of_two_minus_one(truncation) {
        return Err(PlanError::NotPowerOfTwoMinusOne(truncation).into());
    }
    let required = min_n_constraint(window, profile);
    if (truncation as f64) < required {
        return Err(PlanError::TruncationTooSmall {
            n: truncation,
            required,
        }
        .into());
    }
    derive_plan(window, profile, truncation)
}

/// Like [`make_plan`] but accepts any `N >= 1`. The plan is marked
/// uncertified unless every check of `make_plan` and the epsilon test pass;
/// plans with `N + 1` not a power of two are evaluated by the direct sum.
pub fn forced_plan(
    window: &FrequencyWindow,
    profile: &AnalyticityProfile,
    truncation: usize,
) -> Result<FormulaPlan> {
    window.check_against(profile)?;
    if truncation == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    derive_plan(window, profile, truncation)
}

/// `choose_n` followed by `make_plan`.
pub fn plan(window: &FrequencyWindow, profile: &AnalyticityProfile) -> Result<FormulaPlan> {
    let n = choose_n(window, profile)?;
    make_plan(window, profile, n)
}

/// The three lemma bounds specialized to a plan at a frequency in the band,
/// with `alpha' = omega_d / omega_u`. Useful to inspect which term dominates.
pub fn lemma_bounds_at(
    omega: f64,
    plan: &FormulaPlan,
    window: &FrequencyWindow,
    profile: &AnalyticityProfile,
) -> Result<[f64; 3]> {
    let alpha_prime = window.omega_lower / window.omega_upper;
    Ok([
        lemma1_bound(omega, profile, plan.weight, alpha_prime)?,
        lemma2_bound(plan.h, profile, plan.weight)?,
        lemma3_bound(plan.truncation, plan.h, profile, plan.weight)?,
    ])
}
