//! Integrands with known analyticity constants and, where available, their
//! closed-form Fourier transforms `F(omega) = int f(x) exp(-i omega x) dx`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::AnalyticityProfile;
use crate::special::bessel_k0;

pub type Integrand = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
/// Reference transform; `None` where it is undefined (e.g. the log singularity of `2 K0(|omega|)`).
pub type Reference = Arc<dyn Fn(f64) -> Option<Complex64> + Send + Sync>;

/// A function to transform together with the constants that control the
/// error bound and an optional exact transform for validation.
#[derive(Clone)]
pub struct FourierProblem {
    pub name: String,
    pub profile: AnalyticityProfile,
    integrand: Integrand,
    reference: Option<Reference>,
}

impl FourierProblem {
    pub fn new<F>(name: impl Into<String>, profile: AnalyticityProfile, integrand: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            profile,
            integrand: Arc::new(integrand),
            reference: None,
        }
    }

    pub fn with_reference<R>(mut self, reference: R) -> Self
    where
        R: Fn(f64) -> Option<Complex64> + Send + Sync + 'static,
    {
        self.reference = Some(Arc::new(reference));
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        (self.integrand)(x)
    }

    pub fn reference(&self, omega: f64) -> Option<Complex64> {
        self.reference.as_ref().and_then(|r| r(omega))
    }

    pub fn has_reference(&self) -> bool {
        self.reference.is_some()
    }
}

impl fmt::Debug for FourierProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierProblem")
            .field("name", &self.name)
            .field("profile", &self.profile)
            .field("has_reference", &self.has_reference())
            .finish()
    }
}

/// The built-in test problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `1 / sqrt(1 + x^2)`, transform `2 K0(|omega|)`.
    F1,
    /// `1 / (1 - i x)^2`, the Gamma(2, 1) characteristic function.
    F2,
    /// Inverse transform of the Gamma(2, 1) CDF minus the Heaviside step.
    F2Tilde,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::F1, Builtin::F2, Builtin::F2Tilde];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::F1 => "f1",
            Builtin::F2 => "f2",
            Builtin::F2Tilde => "f2_tilde",
        }
    }

    pub fn profile(self) -> AnalyticityProfile {
        let (slope, modulus) = match self {
            // alpha = d = 1 - e, M = 1 / sqrt(e)
            Builtin::F1 => (1.0 - F1_MARGIN, 1.0 / F1_MARGIN.sqrt()),
            // alpha = d = 1 - e, M = max(2, 1 / e^2)
            Builtin::F2 => (
                1.0 - F2_MARGIN,
                f64::max(2.0, 1.0 / (F2_MARGIN * F2_MARGIN)),
            ),
            // alpha = d = 1 - e, M = max(2 sqrt 2 / pi, 3 / (2 pi e^2))
            Builtin::F2Tilde => (
                1.0 - F2_TILDE_MARGIN,
                f64::max(
                    2.0 * 2f64.sqrt() / PI,
                    3.0 / (2.0 * PI * F2_TILDE_MARGIN * F2_TILDE_MARGIN),
                ),
            ),
        };
        AnalyticityProfile::new(slope, slope, modulus).expect("built-in profiles are valid")
    }

    pub fn problem(self) -> FourierProblem {
        let profile = self.profile();
        match self {
            Builtin::F1 => FourierProblem::new("f1", profile, |x| {
                Complex64::new(1.0 / (1.0 + x * x).sqrt(), 0.0)
            })
            .with_reference(|w| reference_f1(w).ok().map(|v| Complex64::new(v, 0.0))),
            Builtin::F2 => FourierProblem::new("f2", profile, f2)
                .with_reference(|w| Some(Complex64::new(reference_f2(w), 0.0))),
            Builtin::F2Tilde => FourierProblem::new("f2_tilde", profile, f2_tilde)
                .with_reference(|w| Some(Complex64::new(reference_g2(w) - heaviside(w), 0.0))),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Distance margins used to derive the built-in profiles.
const F1_MARGIN: f64 = 0.01;
const F2_MARGIN: f64 = 0.1;
const F2_TILDE_MARGIN: f64 = 0.1;

/// Looks up a built-in problem by name (`f1`, `f2`, `f2_tilde`).
pub fn builtin_problem(name: &str) -> Result<FourierProblem> {
    Ok(name.parse::<Builtin>()?.problem())
}

/// `1 / (1 - i x)^2`.
pub fn f2(x: f64) -> Complex64 {
    let base = Complex64::new(1.0, -x);
    (base * base).inv()
}

/// `i (f2(x) - 1) / (2 pi x)` with its limit `-1/pi` at `x = 0`.
///
/// Evaluated as `(i x - 2) / (2 pi (1 - i x)^2)`, which is algebraically
/// identical and free of cancellation near the origin.
pub fn f2_tilde(x: f64) -> Complex64 {
    let base = Complex64::new(1.0, -x);
    Complex64::new(-2.0, x) / (2.0 * PI * base * base)
}

/// `F1(omega) = 2 K0(|omega|)`; undefined at `omega = 0`.
pub fn reference_f1(omega: f64) -> Result<f64> {
    if omega == 0.0 {
        return Err(Error::Domain(
            "2 K0(|omega|) diverges at omega = 0".to_string(),
        ));
    }
    Ok(2.0 * bessel_k0(omega.abs())?)
}

/// `F2(omega) = 2 pi omega exp(-omega)` for `omega >= 0`, zero otherwise.
pub fn reference_f2(omega: f64) -> f64 {
    if omega < 0.0 {
        0.0
    } else {
        2.0 * PI * omega * (-omega).exp()
    }
}

/// Gamma(2, 1) CDF `1 - (1 + omega) exp(-omega)` for `omega >= 0`.
pub fn reference_g2(omega: f64) -> f64 {
    if omega < 0.0 {
        0.0
    } else {
        -(-omega).exp_m1() - omega * (-omega).exp()
    }
}

pub fn heaviside(omega: f64) -> f64 {
    if omega < 0.0 {
        0.0
    } else {
        1.0
    }
}
