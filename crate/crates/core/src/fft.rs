//! Radix-2 FFT, circular convolution and the fractional DFT
//! `S_m = sum_n x_n exp(-2 pi i m n alpha)` for arbitrary real `alpha`.
//!
//! The fractional DFT uses the chirp factorization `2mn = m^2 + n^2 - (m-n)^2`,
//! turning the sum into a zero-padded circular convolution of length `2L`.
//! Forward transforms are unnormalized; the inverse carries the `1/L` factor.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};

pub type ComplexSequence = Vec<Complex64>;

/// Fractional part of `k * alpha`, accurate to about one ulp of the result
/// for `k < 2^53`, where the plain product would lose `log2(k)` bits.
#[inline]
pub(crate) fn turns(k: u64, alpha: f64) -> f64 {
    let kf = k as f64;
    let hi = kf * alpha;
    let lo = kf.mul_add(alpha, -hi);
    let t = (hi - hi.floor()) + lo;
    t - t.floor()
}

/// `exp(2 pi i * sign * turns)`.
#[inline]
pub(crate) fn cis_turns(t: f64, sign: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * t).sin_cos();
    Complex64::new(c, sign * s)
}

fn check_power_of_two(len: usize, what: &str) -> Result<()> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::Length(format!(
            "{what} needs a power-of-two length, got {len}"
        )));
    }
    Ok(())
}

/// Twiddles `exp(-2 pi i k / len)` for `k < len / 2`, each from its own `sin_cos`.
fn twiddles(len: usize) -> Vec<Complex64> {
    (0..len / 2)
        .map(|k| {
            let (s, c) = (-2.0 * PI * k as f64 / len as f64).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

/// Out-of-place iterative decimation-in-time FFT with a fixed butterfly order.
fn transform(x: &[Complex64], inverse: bool) -> ComplexSequence {
    let len = x.len();
    let bits = len.trailing_zeros();
    let mut out: ComplexSequence = if len == 1 {
        x.to_vec()
    } else {
        (0..len)
            .map(|i| x[i.reverse_bits() >> (usize::BITS - bits)])
            .collect()
    };
    let table = twiddles(len);
    let mut half = 1;
    while half < len {
        let stride = len / (2 * half);
        for start in (0..len).step_by(2 * half) {
            for k in 0..half {
                let mut w = table[k * stride];
                if inverse {
                    w = w.conj();
                }
                let a = out[start + k];
                let b = out[start + k + half] * w;
                out[start + k] = a + b;
                out[start + k + half] = a - b;
            }
        }
        half *= 2;
    }
    out
}

/// `X_k = sum_n x_n exp(-2 pi i k n / L)`, no normalization.
pub fn fft(x: &[Complex64]) -> Result<ComplexSequence> {
    check_power_of_two(x.len(), "fft")?;
    Ok(transform(x, false))
}

/// `x_n = (1/L) sum_k X_k exp(+2 pi i k n / L)`.
pub fn ifft(x: &[Complex64]) -> Result<ComplexSequence> {
    check_power_of_two(x.len(), "ifft")?;
    let scale = 1.0 / x.len() as f64;
    let mut out = transform(x, true);
    out.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

/// Circular convolution `c_m = sum_n y_n z_{(m - n) mod L}` via FFT.
pub fn circular_convolve(y: &[Complex64], z: &[Complex64]) -> Result<ComplexSequence> {
    if y.len() != z.len() {
        return Err(Error::Length(format!(
            "convolution operands differ in length: {} vs {}",
            y.len(),
            z.len()
        )));
    }
    let fy = fft(y)?;
    let fz = fft(z)?;
    let product: ComplexSequence = fy.iter().zip(&fz).map(|(a, b)| a * b).collect();
    ifft(&product)
}

/// The chirp `exp(+pi i k^2 alpha)` extended to the `2L`-periodic sequence
/// used by the convolution: index `n` holds `k = n` for `n < L` and
/// `k = 2L - n` for `L <= n < 2L`.
pub fn padded_chirp(len: usize, alpha: f64) -> ComplexSequence {
    let half_alpha = 0.5 * alpha;
    let padded = 2 * len;
    (0..padded)
        .map(|n| {
            let k = if n < len { n } else { padded - n } as u64;
            cis_turns(turns(k * k, half_alpha), 1.0)
        })
        .collect()
}

/// Fractional DFT `S_m = sum_{n<L} x_n exp(-2 pi i m n alpha)` for `m < L`,
/// in `O(L log L)`. `L` must be a power of two (and at least 2).
pub fn frac_dft(x: &[Complex64], alpha: f64) -> Result<ComplexSequence> {
    let len = x.len();
    if !len.is_multiple_of(2) {
        return Err(Error::Length(format!(
            "fractional DFT needs an even length, got {len}"
        )));
    }
    check_power_of_two(len, "fractional DFT")?;
    let half_alpha = 0.5 * alpha;
    let chirp_down: ComplexSequence = (0..len as u64)
        .map(|n| cis_turns(turns(n * n, half_alpha), -1.0))
        .collect();

    let mut y = vec![Complex64::new(0.0, 0.0); 2 * len];
    for ((slot, xn), c) in y.iter_mut().zip(x).zip(&chirp_down) {
        *slot = xn * c;
    }
    let z = padded_chirp(len, alpha);
    let conv = circular_convolve(&y, &z)?;
    Ok(conv[..len]
        .iter()
        .zip(&chirp_down)
        .map(|(v, c)| v * c)
        .collect())
}

/// Direct `O(L^2)` evaluation of the fractional DFT; the oracle for [`frac_dft`].
pub fn naive_frac_dft(x: &[Complex64], alpha: f64) -> ComplexSequence {
    naive_frac_dft_with(x, alpha, Execution::default())
}

/// [`naive_frac_dft`] with an explicit execution policy. Each output is a
/// sequential sum, so the result does not depend on the policy.
pub fn naive_frac_dft_with(x: &[Complex64], alpha: f64, exec: Execution) -> ComplexSequence {
    let len = x.len();
    // n = block * a + b; exp(-2 pi i m n alpha) = outer[a] * inner[b]
    let block = ((len as f64).sqrt().ceil() as usize).max(1);
    map_indexed(len, exec, |m| {
        let m = m as u64;
        let inner: Vec<Complex64> = (0..block as u64)
            .map(|b| cis_turns(turns(m * b, alpha), -1.0))
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for (a, chunk) in x.chunks(block).enumerate() {
            let partial: Complex64 = chunk.iter().zip(&inner).map(|(v, w)| v * w).sum();
            let outer = cis_turns(turns(m * (block * a) as u64, alpha), -1.0);
            total += outer * partial;
        }
        total
    })
}
