//! Acceptance suite. Runs every criterion in sequence (timings must not
//! compete with other tests), prints one PASS/FAIL line each and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eulerfft_core::fft::naive_frac_dft;
use eulerfft_core::kernel::min_n_constraint;
use eulerfft_core::{
    bessel_k0, choose_n, compute_spectrum, direct_spectrum, erfc, evaluate_plan, forced_plan,
    frac_dft, make_plan, reconstruct_g2, AnalyticityProfile, Builtin, Execution, FrequencyWindow,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ERFC_TABLE: &str = include_str!("data/erfc.csv");
const K0_TABLE: &str = include_str!("data/k0.csv");

/// The three bands and two accuracies, in the order (A)(a), (A)(b), (B)(a), ...
fn configurations() -> Vec<FrequencyWindow> {
    let bands = [(2.0, 10.0), (1.0, 10.0), (1.25, 15.0)];
    let mut out = Vec::new();
    for (lo, hi) in bands {
        for eps in [1e-3, 1e-6] {
            out.push(FrequencyWindow::new(lo, hi, eps).unwrap());
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within_time(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn truncation_choices(builtin: Builtin, expected: [usize; 6], limit_s: f64) -> Outcome {
    let start = Instant::now();
    let profile = builtin.profile();
    let got: Vec<usize> = configurations()
        .iter()
        .map(|w| choose_n(w, &profile).unwrap_or(0))
        .collect();
    let elapsed = start.elapsed();
    outcome(
        got == expected && within_time(elapsed, limit_s),
        format!("got {got:?}, expected {expected:?}, {elapsed:.2?}"),
    )
}

fn guarantee_soundness() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for builtin in [Builtin::F1, Builtin::F2] {
        let problem = builtin.problem();
        for window in configurations() {
            let grid = compute_spectrum(&problem, &window).unwrap();
            let summary = grid.error_summary().unwrap();
            worst_ratio = worst_ratio.max(summary.max_abs_err / window.epsilon);
            if summary.max_abs_err > window.epsilon {
                failures.push(format!(
                    "{} [{}, {}] eps={} N={}: {:e} at omega={}",
                    builtin,
                    window.omega_lower,
                    window.omega_upper,
                    window.epsilon,
                    grid.plan.truncation,
                    summary.max_abs_err,
                    summary.worst_omega
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && within_time(elapsed, 30.0),
        format!(
            "12 runs, worst max_err/eps = {worst_ratio:.3e}, {elapsed:.2?}{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; violations: {}", failures.join("; "))
            }
        ),
    )
}

fn cdf_reconstruction() -> Outcome {
    let start = Instant::now();
    let window = FrequencyWindow::new(2.0, 10.0, 1e-3).unwrap();
    let grid = reconstruct_g2(&window).unwrap();
    let summary = grid.error_summary().unwrap();
    let elapsed = start.elapsed();
    outcome(
        grid.plan.truncation == 1023 && summary.max_abs_err <= 1e-3 && within_time(elapsed, 5.0),
        format!(
            "N={}, max err {:e}, {elapsed:.2?}",
            grid.plan.truncation, summary.max_abs_err
        ),
    )
}

fn max_relative(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let diff = a
        .iter()
        .zip(b)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);
    diff / scale
}

fn frac_fft_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f4ac);
    let mut worst: f64 = 0.0;
    for len in [8usize, 64, 512, 4096, 8192] {
        for _ in 0..20 {
            let x: Vec<Complex64> = (0..len)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let alpha = rng.gen_range(-1.0..1.0);
            let fast = frac_dft(&x, alpha).unwrap();
            let slow = naive_frac_dft(&x, alpha);
            worst = worst.max(max_relative(&fast, &slow));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && within_time(elapsed, 60.0),
        format!("worst relative deviation {worst:.3e}, {elapsed:.2?}"),
    )
}

fn pipeline_equivalence() -> Outcome {
    let start = Instant::now();
    let window = FrequencyWindow::new(2.0, 10.0, 1e-3).unwrap();
    let mut worst: f64 = 0.0;
    for builtin in [Builtin::F1, Builtin::F2] {
        let problem = builtin.problem();
        for n in [511, 2047] {
            let plan = make_plan(&window, &problem.profile, n).unwrap();
            let fast = evaluate_plan(&problem, &plan, &window, Execution::default()).unwrap();
            let slow = direct_spectrum(&problem, &plan, &window).unwrap();
            worst = worst.max(max_relative(&fast.values, &slow.values));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && within_time(elapsed, 60.0),
        format!("worst relative deviation {worst:.3e}, {elapsed:.2?}"),
    )
}

const SCALING_SIZES: [usize; 5] = [511, 1023, 2047, 4095, 8191];

/// Median seconds per spectrum evaluation for each size. Each sample times a
/// batch long enough to rise above timer and scheduler noise.
fn spectrum_timings(repeats: usize) -> Vec<f64> {
    let problem = Builtin::F1.problem();
    let window = FrequencyWindow::new(2.0, 10.0, 1e-3).unwrap();
    let run = |n: usize| {
        let plan = make_plan(&window, &problem.profile, n).unwrap();
        evaluate_plan(&problem, &plan, &window, Execution::default()).unwrap()
    };
    // calibrate the batch size at the smallest N for roughly 40 ms per batch
    run(SCALING_SIZES[0]);
    let probe = Instant::now();
    run(SCALING_SIZES[0]);
    let base = probe.elapsed().as_secs_f64().max(1e-6);
    let base_batch = ((0.04 / base).ceil() as usize).max(1);

    SCALING_SIZES
        .iter()
        .map(|&n| {
            let batch = (base_batch * SCALING_SIZES[0] / n).max(1);
            run(n);
            let mut samples: Vec<f64> = (0..repeats)
                .map(|_| {
                    let t = Instant::now();
                    for _ in 0..batch {
                        std::hint::black_box(run(n));
                    }
                    t.elapsed().as_secs_f64() / batch as f64
                })
                .collect();
            samples.sort_by(f64::total_cmp);
            samples[repeats / 2]
        })
        .collect()
}

fn scaling_trend(timings: &[f64]) -> Outcome {
    let ratios: Vec<f64> = timings.windows(2).map(|w| w[1] / w[0]).collect();
    let adjacent_ok = ratios.iter().all(|&r| r > 1.3 && r < 3.5);
    let overall = timings[timings.len() - 1] / timings[0];
    outcome(
        adjacent_ok && overall < 12.0,
        format!(
            "adjacent ratios {:?}, time(8191)/time(511) = {overall:.2}",
            ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
        ),
    )
}

fn ulps_apart(a: f64, b: f64) -> f64 {
    (a - b).abs() / (f64::EPSILON * a.abs().max(b.abs()))
}

fn plan_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11_c0de);
    let mut worst_pq: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut nyquist_failures = 0;
    let mut constrained = 0;
    for _ in 0..200 {
        let slope = rng.gen_range(0.05..0.999);
        let profile =
            AnalyticityProfile::new(slope, rng.gen_range(0.05..3.0), rng.gen_range(0.5..500.0))
                .unwrap();
        let omega_upper = rng.gen_range(1.0..50.0);
        let ratio = rng.gen_range(0.01..1.0) * slope.min(0.5);
        let window = FrequencyWindow::new(ratio * omega_upper, omega_upper, 1e-6).unwrap();
        let n = if rng.gen_bool(0.5) {
            (1usize << rng.gen_range(1..=16)) - 1
        } else {
            rng.gen_range(1..100_000)
        };
        let plan = forced_plan(&window, &profile, n).unwrap();
        let (p, q) = (plan.weight.p, plan.weight.q);
        worst_pq = worst_pq.max(ulps_apart(p * q, n as f64 * plan.h / 2.0));
        worst_ratio = worst_ratio.max(ulps_apart(q / p, window.omega_lower / 2.0));
        if n as f64 >= min_n_constraint(&window, &profile) {
            constrained += 1;
            if omega_upper > PI / plan.h {
                nyquist_failures += 1;
            }
        }
    }
    outcome(
        worst_pq <= 4.0 && worst_ratio <= 4.0 && nyquist_failures == 0,
        format!(
            "worst pq ulps {worst_pq:.1}, worst q/p ulps {worst_ratio:.1}, \
             omega_u > pi/h in {nyquist_failures} of {constrained} constrained plans"
        ),
    )
}

fn table(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .skip(1)
        .map(|line| {
            let (x, v) = line.split_once(',').unwrap();
            (x.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

fn special_function_accuracy() -> Outcome {
    let erfc_worst = table(ERFC_TABLE)
        .into_iter()
        .map(|(x, want)| (erfc(x) - want).abs())
        .fold(0.0, f64::max);
    let k0_worst = table(K0_TABLE)
        .into_iter()
        .map(|(x, want)| ((bessel_k0(x).unwrap() - want) / want).abs())
        .fold(0.0, f64::max);
    outcome(
        erfc_worst <= 1e-13 && k0_worst <= 1e-12,
        format!("erfc worst abs err {erfc_worst:.2e}, K0 worst rel err {k0_worst:.2e}"),
    )
}

fn absolute_ceilings(timings: &[f64]) -> Outcome {
    let monotone = timings.windows(2).all(|w| w[1] >= w[0]);
    let largest = timings[timings.len() - 1];
    outcome(
        monotone && largest < 5.0,
        format!(
            "wall-clock values are hardware-bound; asserted only N=8191 in {:.1} ms < 5 s and \
             monotone timings",
            largest * 1e3
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (
            1,
            "f1 truncation choices",
            truncation_choices(Builtin::F1, [511, 1023, 2047, 4095, 2047, 4095], 1.0),
        ),
        (
            2,
            "f2 truncation choices",
            truncation_choices(Builtin::F2, [511, 2047, 2047, 8191, 2047, 4095], 1.0),
        ),
        (3, "error guarantee on 12 runs", guarantee_soundness()),
        (4, "Gamma(2,1) CDF reconstruction", cdf_reconstruction()),
        (5, "fractional FFT vs direct sum", frac_fft_equivalence()),
        (6, "spectrum vs direct double sum", pipeline_equivalence()),
    ];
    let timings = spectrum_timings(9);
    results.push((7, "O(N log N) scaling", scaling_trend(&timings)));
    results.push((8, "plan identities", plan_identities()));
    results.push((9, "special functions", special_function_accuracy()));
    results.push((10, "absolute timing ceilings", absolute_ceilings(&timings)));

    let mut failed = 0;
    for (id, name, result) in &results {
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} [{tag}] {name}: {}", result.detail);
        failed += usize::from(!result.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
