use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eulerfft_core::{evaluate_plan, make_plan, Builtin, Execution, FrequencyWindow};

fn spectrum_policies(c: &mut Criterion) {
    let problem = Builtin::F1.problem();
    let window = FrequencyWindow::new(2.0, 10.0, 1e-3).unwrap();
    let mut group = c.benchmark_group("spectrum");
    for n in [511usize, 2047, 8191] {
        let plan = make_plan(&window, &problem.profile, n).unwrap();
        for (label, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(label, n), &plan, |b, plan| {
                b.iter(|| evaluate_plan(&problem, black_box(plan), &window, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn naive_oracle_policies(c: &mut Criterion) {
    let x: Vec<_> = (0..2048)
        .map(|k| num_complex::Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos()))
        .collect();
    let mut group = c.benchmark_group("naive_frac_dft");
    group.sample_size(10);
    for (label, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| eulerfft_core::fft::naive_frac_dft_with(black_box(&x), 0.0123, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum_policies, naive_oracle_policies);
criterion_main!(benches);
