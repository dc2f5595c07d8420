//! The `eulerfft` command line: `bound`, `transform`, `validate` and `bench`.

pub mod args;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use eulerfft_core::kernel::min_n_constraint;
use eulerfft_core::pipeline::add_heaviside;
use eulerfft_core::{
    evaluate_plan, forced_plan, plan, Builtin, Execution, FormulaPlan, FourierProblem,
    FrequencyWindow, SpectrumGrid,
};

pub use args::{Command, Format, Function, RunConfig};
use output::{number, write_csv, write_json, write_metadata, Metadata};

/// Failure classes with stable exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("guarantee violated: {0}")]
    Violation(String),
    #[error(transparent)]
    Plan(#[from] eulerfft_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Plan(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn io_error(path: Option<&Path>) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()),
        source,
    }
}

/// Runs a parsed command, printing errors to stderr.
pub fn run(config: &RunConfig) -> ExitCode {
    let stdout = io::stdout();
    let result = match config.command {
        Command::Bound => cmd_bound(config, &mut stdout.lock()),
        Command::Transform => cmd_transform(config, &mut stdout.lock()),
        Command::Validate => cmd_validate(config, &mut stdout.lock()),
        Command::Bench => cmd_bench(config, &mut stdout.lock()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("eulerfft: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn problem_for(function: Function) -> FourierProblem {
    match function {
        Function::F1 => Builtin::F1.problem(),
        Function::F2 => Builtin::F2.problem(),
        Function::F2Tilde | Function::G2 => Builtin::F2Tilde.problem(),
    }
}

struct Prepared {
    problem: FourierProblem,
    window: FrequencyWindow,
    plan: FormulaPlan,
}

fn prepare(config: &RunConfig) -> Result<Prepared, CliError> {
    let problem = problem_for(config.function);
    let window = FrequencyWindow::new(config.omega_d, config.omega_u, config.epsilon)?;
    let plan = match config.force_n {
        Some(n) => {
            let forced = forced_plan(&window, &problem.profile, n)?;
            if !forced.certified {
                eprintln!(
                    "warning: N = {n} is not a certified choice for this window; \
                     the accuracy guarantee is void"
                );
            }
            forced
        }
        None => plan(&window, &problem.profile)?,
    };
    Ok(Prepared {
        problem,
        window,
        plan,
    })
}

fn evaluate(config: &RunConfig, prepared: &Prepared) -> Result<SpectrumGrid, CliError> {
    let grid = evaluate_plan(
        &prepared.problem,
        &prepared.plan,
        &prepared.window,
        Execution::default(),
    )?;
    Ok(match config.function {
        Function::G2 => add_heaviside(grid),
        _ => grid,
    })
}

/// Writes to the `--output` file, or to `stdout` when none is given.
fn with_destination(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_error(Some(p)))?;
            let mut writer = BufWriter::new(file);
            body(&mut writer)
                .and_then(|()| writer.flush())
                .map_err(io_error(Some(p)))
        }
        None => body(stdout).map_err(io_error(None)),
    }
}

pub fn cmd_bound(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let prepared = prepare(config)?;
    let mut metadata = Metadata::new(config.function.name(), &prepared.window, &prepared.plan);
    metadata.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let lower = min_n_constraint(&prepared.window, &prepared.problem.profile);
    with_destination(config.output.as_deref(), out, |w| match config.format {
        Format::Json => write_metadata(w, &metadata),
        Format::Csv => {
            writeln!(w, "function: {}", metadata.function)?;
            writeln!(
                w,
                "band: {} <= |omega| <= {}, epsilon = {}",
                number(metadata.omega_d),
                number(metadata.omega_u),
                number(metadata.epsilon)
            )?;
            writeln!(w, "N: {}", metadata.n)?;
            for (key, value) in [
                ("h", metadata.h),
                ("p", metadata.p),
                ("q", metadata.q),
                ("h_tilde", metadata.h_tilde),
                ("alpha_frac", metadata.alpha_frac),
                ("N lower bound", lower),
                ("predicted_bound", metadata.predicted_bound),
            ] {
                writeln!(w, "{key}: {}", number(value))?;
            }
            writeln!(w, "certified: {}", prepared.plan.certified)
        }
    })
}

fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("json")
}

/// Error summary for validation; fails if no guaranteed point has a reference.
fn summarize(grid: &SpectrumGrid) -> Result<eulerfft_core::ErrorSummary, CliError> {
    grid.error_summary()
        .ok_or_else(|| CliError::Usage("no guaranteed grid point has an analytic reference".into()))
}

pub fn cmd_transform(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let prepared = prepare(config)?;
    let grid = evaluate(config, &prepared)?;
    let mut metadata = Metadata::new(config.function.name(), &prepared.window, &prepared.plan);
    let summary = if config.validate {
        let summary = summarize(&grid)?;
        metadata.max_abs_err = Some(summary.max_abs_err);
        Some(summary)
    } else {
        None
    };
    metadata.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let output = config.output.as_deref();
    match config.format {
        Format::Json => with_destination(output, out, |w| {
            write_json(w, &metadata, &grid, config.validate)
        })?,
        Format::Csv => {
            with_destination(output, out, |w| write_csv(w, &grid, config.validate))?;
            match output {
                Some(path) => {
                    let sidecar = sidecar_path(path);
                    if sidecar == path {
                        return Err(CliError::Usage(format!(
                            "output {} would be overwritten by its metadata sidecar",
                            path.display()
                        )));
                    }
                    with_destination(Some(&sidecar), out, |w| write_metadata(w, &metadata))?;
                }
                None => {
                    let mut err = io::stderr().lock();
                    write_metadata(&mut err, &metadata).map_err(io_error(None))?;
                }
            }
        }
    }

    match summary {
        Some(s) if s.max_abs_err > prepared.window.epsilon => Err(CliError::Violation(format!(
            "max abs error {} at omega = {} exceeds epsilon = {}",
            number(s.max_abs_err),
            number(s.worst_omega),
            number(prepared.window.epsilon)
        ))),
        _ => Ok(()),
    }
}

pub fn cmd_validate(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let prepared = prepare(config)?;
    let grid = evaluate(config, &prepared)?;
    let summary = summarize(&grid)?;
    let eps = prepared.window.epsilon;
    let passed = summary.max_abs_err <= eps;
    with_destination(config.output.as_deref(), out, |w| {
        writeln!(
            w,
            "{} N = {} on {} <= |omega| <= {}: {} guaranteed points",
            config.function.name(),
            prepared.plan.truncation,
            number(prepared.window.omega_lower),
            number(prepared.window.omega_upper),
            summary.points
        )?;
        writeln!(
            w,
            "max abs error: {} at omega = {}",
            number(summary.max_abs_err),
            number(summary.worst_omega)
        )?;
        writeln!(w, "mean abs error: {}", number(summary.mean_abs_err))?;
        writeln!(
            w,
            "predicted bound: {}",
            number(prepared.plan.predicted_bound)
        )?;
        writeln!(
            w,
            "epsilon: {} -> {}",
            number(eps),
            if passed { "PASS" } else { "FAIL" }
        )
    })?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Violation(format!(
            "max abs error {} at omega = {} exceeds epsilon = {}",
            number(summary.max_abs_err),
            number(summary.worst_omega),
            number(eps)
        )))
    }
}

pub const BENCH_SIZES: [usize; 5] = [511, 1023, 2047, 4095, 8191];

#[derive(Debug, Clone, serde::Serialize)]
pub struct BenchRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub median_ms: f64,
    /// Median time relative to the previous N.
    pub ratio: Option<f64>,
}

pub fn cmd_bench(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if config.repeats < 3 {
        return Err(CliError::Usage(format!(
            "--repeats must be at least 3, got {}",
            config.repeats
        )));
    }
    let problem = problem_for(config.function);
    let window = FrequencyWindow::new(config.omega_d, config.omega_u, config.epsilon)?;
    let mut rows: Vec<BenchRow> = Vec::new();
    for n in BENCH_SIZES {
        let plan = forced_plan(&window, &problem.profile, n)?;
        let mut samples = Vec::with_capacity(config.repeats);
        for _ in 0..config.repeats {
            let start = Instant::now();
            let grid = evaluate_plan(&problem, &plan, &window, Execution::default())?;
            samples.push(start.elapsed().as_secs_f64() * 1e3);
            drop(grid);
        }
        samples.sort_by(f64::total_cmp);
        let median_ms = samples[samples.len() / 2];
        let ratio = rows.last().map(|prev| median_ms / prev.median_ms);
        rows.push(BenchRow {
            n,
            median_ms,
            ratio,
        });
    }
    with_destination(config.output.as_deref(), out, |w| match config.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &rows)?;
            writeln!(w)
        }
        Format::Csv => {
            writeln!(w, "N,median_ms,ratio")?;
            for row in &rows {
                writeln!(
                    w,
                    "{},{},{}",
                    row.n,
                    number(row.median_ms),
                    row.ratio.map(number).unwrap_or_default()
                )?;
            }
            Ok(())
        }
    })
}
