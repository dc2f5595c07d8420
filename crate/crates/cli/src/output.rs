//! CSV and JSON rendering. Every float goes through [`number`], so the same
//! value prints identically in the bound report, the CSV and the metadata.

use std::io::{self, Write};

use eulerfft_core::{FormulaPlan, FrequencyWindow, SpectrumGrid};
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "omega,re,im,ref_re,ref_im,abs_err,guaranteed";

/// Shortest decimal that parses back to the same `f64`.
pub fn number(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite floats serialize")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub function: String,
    pub omega_d: f64,
    pub omega_u: f64,
    pub epsilon: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: f64,
    pub p: f64,
    pub q: f64,
    pub h_tilde: f64,
    pub alpha_frac: f64,
    pub predicted_bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs_err: Option<f64>,
    pub elapsed_ms: f64,
}

impl Metadata {
    pub fn new(function: &str, window: &FrequencyWindow, plan: &FormulaPlan) -> Self {
        Self {
            function: function.to_string(),
            omega_d: window.omega_lower,
            omega_u: window.omega_upper,
            epsilon: window.epsilon,
            n: plan.truncation,
            h: plan.h,
            p: plan.weight.p,
            q: plan.weight.q,
            h_tilde: plan.h_tilde,
            alpha_frac: plan.alpha_frac(),
            predicted_bound: plan.predicted_bound,
            max_abs_err: None,
            elapsed_ms: 0.0,
        }
    }
}

#[derive(Serialize)]
struct Row {
    omega: f64,
    re: f64,
    im: f64,
    ref_re: Option<f64>,
    ref_im: Option<f64>,
    abs_err: Option<f64>,
    guaranteed: bool,
}

fn rows(grid: &SpectrumGrid, with_reference: bool) -> impl Iterator<Item = Row> + '_ {
    (0..grid.len()).map(move |i| {
        let reference = grid.reference_values[i].filter(|_| with_reference);
        Row {
            omega: grid.frequencies[i],
            re: grid.values[i].re,
            im: grid.values[i].im,
            ref_re: reference.map(|r| r.re),
            ref_im: reference.map(|r| r.im),
            abs_err: reference.map(|r| (grid.values[i] - r).norm()),
            guaranteed: grid.guaranteed[i],
        }
    })
}

fn optional(v: Option<f64>) -> String {
    v.map(number).unwrap_or_default()
}

pub fn write_csv(
    out: &mut (impl Write + ?Sized),
    grid: &SpectrumGrid,
    with_reference: bool,
) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows(grid, with_reference) {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            number(row.omega),
            number(row.re),
            number(row.im),
            optional(row.ref_re),
            optional(row.ref_im),
            optional(row.abs_err),
            u8::from(row.guaranteed)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonDocument<'a, R: Serialize> {
    metadata: &'a Metadata,
    rows: R,
}

/// `{"metadata": {...}, "rows": [...]}`; rows carry `null` for missing references.
pub fn write_json(
    out: &mut (impl Write + ?Sized),
    metadata: &Metadata,
    grid: &SpectrumGrid,
    with_reference: bool,
) -> io::Result<()> {
    let rows: Vec<Row> = rows(grid, with_reference).collect();
    serde_json::to_writer(
        &mut *out,
        &JsonDocument {
            metadata,
            rows: &rows,
        },
    )?;
    writeln!(out)
}

pub fn write_metadata(out: &mut (impl Write + ?Sized), metadata: &Metadata) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, metadata)?;
    writeln!(out)
}
