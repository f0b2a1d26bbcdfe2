//! CSV and JSON writers.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use krylov_sublab::gmres::ConvergenceReport;
use krylov_sublab::mtx::format_sci;
use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CSV_HEADER: &str = "cycle,residual_norm,ratio";

/// `cycle,residual_norm,ratio`; the ratio cell of cycle 0 is empty.
pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let norms = report.norms();
    for (k, norm) in norms.iter().enumerate() {
        let ratio = if k == 0 {
            String::new()
        } else {
            format_sci(report.ratios[k - 1])
        };
        out.push_str(&format!("{k},{},{ratio}\n", format_sci(*norm)));
    }
    out
}

/// Parses `cycle,residual_norm,ratio` back into norms.
pub fn read_csv_norms(text: &str) -> Result<Vec<f64>> {
    let mut lines = text.lines();
    anyhow::ensure!(
        lines.next() == Some(CSV_HEADER),
        "missing `{CSV_HEADER}` header"
    );
    lines
        .map(|l| {
            let cell = l
                .split(',')
                .nth(1)
                .with_context(|| format!("malformed row `{l}`"))?;
            cell.parse::<f64>()
                .with_context(|| format!("bad norm `{cell}`"))
        })
        .collect()
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}
