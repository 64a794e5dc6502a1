//! Report files: flat comparison rows as CSV or JSON.

use std::io::{self, Write};

use serde::Serialize;
use zeta_ladder::experiments::Report;

pub const CSV_HEADER: &str = "experiment,label,lhs,rhs,error_scale,ratio,gate,pass";

/// One flat report row; field names are part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatRow<'a> {
    pub experiment: &'a str,
    pub label: &'a str,
    pub lhs: f64,
    pub rhs: f64,
    pub error_scale: f64,
    pub ratio: Option<f64>,
    pub gate: &'static str,
    pub pass: bool,
}

pub fn flatten(report: &Report) -> Vec<FlatRow<'_>> {
    report
        .rows
        .iter()
        .map(|r| FlatRow {
            experiment: &report.experiment_id,
            label: &r.label,
            lhs: r.lhs,
            rhs: r.rhs,
            error_scale: r.error_scale,
            ratio: r.ratio,
            gate: r.gate.name(),
            pass: r.pass,
        })
        .collect()
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(report: &Report, mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in flatten(report) {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.experiment,
            r.label,
            num(r.lhs),
            num(r.rhs),
            num(r.error_scale),
            r.ratio.map(num).unwrap_or_default(),
            r.gate,
            r.pass
        )?;
    }
    w.flush()
}

pub fn write_json<W: Write>(report: &Report, mut w: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, &flatten(report))?;
    writeln!(w)?;
    w.flush()
}
