use std::io::Write;

use serde::Serialize;
use tprod_core::analyzer::{analyze, check_admissible, AnalysisConfig, BoundednessReport, NormRow};

use crate::args::{AnalyzeArgs, PairArgs};
use crate::{io_error, parse_pair, sink, write_csv, CliError, CliResult, EXIT_FALSE, EXIT_OK};

/// Version of the report layout below.
pub const REPORT_SCHEMA: &str = "1";

#[derive(Serialize)]
struct Input<'a> {
    u: &'a str,
    v_plus: &'a str,
    v_minus: Option<&'a str>,
}

#[derive(Serialize)]
struct Versions {
    tprod: &'static str,
    report_schema: &'static str,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    input: Input<'a>,
    #[serde(flatten)]
    report: &'a BoundednessReport,
    config: &'a AnalysisConfig,
    versions: Versions,
}

#[derive(Serialize)]
struct NormCsvRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    section_norm: Option<f64>,
    kernel_lower_bound: f64,
    riesz2w_norm: Option<f64>,
    carleson_estimate: Option<f64>,
}

impl From<&NormRow> for NormCsvRow {
    fn from(r: &NormRow) -> Self {
        NormCsvRow {
            n: r.n,
            m: r.m,
            section_norm: r.section_norm,
            kernel_lower_bound: r.kernel_lower_bound,
            riesz2w_norm: r.riesz2w_norm,
            carleson_estimate: r.carleson_estimate,
        }
    }
}

pub fn config_from(a: &AnalyzeArgs) -> CliResult<AnalysisConfig> {
    let mut cfg = AnalysisConfig::default()
        .with_max_degree(a.max_degree)
        .map_err(|e| CliError::config(e.to_string()))?;
    if let Some(r) = &a.radii {
        cfg.sarason_radii = r.clone();
    }
    cfg.validate().map_err(|e| CliError::config(e.to_string()))?;
    Ok(cfg)
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> CliResult<u8> {
    let (u, v) = parse_pair(&a.pair)?;
    let cfg = config_from(a)?;
    let report = analyze(&u, &v, &cfg);
    let file = ReportFile {
        input: Input { u: &a.pair.u, v_plus: &a.pair.v_plus, v_minus: a.pair.v_minus.as_deref() },
        report: &report,
        config: &cfg,
        versions: Versions { tprod: env!("CARGO_PKG_VERSION"), report_schema: REPORT_SCHEMA },
    };
    let mut out = sink(a.report.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &file).map_err(io_error)?;
    writeln!(out).map_err(io_error)?;
    out.flush().map_err(io_error)?;
    if let Some(t) = &a.table {
        let rows: Vec<NormCsvRow> = report.norm_table.iter().map(NormCsvRow::from).collect();
        write_csv(Some(t), &rows)?;
    }
    eprintln!("verdict: {} ({})", kebab(&report.verdict.kind), report.verdict.rationale);
    Ok(EXIT_OK)
}

pub fn cmd_admissible(p: &PairArgs) -> CliResult<u8> {
    let (u, v) = parse_pair(p)?;
    let report = check_admissible(&u, &v).map_err(|e| CliError::parse(e.to_string()))?;
    let mut out = sink(None)?;
    serde_json::to_writer_pretty(&mut out, &report).map_err(io_error)?;
    writeln!(out).map_err(io_error)?;
    Ok(if report.overall { EXIT_OK } else { EXIT_FALSE })
}

pub(crate) fn kebab<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

