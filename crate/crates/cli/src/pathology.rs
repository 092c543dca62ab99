use num_complex::Complex64;
use serde::Serialize;
use tprod_core::analyzer::Thresholds;
use tprod_core::error::Error;
use tprod_core::pathology::{
    dyadic_zeros, hp_norm_estimate, infinite_pole_step_function, oscillation_scan, pole_order_function,
    ScanTarget,
};

use crate::analyze::kebab;
use crate::args::PathologyCommand;
use crate::{parse_constant, parse_expr, write_csv, CliError, CliResult, EXIT_OK};

#[derive(Serialize)]
struct PoleOrderRow {
    i: u32,
    verdict: String,
    interleaved_pairs: usize,
    max_sup: f64,
    resolution_floor: f64,
}

#[derive(Serialize)]
struct ArcRow {
    k: u32,
    dist_near: f64,
    dist_far: f64,
    sup: f64,
    inf: f64,
    verdict: String,
}

#[derive(Serialize)]
struct StepRow {
    k: usize,
    phi: f64,
    measure: f64,
    value: f64,
    growth: f64,
    norm_sqr: f64,
}

#[derive(Serialize)]
struct HpCsvRow {
    grid: usize,
    integral: f64,
    norm: f64,
    excluded: usize,
    trend: String,
}

fn config_err(e: Error) -> CliError {
    CliError::config(e.to_string())
}

pub fn cmd_pathology(cmd: PathologyCommand) -> CliResult<u8> {
    match cmd {
        PathologyCommand::PoleOrder { zeros, dyadic, n, eps, table } => {
            let zeros: Vec<Complex64> = match (zeros, dyadic) {
                (Some(z), _) => z.iter().map(|s| parse_constant("--zeros", s)).collect::<CliResult<_>>()?,
                (None, Some(k)) => dyadic_zeros(k),
                (None, None) => return Err(CliError::config("give --zeros or --dyadic")),
            };
            let f = pole_order_function(&zeros, n).map_err(config_err)?;
            let one = Complex64::new(1.0, 0.0);
            let mut rows = Vec::new();
            for i in 0..=n {
                let r = oscillation_scan(ScanTarget::Expr(&f), one, i, eps).map_err(config_err)?;
                rows.push(PoleOrderRow {
                    i,
                    verdict: kebab(&r.verdict),
                    interleaved_pairs: r.interleaved_pairs(),
                    max_sup: r.arcs.iter().map(|a| a.sup).fold(0.0, f64::max),
                    resolution_floor: r.resolution_floor,
                });
            }
            write_csv(table.as_deref(), &rows)?;
            eprintln!("f = {f}");
        }
        PathologyCommand::Oscillation { f, zeta, n, eps, table } => {
            let f = parse_expr("--f", &f)?;
            let zeta = parse_constant("--zeta", &zeta)?;
            let r = oscillation_scan(ScanTarget::Expr(&f), zeta, n, eps).map_err(config_err)?;
            let verdict = kebab(&r.verdict);
            let rows: Vec<ArcRow> = r
                .arcs
                .iter()
                .map(|a| ArcRow {
                    k: a.k,
                    dist_near: a.dist_near,
                    dist_far: a.dist_far,
                    sup: a.sup,
                    inf: a.inf,
                    verdict: verdict.clone(),
                })
                .collect();
            write_csv(table.as_deref(), &rows)?;
            eprintln!("verdict: {verdict}, interleaved pairs: {}", r.interleaved_pairs());
        }
        PathologyCommand::StepFunction { k, n, table } => {
            let s = infinite_pole_step_function(k).map_err(config_err)?;
            let norm_sqr = s.norm_sqr();
            let rows: Vec<StepRow> = s
                .arcs
                .iter()
                .zip(s.growth(n))
                .map(|(a, (_, g))| StepRow { k: a.k, phi: a.phi, measure: a.measure, value: a.value, growth: g, norm_sqr })
                .collect();
            write_csv(table.as_deref(), &rows)?;
            eprintln!("norm_sqr: {norm_sqr}, disjoint: {}", s.is_disjoint());
        }
        PathologyCommand::HpNorm { f, p, grids, table } => {
            let f = parse_expr("--f", &f)?;
            let grids = grids.unwrap_or_else(|| (10..=16).map(|k| 1usize << k).collect());
            let t = hp_norm_estimate(&f, p, &grids, &Thresholds::default()).map_err(config_err)?;
            let trend = kebab(&t.trend);
            let rows: Vec<HpCsvRow> = t
                .rows
                .iter()
                .map(|r| HpCsvRow { grid: r.grid, integral: r.integral, norm: r.norm, excluded: r.excluded, trend: trend.clone() })
                .collect();
            write_csv(table.as_deref(), &rows)?;
            eprintln!("trend: {trend}");
        }
    }
    Ok(EXIT_OK)
}
