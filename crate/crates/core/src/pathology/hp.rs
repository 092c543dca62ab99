use serde::{Deserialize, Serialize};

use crate::analyzer::{Thresholds, Trend};
use crate::error::{Error, Result};
use crate::symbol::{boundary_sample, SymbolExpr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HpRow {
    pub grid: usize,
    /// Grid estimate of `integral |f|^p dm`.
    pub integral: f64,
    /// `integral^(1/p)`.
    pub norm: f64,
    /// Grid points dropped because `f` has a pole there.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HpTable {
    pub p: f64,
    pub rows: Vec<HpRow>,
    /// `FiniteTrend` reads as convergent, `Growth` as divergent.
    pub trend: Trend,
}

impl HpTable {
    pub fn last_norm(&self) -> Option<f64> {
        self.rows.last().map(|r| r.norm)
    }
}

/// Boundary `L^p` norm of `f` on each grid of the schedule.
pub fn hp_norm_estimate(f: &SymbolExpr, p: f64, grids: &[usize], th: &Thresholds) -> Result<HpTable> {
    if !(p > 0.0) {
        return Err(Error::InvalidArgument(format!("p must be positive, got {p}")));
    }
    let mut rows = Vec::with_capacity(grids.len());
    for &g in grids {
        let samples = boundary_sample(f, g)?;
        let excluded = samples.iter().filter(|s| s.is_none()).count();
        let sum: f64 = samples.iter().flatten().map(|v| v.norm().powf(p)).sum();
        let integral = sum / g as f64;
        rows.push(HpRow { grid: g, integral, norm: integral.powf(1.0 / p), excluded });
    }
    let integrals: Vec<f64> = rows.iter().map(|r| r.integral).collect();
    Ok(HpTable { p, rows, trend: th.classify(&integrals) })
}
