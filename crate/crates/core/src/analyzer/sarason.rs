//! Products of Poisson extensions `P_w(|u|^2) P_w(|v|^2)` along radii.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trend::{Thresholds, Trend};
use crate::error::{Error, Result};
use crate::hardy::poisson::poisson_kernel;
use crate::quadrature::CircleRule;
use crate::symbol::SymbolExpr;

const OFFSETS: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SarasonRow {
    pub r: f64,
    pub max: f64,
    pub arg_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SarasonTable {
    pub rows: Vec<SarasonRow>,
    /// Least-squares slope of `log max` against `log 1/(1-r)` over the
    /// second half of the radii.
    pub slope: f64,
    pub trend: Trend,
}

/// `r_j = 1 - 2^-j` for `j = 1..=levels`.
pub fn default_radii(levels: u32) -> Vec<f64> {
    (1..=levels).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect()
}

/// Poisson extension of `h` at `w`, with the quadrature split at the
/// boundary roots and refined geometrically around `w/|w|`.
pub fn poisson_of<F>(h: &F, roots: &[Complex64], w: Complex64) -> Result<f64>
where
    F: Fn(Complex64) -> f64,
{
    let r = w.norm();
    if r >= 1.0 {
        return Err(Error::OutsideDisk { point: w });
    }
    let mut breaks = roots.to_vec();
    if r > 0.0 {
        let dir = w / r;
        breaks.push(dir);
        let mut s = 1.0 - r;
        while s < std::f64::consts::PI {
            breaks.push(dir * Complex64::from_polar(1.0, s));
            breaks.push(dir * Complex64::from_polar(1.0, -s));
            s *= 4.0;
        }
    }
    let rule = CircleRule::new(&breaks, 16, 3);
    Ok(rule.integrate(|z| h(z) * poisson_kernel(w, z)))
}

/// Per-radius maxima over a uniform angle grid plus points near the
/// boundary roots of `u` and `v` at offsets proportional to `1 - r`.
pub fn sarason_scan(u: &SymbolExpr, v: &SymbolExpr, radii: &[f64], angles: usize, th: &Thresholds) -> Result<SarasonTable> {
    for e in [u, v] {
        e.check_h2_claimed()?;
    }
    let mut roots: Vec<Complex64> = Vec::new();
    for (t, _) in u.boundary_exponents().into_iter().chain(v.boundary_exponents()) {
        if !roots.iter().any(|s| (s - t).norm() < 1e-12) {
            roots.push(t);
        }
    }
    let hu = |z: Complex64| u.eval_finite(z).map_or(f64::NAN, |x| x.norm_sqr());
    let hv = |z: Complex64| v.eval_finite(z).map_or(f64::NAN, |x| x.norm_sqr());
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::OutsideDisk { point: Complex64::new(r, 0.0) });
        }
        let mut dirs: Vec<Complex64> = (0..angles.max(1))
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / angles.max(1) as f64))
            .collect();
        for &t in &roots {
            dirs.push(t);
            for s in OFFSETS {
                dirs.push(t * Complex64::from_polar(1.0, s * (1.0 - r)));
                dirs.push(t * Complex64::from_polar(1.0, -s * (1.0 - r)));
            }
        }
        let vals: Vec<Result<(f64, f64)>> = dirs
            .par_iter()
            .map(|&d| {
                let w = d * r;
                Ok((poisson_of(&hu, &roots, w)? * poisson_of(&hv, &roots, w)?, d.arg()))
            })
            .collect();
        let mut best = SarasonRow { r, max: f64::NEG_INFINITY, arg_max: 0.0 };
        for v in vals {
            let (m, a) = v?;
            if m > best.max {
                best.max = m;
                best.arg_max = a;
            }
        }
        rows.push(best);
    }
    let slope = tail_slope(&rows);
    let values: Vec<f64> = rows.iter().map(|r| r.max).collect();
    Ok(SarasonTable { rows, slope, trend: th.classify(&values) })
}

fn tail_slope(rows: &[SarasonRow]) -> f64 {
    let tail = &rows[rows.len() / 2..];
    if tail.len() < 2 {
        return f64::NAN;
    }
    let pts: Vec<(f64, f64)> = tail.iter().map(|r| ((1.0 / (1.0 - r.r)).ln(), r.max.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
