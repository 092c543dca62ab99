//! Poisson extension of nonnegative boundary functions.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::symbol::unit_root;

const START_GRID: usize = 8192;
const MAX_GRID: usize = 1 << 20;
const STEP_TOL: f64 = 1e-8;

/// `(1 - |w|^2) / |zeta - w|^2`.
pub fn poisson_kernel(w: Complex64, zeta: Complex64) -> f64 {
    (1.0 - w.norm_sqr()) / (zeta - w).norm_sqr()
}

/// Quadrature of the Poisson kernel against samples at the roots of unity.
/// Non-finite samples are skipped.
pub fn poisson_extension(h: &[f64], w: Complex64) -> Result<f64> {
    if w.norm() >= 1.0 {
        return Err(Error::OutsideDisk { point: w });
    }
    let g = h.len();
    // collected first so the summation order does not depend on scheduling
    let terms: Vec<f64> = h
        .par_iter()
        .enumerate()
        .map(|(j, &v)| if v.is_finite() { v * poisson_kernel(w, unit_root(j, g)) } else { 0.0 })
        .collect();
    let sum: f64 = terms.iter().sum();
    Ok(sum / g as f64)
}

/// Poisson extension of a boundary function, doubling the grid from 8192
/// points until the estimate moves by less than `1e-8` relative, up to 2^20.
pub fn poisson_extension_fn<F>(h: F, w: Complex64) -> Result<PoissonEstimate>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    if w.norm() >= 1.0 {
        return Err(Error::OutsideDisk { point: w });
    }
    let mut g = START_GRID;
    let mut prev = extend_on_grid(&h, w, g);
    while g < MAX_GRID {
        g *= 2;
        let next = extend_on_grid(&h, w, g);
        if (next - prev).abs() <= STEP_TOL * next.abs().max(1.0) {
            return Ok(PoissonEstimate { value: next, grid: g, converged: true });
        }
        prev = next;
    }
    Ok(PoissonEstimate { value: prev, grid: g, converged: false })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonEstimate {
    pub value: f64,
    pub grid: usize,
    pub converged: bool,
}

fn extend_on_grid<F>(h: &F, w: Complex64, g: usize) -> f64
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let terms: Vec<f64> = (0..g)
        .into_par_iter()
        .map(|j| {
            let z = unit_root(j, g);
            let v = h(z);
            if v.is_finite() {
                v * poisson_kernel(w, z)
            } else {
                0.0
            }
        })
        .collect();
    terms.iter().sum::<f64>() / g as f64
}

/// Poisson extension at `r * zeta_j` for every grid point, by damping the
/// Fourier coefficients with `r^|n|`.
pub fn poisson_on_circle(h: &[f64], r: f64) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::OutsideDisk { point: Complex64::new(r, 0.0) });
    }
    let g = h.len();
    let mut buf: Vec<Complex64> = h
        .iter()
        .map(|&v| Complex64::new(if v.is_finite() { v } else { 0.0 }, 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(g).process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        let n = if k <= g / 2 { k } else { g - k };
        *c *= r.powi(n as i32) / g as f64;
    }
    planner.plan_fft_inverse(g).process(&mut buf);
    Ok(buf.iter().map(|c| c.re).collect())
}
