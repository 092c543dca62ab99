//! Outer functions with prescribed boundary modulus.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;

/// Taylor coefficients of the outer function `G` with `|G| = phi` on the
/// circle, from samples of `phi` at the roots of unity.
///
/// Isolated non-positive samples (zeros of `phi`) are replaced by the mean
/// of their neighbours' logarithms; more than one in 256 is rejected.
pub fn outer_from_modulus(phi: &[f64], degree: usize) -> Result<FourierSeries> {
    let g = phi.len();
    if g < 2 * degree + 2 {
        return Err(Error::InvalidArgument(format!(
            "{g} samples cannot resolve degree {degree}"
        )));
    }
    let logs = log_samples(phi)?;
    let l = log_coefficients(&logs, degree, 0.0);
    Ok(FourierSeries::analytic(exp_series(&analytic_completion(&l))))
}

/// As [`outer_from_modulus`] for a modulus given as a function of the angle.
///
/// The log coefficients are taken on two half-offset grids `16 * degree` and
/// twice that and combined by one Richardson step, which removes the leading
/// aliasing error from logarithmic zeros of `phi`.
pub fn outer_from_modulus_fn<F>(phi: F, degree: usize) -> Result<FourierSeries>
where
    F: Fn(f64) -> f64 + Sync,
{
    let g1 = (16 * degree.max(1)).next_power_of_two();
    let coarse = offset_log_coefficients(&phi, g1, degree)?;
    let fine = offset_log_coefficients(&phi, 2 * g1, degree)?;
    let l: Vec<Complex64> = coarse.iter().zip(&fine).map(|(a, b)| 2.0 * b - a).collect();
    Ok(FourierSeries::analytic(exp_series(&analytic_completion(&l))))
}

fn offset_log_coefficients<F>(phi: &F, g: usize, degree: usize) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> f64 + Sync,
{
    let h = std::f64::consts::TAU / g as f64;
    let samples: Vec<f64> = (0..g).into_par_iter().map(|j| phi((j as f64 + 0.5) * h)).collect();
    let logs = log_samples(&samples)?;
    Ok(log_coefficients(&logs, degree, 0.5))
}

fn log_samples(phi: &[f64]) -> Result<Vec<f64>> {
    let g = phi.len();
    let bad: Vec<usize> = (0..g).filter(|&j| !(phi[j] > 0.0 && phi[j].is_finite())).collect();
    if bad.len() * 256 > g {
        return Err(Error::NonPositiveModulus { bad: bad.len(), total: g });
    }
    let mut logs: Vec<f64> = phi.iter().map(|p| p.ln()).collect();
    for &j in &bad {
        let neighbours: Vec<f64> = [(j + g - 1) % g, (j + 1) % g]
            .iter()
            .map(|&k| logs[k])
            .filter(|v| v.is_finite())
            .collect();
        logs[j] = if neighbours.is_empty() {
            0.0
        } else {
            neighbours.iter().sum::<f64>() / neighbours.len() as f64
        };
    }
    Ok(logs)
}

/// `L_n`, `n = 0..=degree`, for samples at angles `2 pi (j + shift) / g`.
fn log_coefficients(logs: &[f64], degree: usize, shift: f64) -> Vec<Complex64> {
    let g = logs.len();
    let mut buf: Vec<Complex64> = logs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(g).process(&mut buf);
    (0..=degree)
        .map(|n| {
            let phase = Complex64::from_polar(1.0, -std::f64::consts::TAU * n as f64 * shift / g as f64);
            buf[n] * phase / g as f64
        })
        .collect()
}

/// `L_0 + 2 sum L_n z^n`; for real `log phi` this is the analytic function
/// whose real part on the circle is `log phi`.
fn analytic_completion(l: &[Complex64]) -> Vec<Complex64> {
    l.iter()
        .enumerate()
        .map(|(n, &c)| if n == 0 { Complex64::new(c.re, 0.0) } else { 2.0 * c })
        .collect()
}

/// Coefficients of `exp(a(z))` by `n g_n = sum_{k=1}^n k a_k g_{n-k}`.
pub(crate) fn exp_series(a: &[Complex64]) -> Vec<Complex64> {
    let mut g = Vec::with_capacity(a.len());
    g.push(a[0].exp());
    for n in 1..a.len() {
        let s: Complex64 = (1..=n).map(|k| a[k] * k as f64 * g[n - k]).sum();
        g.push(s / n as f64);
    }
    g
}
