//! Largest singular value of a section by power iteration on `A^H A`.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hardy::SectionOperator;

pub const MAX_ITERATIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// Last iterate; a lower bound for the largest singular value.
    pub value: f64,
    /// Aitken-style estimate of the remaining error.
    pub error_estimate: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration from the normalized all-ones vector, stopped when the
/// extrapolated error falls below `tol` relative.
pub fn section_norm(a: &SectionOperator, tol: f64) -> NormEstimate {
    let gram = a.matrix.ad_mul(&a.matrix);
    let n = gram.ncols();
    let mut x = DVector::from_element(n, Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    let mut lambda = 0.0f64;
    let mut prev_delta = f64::NAN;
    for it in 1..=MAX_ITERATIONS {
        let y = &gram * &x;
        // Rayleigh quotient of a unit vector: never above the top eigenvalue
        let next = x.dotc(&y).re;
        let yn = y.norm();
        if yn == 0.0 {
            return NormEstimate { value: 0.0, error_estimate: 0.0, iterations: it, converged: true };
        }
        x = y / Complex64::new(yn, 0.0);
        let delta = next - lambda;
        lambda = next;
        if it >= 3 {
            let q = (delta / prev_delta).abs();
            let err = if q < 1.0 { delta.abs() * q / (1.0 - q) } else { f64::INFINITY };
            // sqrt halves relative errors
            let rel = 0.5 * err / lambda;
            if rel <= tol || delta.abs() <= f64::EPSILON * lambda {
                return NormEstimate {
                    value: lambda.sqrt(),
                    error_estimate: rel * lambda.sqrt(),
                    iterations: it,
                    converged: true,
                };
            }
        }
        prev_delta = delta;
    }
    NormEstimate {
        value: lambda.max(0.0).sqrt(),
        error_estimate: f64::NAN,
        iterations: MAX_ITERATIONS,
        converged: false,
    }
}
