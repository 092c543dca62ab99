use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbol::{Exponent, SymbolExpr};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `1 - 2^-k` for `k = 1..=count`, accumulating at 1.
pub fn dyadic_zeros(count: usize) -> Vec<Complex64> {
    (1..=count).map(|k| Complex64::new(1.0 - 0.5f64.powi(k as i32), 0.0)).collect()
}

/// The finite Blaschke product over `zeros` at `z`.
pub fn blaschke_value(zeros: &[Complex64], z: Complex64) -> Complex64 {
    zeros.iter().fold(ONE, |acc, &a| acc * crate::symbol::blaschke_factor(a, z))
}

/// `((1 - conj(theta(1)) theta(z)) / (1 - z))^n` with `theta` the finite
/// Blaschke product over `zeros`.
pub fn pole_order_function(zeros: &[Complex64], n: u32) -> Result<SymbolExpr> {
    if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
        return Err(Error::InvalidSymbol(format!("Blaschke zero {a} is not inside the disk")));
    }
    if n == 0 {
        return Ok(SymbolExpr::constant(ONE));
    }
    if zeros.is_empty() {
        return Ok(SymbolExpr::zero());
    }
    let c = blaschke_value(zeros, ONE).conj();
    let theta = SymbolExpr::blaschke(zeros.to_vec())?;
    let numerator = SymbolExpr::constant(ONE).sub(&theta.scale(c));
    let quotient = numerator.mul(&SymbolExpr::root_power(ONE, Exponent::Int(-1))?);
    if n == 1 {
        Ok(quotient)
    } else {
        quotient.powi(n as i32)
    }
}

/// `sum_k (1 - |a_k|^2) / |1 - a_k|^p`, the partial sum of the H^p
/// membership series at the point 1.
pub fn cohn_partial_sum(zeros: &[Complex64], p: f64) -> f64 {
    zeros.iter().map(|a| (1.0 - a.norm_sqr()) / (ONE - a).norm().powf(p)).sum()
}
