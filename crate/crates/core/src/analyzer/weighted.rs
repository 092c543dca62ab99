//! The product as a two-weighted Riesz projection and as a Carleson
//! embedding constant, for co-analytic `v = conj(w)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::kernel::coanalytic_section;
use crate::quadrature::CircleRule;
use crate::symbol::{L2Symbol, SymbolExpr};

/// Eigenvalues below this fraction of the largest make a Gram matrix
/// singular.
pub const GRAM_FLOOR: f64 = 1e-12;

const QUAD_LEVEL: u32 = 3;

fn rule_for(points: &[Complex64], max_n: usize) -> CircleRule {
    CircleRule::new(points, (2 * max_n).max(16), QUAD_LEVEL)
}

fn roots(expr: &SymbolExpr) -> Vec<Complex64> {
    expr.boundary_exponents().into_iter().map(|(t, _)| t).collect()
}

/// Fourier coefficients `0..=max_n` of a real weight by circle quadrature.
fn weight_coefficients<F>(weight: F, points: &[Complex64], max_n: usize) -> Vec<Complex64>
where
    F: Fn(Complex64) -> f64,
{
    let rule = rule_for(points, max_n);
    let values: Vec<f64> = rule.nodes.iter().map(|&z| weight(z)).collect();
    rule.fourier_of(&values, max_n)
}

/// `G(j,k) = rho^(j - k)` for indices `lo..=hi`.
fn gram(coeffs: &[Complex64], lo: i64, hi: i64) -> DMatrix<Complex64> {
    let d = (hi - lo + 1) as usize;
    DMatrix::from_fn(d, d, |j, k| {
        let n = j as i64 - k as i64;
        if n >= 0 {
            coeffs[n as usize]
        } else {
            coeffs[(-n) as usize].conj()
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedNorm {
    pub value: f64,
    /// Smallest over largest eigenvalue of the source Gram matrix.
    pub conditioning: f64,
}

/// Norm of `P: L2(rho1) -> L2(rho2)` on trigonometric polynomials of degree
/// `<= n`, with `rho1 = 1/|v|^2` and `rho2 = |u|^2`.
pub fn two_weighted_projection_norm(v: &L2Symbol, u: &SymbolExpr, n: usize) -> Result<WeightedNorm> {
    let mut points = v.boundary_roots();
    points.extend(roots(u));
    let rho1 = weight_coefficients(|z| v.eval_boundary(z).map_or(f64::NAN, |w| 1.0 / w.norm_sqr()), &points, 2 * n);
    let rho2 = weight_coefficients(|z| u.eval_finite(z).map_or(f64::NAN, |w| w.norm_sqr()), &points, 2 * n);
    let n_i = n as i64;
    let g1 = gram(&rho1, -n_i, n_i);
    let eig = g1.clone().symmetric_eigen();
    let max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let conditioning = min / max;
    if !(max > 0.0) || !(conditioning >= GRAM_FLOOR) {
        return Err(Error::SingularGram { ratio: conditioning });
    }
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(1.0 / l.sqrt(), 0.0)));
    let g1_inv_sqrt = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.adjoint();
    // P G2 P in the full index range: the nonnegative block of G2
    let d = 2 * n + 1;
    let g2 = gram(&rho2, 0, n_i);
    let mut pg2p = DMatrix::zeros(d, d);
    pg2p.view_mut((n, n), (n + 1, n + 1)).copy_from(&g2);
    let h = &g1_inv_sqrt * pg2p * &g1_inv_sqrt;
    let top = hermitian_top(&h);
    Ok(WeightedNorm { value: top.max(0.0).sqrt(), conditioning })
}

fn hermitian_top(h: &DMatrix<Complex64>) -> f64 {
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    sym.symmetric_eigen().eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Square root of the best constant in
/// `integral |P(conj(w) f)|^2 |u|^2 dm <= C^2 ||f||^2` over polynomials of
/// degree `<= n`.
pub fn carleson_constant(u: &SymbolExpr, w: &SymbolExpr, n: usize) -> Result<f64> {
    let b = coanalytic_section(w, n)?;
    let mut points = roots(u);
    points.extend(roots(w));
    let rho = weight_coefficients(|z| u.eval_finite(z).map_or(f64::NAN, |x| x.norm_sqr()), &points, n);
    let wm = gram(&rho, 0, n as i64);
    let h = b.matrix.adjoint() * wm * &b.matrix;
    Ok(hermitian_top(&h).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    fn sym(s: &str) -> SymbolExpr {
        parse_symbol(s).unwrap()
    }

    #[test]
    fn unweighted_projection() {
        let one = L2Symbol::analytic(sym("1")).unwrap();
        let r = two_weighted_projection_norm(&one, &sym("1"), 8).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        let r = two_weighted_projection_norm(&one, &sym("3"), 8).unwrap();
        assert!((r.value - 3.0).abs() < 1e-10);
    }

    #[test]
    fn carleson_trivial_cases() {
        assert!((carleson_constant(&sym("z"), &sym("1"), 16).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(carleson_constant(&sym("0"), &sym("1"), 16).unwrap(), 0.0);
    }
}
