//! Finite sections: matrices of operators acting on polynomials of degree
//! at most `N` with output truncated to degree `M`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::symbol::SymbolExpr;

/// Which operator a section truncates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SectionKind {
    Toeplitz,
    AnalyticMultiplier,
    Composite(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionOperator {
    /// `(M+1) x (N+1)`.
    pub matrix: DMatrix<Complex64>,
    pub input_degree: usize,
    pub output_degree: usize,
    pub kind: SectionKind,
}

impl SectionOperator {
    pub fn new(matrix: DMatrix<Complex64>, kind: SectionKind) -> Result<SectionOperator> {
        if matrix.nrows() == 0 || matrix.ncols() == 0 {
            return Err(Error::InvalidArgument("empty section".into()));
        }
        Ok(SectionOperator {
            input_degree: matrix.ncols() - 1,
            output_degree: matrix.nrows() - 1,
            matrix,
            kind,
        })
    }

    pub fn identity(n: usize) -> SectionOperator {
        SectionOperator::new(DMatrix::identity(n + 1, n + 1), SectionKind::Toeplitz)
            .expect("nonempty")
    }

    /// Apply to coefficients `c_0..=c_N`.
    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_iterator(self.input_degree + 1, (0..=self.input_degree).map(|k| {
            f.get(k).copied().unwrap_or_default()
        }));
        (&self.matrix * v).iter().copied().collect()
    }

    /// `self * rhs`; `rhs` output degree must match `self` input degree.
    pub fn compose(&self, rhs: &SectionOperator, label: &str) -> Result<SectionOperator> {
        if rhs.output_degree != self.input_degree {
            return Err(Error::InvalidArgument(format!(
                "cannot compose degree {} output with degree {} input",
                rhs.output_degree, self.input_degree
            )));
        }
        SectionOperator::new(&self.matrix * &rhs.matrix, SectionKind::Composite(label.into()))
    }

    /// Largest singular value from a dense SVD.
    pub fn norm_dense(&self) -> f64 {
        self.matrix
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Entry `(j,k) = g(j-k)`: `f -> Pi_M P(g f)` on polynomials of degree `<= N`.
pub fn toeplitz_section(g: &FourierSeries, n: usize, m: usize) -> Result<SectionOperator> {
    let need_lo = -(n as i64);
    let need_hi = m as i64;
    if g.lo() > need_lo || g.hi() < need_hi {
        return Err(Error::InsufficientCoverage {
            need_lo,
            need_hi,
            have_lo: g.lo(),
            have_hi: g.hi(),
        });
    }
    let matrix = DMatrix::from_fn(m + 1, n + 1, |j, k| g.get(j as i64 - k as i64));
    SectionOperator::new(matrix, SectionKind::Toeplitz)
}

/// Lower-triangular Toeplitz matrix of Taylor coefficients `c_0..c_M`:
/// `f -> Pi_M (u f)`.
pub fn analytic_multiplier_section(u: &SymbolExpr, n: usize, m: usize) -> Result<SectionOperator> {
    let c = u.taylor_coefficients(m)?;
    multiplier_from_taylor(&c, n, m)
}

pub fn multiplier_from_taylor(c: &[Complex64], n: usize, m: usize) -> Result<SectionOperator> {
    let matrix = DMatrix::from_fn(m + 1, n + 1, |j, k| {
        if j >= k {
            c.get(j - k).copied().unwrap_or_default()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    SectionOperator::new(matrix, SectionKind::AnalyticMultiplier)
}
