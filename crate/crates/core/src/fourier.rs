//! Truncated Fourier series on the circle and coefficient extraction.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{L2Symbol, SymbolExpr};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients `c_n` for `n` in `[lo, hi]`, `lo <= 0 <= hi`; everything
/// outside is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    neg: usize,
    coeffs: Vec<Complex64>,
}

impl FourierSeries {
    pub fn zeros(neg: usize, pos: usize) -> FourierSeries {
        FourierSeries { neg, coeffs: vec![ZERO; neg + pos + 1] }
    }

    /// Analytic series with `c_0..` taken from `taylor`.
    pub fn analytic(taylor: Vec<Complex64>) -> FourierSeries {
        if taylor.is_empty() {
            return FourierSeries::zeros(0, 0);
        }
        FourierSeries { neg: 0, coeffs: taylor }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> FourierSeries {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let lo = pairs.iter().map(|p| p.0).min().unwrap_or(0).min(0);
        let hi = pairs.iter().map(|p| p.0).max().unwrap_or(0).max(0);
        let mut s = FourierSeries::zeros((-lo) as usize, hi as usize);
        for (n, c) in pairs {
            *s.get_mut(n).expect("in range") += c;
        }
        s
    }

    /// Number of negative indices stored.
    pub fn neg_extent(&self) -> usize {
        self.neg
    }

    /// Largest nonnegative index stored.
    pub fn pos_extent(&self) -> usize {
        self.coeffs.len() - self.neg - 1
    }

    pub fn lo(&self) -> i64 {
        -(self.neg as i64)
    }

    pub fn hi(&self) -> i64 {
        self.pos_extent() as i64
    }

    pub fn get(&self, n: i64) -> Complex64 {
        let k = n + self.neg as i64;
        if k < 0 {
            return ZERO;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(ZERO)
    }

    pub fn get_mut(&mut self, n: i64) -> Option<&mut Complex64> {
        let k = n + self.neg as i64;
        if k < 0 {
            return None;
        }
        self.coeffs.get_mut(k as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(k, &c)| (k as i64 - self.neg as i64, c))
    }

    /// Nonnegative-index coefficients `c_0..=c_hi`.
    pub fn analytic_part(&self) -> &[Complex64] {
        &self.coeffs[self.neg..]
    }

    /// `sum |c_n|^2`, the squared L2 norm of the truncation.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Restrict to `[-neg, pos]`, padding with zeros where needed.
    pub fn truncate(&self, neg: usize, pos: usize) -> FourierSeries {
        let mut out = FourierSeries::zeros(neg, pos);
        for n in -(neg as i64)..=pos as i64 {
            *out.get_mut(n).expect("in range") = self.get(n);
        }
        out
    }

    /// Value of the truncation at `e^{i theta}`.
    pub fn eval_circle(&self, theta: f64) -> Complex64 {
        self.iter().map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * theta)).sum()
    }

    /// `sum_{n >= 0} c_n x^n` for `|x| < 1`.
    pub fn eval_analytic(&self, x: Complex64) -> Complex64 {
        self.analytic_part().iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, a: Complex64) -> FourierSeries {
        FourierSeries { neg: self.neg, coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// Linear convolution of the coefficient sequences.
    pub fn convolve(&self, other: &FourierSeries) -> FourierSeries {
        let mut out = FourierSeries::zeros(self.neg + other.neg, self.pos_extent() + other.pos_extent());
        for (n, a) in self.iter() {
            if a == ZERO {
                continue;
            }
            for (m, b) in other.iter() {
                *out.get_mut(n + m).expect("in range") += a * b;
            }
        }
        out
    }

    fn combine(&self, other: &FourierSeries, sign: f64) -> FourierSeries {
        let neg = self.neg.max(other.neg);
        let pos = self.pos_extent().max(other.pos_extent());
        let mut out = FourierSeries::zeros(neg, pos);
        for n in -(neg as i64)..=pos as i64 {
            *out.get_mut(n).expect("in range") = self.get(n) + other.get(n) * sign;
        }
        out
    }
}

impl Add for &FourierSeries {
    type Output = FourierSeries;
    fn add(self, rhs: &FourierSeries) -> FourierSeries {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &FourierSeries {
    type Output = FourierSeries;
    fn sub(self, rhs: &FourierSeries) -> FourierSeries {
        self.combine(rhs, -1.0)
    }
}

impl Mul<Complex64> for &FourierSeries {
    type Output = FourierSeries;
    fn mul(self, rhs: Complex64) -> FourierSeries {
        self.scale(rhs)
    }
}

/// Grid used by the sampled route: a power of two at least four times the
/// number of requested coefficients.
pub fn oversampled_grid(degree: usize) -> usize {
    (4 * (2 * degree + 1)).next_power_of_two().max(8)
}

/// Coefficients `|n| <= degree` of an L2 symbol from its structured form.
///
/// The analytic part fills `n >= 0`; the conjugated part fills `n < 0` with
/// `c_{-n} = conj(minus_n)`.
pub fn fourier_coefficients(sym: &L2Symbol, degree: usize) -> Result<FourierSeries> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    sym.plus.check_square_integrable()?;
    sym.minus.check_square_integrable()?;
    let plus = sym.plus.taylor_coefficients(degree)?;
    let minus = sym.minus.taylor_coefficients(degree)?;
    let mut out = FourierSeries::zeros(degree, degree);
    for (n, c) in plus.into_iter().enumerate() {
        *out.get_mut(n as i64).expect("in range") = c;
    }
    for (n, c) in minus.into_iter().enumerate().skip(1) {
        *out.get_mut(-(n as i64)).expect("in range") = c.conj();
    }
    Ok(out)
}

/// Coefficients `|n| <= degree` of a symbol expression viewed as a boundary
/// function. Uses the exact expansion when analytic in the disk, otherwise
/// FFT quadrature on an oversampled grid.
pub fn expr_fourier_coefficients(expr: &SymbolExpr, degree: usize) -> Result<FourierSeries> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    expr.check_square_integrable()?;
    if expr.interior_singularity().is_none() {
        let out = FourierSeries::analytic(expr.taylor_coefficients(degree)?);
        return Ok(out.truncate(degree, degree));
    }
    let samples = crate::symbol::boundary_sample(expr, oversampled_grid(degree))?;
    fourier_coefficients_sampled(&samples, degree)
}

/// FFT quadrature of boundary samples at the roots of unity; points marked
/// `None` are excluded (contribute zero).
pub fn fourier_coefficients_sampled(samples: &[Option<Complex64>], degree: usize) -> Result<FourierSeries> {
    let g = samples.len();
    if g < 2 * degree + 1 {
        return Err(Error::InvalidArgument(format!(
            "{g} samples cannot resolve {} coefficients",
            2 * degree + 1
        )));
    }
    let mut buf: Vec<Complex64> = samples.iter().map(|s| s.unwrap_or(ZERO)).collect();
    FftPlanner::new().plan_fft_forward(g).process(&mut buf);
    let scale = 1.0 / g as f64;
    let mut out = FourierSeries::zeros(degree, degree);
    for n in -(degree as i64)..=degree as i64 {
        let bin = n.rem_euclid(g as i64) as usize;
        *out.get_mut(n).expect("in range") = buf[bin] * scale;
    }
    Ok(out)
}

/// The sampled route for an L2 symbol on the default oversampled grid.
pub fn fourier_coefficients_quadrature(sym: &L2Symbol, degree: usize) -> Result<FourierSeries> {
    sym.plus.check_square_integrable()?;
    sym.minus.check_square_integrable()?;
    fourier_coefficients_sampled(&sym.sample(oversampled_grid(degree)), degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomials() {
        let s = fourier_coefficients(&L2Symbol::analytic(SymbolExpr::z()).unwrap(), 4).unwrap();
        for (n, v) in s.iter() {
            assert_eq!(v, if n == 1 { c(1.0, 0.0) } else { ZERO });
        }
        let s = fourier_coefficients(&L2Symbol::new(SymbolExpr::zero(), SymbolExpr::z()).unwrap(), 4)
            .unwrap();
        for (n, v) in s.iter() {
            assert_eq!(v, if n == -1 { c(1.0, 0.0) } else { ZERO });
        }
    }

    #[test]
    fn binomial_coefficient() {
        let u = L2Symbol::analytic(parse_symbol("(1-z)^-0.3333333333333333").unwrap()).unwrap();
        let s = fourier_coefficients(&u, 8).unwrap();
        assert!((s.get(1) - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sampled_route_agrees_for_smooth_symbols() {
        let sym = L2Symbol::new(
            parse_symbol("(2+z)^2*blaschke(0.3+0.2i)").unwrap(),
            parse_symbol("z*(3-z)^-1").unwrap(),
        )
        .unwrap();
        let a = fourier_coefficients(&sym, 32).unwrap();
        let b = fourier_coefficients_quadrature(&sym, 32).unwrap();
        assert!((&a - &b).norm() < 1e-12);
    }

    #[test]
    fn non_analytic_expression_uses_quadrature() {
        let e = parse_symbol("(1-2*z)^-1").unwrap();
        let s = expr_fourier_coefficients(&e, 8).unwrap();
        // 1/(1-2z) = -(1/(2z)) / (1 - 1/(2z)) = -sum_{k>=1} (2z)^{-k}
        for k in 1..=8i64 {
            assert!((s.get(-k) + c(0.5f64.powi(k as i32), 0.0)).norm() < 1e-12);
        }
        assert!(s.get(0).norm() < 1e-12);
    }

    #[test]
    fn arithmetic() {
        let a = FourierSeries::from_pairs([(-1, c(1.0, 0.0)), (0, c(2.0, 0.0)), (1, c(3.0, 0.0))]);
        assert_eq!(a.lo(), -1);
        assert_eq!(a.hi(), 1);
        assert_eq!(a.norm_sqr(), 14.0);
        let sq = a.convolve(&a);
        assert_eq!(sq.get(0), c(4.0 + 6.0, 0.0));
        assert_eq!(sq.get(2), c(9.0, 0.0));
        assert_eq!((&sq - &sq).norm(), 0.0);
    }
}
