//! Reproducing kernels of H2 and of the range space of `T_conj(v)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::section::{toeplitz_section, SectionOperator};
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::symbol::SymbolExpr;

/// `k_x(z) = 1/(1 - conj(x) z)` truncated at degree `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelVector {
    pub x: Complex64,
    pub coeffs: Vec<Complex64>,
    pub normalized: bool,
    /// l2 norm of the discarded tail.
    pub truncation_bound: f64,
}

impl KernelVector {
    pub fn new(x: Complex64, degree: usize, normalized: bool) -> Result<KernelVector> {
        let r = x.norm();
        if r >= 1.0 {
            return Err(Error::OutsideDisk { point: x });
        }
        let full_norm = 1.0 / (1.0 - r * r).sqrt();
        let scale = if normalized { 1.0 / full_norm } else { 1.0 };
        let xc = x.conj();
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut p = Complex64::new(scale, 0.0);
        for _ in 0..=degree {
            coeffs.push(p);
            p *= xc;
        }
        let truncation_bound = scale * r.powi(degree as i32 + 1) * full_norm;
        Ok(KernelVector { x, coeffs, normalized, truncation_bound })
    }

    pub fn as_series(&self) -> FourierSeries {
        FourierSeries::analytic(self.coeffs.clone())
    }

    /// `<f, k_x>` over the stored coefficients.
    pub fn pair(&self, f: &[Complex64]) -> Complex64 {
        f.iter().zip(&self.coeffs).map(|(a, k)| a * k.conj()).sum()
    }
}

/// `f(x)` by direct summation and by pairing with the kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproducedValue {
    pub direct: Complex64,
    pub via_kernel: Complex64,
    /// `||f|| * |x|^{N+1} / sqrt(1 - |x|^2)` for the kernel truncation.
    pub bound: f64,
}

pub fn reproducing_eval(f: &FourierSeries, x: Complex64) -> Result<ReproducedValue> {
    if x.norm() >= 1.0 {
        return Err(Error::OutsideDisk { point: x });
    }
    let a = f.analytic_part();
    let direct = a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c);
    let k = KernelVector::new(x, a.len() - 1, false)?;
    Ok(ReproducedValue { direct, via_kernel: k.pair(a), bound: f.norm() * k.truncation_bound })
}

/// Section of `T_conj(v)` on degrees `<= n`: upper triangular with diagonal
/// `conj(v(0))`.
pub fn coanalytic_section(v: &SymbolExpr, n: usize) -> Result<SectionOperator> {
    let c = v.taylor_coefficients(n)?;
    let mut g = FourierSeries::zeros(n, n);
    for (k, ck) in c.iter().enumerate() {
        *g.get_mut(-(k as i64)).expect("in range") = ck.conj();
    }
    toeplitz_section(&g, n, n)
}

/// Coefficients `0..=n` of `P(conj(v) v k_x)`, the kernel at `x` of the
/// range of `T_conj(v)` with the norm transported from H2.
pub fn range_kernel(v: &SymbolExpr, x: Complex64, n: usize) -> Result<FourierSeries> {
    if x.norm() >= 1.0 {
        return Err(Error::OutsideDisk { point: x });
    }
    let reach = n + n.max(64);
    let h = v_times_kernel(v, x, reach)?;
    let c = v.taylor_coefficients(reach)?;
    let out: Vec<Complex64> = (0..=n)
        .map(|j| (0..=reach - j).map(|m| c[m].conj() * h[j + m]).sum())
        .collect();
    Ok(FourierSeries::analytic(out))
}

/// Taylor coefficients of `v k_x` up to `degree`.
pub fn v_times_kernel(v: &SymbolExpr, x: Complex64, degree: usize) -> Result<Vec<Complex64>> {
    let c = v.taylor_coefficients(degree)?;
    let xc = x.conj();
    let mut h = Vec::with_capacity(degree + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    for ck in c {
        // running sum of c_m conj(x)^{n-m}
        acc = acc * xc + ck;
        h.push(acc);
    }
    Ok(h)
}

/// Recover `f` from `g = T_conj(v) f` on degrees `<= g.hi()` by
/// back-substitution in the upper-triangular section.
pub fn range_preimage(v: &SymbolExpr, g: &FourierSeries) -> Result<Vec<Complex64>> {
    let n = g.hi() as usize;
    let t = coanalytic_section(v, n)?;
    let d = t.matrix[(0, 0)];
    if d.norm() == 0.0 {
        return Err(Error::NotOuter("v vanishes at the origin".into()));
    }
    let mut f = vec![Complex64::new(0.0, 0.0); n + 1];
    for j in (0..=n).rev() {
        let tail: Complex64 = (j + 1..=n).map(|k| t.matrix[(j, k)] * f[k]).sum();
        f[j] = (g.get(j as i64) - tail) / d;
    }
    Ok(f)
}

/// Range-space inner product `<g1, g2> := <f1, f2>_{H2}` with `gi = T_conj(v) fi`.
pub fn range_inner(v: &SymbolExpr, g1: &FourierSeries, g2: &FourierSeries) -> Result<Complex64> {
    let reach = g1.hi().max(g2.hi()) as usize;
    let f1 = range_preimage(v, &g1.truncate(0, reach))?;
    let f2 = range_preimage(v, &g2.truncate(0, reach))?;
    Ok(f1.iter().zip(&f2).map(|(a, b)| a * b.conj()).sum())
}

/// Dense matrix helper used by the range tests: `T_conj(v)` applied to `f`.
pub fn apply_coanalytic(v: &SymbolExpr, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = f.len().saturating_sub(1);
    let t = coanalytic_section(v, n)?;
    let col = DMatrix::from_column_slice(n + 1, 1, f);
    Ok((&t.matrix * col).iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn point_evaluation() {
        let f = FourierSeries::analytic(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = reproducing_eval(&f, c(0.5, 0.0)).unwrap();
        assert!((r.direct - c(0.25, 0.0)).norm() < 1e-15);
        assert!((r.via_kernel - c(0.25, 0.0)).norm() < 1e-15);
        let one = FourierSeries::analytic(vec![c(1.0, 0.0)]);
        assert_eq!(reproducing_eval(&one, c(0.3, -0.7)).unwrap().direct, c(1.0, 0.0));
        assert!(reproducing_eval(&one, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn normalized_kernel_norm() {
        let k = KernelVector::new(c(0.0, 0.9), 400, true).unwrap();
        let norm: f64 = k.coeffs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        assert!((1.0 - norm).abs() <= k.truncation_bound + 1e-13);
    }

    #[test]
    fn range_kernel_for_trivial_v() {
        let one = parse_symbol("1").unwrap();
        let x = c(0.3, 0.4);
        let k = range_kernel(&one, x, 20).unwrap();
        for (n, v) in k.analytic_part().iter().enumerate() {
            assert!((v - x.conj().powi(n as i32)).norm() < 1e-15);
        }
        let k0 = range_kernel(&one, c(0.0, 0.0), 5).unwrap();
        assert_eq!(k0.get(0), c(1.0, 0.0));
        assert_eq!(k0.norm(), 1.0);
    }

    #[test]
    fn preimage_inverts_section() {
        let v = parse_symbol("2+z").unwrap();
        let f = vec![c(1.0, 0.5), c(-0.3, 0.0), c(0.0, 2.0), c(0.25, -1.0)];
        let g = FourierSeries::analytic(apply_coanalytic(&v, &f).unwrap());
        let back = range_preimage(&v, &g).unwrap();
        for (a, b) in f.iter().zip(&back) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
