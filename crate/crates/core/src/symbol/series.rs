//! Exact Taylor coefficients at the origin from the factored form.

use num_complex::Complex64;

use super::{Base, Exponent, Factor, SymbolExpr, Term};
use crate::error::{Error, Result};

impl SymbolExpr {
    /// Taylor coefficients `c_0..=c_degree` at the origin.
    ///
    /// Fails with [`Error::InteriorSingularity`] when the expression is not
    /// analytic in the open disk.
    pub fn taylor_coefficients(&self, degree: usize) -> Result<Vec<Complex64>> {
        if let Some(why) = self.interior_singularity() {
            return Err(Error::InteriorSingularity(why));
        }
        Ok(self.series(degree))
    }

    fn series(&self, degree: usize) -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(0.0, 0.0); degree + 1];
        for t in &self.terms {
            for (a, b) in acc.iter_mut().zip(t.series(degree)) {
                *a += b;
            }
        }
        acc
    }
}

impl Term {
    fn series(&self, degree: usize) -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(0.0, 0.0); degree + 1];
        acc[0] = self.coeff;
        for f in &self.factors {
            acc = match (&f.base, f.exponent) {
                (Base::Z, Exponent::Int(k)) => shift(&acc, k as usize),
                _ => mul_truncated(&acc, &f.series(degree)),
            };
        }
        acc
    }
}

impl Factor {
    fn series(&self, degree: usize) -> Vec<Complex64> {
        match &self.base {
            Base::Z => {
                let k = self.exponent.value() as usize;
                shift(&unit(degree), k)
            }
            Base::Linear { slope } => binomial_series(*slope, self.exponent.value(), degree),
            Base::Blaschke { zeros } => {
                let mut acc = unit(degree);
                for &a in zeros {
                    acc = mul_truncated(&acc, &blaschke_factor_series(a, degree));
                }
                pow_series(&acc, self.exponent.value() as u32)
            }
            Base::Group(inner) => pow_series(&inner.series(degree), self.exponent.value() as u32),
        }
    }
}

fn unit(degree: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); degree + 1];
    v[0] = Complex64::new(1.0, 0.0);
    v
}

fn shift(a: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
    if k < a.len() {
        out[k..].copy_from_slice(&a[..a.len() - k]);
    }
    out
}

/// Coefficients of `(1 - s z)^alpha`.
pub(crate) fn binomial_series(s: Complex64, alpha: f64, degree: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut c = Complex64::new(1.0, 0.0);
    out.push(c);
    for n in 1..=degree {
        c = c * s * ((n as f64 - 1.0 - alpha) / n as f64);
        out.push(c);
    }
    out
}

/// Coefficients of `(|a|/a)(a - z)/(1 - conj(a) z)`.
fn blaschke_factor_series(a: Complex64, degree: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    if a == zero {
        return shift(&unit(degree), 1);
    }
    let phase = a.norm() / a;
    let ac = a.conj();
    let scale = phase * (a.norm_sqr() - 1.0);
    let mut out = vec![zero; degree + 1];
    out[0] = Complex64::new(a.norm(), 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    for c in out.iter_mut().skip(1) {
        *c = scale * p;
        p *= ac;
    }
    out
}

pub(crate) fn mul_truncated(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn pow_series(a: &[Complex64], k: u32) -> Vec<Complex64> {
    let mut result = unit(a.len() - 1);
    let mut base = a.to_vec();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = mul_truncated(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul_truncated(&base, &base);
        }
    }
    result
}
