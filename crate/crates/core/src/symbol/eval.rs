use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Base, Exponent, Factor, SymbolExpr, Term};
use crate::error::{Error, Result};

/// Relative size below which a linear factor is treated as vanishing.
const ZERO_TOL: f64 = 4.0 * f64::EPSILON;

impl SymbolExpr {
    /// Evaluate with principal-branch powers.
    ///
    /// Evaluating exactly at a root of a factor carrying a negative exponent
    /// returns [`Error::PoleHit`].
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += t.eval(z)?;
        }
        Ok(acc)
    }

    /// Evaluate, mapping pole hits to `None`.
    pub fn eval_finite(&self, z: Complex64) -> Option<Complex64> {
        self.eval(z).ok().filter(|w| w.is_finite())
    }
}

impl Term {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = self.coeff;
        for f in &self.factors {
            acc *= f.eval(z)?;
        }
        Ok(acc)
    }
}

impl Factor {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let base = match &self.base {
            Base::Z => z,
            Base::Linear { slope } => {
                let sz = slope * z;
                let w = Complex64::new(1.0, 0.0) - sz;
                if w.norm() <= ZERO_TOL * (1.0 + sz.norm()) {
                    Complex64::new(0.0, 0.0)
                } else {
                    w
                }
            }
            Base::Blaschke { zeros } => blaschke_eval(zeros, z),
            Base::Group(inner) => inner.eval(z)?,
        };
        power(base, self.exponent).ok_or_else(|| Error::PoleHit {
            location: self.root().unwrap_or(z),
        })
    }
}

/// `base^e` on the principal branch; `None` for zero raised to a negative power.
fn power(base: Complex64, e: Exponent) -> Option<Complex64> {
    if base == Complex64::new(0.0, 0.0) {
        return if e.value() < 0.0 { None } else { Some(base) };
    }
    Some(match e {
        Exponent::Int(k) => base.powi(k),
        Exponent::Real(a) => (base.ln() * a).exp(),
    })
}

pub(crate) fn blaschke_factor(a: Complex64, z: Complex64) -> Complex64 {
    if a == Complex64::new(0.0, 0.0) {
        return z;
    }
    let phase = a.norm() / a;
    phase * (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

pub(crate) fn blaschke_eval(zeros: &[Complex64], z: Complex64) -> Complex64 {
    zeros
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &a| acc * blaschke_factor(a, z))
}

/// `exp(2*pi*i*j/n)`, exact at multiples of a quarter turn.
pub fn unit_root(j: usize, n: usize) -> Complex64 {
    let j = j % n;
    if (4 * j) % n == 0 {
        return match 4 * j / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
}

/// Values at the `grid_size`-th roots of unity; pole hits are `None`.
pub fn boundary_sample(expr: &SymbolExpr, grid_size: usize) -> Result<Vec<Option<Complex64>>> {
    if grid_size < 8 || !grid_size.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "grid size {grid_size} must be a power of two >= 8"
        )));
    }
    Ok((0..grid_size)
        .into_par_iter()
        .map(|j| expr.eval_finite(unit_root(j, grid_size)))
        .collect())
}
