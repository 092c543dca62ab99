use num_complex::Complex64;

use super::{eval::unit_root, SymbolExpr};
use crate::error::{Error, Result};

/// A symbol in L2 of the circle, `plus + conj(minus)` with both parts in H2
/// and `minus(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Symbol {
    pub plus: SymbolExpr,
    pub minus: SymbolExpr,
}

impl L2Symbol {
    pub fn new(plus: SymbolExpr, minus: SymbolExpr) -> Result<L2Symbol> {
        plus.check_h2_claimed()?;
        minus.check_h2_claimed()?;
        let m0 = minus.eval(Complex64::new(0.0, 0.0))?;
        if m0.norm() > 1e-12 {
            return Err(Error::InvalidSymbol(format!(
                "co-analytic part must vanish at the origin, got {m0}"
            )));
        }
        Ok(L2Symbol { plus, minus })
    }

    pub fn analytic(plus: SymbolExpr) -> Result<L2Symbol> {
        L2Symbol::new(plus, SymbolExpr::zero())
    }

    /// `conj(w)` on the circle for an H2 function `w`.
    pub fn conjugate_of(w: &SymbolExpr) -> Result<L2Symbol> {
        w.check_h2_claimed()?;
        let w0 = w.eval(Complex64::new(0.0, 0.0))?;
        let minus = w.sub(&SymbolExpr::constant(w0)).normalized()?;
        L2Symbol::new(SymbolExpr::constant(w0.conj()), minus)
    }

    /// The analytic part is constant, so the symbol is the conjugate of an
    /// H2 function.
    pub fn is_coanalytic(&self) -> bool {
        self.plus.is_constant()
    }

    pub fn is_analytic(&self) -> bool {
        self.minus.is_zero()
    }

    /// The H2 function whose conjugate this is, when co-analytic.
    pub fn conjugate_generator(&self) -> Option<SymbolExpr> {
        if !self.is_coanalytic() {
            return None;
        }
        let c = self.plus.eval(Complex64::new(0.0, 0.0)).ok()?;
        self.minus.add(&SymbolExpr::constant(c.conj())).normalized().ok()
    }

    /// Value at a point of the circle; `None` at a pole.
    pub fn eval_boundary(&self, zeta: Complex64) -> Option<Complex64> {
        Some(self.plus.eval_finite(zeta)? + self.minus.eval_finite(zeta)?.conj())
    }

    /// Harmonic extension `plus(x) + conj(minus(x))` inside the disk.
    pub fn eval_disk(&self, x: Complex64) -> Result<Complex64> {
        if x.norm() >= 1.0 {
            return Err(Error::OutsideDisk { point: x });
        }
        Ok(self.plus.eval(x)? + self.minus.eval(x)?.conj())
    }

    /// Boundary roots of either part, where the symbol may fail to be smooth.
    pub fn boundary_roots(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for (t, _) in self.plus.boundary_exponents().into_iter().chain(self.minus.boundary_exponents()) {
            if !out.iter().any(|s| (s - t).norm() < 1e-12) {
                out.push(t);
            }
        }
        out
    }

    /// Values at the `grid_size`-th roots of unity.
    pub fn sample(&self, grid_size: usize) -> Vec<Option<Complex64>> {
        use rayon::prelude::*;
        (0..grid_size)
            .into_par_iter()
            .map(|j| self.eval_boundary(unit_root(j, grid_size)))
            .collect()
    }
}

impl std::fmt::Display for L2Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.plus.is_zero(), self.minus.is_zero()) {
            (_, true) => write!(f, "{}", self.plus),
            (true, false) => write!(f, "conj({})", self.minus),
            (false, false) => write!(f, "{} + conj({})", self.plus, self.minus),
        }
    }
}
