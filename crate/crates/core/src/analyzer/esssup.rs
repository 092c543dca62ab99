use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trend::{Thresholds, Trend};
use crate::symbol::{unit_root, L2Symbol, SymbolExpr};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EssSupRow {
    pub grid: usize,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssSupTable {
    pub rows: Vec<EssSupRow>,
    pub trend: Trend,
}

impl EssSupTable {
    pub fn last(&self) -> Option<f64> {
        self.rows.last().map(|r| r.max)
    }
}

/// `|u(zeta) v(zeta)|` at a boundary point, `None` at a pole of either.
pub fn product_modulus(u: &SymbolExpr, v: &L2Symbol, zeta: Complex64) -> Option<f64> {
    Some((u.eval_finite(zeta)? * v.eval_boundary(zeta)?).norm())
}

/// Max of `|u v|` over each grid of roots of unity, pole hits excluded.
pub fn ess_sup_product(u: &SymbolExpr, v: &L2Symbol, grids: &[usize], th: &Thresholds) -> EssSupTable {
    let rows: Vec<EssSupRow> = grids
        .iter()
        .map(|&g| {
            let max = (0..g)
                .into_par_iter()
                .filter_map(|j| product_modulus(u, v, unit_root(j, g)))
                .reduce(|| 0.0, f64::max);
            EssSupRow { grid: g, max }
        })
        .collect();
    let values: Vec<f64> = rows.iter().map(|r| r.max).collect();
    EssSupTable { trend: th.classify(&values), rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_symbol;

    fn sym(s: &str) -> SymbolExpr {
        parse_symbol(s).unwrap()
    }

    #[test]
    fn tables() {
        let th = Thresholds::default();
        let grids = [256, 512, 1024, 2048];
        let t = ess_sup_product(&sym("(1-z)^-1"), &L2Symbol::analytic(sym("1-z")).unwrap(), &grids, &th);
        assert!(t.rows.iter().all(|r| (r.max - 1.0).abs() < 1e-12));
        assert_eq!(t.trend, Trend::FiniteTrend);
        let t = ess_sup_product(&sym("z"), &L2Symbol::analytic(sym("z")).unwrap(), &grids, &th);
        assert!(t.rows.iter().all(|r| (r.max - 1.0).abs() < 1e-12));
        let t = ess_sup_product(&sym("(1-z)^-1"), &L2Symbol::analytic(sym("1")).unwrap(), &grids, &th);
        assert!(t.rows.windows(2).all(|w| w[1].max > w[0].max));
        assert_eq!(t.trend, Trend::Growth);
    }
}
