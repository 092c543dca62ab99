use crate::error::Result;
use crate::fourier::fourier_coefficients;
use crate::hardy::{analytic_multiplier_section, toeplitz_section, SectionOperator};
use crate::symbol::{L2Symbol, SymbolExpr};

/// Section of `T_u T_v`: `f -> Pi_M (u P(v f))` on polynomials of degree
/// `<= n`.
pub fn product_section(u: &SymbolExpr, v: &L2Symbol, n: usize, m: usize) -> Result<SectionOperator> {
    let g = fourier_coefficients(v, n.max(m).max(1))?;
    let tv = toeplitz_section(&g, n, m)?;
    let mu = analytic_multiplier_section(u, m, m)?;
    mu.compose(&tv, "T_u T_v")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::norm::section_norm;
    use crate::symbol::parse_symbol;

    fn sym(s: &str) -> SymbolExpr {
        parse_symbol(s).unwrap()
    }

    #[test]
    fn identity_pair() {
        let a = product_section(&sym("1"), &L2Symbol::analytic(sym("1")).unwrap(), 8, 16).unwrap();
        assert!((section_norm(&a, 1e-12).value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cancelling_pair_is_identity_on_sections() {
        let a = product_section(&sym("(1-z)^-1"), &L2Symbol::analytic(sym("1-z")).unwrap(), 64, 128)
            .unwrap();
        let est = section_norm(&a, 1e-10).value;
        assert!((1.0..=3.0).contains(&est), "{est}");
        assert!((est - a.norm_dense()).abs() < 1e-8);
    }
}
