//! Canonical printer. Output re-parses to an expression that evaluates
//! identically; numbers use the shortest round-trip decimal form.

use std::fmt::{self, Display, Write};

use num_complex::Complex64;

use super::{Base, Exponent, Factor, SymbolExpr, Term};

impl Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let (negative, body) = term_body(t);
            match (i, negative) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_char('-')?,
                (_, false) => f.write_char('+')?,
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// Sign and body of a term; the sign is split off only for real coefficients.
fn term_body(t: &Term) -> (bool, String) {
    let c = t.coeff;
    let (negative, coeff) = if c.im == 0.0 && c.re < 0.0 {
        (true, Complex64::new(-c.re, 0.0))
    } else {
        (false, c)
    };
    let mut parts: Vec<String> = Vec::new();
    if coeff != Complex64::new(1.0, 0.0) || t.factors.is_empty() {
        parts.push(if coeff.im == 0.0 {
            fmt_real(coeff.re)
        } else {
            format!("({})", fmt_complex(coeff))
        });
    }
    parts.extend(t.factors.iter().map(fmt_factor));
    (negative, parts.join("*"))
}

fn fmt_factor(f: &Factor) -> String {
    let base = match &f.base {
        Base::Z => "z".to_string(),
        Base::Linear { slope } => {
            let s = *slope;
            if s == Complex64::new(1.0, 0.0) {
                "(1-z)".to_string()
            } else if s == Complex64::new(-1.0, 0.0) {
                "(1+z)".to_string()
            } else if s.im == 0.0 && s.re > 0.0 {
                format!("(1-{}*z)", fmt_real(s.re))
            } else if s.im == 0.0 {
                format!("(1+{}*z)", fmt_real(-s.re))
            } else {
                format!("(1-({})*z)", fmt_complex(s))
            }
        }
        Base::Blaschke { zeros } => {
            let list: Vec<String> = zeros.iter().map(|a| fmt_complex(*a)).collect();
            format!("blaschke({})", list.join(","))
        }
        Base::Group(inner) => format!("({inner})"),
    };
    match f.exponent {
        Exponent::Int(1) => base,
        Exponent::Int(k) => format!("{base}^{k}"),
        Exponent::Real(a) => format!("{base}^{}", fmt_real(a)),
    }
}

fn fmt_real(x: f64) -> String {
    // Display for f64 is the shortest decimal that round-trips
    format!("{x}")
}

/// A complex literal accepted by the grammar: `a`, `a+bi` or `a-bi`.
fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        return fmt_real(c.re);
    }
    let sign = if c.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", fmt_real(c.re), sign, fmt_real(c.im.abs()))
}

#[cfg(test)]
mod tests {
    use crate::symbol::parse_symbol;

    #[test]
    fn prints_canonical_forms() {
        for (src, want) in [
            ("z^2", "z^2"),
            ("(1-z)^-1", "(1-z)^-1"),
            ("(1-z)^-0.25 * blaschke(0.5)", "(1-z)^-0.25*blaschke(0.5)"),
            ("1-z", "1-z"),
            ("-z+3", "-z+3"),
            ("(0.5+0.5i)*z", "(0.5+0.5i)*z"),
            ("blaschke(-0.25-0.5i,0)", "blaschke(-0.25-0.5i,0)"),
            ("(1+z^2)^2", "(1+z^2)^2"),
        ] {
            assert_eq!(parse_symbol(src).unwrap().to_string(), want, "source {src}");
        }
    }

    #[test]
    fn prints_complex_slopes_parseably() {
        let e = parse_symbol("(1-(0.6+0.8i)*z)^0.5").unwrap();
        let again = parse_symbol(&e.to_string()).unwrap();
        assert_eq!(e, again);
    }
}
