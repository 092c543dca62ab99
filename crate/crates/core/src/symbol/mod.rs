//! Structured symbols: sums of products of boundary-rooted powers, monomials,
//! finite Blaschke products and polynomial groups.
//!
//! A symbol is kept in factored form so that poles on the circle, their
//! orders and boundary limits can be read off without sampling.

mod eval;
mod l2;
mod local;
mod parse;
mod print;
mod series;

pub(crate) use eval::blaschke_factor;
pub use eval::{boundary_sample, unit_root};
pub use l2::L2Symbol;
pub use local::{detect_poles, Limit, LocalExpansion, Part, PoleRecord};
pub use parse::parse_symbol;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for deciding that a linear factor is rooted on the unit circle.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Int(i32),
    Real(f64),
}

impl Exponent {
    pub fn value(self) -> f64 {
        match self {
            Exponent::Int(k) => k as f64,
            Exponent::Real(a) => a,
        }
    }

    pub fn is_integer(self) -> bool {
        matches!(self, Exponent::Int(_))
    }

    /// Integer-valued reals collapse back to `Int`.
    pub fn from_f64(a: f64) -> Exponent {
        if a.fract() == 0.0 && a.abs() < i32::MAX as f64 {
            Exponent::Int(a as i32)
        } else {
            Exponent::Real(a)
        }
    }

    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Int(a), Exponent::Int(b)) => Exponent::Int(a + b),
            (a, b) => Exponent::from_f64(a.value() + b.value()),
        }
    }

    fn mul(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Int(a), Exponent::Int(b)) => Exponent::Int(a * b),
            (a, b) => Exponent::from_f64(a.value() * b.value()),
        }
    }

    fn is_zero(self) -> bool {
        self.value() == 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Base {
    /// The coordinate `z`.
    Z,
    /// `1 - slope*z`, vanishing at `1/slope`.
    Linear { slope: Complex64 },
    /// Finite Blaschke product with normalized factors `(|a|/a)(a-z)/(1-conj(a)z)`.
    Blaschke { zeros: Vec<Complex64> },
    /// A parenthesized sum that is not linear in `z`.
    Group(Box<SymbolExpr>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub base: Base,
    pub exponent: Exponent,
}

impl Factor {
    /// The root on the unit circle, if this is a boundary-rooted linear factor.
    pub fn boundary_root(&self) -> Option<Complex64> {
        match self.base {
            Base::Linear { slope } if (slope.norm() - 1.0).abs() <= BOUNDARY_TOL => {
                Some(slope.conj() / slope.norm_sqr())
            }
            _ => None,
        }
    }

    /// Root of a linear factor (`None` for other bases).
    pub fn root(&self) -> Option<Complex64> {
        match self.base {
            Base::Linear { slope } => Some(slope.inv()),
            _ => None,
        }
    }

    /// Whether the factor is singular somewhere in the open disk.
    pub fn interior_singularity(&self) -> Option<String> {
        let negative = self.exponent.value() < 0.0;
        match &self.base {
            Base::Z if negative => Some("negative power of z".into()),
            Base::Linear { slope } if negative && slope.norm() > 1.0 + BOUNDARY_TOL => {
                Some(format!("pole at {} inside the disk", slope.inv()))
            }
            Base::Blaschke { .. } if negative => {
                Some("negative power of a Blaschke product".into())
            }
            Base::Group(inner) => {
                if negative {
                    Some("negative power of a group".into())
                } else {
                    inner.interior_singularity()
                }
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Complex64,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn constant(c: Complex64) -> Term {
        Term { coeff: c, factors: Vec::new() }
    }

    fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Collect exponents of identical bases, flatten single-term groups and
    /// rewrite linear groups as linear factors.
    fn normalize(mut self) -> Result<Term> {
        let mut out: Vec<Factor> = Vec::with_capacity(self.factors.len());
        let mut pending: Vec<Factor> = std::mem::take(&mut self.factors);
        pending.reverse();
        while let Some(f) = pending.pop() {
            if f.exponent.is_zero() {
                continue;
            }
            match f.base {
                Base::Group(inner) => {
                    let inner = inner.normalized()?;
                    match lift_group(inner, f.exponent)? {
                        Lifted::Constant(c) => self.coeff *= c,
                        Lifted::Term(t) => {
                            self.coeff *= t.coeff;
                            pending.extend(t.factors);
                        }
                        Lifted::Group(g) => out.push(Factor {
                            base: Base::Group(Box::new(g)),
                            exponent: f.exponent,
                        }),
                    }
                }
                base => {
                    if let Some(existing) = out.iter_mut().find(|e| e.base == base) {
                        existing.exponent = existing.exponent.add(f.exponent);
                    } else {
                        out.push(Factor { base, exponent: f.exponent });
                    }
                }
            }
        }
        out.retain(|f| !f.exponent.is_zero());
        out.sort_by_key(factor_rank);
        for f in &out {
            validate_factor(f)?;
        }
        self.factors = out;
        Ok(self)
    }
}

fn factor_rank(f: &Factor) -> u8 {
    match f.base {
        Base::Z => 0,
        Base::Linear { .. } => 1,
        Base::Blaschke { .. } => 2,
        Base::Group(_) => 3,
    }
}

fn validate_factor(f: &Factor) -> Result<()> {
    match &f.base {
        Base::Blaschke { zeros } => {
            if let Some(a) = zeros.iter().find(|a| a.norm() >= 1.0) {
                return Err(Error::InvalidSymbol(format!(
                    "Blaschke zero {a} has modulus {} >= 1",
                    a.norm()
                )));
            }
        }
        Base::Linear { slope } if !slope.is_finite() || *slope == Complex64::new(0.0, 0.0) => {
            return Err(Error::InvalidSymbol("degenerate linear factor".into()));
        }
        _ => {}
    }
    if !f.exponent.is_integer() && f.boundary_root().is_none() {
        return Err(Error::InvalidSymbol(format!(
            "real exponent {} on a factor not rooted on the unit circle",
            f.exponent.value()
        )));
    }
    Ok(())
}

enum Lifted {
    Constant(Complex64),
    Term(Term),
    Group(SymbolExpr),
}

/// Raise a normalized group to a power, lifting it into the enclosing term
/// whenever it is a constant, a single term, or linear in `z`.
fn lift_group(inner: SymbolExpr, e: Exponent) -> Result<Lifted> {
    let zero = Complex64::new(0.0, 0.0);
    if inner.terms.is_empty() {
        if e.value() < 0.0 {
            return Err(Error::InvalidSymbol("negative power of zero".into()));
        }
        return Ok(Lifted::Constant(zero));
    }
    if let Some((a, b)) = inner.as_linear() {
        return if b == zero {
            Ok(Lifted::Constant(pow_complex(a, e)))
        } else if a == zero {
            Ok(Lifted::Term(Term {
                coeff: pow_complex(b, e),
                factors: vec![Factor { base: Base::Z, exponent: e }],
            }))
        } else {
            Ok(Lifted::Term(Term {
                coeff: pow_complex(a, e),
                factors: vec![Factor { base: Base::Linear { slope: -b / a }, exponent: e }],
            }))
        };
    }
    if inner.terms.len() == 1 {
        let t = inner.terms.into_iter().next().unwrap();
        let factors = t
            .factors
            .into_iter()
            .map(|f| Factor { base: f.base, exponent: f.exponent.mul(e) })
            .collect();
        return Ok(Lifted::Term(Term { coeff: pow_complex(t.coeff, e), factors }));
    }
    match e {
        Exponent::Int(k) if k > 0 => Ok(Lifted::Group(inner)),
        Exponent::Int(_) => Err(Error::InvalidSymbol(
            "negative power of a non-linear sum is unsupported".into(),
        )),
        Exponent::Real(_) => Err(Error::InvalidSymbol(
            "real exponent on a factor not rooted on the unit circle".into(),
        )),
    }
}

/// Principal-branch power of a complex constant.
pub(crate) fn pow_complex(c: Complex64, e: Exponent) -> Complex64 {
    match e {
        Exponent::Int(k) => c.powi(k),
        Exponent::Real(a) => {
            if c == Complex64::new(0.0, 0.0) {
                c
            } else {
                c.powf(a)
            }
        }
    }
}

/// A symbol: a finite sum of terms.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SymbolExpr {
    pub terms: Vec<Term>,
}

impl SymbolExpr {
    pub fn zero() -> SymbolExpr {
        SymbolExpr { terms: Vec::new() }
    }

    pub fn constant(c: impl Into<Complex64>) -> SymbolExpr {
        SymbolExpr { terms: vec![Term::constant(c.into())] }.normalized_unchecked()
    }

    pub fn z() -> SymbolExpr {
        SymbolExpr::z_pow(1)
    }

    pub fn z_pow(k: i32) -> SymbolExpr {
        SymbolExpr::from_factor(Factor { base: Base::Z, exponent: Exponent::Int(k) })
            .expect("powers of z are valid")
    }

    /// `(1 - z/root)^exponent`. Real exponents require `|root| = 1`.
    pub fn root_power(root: Complex64, exponent: Exponent) -> Result<SymbolExpr> {
        let slope = if (root.norm() - 1.0).abs() <= BOUNDARY_TOL {
            root.conj()
        } else {
            root.inv()
        };
        SymbolExpr::from_factor(Factor { base: Base::Linear { slope }, exponent })
    }

    pub fn blaschke(zeros: Vec<Complex64>) -> Result<SymbolExpr> {
        SymbolExpr::from_factor(Factor { base: Base::Blaschke { zeros }, exponent: Exponent::Int(1) })
    }

    pub fn from_factor(f: Factor) -> Result<SymbolExpr> {
        SymbolExpr { terms: vec![Term { coeff: Complex64::new(1.0, 0.0), factors: vec![f] }] }
            .normalized()
    }

    pub fn from_terms(terms: Vec<Term>) -> Result<SymbolExpr> {
        SymbolExpr { terms }.normalized()
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> SymbolExpr {
        let c = c.into();
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        out.normalized_unchecked()
    }

    pub fn add(&self, other: &SymbolExpr) -> SymbolExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SymbolExpr { terms }.normalized_unchecked()
    }

    pub fn sub(&self, other: &SymbolExpr) -> SymbolExpr {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &SymbolExpr) -> SymbolExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term { coeff: a.coeff * b.coeff, factors });
            }
        }
        SymbolExpr { terms }.normalized_unchecked()
    }

    /// Raise to an integer power.
    pub fn powi(&self, k: i32) -> Result<SymbolExpr> {
        SymbolExpr::from_factor(Factor {
            base: Base::Group(Box::new(self.clone())),
            exponent: Exponent::Int(k),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(Term::is_constant)
    }

    /// Normalize and validate: collect exponents, merge like terms, check
    /// Blaschke zeros and real-exponent placement.
    pub fn normalized(self) -> Result<SymbolExpr> {
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            let t = t.normalize()?;
            if let Some(existing) = merged.iter_mut().find(|e| e.factors == t.factors) {
                existing.coeff += t.coeff;
            } else {
                merged.push(t);
            }
        }
        merged.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        Ok(SymbolExpr { terms: merged })
    }

    /// For combinations of already-valid expressions, which stay valid.
    fn normalized_unchecked(self) -> SymbolExpr {
        self.normalized().expect("combination of valid symbols is valid")
    }

    /// `Some((a, b))` when the expression equals `a + b*z`.
    pub fn as_linear(&self) -> Option<(Complex64, Complex64)> {
        let mut a = Complex64::new(0.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            match t.factors.as_slice() {
                [] => a += t.coeff,
                [Factor { base: Base::Z, exponent: Exponent::Int(1) }] => b += t.coeff,
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Reason for the first singularity inside the open disk, if any.
    pub fn interior_singularity(&self) -> Option<String> {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter())
            .find_map(Factor::interior_singularity)
    }

    /// Distinct boundary roots appearing in any linear factor, with the most
    /// negative net exponent seen among the terms.
    pub fn boundary_exponents(&self) -> Vec<(Complex64, f64)> {
        let mut out: Vec<(Complex64, f64)> = Vec::new();
        for t in &self.terms {
            collect_boundary_exponents(t, 1.0, &mut out);
        }
        out
    }

    /// Every boundary factor exponent exceeds -1/2, so the symbol lies in L2
    /// of the circle.
    pub fn check_square_integrable(&self) -> Result<()> {
        for (root, e) in self.boundary_exponents() {
            if e <= -0.5 {
                return Err(Error::NotSquareIntegrable(format!(
                    "exponent {e} at boundary root {root}"
                )));
            }
        }
        Ok(())
    }

    /// Analytic in the open disk and square integrable on the circle.
    pub fn check_h2_claimed(&self) -> Result<()> {
        if let Some(why) = self.interior_singularity() {
            return Err(Error::InteriorSingularity(why));
        }
        self.check_square_integrable()
    }

    /// Blaschke zeros appearing anywhere in the expression.
    pub fn blaschke_zeros(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for t in &self.terms {
            for f in &t.factors {
                match &f.base {
                    Base::Blaschke { zeros } => out.extend(zeros.iter().copied()),
                    Base::Group(inner) => out.extend(inner.blaschke_zeros()),
                    _ => {}
                }
            }
        }
        out
    }
}

fn collect_boundary_exponents(t: &Term, scale: f64, out: &mut Vec<(Complex64, f64)>) {
    let mut local: Vec<(Complex64, f64)> = Vec::new();
    for f in &t.factors {
        match &f.base {
            Base::Group(inner) => {
                let mut nested = Vec::new();
                for it in &inner.terms {
                    collect_boundary_exponents(it, scale * f.exponent.value(), &mut nested);
                }
                for (r, e) in nested {
                    push_min(&mut local, r, e);
                }
            }
            _ => {
                if let Some(r) = f.boundary_root() {
                    push_min(&mut local, r, scale * f.exponent.value());
                }
            }
        }
    }
    for (r, e) in local {
        push_min(out, r, e);
    }
}

fn push_min(list: &mut Vec<(Complex64, f64)>, root: Complex64, e: f64) {
    if let Some(entry) = list.iter_mut().find(|(r, _)| (*r - root).norm() <= 1e-9) {
        entry.1 = entry.1.min(e);
    } else {
        list.push((root, e));
    }
}

impl std::str::FromStr for SymbolExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_symbol(s)
    }
}
