//! Local behaviour at points of the unit circle: orders of vanishing or
//! blow-up, leading coefficients, boundary poles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{pow_complex, Base, Exponent, SymbolExpr, Term, BOUNDARY_TOL};

/// Which part of an L2 symbol carries a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    Analytic,
    CoAnalytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub location: Complex64,
    pub order: u32,
    pub part: Part,
}

/// `f(z) ~ leading * (z - t)^order` as `z -> t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalExpansion {
    Exact { order: f64, leading: Complex64 },
    /// The expression is identically zero.
    Vanishes,
    /// Leading terms cancel and the structure does not resolve the order.
    Inconclusive,
}

/// Boundary limit of `f(z) / (z - t)^i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    Zero,
    Finite(Complex64),
    Infinite,
    Inconclusive,
}

impl Limit {
    pub fn is_zero(self) -> Option<bool> {
        match self {
            Limit::Zero => Some(true),
            Limit::Finite(_) | Limit::Infinite => Some(false),
            Limit::Inconclusive => None,
        }
    }
}

const ORDER_TOL: f64 = 1e-12;
const CANCEL_TOL: f64 = 1e-10;

impl LocalExpansion {
    pub fn limit_over_power(self, i: u32) -> Limit {
        match self {
            LocalExpansion::Vanishes => Limit::Zero,
            LocalExpansion::Inconclusive => Limit::Inconclusive,
            LocalExpansion::Exact { order, leading } => {
                let d = order - i as f64;
                if d > ORDER_TOL {
                    Limit::Zero
                } else if d < -ORDER_TOL {
                    Limit::Infinite
                } else {
                    Limit::Finite(leading)
                }
            }
        }
    }

    /// Expansion of `conj(f)` along the circle near `t`, using
    /// `conj(z - t) ~ -conj(t)^2 (z - t)` for `z` on the circle.
    pub fn conj_on_circle(self, t: Complex64) -> LocalExpansion {
        match self {
            LocalExpansion::Exact { order, leading } => {
                let rot = -(t.conj() * t.conj());
                if order.fract() == 0.0 {
                    LocalExpansion::Exact { order, leading: leading.conj() * rot.powi(order as i32) }
                } else {
                    // branch phase is only meaningful in magnitude here;
                    // callers must not add this to a same-order expansion
                    LocalExpansion::Exact { order, leading: leading.conj() * rot.powf(order) }
                }
            }
            other => other,
        }
    }

    /// Sum of two expansions; equal orders with cancelling leading terms are
    /// inconclusive.
    pub fn add(self, other: LocalExpansion) -> LocalExpansion {
        use LocalExpansion::*;
        match (self, other) {
            (Vanishes, x) | (x, Vanishes) => x,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Exact { order: a, leading: la }, Exact { order: b, leading: lb }) => {
                if (a - b).abs() <= ORDER_TOL {
                    let s = la + lb;
                    if s.norm() <= CANCEL_TOL * (la.norm() + lb.norm()) {
                        Inconclusive
                    } else {
                        Exact { order: a, leading: s }
                    }
                } else if a < b {
                    Exact { order: a, leading: la }
                } else {
                    Exact { order: b, leading: lb }
                }
            }
        }
    }
}

fn rooted_at(slope: Complex64, t: Complex64) -> bool {
    (Complex64::new(1.0, 0.0) - slope * t).norm() <= 1e3 * BOUNDARY_TOL
}

impl SymbolExpr {
    /// Local expansion at the boundary point `t`.
    pub fn local_expansion(&self, t: Complex64) -> LocalExpansion {
        if self.terms.is_empty() {
            return LocalExpansion::Vanishes;
        }
        if let Some(poly) = self.polynomial_coefficients() {
            return polynomial_expansion(&poly, t);
        }
        self.terms
            .iter()
            .map(|term| term.local_expansion(t))
            .fold(LocalExpansion::Vanishes, LocalExpansion::add)
    }

    /// No term blows up at `t`.
    pub fn is_bounded_near(&self, t: Complex64) -> bool {
        self.terms.iter().all(|term| match term.local_expansion(t) {
            LocalExpansion::Exact { order, .. } => order >= -ORDER_TOL,
            LocalExpansion::Vanishes => true,
            LocalExpansion::Inconclusive => false,
        })
    }

    /// Limit of `self(z) / (z - t)^i` as `z -> t`.
    pub fn limit_over_power(&self, t: Complex64, i: u32) -> Limit {
        self.local_expansion(t).limit_over_power(i)
    }

    fn polynomial_degree(&self) -> Option<usize> {
        let mut deg = 0usize;
        for t in &self.terms {
            let mut d = 0usize;
            for f in &t.factors {
                let k = match f.exponent {
                    Exponent::Int(k) if k >= 0 => k as usize,
                    _ => return None,
                };
                d += match &f.base {
                    Base::Z | Base::Linear { .. } => k,
                    Base::Group(inner) => k * inner.polynomial_degree()?,
                    Base::Blaschke { .. } => return None,
                };
            }
            deg = deg.max(d);
        }
        Some(deg)
    }

    /// Coefficients when the expression is a polynomial in `z`.
    pub fn polynomial_coefficients(&self) -> Option<Vec<Complex64>> {
        let d = self.polynomial_degree()?;
        self.taylor_coefficients(d).ok()
    }
}

impl Term {
    fn local_expansion(&self, t: Complex64) -> LocalExpansion {
        let mut order = 0.0;
        let mut leading = self.coeff;
        for f in &self.factors {
            match &f.base {
                Base::Linear { slope } if rooted_at(*slope, t) => {
                    order += f.exponent.value();
                    leading *= pow_complex(-*slope, f.exponent);
                }
                Base::Group(inner) => match inner.local_expansion(t) {
                    LocalExpansion::Exact { order: o, leading: l } => {
                        let k = f.exponent.value();
                        order += o * k;
                        leading *= pow_complex(l, f.exponent);
                    }
                    other => return other,
                },
                _ => match f.eval(t) {
                    Ok(v) => leading *= v,
                    Err(_) => return LocalExpansion::Inconclusive,
                },
            }
        }
        LocalExpansion::Exact { order, leading }
    }
}

/// Order of vanishing at `t` from the Taylor expansion about `t`.
fn polynomial_expansion(coeffs: &[Complex64], t: Complex64) -> LocalExpansion {
    let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
    if scale == 0.0 {
        return LocalExpansion::Vanishes;
    }
    let mut work: Vec<Complex64> = coeffs.to_vec();
    for k in 0..work.len() {
        // synthetic division by (z - t) yields successive shifted coefficients
        for j in (k..work.len() - 1).rev() {
            let next = work[j + 1];
            work[j] += next * t;
        }
        if work[k].norm() > CANCEL_TOL * scale {
            return LocalExpansion::Exact { order: k as f64, leading: work[k] };
        }
    }
    LocalExpansion::Vanishes
}

/// Boundary poles: each root on the circle with negative net exponent,
/// of order `ceil(-exponent)`.
pub fn detect_poles(expr: &SymbolExpr, part: Part) -> Vec<PoleRecord> {
    expr.boundary_exponents()
        .into_iter()
        .filter(|&(_, e)| e < 0.0)
        .map(|(location, e)| PoleRecord { location, order: (-e).ceil() as u32, part })
        .collect()
}
