//! The four-clause admissibility test for a pair `(u, v)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{detect_poles, L2Symbol, Limit, LocalExpansion, Part, PoleRecord, SymbolExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Pole { location: Complex64, order: u32, part: Part },
    /// Which sub-clause of (d) decided it: 1 or 2.
    Clause { index: u8 },
    /// Clause (d)(2) failed at pole `location` for the power `i`.
    Limit { location: Complex64, i: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl Clause {
    fn holds(witness: Option<Witness>) -> Clause {
        Clause { status: Status::Holds, witness }
    }

    fn fails(witness: Witness) -> Clause {
        Clause { status: Status::Fails, witness: Some(witness) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub condition_a: Clause,
    pub condition_b: Clause,
    pub condition_c: Clause,
    pub condition_d: Clause,
    pub overall: bool,
    pub poles_u: Vec<PoleRecord>,
    pub poles_v: Vec<PoleRecord>,
    /// Some boundary limit in (d)(2) needed the radial numeric fallback.
    pub radial_fallback: bool,
}

/// Every term of `expr` stays bounded near `t`.
fn analytic_at(expr: &SymbolExpr, t: Complex64) -> bool {
    expr.is_bounded_near(t)
}

pub fn check_admissible(u: &SymbolExpr, v: &L2Symbol) -> Result<AdmissibilityReport> {
    u.check_h2_claimed().or_else(|e| match e {
        Error::NotSquareIntegrable(_) => Ok(()),
        other => Err(other),
    })?;
    let poles_u = detect_poles(u, Part::Analytic);
    let mut poles_v = detect_poles(&v.plus, Part::Analytic);
    poles_v.extend(detect_poles(&v.minus, Part::CoAnalytic));

    // structured symbols have finitely many poles, each of finite order
    let condition_a = Clause::holds(None);

    let condition_b = match poles_v.iter().find(|p| !analytic_at(u, p.location)) {
        Some(p) => Clause::fails(Witness::Pole { location: p.location, order: p.order, part: p.part }),
        None if poles_v.is_empty() => Clause { status: Status::NotApplicable, witness: None },
        None => Clause::holds(None),
    };

    let condition_c = match poles_u
        .iter()
        .find(|p| !(analytic_at(&v.plus, p.location) && analytic_at(&v.minus, p.location)))
    {
        Some(p) => Clause::fails(Witness::Pole { location: p.location, order: p.order, part: p.part }),
        None if poles_u.is_empty() => Clause { status: Status::NotApplicable, witness: None },
        None => Clause::holds(None),
    };

    let mut radial_fallback = false;
    let condition_d = if v.is_coanalytic() {
        Clause::holds(Some(Witness::Clause { index: 1 }))
    } else {
        let mut failure = None;
        'poles: for p in &poles_u {
            for i in 0..p.order {
                let (whole, used) = limit_of_v(v, p.location, i);
                radial_fallback |= used;
                if whole != Limit::Zero {
                    continue;
                }
                let plus = v.plus.limit_over_power(p.location, i);
                let minus = v.minus.limit_over_power(p.location, i);
                if plus != Limit::Zero || minus != Limit::Zero {
                    failure = Some(Witness::Limit { location: p.location, i });
                    break 'poles;
                }
            }
        }
        match failure {
            Some(w) => Clause::fails(w),
            None => Clause::holds(Some(Witness::Clause { index: 2 })),
        }
    };

    let overall = [&condition_a, &condition_b, &condition_c, &condition_d]
        .iter()
        .all(|c| c.status != Status::Fails);
    Ok(AdmissibilityReport {
        condition_a,
        condition_b,
        condition_c,
        condition_d,
        overall,
        poles_u,
        poles_v,
        radial_fallback,
    })
}

/// Limit of `v(z)/(z-t)^i` at `t`: symbolic when the expansions decide it,
/// otherwise radial. The flag reports use of the radial route.
fn limit_of_v(v: &L2Symbol, t: Complex64, i: u32) -> (Limit, bool) {
    let plus = v.plus.local_expansion(t);
    let minus = v.minus.local_expansion(t).conj_on_circle(t);
    let same_real_order = matches!(
        (plus, minus),
        (LocalExpansion::Exact { order: a, .. }, LocalExpansion::Exact { order: b, .. })
            if (a - b).abs() < 1e-12 && a.fract() != 0.0
    );
    let sum = plus.add(minus);
    if sum != LocalExpansion::Inconclusive && !same_real_order {
        return (sum.limit_over_power(i), false);
    }
    (radial_limit(v, t, i), true)
}

/// `q(r) = v(r t) / (r t - t)^i` along `r_j = 1 - 2^-j`, `j <= 20`, with
/// one Richardson step on the last two values.
pub fn radial_limit(v: &L2Symbol, t: Complex64, i: u32) -> Limit {
    let q = |j: i32| -> Option<Complex64> {
        let r = 1.0 - 0.5f64.powi(j);
        let x = t * r;
        let val = v.eval_disk(x).ok()?;
        Some(val / (x - t).powi(i as i32))
    };
    let (Some(a), Some(b)) = (q(19), q(20)) else {
        return Limit::Inconclusive;
    };
    let extrapolated = 2.0 * b - a;
    let scale = q(4).map_or(1.0, |c| c.norm().max(1.0));
    if !b.is_finite() || b.norm() > 1e4 * scale && b.norm() > 1.5 * a.norm() {
        return Limit::Infinite;
    }
    if extrapolated.norm() <= 1e-6 * scale {
        Limit::Zero
    } else if (a - b).norm() <= 1e-3 * b.norm() {
        Limit::Finite(extrapolated)
    } else {
        Limit::Inconclusive
    }
}
