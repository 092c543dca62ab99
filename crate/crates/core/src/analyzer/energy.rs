//! The three-way split of `integral |u P(v f)|^2 dm` around the poles of
//! `u` and `v`, and the choice of the radius of the excluded arcs.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{fourier_coefficients, FourierSeries};
use crate::symbol::{detect_poles, L2Symbol, Part, PoleRecord, SymbolExpr};

pub const EPS_START: f64 = 0.1;
pub const EPS_FLOOR: f64 = 1e-4;

/// Depth of the dyadic approach used to decide boundedness on an arc.
const APPROACH_DEPTH: i32 = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonChoice {
    pub eps: f64,
    pub valid: bool,
    pub halvings: u32,
    /// Conditions that failed at the last radius tried.
    pub failures: Vec<String>,
}

/// `sup |f|` over the two arcs of `B_eps(t)` approached dyadically, and the
/// same sup restricted to the inner third of the approach. Growth between the
/// two marks the function as unbounded near `t`.
fn bounded_near<F: Fn(Complex64) -> Option<Complex64>>(f: F, t: Complex64, eps: f64) -> bool {
    let mut outer = 0.0f64;
    let mut inner = 0.0f64;
    for k in 0..=APPROACH_DEPTH {
        // chord eps corresponds to angle 2 asin(eps / 2)
        let angle = 2.0 * (eps / 2.0).min(1.0).asin() * 0.5f64.powi(k) * 0.999;
        for s in [1.0, -1.0] {
            let z = t * Complex64::from_polar(1.0, s * angle);
            let Some(v) = f(z) else { return false };
            let m = v.norm();
            if !m.is_finite() {
                return false;
            }
            if k <= APPROACH_DEPTH / 3 {
                outer = outer.max(m);
            } else if k >= 2 * APPROACH_DEPTH / 3 {
                inner = inner.max(m);
            }
        }
    }
    inner <= 10.0 * outer.max(1e-300) || inner < 1e-12
}

fn pow_at(z: Complex64, t: Complex64, k: u32) -> Complex64 {
    (z - t).powi(k as i32)
}

/// Start from `min(0.1, half the least distance between poles)` and halve
/// until the arc conditions of the decomposition hold.
pub fn pick_epsilon(u: &SymbolExpr, v: &L2Symbol) -> EpsilonChoice {
    let e = detect_poles(u, Part::Analytic);
    let mut f = detect_poles(&v.plus, Part::Analytic);
    f.extend(detect_poles(&v.minus, Part::CoAnalytic));
    let f = merge_poles(f);
    let all: Vec<Complex64> = e.iter().chain(&f).map(|p| p.location).collect();
    let mut eps = EPS_START;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let d = (a - b).norm();
            if d > 1e-12 {
                eps = eps.min(d / 2.0);
            }
        }
    }
    let mut halvings = 0;
    let mut failures;
    loop {
        failures = arc_failures(u, v, &e, &f, eps);
        if failures.is_empty() {
            return EpsilonChoice { eps, valid: true, halvings, failures };
        }
        if eps / 2.0 < EPS_FLOOR {
            return EpsilonChoice { eps, valid: false, halvings, failures };
        }
        eps /= 2.0;
        halvings += 1;
    }
}

/// Poles of `v` from both parts at the same point merge to the larger order.
fn merge_poles(list: Vec<PoleRecord>) -> Vec<PoleRecord> {
    let mut out: Vec<PoleRecord> = Vec::new();
    for p in list {
        match out.iter_mut().find(|q| (q.location - p.location).norm() < 1e-12) {
            Some(q) => q.order = q.order.max(p.order),
            None => out.push(p),
        }
    }
    out
}

fn arc_failures(u: &SymbolExpr, v: &L2Symbol, e: &[PoleRecord], f: &[PoleRecord], eps: f64) -> Vec<String> {
    let mut out = Vec::new();
    for p in e {
        let (t, k) = (p.location, p.order);
        if !bounded_near(|z| Some(v.plus.eval_finite(z)? / pow_at(z, t, k)), t, eps) {
            out.push(format!("v+ / (z - {t})^{k} unbounded near {t}"));
        }
        if !bounded_near(|z| Some(v.minus.eval_finite(z)? / pow_at(z, t, k)), t, eps) {
            out.push(format!("v- / (z - {t})^{k} unbounded near {t}"));
        }
        if !bounded_near(|z| Some(u.eval_finite(z)? * pow_at(z, t, k)), t, eps) {
            out.push(format!("u (z - {t})^{k} unbounded near {t}"));
        }
    }
    for p in f {
        let (s, n) = (p.location, p.order);
        if !bounded_near(|z| Some(u.eval_finite(z)? / pow_at(z, s, n)), s, eps) {
            out.push(format!("u / (z - {s})^{n} unbounded near {s}"));
        }
        if !bounded_near(|z| Some(v.eval_boundary(z)? * pow_at(z, s, n)), s, eps) {
            out.push(format!("v (z - {s})^{n} unbounded near {s}"));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyParts {
    /// Circle minus the arcs around all poles.
    pub outside: f64,
    /// Arcs around poles of `v` (not already counted near poles of `u`).
    pub near_v_poles: f64,
    /// Arcs around poles of `u`.
    pub near_u_poles: f64,
    pub total: f64,
    pub grid: usize,
}

/// Grid quadrature of `|u P(v f)|^2` split over `B_eps(E)`, `B_eps(F)` and the
/// rest. Each grid point falls in exactly one part, so the parts add up to
/// the total.
pub fn energy_decomposition(u: &SymbolExpr, v: &L2Symbol, f: &FourierSeries, eps: f64, grid: usize) -> Result<EnergyParts> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if grid < 8 || !grid.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("grid {grid} must be a power of two >= 8")));
    }
    let fa = f.analytic_part();
    let deg = grid / 4;
    let vs = fourier_coefficients(v, deg + fa.len())?;
    // coefficients 0..deg of P(v f)
    let mut buf = vec![Complex64::new(0.0, 0.0); grid];
    for (n, slot) in buf.iter_mut().enumerate().take(deg + 1) {
        *slot = fa.iter().enumerate().map(|(k, &c)| vs.get(n as i64 - k as i64) * c).sum();
    }
    FftPlanner::new().plan_fft_inverse(grid).process(&mut buf);

    let e: Vec<Complex64> = detect_poles(u, Part::Analytic).iter().map(|p| p.location).collect();
    let mut fp = detect_poles(&v.plus, Part::Analytic);
    fp.extend(detect_poles(&v.minus, Part::CoAnalytic));
    let fl: Vec<Complex64> = fp.iter().map(|p| p.location).collect();
    let near = |z: Complex64, set: &[Complex64]| set.iter().any(|t| (z - t).norm() < eps);

    let (mut out, mut nf, mut ne) = (0.0, 0.0, 0.0);
    for (j, g) in buf.iter().enumerate() {
        let z = crate::symbol::unit_root(j, grid);
        let Some(uz) = u.eval_finite(z) else { continue };
        let val = (uz * g).norm_sqr() / grid as f64;
        if near(z, &e) {
            ne += val;
        } else if near(z, &fl) {
            nf += val;
        } else {
            out += val;
        }
    }
    Ok(EnergyParts { outside: out, near_v_poles: nf, near_u_poles: ne, total: out + nf + ne, grid })
}
