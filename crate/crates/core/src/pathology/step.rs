use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First arc index of the construction.
pub const FIRST_K: usize = 3;

/// One arc of the step function: centered at `e^{i phi}` with
/// `|center - 1| = 1/k`, normalized measure `measure`, value `value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepArc {
    pub k: usize,
    pub phi: f64,
    pub center: Complex64,
    pub measure: f64,
    pub value: f64,
}

impl StepArc {
    fn half_width(&self) -> f64 {
        PI * self.measure
    }

    /// `value * sqrt(measure) = 1/k`, computed without forming `value^2`.
    fn root_mass(&self) -> f64 {
        self.value * self.measure.sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunctionSpec {
    pub arcs: Vec<StepArc>,
}

impl StepFunctionSpec {
    /// `integral |f|^2 dm = sum c_k^2 m_k`.
    pub fn norm_sqr(&self) -> f64 {
        self.arcs.iter().map(|a| a.root_mass().powi(2)).sum()
    }

    pub fn is_disjoint(&self) -> bool {
        arcs_disjoint(&self.arcs)
    }

    /// `(k, |c_k (x_k - 1)^n|) = (k, k!/k^n)` for every arc.
    pub fn growth(&self, n: u32) -> Vec<(usize, f64)> {
        self.arcs.iter().map(|a| (a.k, a.value * (a.k as f64).powi(-(n as i32)))).collect()
    }

    /// `f(e^{i theta})`.
    pub fn value_at(&self, theta: f64) -> f64 {
        let t = theta.rem_euclid(2.0 * PI);
        self.arcs
            .iter()
            .find(|a| (t - a.phi).abs() < a.half_width())
            .map_or(0.0, |a| a.value)
    }
}

fn arcs_disjoint(arcs: &[StepArc]) -> bool {
    let positive = arcs.last().is_none_or(|a| a.phi - a.half_width() > 0.0);
    positive && arcs.windows(2).all(|w| w[0].phi - w[0].half_width() > w[1].phi + w[1].half_width())
}

fn arc(k: usize, factorial: f64) -> Option<StepArc> {
    let kf = k as f64;
    let phi = 2.0 * (1.0 / (2.0 * kf)).asin();
    let measure = (1.0 / (factorial * kf)).powi(2);
    (factorial.is_finite() && measure.is_normal()).then(|| StepArc {
        k,
        phi,
        center: Complex64::from_polar(1.0, phi),
        measure,
        value: factorial,
    })
}

/// Arcs `k = 3..=big_k` with `c_k = k!` and `m_k = 1/((k!)^2 k^2)`, so that
/// the squared norm is `sum 1/k^2`.
pub fn infinite_pole_step_function(big_k: usize) -> Result<StepFunctionSpec> {
    if big_k < 4 {
        return Err(Error::InvalidArgument(format!("K must be at least 4, got {big_k}")));
    }
    let mut arcs: Vec<StepArc> = Vec::new();
    let mut factorial: f64 = (2..FIRST_K).map(|j| j as f64).product();
    for k in FIRST_K..=big_k {
        factorial *= k as f64;
        match arc(k, factorial) {
            Some(a) => {
                arcs.push(a);
                if !arcs_disjoint(&arcs) {
                    return Err(Error::Infeasible { requested: big_k, max_feasible: k - 1 });
                }
            }
            None => return Err(Error::Infeasible { requested: big_k, max_feasible: k - 1 }),
        }
    }
    Ok(StepFunctionSpec { arcs })
}
