//! `|<T_u T_v k_x, k_x>| / ||k_x||^2 = |u(x) v(x)|` gives a lower bound for
//! the operator norm at every point of the disk.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::symbol::{L2Symbol, SymbolExpr};

/// Largest radius whose kernel is resolved at degree `n`: the discarded tail
/// of the normalized kernel has relative size `r^(n+1) <= 1e-3`.
pub fn default_r_max(n: usize) -> f64 {
    1e-3f64.powf(1.0 / (n as f64 + 1.0))
}

/// Polar grid up to `r_max`: uniform radii and angles, plus radii accumulating
/// at `r_max` and rays through the boundary roots of the symbols.
pub fn disk_grid(u: &SymbolExpr, v: &L2Symbol, r_max: f64, radii: usize, angles: usize) -> Vec<Complex64> {
    let mut rs: Vec<f64> = (0..=radii).map(|i| r_max * i as f64 / radii.max(1) as f64).collect();
    let mut gap = (1.0 - r_max) * 2.0;
    while gap < 0.5 {
        rs.push(1.0 - gap);
        gap *= 2.0;
    }
    let mut dirs: Vec<Complex64> = (0..angles.max(1))
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / angles.max(1) as f64))
        .collect();
    dirs.extend(u.boundary_exponents().into_iter().map(|(t, _)| t));
    dirs.extend(v.boundary_roots());
    let mut out = Vec::with_capacity(rs.len() * dirs.len());
    for &r in &rs {
        for &d in &dirs {
            out.push(d * r);
        }
    }
    out
}

/// `max |u(x) (v_+(x) + conj(v_-(x)))|` over the points.
pub fn kernel_lower_bound(u: &SymbolExpr, v: &L2Symbol, points: &[Complex64]) -> f64 {
    points
        .par_iter()
        .filter(|x| x.norm() < 1.0)
        .filter_map(|&x| Some((u.eval(x).ok()? * v.eval_disk(x).ok()?).norm()))
        .filter(|m| m.is_finite())
        .reduce(|| 0.0, f64::max)
}
