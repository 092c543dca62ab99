use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analyzer::Thresholds;
use crate::error::{Error, Result};
use crate::symbol::{unit_root, SymbolExpr};

/// Samples per dyadic arc.
pub const ARC_SAMPLES: usize = 64;
/// Deepest dyadic arc scanned.
pub const MAX_DEPTH: u32 = 30;
/// A sample is small when it is at most this fraction of its arc's sup.
const SMALL: f64 = 0.1;
/// A sample is large when it is at least this fraction of its arc's sup.
const LARGE: f64 = 0.5;
const MIN_ARCS: usize = 4;
/// Fewest grid points per arc when scanning boundary samples.
const MIN_GRID_POINTS: usize = 8;

pub enum ScanTarget<'a> {
    Expr(&'a SymbolExpr),
    /// Values at the `len()`-th roots of unity; `None` marks a pole.
    Samples(&'a [Option<Complex64>]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanVerdict {
    Bounded,
    MonotoneBlowup,
    Oscillatory,
    Inconclusive,
}

/// `sup` and `inf` of `|(z - zeta)^n f(z)|` over the arc at distances
/// `(dist_near, dist_far]` from `zeta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcEstimate {
    pub k: u32,
    pub dist_near: f64,
    pub dist_far: f64,
    pub sup: f64,
    pub inf: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessArc {
    /// Endpoint angles relative to `zeta`, far end first.
    pub phi_far: f64,
    pub phi_near: f64,
    pub dist_far: f64,
    pub dist_near: f64,
    pub sup: f64,
    pub inf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcScanResult {
    pub zeta: Complex64,
    pub n: u32,
    pub arcs: Vec<ArcEstimate>,
    /// Arcs where the weighted function is small, nearest last.
    pub small_arcs: Vec<WitnessArc>,
    /// Arcs where it is large; `large_arcs[k]` lies between `small_arcs[k]`
    /// and `small_arcs[k + 1]`.
    pub large_arcs: Vec<WitnessArc>,
    pub verdict: ScanVerdict,
    /// Distances below this were not scanned.
    pub resolution_floor: f64,
    pub note: Option<String>,
}

impl ArcScanResult {
    /// Number of complete (small, large) witness pairs.
    pub fn interleaved_pairs(&self) -> usize {
        self.large_arcs.len()
    }
}

struct Sample {
    phi: f64,
    dist: f64,
    value: f64,
    arc: usize,
}

fn dist_of(phi: f64) -> f64 {
    2.0 * (phi / 2.0).sin()
}

fn phi_of(dist: f64) -> f64 {
    2.0 * (dist / 2.0).asin()
}

/// Scan `|(z - zeta)^n f(z)|` on dyadic arcs `2^-(k+1) < |z - zeta| <= 2^-k`
/// on the positive-argument side of `zeta`, for all arcs within `eps`.
pub fn oscillation_scan(f: ScanTarget<'_>, zeta: Complex64, n: u32, eps: f64) -> Result<ArcScanResult> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("{zeta} is not on the unit circle")));
    }
    let first = (-eps.min(1.0).log2()).ceil().max(1.0) as u32;
    let floor = match &f {
        ScanTarget::Expr(e) => e
            .blaschke_zeros()
            .iter()
            .map(|a| (a - zeta).norm())
            .fold(0.0f64, |m, d| if m == 0.0 { d } else { m.min(d) }),
        ScanTarget::Samples(s) => {
            // the arc must hold MIN_GRID_POINTS grid points
            dist_of(2.0 * MIN_GRID_POINTS as f64 * std::f64::consts::TAU / s.len().max(1) as f64)
        }
    };
    let ks: Vec<u32> = (first..=MAX_DEPTH).filter(|&k| 0.5f64.powi(k as i32 + 1) >= floor).collect();

    let weight = |z: Complex64| (z - zeta).norm().powi(n as i32);
    let per_arc: Vec<Vec<Sample>> = ks
        .par_iter()
        .enumerate()
        .map(|(idx, &k)| {
            let far = 0.5f64.powi(k as i32);
            let near = far / 2.0;
            let (p_near, p_far) = (phi_of(near), phi_of(far));
            let mut out = Vec::new();
            match &f {
                ScanTarget::Expr(e) => {
                    for j in (0..ARC_SAMPLES).rev() {
                        let phi = p_near + (j as f64 + 0.5) * (p_far - p_near) / ARC_SAMPLES as f64;
                        let z = zeta * Complex64::from_polar(1.0, phi);
                        if let Some(v) = e.eval_finite(z) {
                            out.push(Sample { phi, dist: dist_of(phi), value: v.norm() * weight(z), arc: idx });
                        }
                    }
                }
                ScanTarget::Samples(s) => {
                    let g = s.len();
                    let base = zeta.arg();
                    for (j, v) in s.iter().enumerate() {
                        let z = unit_root(j, g);
                        let phi = (z.arg() - base).rem_euclid(std::f64::consts::TAU);
                        let d = dist_of(phi);
                        if phi < std::f64::consts::PI && d > near && d <= far {
                            if let Some(v) = v {
                                out.push(Sample { phi, dist: d, value: v.norm() * weight(z), arc: idx });
                            }
                        }
                    }
                    out.sort_by(|a, b| b.phi.total_cmp(&a.phi));
                }
            }
            out
        })
        .collect();

    let arcs: Vec<ArcEstimate> = ks
        .iter()
        .zip(&per_arc)
        .map(|(&k, s)| ArcEstimate {
            k,
            dist_near: 0.5f64.powi(k as i32 + 1),
            dist_far: 0.5f64.powi(k as i32),
            sup: s.iter().map(|x| x.value).fold(0.0, f64::max),
            inf: s.iter().map(|x| x.value).fold(f64::INFINITY, f64::min),
            samples: s.len(),
        })
        .collect();

    let mut result = ArcScanResult {
        zeta,
        n,
        arcs,
        small_arcs: Vec::new(),
        large_arcs: Vec::new(),
        verdict: ScanVerdict::Inconclusive,
        resolution_floor: floor,
        note: None,
    };
    let usable = result.arcs.iter().filter(|a| a.samples > 0).count();
    if usable < MIN_ARCS {
        result.note = Some(format!("only {usable} resolvable arcs, need {MIN_ARCS}"));
        return Ok(result);
    }

    let sups: Vec<f64> = result.arcs.iter().map(|a| a.sup).collect();
    let tail = (sups.len() / 3).max(1);
    let head_max = sups[..sups.len() - tail].iter().copied().fold(0.0, f64::max);
    let tail_max = sups[sups.len() - tail..].iter().copied().fold(0.0, f64::max);
    let th = Thresholds::default();
    let growth = if head_max > 0.0 { tail_max / head_max } else if tail_max > 0.0 { f64::INFINITY } else { 1.0 };

    if growth <= 1.0 + th.stabilize {
        result.verdict = ScanVerdict::Bounded;
    } else if growth >= 1.0 + th.growth {
        let samples: Vec<&Sample> = per_arc.iter().flatten().collect();
        let (small, large) = interleave(&samples, &sups);
        if large.len() >= 2 {
            result.verdict = ScanVerdict::Oscillatory;
            result.small_arcs = small;
            result.large_arcs = large;
        } else {
            result.verdict = ScanVerdict::MonotoneBlowup;
        }
    } else {
        result.note = Some(format!("sup over the nearest arcs changes by a factor {growth:.4}"));
    }
    Ok(result)
}

/// Greedy alternating runs of small and large samples, far to near,
/// starting with a small run.
fn interleave(samples: &[&Sample], sups: &[f64]) -> (Vec<WitnessArc>, Vec<WitnessArc>) {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut want_small = true;
    let mut run: Vec<&Sample> = Vec::new();
    let wanted = |s: &Sample, want_small: bool| {
        let sup = sups[s.arc];
        if want_small {
            s.value <= SMALL * sup
        } else {
            s.value >= LARGE * sup && s.value > 0.0
        }
    };
    let close = |run: &mut Vec<&Sample>, small: &mut Vec<WitnessArc>, large: &mut Vec<WitnessArc>, want_small: bool| {
        let (first, last) = (run[0], run[run.len() - 1]);
        let w = WitnessArc {
            phi_far: first.phi,
            phi_near: last.phi,
            dist_far: first.dist,
            dist_near: last.dist,
            sup: run.iter().map(|s| s.value).fold(0.0, f64::max),
            inf: run.iter().map(|s| s.value).fold(f64::INFINITY, f64::min),
        };
        if want_small {
            small.push(w)
        } else {
            large.push(w)
        }
        run.clear();
    };
    for &s in samples {
        if wanted(s, want_small) {
            run.push(s);
        } else if !run.is_empty() {
            close(&mut run, &mut small, &mut large, want_small);
            want_small = !want_small;
            if wanted(s, want_small) {
                run.push(s);
            }
        }
    }
    if !run.is_empty() {
        close(&mut run, &mut small, &mut large, want_small);
    }
    (small, large)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathology::{dyadic_zeros, pole_order_function};
    use crate::symbol::parse_symbol;

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn order_one_pole() {
        let f = parse_symbol("(1-z)^-0.3333333333333333").unwrap();
        let r = oscillation_scan(ScanTarget::Expr(&f), ONE, 1, 0.5).unwrap();
        assert_eq!(r.verdict, ScanVerdict::Bounded);
        let r = oscillation_scan(ScanTarget::Expr(&f), ONE, 0, 0.5).unwrap();
        assert_eq!(r.verdict, ScanVerdict::MonotoneBlowup);
        assert_eq!(r.arcs.len(), MAX_DEPTH as usize);
    }

    #[test]
    fn blaschke_quotient_oscillates() {
        let f = pole_order_function(&dyadic_zeros(8), 1).unwrap();
        let r = oscillation_scan(ScanTarget::Expr(&f), ONE, 0, 0.5).unwrap();
        assert_eq!(r.verdict, ScanVerdict::Oscillatory, "{r:?}");
        assert!(r.interleaved_pairs() >= 3, "{}", r.interleaved_pairs());
        for (k, y) in r.large_arcs.iter().enumerate() {
            assert!(y.dist_far < r.small_arcs[k].dist_near);
            if let Some(x) = r.small_arcs.get(k + 1) {
                assert!(x.dist_far < y.dist_near);
            }
        }
        let r = oscillation_scan(ScanTarget::Expr(&f), ONE, 1, 0.5).unwrap();
        assert_eq!(r.verdict, ScanVerdict::Bounded);
    }

    #[test]
    fn samples_agree_with_expression() {
        let f = parse_symbol("(1-z)^-0.3333333333333333").unwrap();
        let s = crate::symbol::boundary_sample(&f, 1 << 16).unwrap();
        let r = oscillation_scan(ScanTarget::Samples(&s), ONE, 0, 0.5).unwrap();
        assert_eq!(r.verdict, ScanVerdict::MonotoneBlowup);
        let r = oscillation_scan(ScanTarget::Samples(&s[..16]), ONE, 0, 0.5).unwrap();
        assert_eq!(r.verdict, ScanVerdict::Inconclusive);
    }
}
