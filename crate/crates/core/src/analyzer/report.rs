//! The full pipeline: admissibility, the five condition estimates, verdict.

use serde::{Deserialize, Serialize};

use super::admissible::{check_admissible, AdmissibilityReport};
use super::esssup::{ess_sup_product, EssSupTable};
use super::kernel_bound::{default_r_max, disk_grid, kernel_lower_bound};
use super::norm::section_norm;
use super::product::product_section;
use super::sarason::{default_radii, sarason_scan, SarasonTable};
use super::trend::{Thresholds, Trend};
use super::weighted::{carleson_constant, two_weighted_projection_norm};
use crate::error::{Error, Result};
use crate::symbol::{L2Symbol, SymbolExpr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Input degrees `N` of the section table.
    pub degrees: Vec<usize>,
    /// `M = output_factor * N`.
    pub output_factor: usize,
    pub norm_tol: f64,
    pub ess_grids: Vec<usize>,
    pub thresholds: Thresholds,
    /// Radii of the Sarason scan, strictly increasing in `(0, 1)`.
    pub sarason_radii: Vec<f64>,
    pub sarason_angles: usize,
    pub kernel_radii: usize,
    pub kernel_angles: usize,
}

impl AnalysisConfig {
    /// Degrees `32, 64, ..., max_degree`; `max_degree` must be a power of two
    /// of at least 32.
    pub fn with_max_degree(mut self, max_degree: usize) -> Result<Self> {
        if max_degree < 32 || !max_degree.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "max degree must be a power of two >= 32, got {max_degree}"
            )));
        }
        self.degrees = std::iter::successors(Some(32usize), |&n| Some(2 * n))
            .take_while(|&n| n <= max_degree)
            .collect();
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.degrees.is_empty() || self.degrees.contains(&0) {
            return bad("degrees must be nonempty and positive".into());
        }
        if self.output_factor == 0 {
            return bad("output factor must be positive".into());
        }
        if !(self.norm_tol > 0.0) {
            return bad(format!("norm tolerance must be positive, got {}", self.norm_tol));
        }
        if self.ess_grids.iter().any(|&g| g < 8 || !g.is_power_of_two()) {
            return bad("ess_sup grids must be powers of two >= 8".into());
        }
        if self.sarason_radii.iter().any(|&r| !(r > 0.0 && r < 1.0))
            || self.sarason_radii.windows(2).any(|w| w[1] <= w[0])
        {
            return bad("radii must be strictly increasing in (0, 1)".into());
        }
        let th = &self.thresholds;
        if !(th.stabilize > 0.0 && th.growth > th.stabilize) {
            return bad("thresholds need 0 < stabilize < growth".into());
        }
        if self.sarason_angles == 0 || self.kernel_radii == 0 || self.kernel_angles == 0 {
            return bad("scan sizes must be positive".into());
        }
        Ok(())
    }
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            degrees: vec![32, 64, 128, 256],
            output_factor: 2,
            norm_tol: 1e-10,
            ess_grids: (10..=16).map(|k| 1usize << k).collect(),
            thresholds: Thresholds::default(),
            sarason_radii: default_radii(12),
            sarason_angles: 64,
            kernel_radii: 32,
            kernel_angles: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormRow {
    pub n: usize,
    pub m: usize,
    pub section_norm: Option<f64>,
    pub error_estimate: Option<f64>,
    pub converged: bool,
    /// `max |u v|` over a disk grid up to the radius resolved at degree `n`.
    pub kernel_lower_bound: f64,
    pub r_max: f64,
    pub riesz2w_norm: Option<f64>,
    pub carleson_estimate: Option<f64>,
}

/// A value, or the reason it is absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate<T> {
    pub value: Option<T>,
    pub note: Option<String>,
}

impl<T> Estimate<T> {
    fn some(value: T) -> Self {
        Estimate { value: Some(value), note: None }
    }

    fn none(note: impl Into<String>) -> Self {
        Estimate { value: None, note: Some(note.into()) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    Bounded,
    Unbounded,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub rationale: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub admissibility: Estimate<AdmissibilityReport>,
    pub norm_table: Vec<NormRow>,
    pub norm_trend: Trend,
    pub riesz2w_norm: Estimate<f64>,
    pub ess_sup: EssSupTable,
    pub sarason_table: Estimate<SarasonTable>,
    pub carleson_estimate: Estimate<f64>,
    pub verdict: Verdict,
    pub errors: Vec<String>,
}

fn norm_row(u: &SymbolExpr, v: &L2Symbol, n: usize, cfg: &AnalysisConfig, errors: &mut Vec<String>) -> NormRow {
    let m = cfg.output_factor.max(1) * n;
    let (section, err, converged) = match product_section(u, v, n, m) {
        Ok(a) => {
            let est = section_norm(&a, cfg.norm_tol);
            (Some(est.value), Some(est.error_estimate).filter(|e| e.is_finite()), est.converged)
        }
        Err(e) => {
            errors.push(format!("section N={n}: {e}"));
            (None, None, false)
        }
    };
    let r_max = default_r_max(n);
    let grid = disk_grid(u, v, r_max, cfg.kernel_radii, cfg.kernel_angles);
    let kernel = kernel_lower_bound(u, v, &grid);
    let (riesz2w_norm, carleson_estimate) = match v.conjugate_generator() {
        Some(w) => {
            let (a, b) = rayon::join(|| two_weighted_projection_norm(v, u, n), || carleson_constant(u, &w, n));
            let a = a.map_err(|e| errors.push(format!("riesz2w N={n}: {e}"))).ok().map(|x| x.value);
            let b = b.map_err(|e| errors.push(format!("carleson N={n}: {e}"))).ok();
            (a, b)
        }
        None => (None, None),
    };
    NormRow {
        n,
        m,
        section_norm: section,
        error_estimate: err,
        converged,
        kernel_lower_bound: kernel,
        r_max,
        riesz2w_norm,
        carleson_estimate,
    }
}

const NOT_COANALYTIC: &str = "defined for co-analytic v = conj(w) only";

pub fn analyze(u: &SymbolExpr, v: &L2Symbol, cfg: &AnalysisConfig) -> BoundednessReport {
    let mut errors = Vec::new();
    let (admissibility, (ess_sup, (rows, sarason))) = rayon::join(
        || check_admissible(u, v),
        || {
            rayon::join(
                || ess_sup_product(u, v, &cfg.ess_grids, &cfg.thresholds),
                || {
                    rayon::join(
                        || {
                            let mut errs = Vec::new();
                            let rows: Vec<NormRow> =
                                cfg.degrees.iter().map(|&n| norm_row(u, v, n, cfg, &mut errs)).collect();
                            (rows, errs)
                        },
                        || sarason_for(u, v, cfg),
                    )
                },
            )
        },
    );
    let (norm_table, row_errors) = rows;
    errors.extend(row_errors);

    let admissibility = match admissibility {
        Ok(r) => Estimate::some(r),
        Err(e) => {
            errors.push(format!("admissibility: {e}"));
            Estimate::none(e.to_string())
        }
    };
    let norms: Vec<f64> = norm_table.iter().filter_map(|r| r.section_norm).collect();
    let norm_trend = if norms.len() == norm_table.len() {
        norm_growth(&norms, &cfg.thresholds)
    } else {
        Trend::Inconclusive
    };
    let last = norm_table.last();
    let coanalytic = v.is_coanalytic();
    let riesz2w_norm = match last.and_then(|r| r.riesz2w_norm) {
        Some(x) => Estimate::some(x),
        None if !coanalytic => Estimate::none(NOT_COANALYTIC),
        None => Estimate::none("estimate failed"),
    };
    let carleson_estimate = match last.and_then(|r| r.carleson_estimate) {
        Some(x) => Estimate::some(x),
        None if !coanalytic => Estimate::none(NOT_COANALYTIC),
        None => Estimate::none("estimate failed"),
    };
    let sarason_table = match sarason {
        Ok(t) => t,
        Err(e) => {
            errors.push(format!("sarason: {e}"));
            Estimate::none(e)
        }
    };
    let verdict = verdict(&ess_sup, norm_trend, admissibility.value.as_ref());
    BoundednessReport {
        admissibility,
        norm_table,
        norm_trend,
        riesz2w_norm,
        ess_sup,
        sarason_table,
        carleson_estimate,
        verdict,
        errors,
    }
}

fn sarason_for(u: &SymbolExpr, v: &L2Symbol, cfg: &AnalysisConfig) -> std::result::Result<Estimate<SarasonTable>, String> {
    let Some(w) = v.conjugate_generator() else {
        return Ok(Estimate::none(NOT_COANALYTIC));
    };
    if let Err(e) = u.check_h2_claimed().and_then(|_| w.check_h2_claimed()) {
        return Ok(Estimate::none(format!("needs u and w in H2: {e}")));
    }
    sarason_scan(u, &w, &cfg.sarason_radii, cfg.sarason_angles, &cfg.thresholds)
        .map(Estimate::some)
        .map_err(|e| e.to_string())
}

/// Norm estimates grow when the last doubling of `N` adds at least the
/// growth threshold; they count as non-diverging otherwise.
fn norm_growth(norms: &[f64], th: &Thresholds) -> Trend {
    match Thresholds::last_ratio(norms) {
        Some(r) if r >= 1.0 + th.growth => Trend::Growth,
        Some(_) => Trend::FiniteTrend,
        None => Trend::Inconclusive,
    }
}

fn verdict(ess: &EssSupTable, norms: Trend, adm: Option<&AdmissibilityReport>) -> Verdict {
    let (kind, mut rationale) = match (ess.trend, norms) {
        (Trend::FiniteTrend, Trend::FiniteTrend) => (
            VerdictKind::Bounded,
            format!("sup |uv| stabilizes at {:.6} and section norms do not diverge", ess.last().unwrap_or(f64::NAN)),
        ),
        (Trend::Growth, Trend::Growth) => (
            VerdictKind::Unbounded,
            "sup |uv| and section norms both grow under refinement".to_string(),
        ),
        (e, n) => (
            VerdictKind::Inconclusive,
            format!("sup |uv| trend {e:?} and section-norm trend {n:?} do not agree"),
        ),
    };
    match adm {
        Some(a) if !a.overall => {
            rationale.push_str("; the pair is not admissible, so boundedness of uv is not known to decide the question")
        }
        None => rationale.push_str("; admissibility could not be checked"),
        _ => {}
    }
    Verdict { kind, rationale }
}
