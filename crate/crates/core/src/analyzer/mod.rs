//! Boundedness analysis of `T_u T_v`.

pub mod admissible;
pub mod energy;
pub mod esssup;
pub mod kernel_bound;
pub mod norm;
pub mod product;
pub mod report;
pub mod sarason;
pub mod trend;
pub mod weighted;

pub use esssup::{ess_sup_product, EssSupTable};
pub use norm::{section_norm, NormEstimate};
pub use product::product_section;
pub use trend::{Thresholds, Trend};
pub use sarason::{sarason_scan, SarasonTable};
pub use weighted::{carleson_constant, two_weighted_projection_norm};
pub use admissible::{check_admissible, AdmissibilityReport};
pub use energy::{energy_decomposition, pick_epsilon};
pub use kernel_bound::kernel_lower_bound;
pub use report::{analyze, AnalysisConfig, BoundednessReport, NormRow, Verdict, VerdictKind};
