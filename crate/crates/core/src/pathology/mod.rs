//! Boundary pathologies: prescribed pole orders, oscillation near a pole,
//! step functions with poles of every order, and H^p norm refinement.

mod hp;
mod poles;
mod scan;
mod step;

pub use hp::{hp_norm_estimate, HpRow, HpTable};
pub use poles::{blaschke_value, cohn_partial_sum, dyadic_zeros, pole_order_function};
pub use scan::{oscillation_scan, ArcEstimate, ArcScanResult, ScanTarget, ScanVerdict, WitnessArc};
pub use step::{infinite_pole_step_function, StepArc, StepFunctionSpec};
