//! Hardy-space operations: projection, sections, kernels, outer functions
//! and Poisson extensions.

pub mod kernel;
pub mod outer;
pub mod poisson;
pub mod riesz;
pub mod section;

pub use kernel::{range_kernel, reproducing_eval, KernelVector};
pub use outer::{outer_from_modulus, outer_from_modulus_fn};
pub use poisson::{poisson_extension, poisson_extension_fn};
pub use riesz::riesz_project;
pub use section::{analytic_multiplier_section, toeplitz_section, SectionKind, SectionOperator};
