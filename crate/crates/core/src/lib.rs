//! Numerical analysis of products of Toeplitz operators `T_u T_conj(v)` on
//! the Hardy space of the unit disk.

pub mod analyzer;
pub mod error;
pub mod fourier;
pub mod hardy;
pub mod pathology;
pub mod quadrature;
pub mod symbol;

pub use error::{Error, Result};
pub use fourier::FourierSeries;
