use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("pole hit at {location}")]
    PoleHit { location: Complex64 },

    #[error("symbol is not square integrable on the circle: {0}")]
    NotSquareIntegrable(String),

    #[error("symbol has a singularity inside the open disk: {0}")]
    InteriorSingularity(String),

    #[error("coefficient table covers [{have_lo}, {have_hi}] but [{need_lo}, {need_hi}] is required")]
    InsufficientCoverage {
        need_lo: i64,
        need_hi: i64,
        have_lo: i64,
        have_hi: i64,
    },

    #[error("point {point} is not inside the open unit disk")]
    OutsideDisk { point: Complex64 },

    #[error("modulus is non-positive on {bad} of {total} grid points")]
    NonPositiveModulus { bad: usize, total: usize },

    #[error("weighted Gram matrix is singular: smallest/largest eigenvalue ratio {ratio:e}")]
    SingularGram { ratio: f64 },

    #[error("symbol is not outer: {0}")]
    NotOuter(String),

    #[error("construction infeasible at K = {requested}; largest feasible K is {max_feasible}")]
    Infeasible { requested: usize, max_feasible: usize },

    #[error("admissibility requires structured symbols")]
    Unstructured,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
