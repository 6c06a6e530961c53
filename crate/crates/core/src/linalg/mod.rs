//! Dense real matrix and vector kernels.

mod decomp;
pub mod io;
mod matrix;
mod svd;

pub use decomp::{invert, solve_lu, solve_spd, SYMMETRY_TOL};
pub(crate) use decomp::lstsq_columns;
pub use matrix::{mat_t_vec, mat_vec, DenseMatrix, DenseVector};
pub(crate) use matrix::{dot, norm2};
pub use svd::{singular_extremes, singular_values};

/// Singular values at or below this are treated as numerically zero.
pub const NUMERICALLY_SINGULAR: f64 = 1e-12;
