//! Non-negative solutions of ill-conditioned linear systems.
//!
//! The centerpiece is [`trnnc`], a Tikhonov-regularized fixed-point method
//! that reaches `v ≥ 0` by iterating on `u` with `v = u ∘ u`. Around it:
//!
//! - [`linalg`]: dense kernels (products, Cholesky, LU, Jacobi SVD, CSV I/O).
//! - [`conditioning`]: the non-negative analog of the smallest singular value
//!   and the condition estimate built on it.
//! - [`baselines`]: INV, TR, ART, NNLS, SMART and MRNSD.
//! - [`problems`]: symmetrized Hilbert test problems, noise model, `ρ`.
//! - [`bench`]: the benchmark harness behind the `nonneg-bench` binary.
//!
//! Independent solver runs in the harness are spread over rayon when the
//! `parallel` feature is on (the default); see [`par`].

pub mod baselines;
pub mod bench;
pub mod conditioning;
mod error;
pub mod linalg;
pub mod par;
pub mod problems;
pub mod rng;
pub mod trnnc;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, DenseVector};
pub use trnnc::{SolveResult, TrnncConfig};
