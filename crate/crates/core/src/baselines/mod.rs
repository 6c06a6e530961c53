//! Classical solvers used as comparison points for TRNNC.
//!
//! INV, TR and ART ignore the sign constraint; NNLS, SMART and MRNSD
//! enforce it. All return [`SolveResult`].

mod art;
mod mrnsd;
mod nnls;
mod smart;

use serde::{Deserialize, Serialize};

pub use art::art_solve;
pub use mrnsd::mrnsd_solve;
pub use nnls::{nnls_kkt_holds, nnls_solve};
pub use smart::smart_solve;

use crate::error::{Error, Result};
use crate::linalg::{invert, mat_t_vec, mat_vec, solve_spd, DenseMatrix, DenseVector};
use crate::trnnc::SolveResult;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    /// Tikhonov parameter for TR.
    pub alpha_tr: f64,
    pub art_sweeps: usize,
    /// Kaczmarz relaxation, in `(0, 2)`.
    pub art_relax: f64,
    /// Iteration cap for SMART and MRNSD.
    pub iters: usize,
    /// Stop tolerance: KKT tolerance for NNLS, relative change for SMART,
    /// relative scaled-gradient norm for MRNSD.
    pub tol: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            alpha_tr: 1e-13,
            art_sweeps: 1000,
            art_relax: 1.0,
            iters: 10_000,
            tol: 1e-8,
        }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.alpha_tr > 0.0 && self.alpha_tr.is_finite()) {
            return bad(format!("alpha_tr must be > 0, got {}", self.alpha_tr));
        }
        if self.art_sweeps == 0 {
            return bad("art_sweeps must be positive".into());
        }
        if !(self.art_relax > 0.0 && self.art_relax < 2.0) {
            return bad(format!("art_relax must lie in (0, 2), got {}", self.art_relax));
        }
        if self.iters == 0 {
            return bad("iters must be positive".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be > 0, got {}", self.tol));
        }
        Ok(())
    }
}

fn check_rhs(op: &'static str, a: &DenseMatrix, b: &[f64]) -> Result<()> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            op,
            left: format!("{}x{} matrix", a.rows(), a.cols()),
            right: format!("right-hand side of length {}", b.len()),
        });
    }
    Ok(())
}

/// `v = A⁻¹ b` through an explicit LU inverse.
pub fn inv_solve(a: &DenseMatrix, b: &DenseVector) -> Result<SolveResult> {
    check_rhs("inv", a, b)?;
    let inv = invert(a)?;
    let v = mat_vec(&inv, b)?;
    SolveResult::new(a, b, v.into_vec(), 1, true, Vec::new())
}

/// Tikhonov normal equations `(AᵀA + αI) v = Aᵀb`.
pub fn tikhonov_solve(a: &DenseMatrix, b: &DenseVector, alpha: f64) -> Result<SolveResult> {
    check_rhs("tikhonov", a, b)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
    }
    let mut s = a.gram();
    for i in 0..s.rows() {
        s[(i, i)] += alpha;
    }
    let v = solve_spd(&s, &mat_t_vec(a, b)?)?;
    SolveResult::new(a, b, v.into_vec(), 1, true, Vec::new())
}
