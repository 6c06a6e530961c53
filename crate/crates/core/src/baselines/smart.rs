use super::{check_rhs, BaselineConfig};
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, norm2, DenseMatrix, DenseVector};
use crate::trnnc::SolveResult;

/// Simultaneous multiplicative ART from `v = 1`:
///
/// ```text
/// v_j ← v_j · exp( (1 / s_j) Σ_i A_ij ln(b_i / (Av)_i) ),   s_j = Σ_i A_ij
/// ```
///
/// Stops after `cfg.iters` updates or once `||Δv||₂ ≤ tol · ||v||₂`.
/// Iterates stay strictly positive.
pub fn smart_solve(a: &DenseMatrix, b: &DenseVector, cfg: &BaselineConfig) -> Result<SolveResult> {
    cfg.validate()?;
    check_rhs("smart", a, b)?;
    if let Some((index, &value)) = b.iter().enumerate().find(|(_, &x)| x <= 0.0) {
        return Err(Error::NonPositiveData { index, value });
    }
    if !a.is_nonnegative() {
        return Err(Error::InvalidParameter("SMART requires a non-negative matrix".into()));
    }
    let n = a.cols();
    let mut col_sum = vec![0.0; n];
    for i in 0..a.rows() {
        for (s, x) in col_sum.iter_mut().zip(a.row(i)) {
            *s += x;
        }
    }
    if let Some(j) = col_sum.iter().position(|&s| s == 0.0) {
        return Err(Error::ZeroColumn(j));
    }

    let mut v = vec![1.0; n];
    let mut step_norms = Vec::new();
    let mut converged = false;
    for _ in 0..cfg.iters {
        let av = mat_vec(a, &v)?;
        let log_ratio: Vec<f64> = b.iter().zip(av.iter()).map(|(bi, ai)| (bi / ai).ln()).collect();
        let mut acc = vec![0.0; n];
        for (i, &l) in log_ratio.iter().enumerate() {
            for (s, x) in acc.iter_mut().zip(a.row(i)) {
                *s += x * l;
            }
        }
        let next: Vec<f64> = v
            .iter()
            .zip(acc.iter().zip(&col_sum))
            .map(|(vj, (sj, cj))| vj * (sj / cj).exp())
            .collect();
        if next.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            // Underflow or overflow: keep the last valid iterate.
            break;
        }
        let d: Vec<f64> = next.iter().zip(&v).map(|(x, y)| x - y).collect();
        let step = norm2(&d);
        step_norms.push(step);
        v = next;
        if step <= cfg.tol * norm2(&v) {
            converged = true;
            break;
        }
    }
    let iterations = step_norms.len();
    SolveResult::new(a, b, v, iterations, converged, step_norms)
}
