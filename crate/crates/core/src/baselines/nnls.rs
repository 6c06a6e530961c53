//! Lawson–Hanson active-set NNLS.

use super::{check_rhs, BaselineConfig};
use crate::error::Result;
use crate::linalg::{lstsq_columns, mat_t_vec, mat_vec, DenseMatrix, DenseVector};
use crate::trnnc::SolveResult;

/// Relative threshold on the R diagonal below which a passive set is
/// treated as rank deficient.
const RANK_TOL: f64 = 1e-12;

/// Minimizes `||A v − b||₂` subject to `v ≥ 0`.
///
/// The passive set `P` holds the free variables; each outer iteration admits
/// the zero variable with the largest dual `w = Aᵀ(b − Av)`, then the inner
/// loop solves the least-squares problem on `P` and backtracks along the
/// segment toward it whenever a passive variable would turn non-positive.
/// A candidate whose admission makes `P` numerically rank deficient, or whose
/// own component comes out non-positive, is rejected until `v` next changes.
///
/// At most `3N` outer iterations are taken. `converged` is the KKT
/// certificate at `cfg.tol` (see [`nnls_kkt_holds`]).
pub fn nnls_solve(a: &DenseMatrix, b: &DenseVector, cfg: &BaselineConfig) -> Result<SolveResult> {
    cfg.validate()?;
    check_rhs("nnls", a, b)?;
    let n = a.cols();
    let mut v = vec![0.0; n];
    let mut passive = vec![false; n];
    let mut rejected = vec![false; n];
    let mut outer = 0;

    while outer < 3 * n {
        let w = dual(a, b, &v)?;
        let candidate = (0..n)
            .filter(|&j| !passive[j] && !rejected[j] && w[j] > cfg.tol)
            .fold(None, |best: Option<usize>, j| match best {
                Some(k) if w[k] >= w[j] => Some(k),
                _ => Some(j),
            });
        let Some(t) = candidate else { break };
        outer += 1;

        passive[t] = true;
        let cols = indices(&passive);
        let admitted = match lstsq_columns(a, &cols, b, RANK_TOL) {
            Some(z) => {
                let pos = cols.iter().position(|&j| j == t).expect("t is passive");
                z[pos] > 0.0
            }
            None => false,
        };
        if !admitted {
            passive[t] = false;
            rejected[t] = true;
            continue;
        }
        rejected.iter_mut().for_each(|r| *r = false);

        // Inner loop: keep v feasible while moving toward the passive LS solution.
        loop {
            let cols = indices(&passive);
            let Some(z) = lstsq_columns(a, &cols, b, RANK_TOL) else {
                // Keep the current feasible point.
                for &j in &cols {
                    passive[j] = v[j] > 0.0;
                }
                break;
            };
            if z.iter().all(|&x| x > 0.0) {
                v.iter_mut().for_each(|x| *x = 0.0);
                for (&j, &zj) in cols.iter().zip(&z) {
                    v[j] = zj;
                }
                break;
            }
            let mut step = f64::INFINITY;
            for (&j, &zj) in cols.iter().zip(&z) {
                if zj <= 0.0 {
                    step = step.min(v[j] / (v[j] - zj));
                }
            }
            for (&j, &zj) in cols.iter().zip(&z) {
                let blocking = zj <= 0.0 && v[j] / (v[j] - zj) == step;
                v[j] += step * (zj - v[j]);
                if blocking || v[j] <= 0.0 {
                    v[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }

    let converged = nnls_kkt_holds(a, b, &v, cfg.tol)?;
    SolveResult::new(a, b, v, outer, converged, Vec::new())
}

/// KKT certificate for non-negative least squares at tolerance `tol`:
/// `v ≥ 0`, and with `w = Aᵀ(b − Av)`, `w_j ≤ tol` where `v_j = 0` and
/// `|w_j| ≤ tol` where `v_j > 0`.
pub fn nnls_kkt_holds(a: &DenseMatrix, b: &[f64], v: &[f64], tol: f64) -> Result<bool> {
    let w = dual(a, b, v)?;
    Ok(v.iter().zip(&w).all(|(&vj, &wj)| {
        if vj < 0.0 {
            false
        } else if vj == 0.0 {
            wj <= tol
        } else {
            wj.abs() <= tol
        }
    }))
}

fn dual(a: &DenseMatrix, b: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let av = mat_vec(a, v)?;
    let r: Vec<f64> = b.iter().zip(av.iter()).map(|(x, y)| x - y).collect();
    Ok(mat_t_vec(a, &r)?.into_vec())
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(j, &m)| m.then_some(j))
        .collect()
}
