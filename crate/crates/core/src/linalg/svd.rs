//! Singular values by one-sided (Hestenes) Jacobi rotations.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! the singular values are then the column norms. Works on the taller
//! orientation of the input so that the column count is `min(M, N)`.

use super::matrix::{dot, norm2, DenseMatrix};

const MAX_SWEEPS: usize = 80;

/// Singular values of `a`, sorted in decreasing order. Length `min(M, N)`.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    let work = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.transpose()
    };
    let (m, n) = work.shape();
    // Column-major columns.
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| work.column(j)).collect();
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for i in 0..m {
                    let xp = cp[i];
                    let xq = cq[i];
                    cp[i] = c * xp - s * xq;
                    cq[i] = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Largest and smallest singular value.
pub fn singular_extremes(a: &DenseMatrix) -> (f64, f64) {
    let sv = singular_values(a);
    (sv[0], *sv.last().expect("nonempty matrix"))
}
