//! Direct factorizations: Cholesky for the symmetric positive definite
//! systems of the regularized solvers, LU with partial pivoting for explicit
//! inversion, and Householder QR for the least-squares subproblems of NNLS.

use super::matrix::{norm2, DenseMatrix, DenseVector};
use crate::error::{Error, Result};

/// Relative tolerance on `max|S - S^T|` accepted by [`solve_spd`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Solves `S x = rhs` for symmetric positive definite `S` via Cholesky.
pub fn solve_spd(s: &DenseMatrix, rhs: &[f64]) -> Result<DenseVector> {
    let n = s.rows();
    if !s.is_square() {
        return Err(Error::InvalidDimensions(format!(
            "solve_spd needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            op: "solve_spd",
            left: format!("{n}x{n} matrix"),
            right: format!("vector of length {}", rhs.len()),
        });
    }
    let asym = max_asymmetry(s);
    if asym > SYMMETRY_TOL * s.max_abs() {
        return Err(Error::NotSymmetric(asym));
    }
    let l = cholesky(s)?;
    let mut y = rhs.to_vec();
    // L y = rhs
    for i in 0..n {
        let mut acc = y[i];
        for k in 0..i {
            acc -= l[i * n + k] * y[k];
        }
        y[i] = acc / l[i * n + i];
    }
    // L^T x = y
    for i in (0..n).rev() {
        let mut acc = y[i];
        for k in i + 1..n {
            acc -= l[k * n + i] * y[k];
        }
        y[i] = acc / l[i * n + i];
    }
    DenseVector::new(y)
}

/// Lower Cholesky factor, row-major `n x n`. Reads only the lower triangle.
fn cholesky(s: &DenseMatrix) -> Result<Vec<f64>> {
    let n = s.rows();
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = s[(j, j)];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { row: j, pivot: d });
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut acc = s[(i, j)];
            for k in 0..j {
                acc -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = acc / d;
        }
    }
    Ok(l)
}

fn max_asymmetry(s: &DenseMatrix) -> f64 {
    let n = s.rows();
    let mut m = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            m = m.max((s[(i, j)] - s[(j, i)]).abs());
        }
    }
    m
}

/// LU factorization with partial pivoting, `P A = L U`.
struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::InvalidDimensions(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pmax == 0.0 {
                return Err(Error::Singular(k));
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    fn solve_in_place(&self, b: &[f64], x: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            x[i] = b[self.perm[i]];
        }
        for i in 0..n {
            let mut acc = x[i];
            for k in 0..i {
                acc -= self.lu[i * n + k] * x[k];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for k in i + 1..n {
                acc -= self.lu[i * n + k] * x[k];
            }
            x[i] = acc / self.lu[i * n + i];
        }
    }
}

/// Explicit inverse via LU with partial pivoting.
///
/// No accuracy is promised for ill-conditioned input; the result is whatever
/// the factorization produces as long as no pivot is exactly zero.
pub fn invert(a: &DenseMatrix) -> Result<DenseMatrix> {
    let lu = Lu::factor(a)?;
    let n = lu.n;
    let mut inv = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    let mut col = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|x| *x = 0.0);
        e[j] = 1.0;
        lu.solve_in_place(&e, &mut col);
        for i in 0..n {
            inv[i * n + j] = col[i];
        }
    }
    DenseMatrix::new(n, n, inv)
}

/// Solves the square system `A x = b` by LU with partial pivoting.
pub fn solve_lu(a: &DenseMatrix, b: &[f64]) -> Result<DenseVector> {
    let lu = Lu::factor(a)?;
    if b.len() != lu.n {
        return Err(Error::DimensionMismatch {
            op: "solve_lu",
            left: format!("{}x{} matrix", lu.n, lu.n),
            right: format!("vector of length {}", b.len()),
        });
    }
    let mut x = vec![0.0; lu.n];
    lu.solve_in_place(b, &mut x);
    DenseVector::new(x)
}

/// Least-squares solution of `min ||A[:, cols] z - b||_2` by Householder QR.
///
/// Returns `None` when the selected columns are numerically rank deficient,
/// i.e. some diagonal entry of R falls below `rank_tol * max|R_kk|`.
pub(crate) fn lstsq_columns(
    a: &DenseMatrix,
    cols: &[usize],
    b: &[f64],
    rank_tol: f64,
) -> Option<Vec<f64>> {
    let m = a.rows();
    let k = cols.len();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > m {
        return None;
    }
    // Column-major working copy of the selected columns.
    let mut q: Vec<Vec<f64>> = cols.iter().map(|&j| a.column(j)).collect();
    let mut rhs = b.to_vec();
    let mut diag = vec![0.0; k];
    for j in 0..k {
        let alpha = norm2(&q[j][j..]);
        if alpha == 0.0 {
            return None;
        }
        let sign = if q[j][j] >= 0.0 { 1.0 } else { -1.0 };
        let r_jj = -sign * alpha;
        // Householder vector v = x - r_jj e_1, stored in place.
        let mut v: Vec<f64> = q[j][j..].to_vec();
        v[0] -= r_jj;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        diag[j] = r_jj;
        q[j][j] = r_jj;
        for x in q[j][j + 1..].iter_mut() {
            *x = 0.0;
        }
        if vnorm2 > 0.0 {
            for col in q.iter_mut().skip(j + 1) {
                let s: f64 = v.iter().zip(&col[j..]).map(|(a, b)| a * b).sum::<f64>() * 2.0 / vnorm2;
                for (c, vi) in col[j..].iter_mut().zip(&v) {
                    *c -= s * vi;
                }
            }
            let s: f64 = v.iter().zip(&rhs[j..]).map(|(a, b)| a * b).sum::<f64>() * 2.0 / vnorm2;
            for (c, vi) in rhs[j..].iter_mut().zip(&v) {
                *c -= s * vi;
            }
        }
    }
    let rmax = diag.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    if diag.iter().any(|d| d.abs() <= rank_tol * rmax) {
        return None;
    }
    let mut z = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = rhs[i];
        for j in i + 1..k {
            acc -= q[j][i] * z[j];
        }
        z[i] = acc / diag[i];
    }
    Some(z)
}
