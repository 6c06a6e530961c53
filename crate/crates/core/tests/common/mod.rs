//! Test-only oracles, independent of the library's solver paths.

#![allow(dead_code)]

use nonneg::rng::SplitMix64;
use nonneg::DenseMatrix;

/// Solves the square system by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `tol` times the largest entry.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() <= tol * scale {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

pub fn residual_norm(a: &DenseMatrix, v: &[f64], b: &[f64]) -> f64 {
    (0..a.rows())
        .map(|i| {
            let r: f64 = a.row(i).iter().zip(v).map(|(x, y)| x * y).sum::<f64>() - b[i];
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

/// Exhaustive support enumeration for `min ||Av − b||₂, v ≥ 0`.
///
/// Every support of size at most `rank(A) <= min(M, N)` is tried: the
/// unconstrained least-squares solution on that support is obtained from the
/// normal equations; infeasible or singular supports are discarded. Returns
/// the best objective value and its minimizer.
pub fn brute_force_nnls(a: &DenseMatrix, b: &[f64]) -> (f64, Vec<f64>) {
    let (m, n) = a.shape();
    let mut best = (b.iter().map(|x| x * x).sum::<f64>().sqrt(), vec![0.0; n]);
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        if support.len() > m {
            continue;
        }
        let k = support.len();
        let mut g = vec![vec![0.0; k]; k];
        let mut rhs = vec![0.0; k];
        for (p, &jp) in support.iter().enumerate() {
            for (q, &jq) in support.iter().enumerate() {
                g[p][q] = (0..m).map(|i| a[(i, jp)] * a[(i, jq)]).sum();
            }
            rhs[p] = (0..m).map(|i| a[(i, jp)] * b[i]).sum();
        }
        let Some(z) = gauss_solve(g, rhs, 1e-13) else { continue };
        if z.iter().any(|&x| x < 0.0) {
            continue;
        }
        let mut v = vec![0.0; n];
        for (&j, &zj) in support.iter().zip(&z) {
            v[j] = zj;
        }
        let obj = residual_norm(a, &v, b);
        if obj < best.0 {
            best = (obj, v);
        }
    }
    best
}

/// Random problem for the NNLS oracle: `M, N` in `1..=6`, `A` uniform on
/// `[0, 1)`, `b` uniform on `[-1, 1)`.
pub fn random_nnls_problem(seed: u64) -> (DenseMatrix, Vec<f64>) {
    let mut rng = SplitMix64::new(seed);
    let m = 1 + (rng.next_u64() % 6) as usize;
    let n = 1 + (rng.next_u64() % 6) as usize;
    let a = DenseMatrix::from_fn(m, n, |_, _| rng.next_f64()).unwrap();
    let b = (0..m).map(|_| rng.uniform(-1.0, 1.0)).collect();
    (a, b)
}

/// Random orthogonal matrix from Gram–Schmidt on Gaussian columns.
pub fn random_orthogonal(n: usize, rng: &mut SplitMix64) -> DenseMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut c: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        for _ in 0..2 {
            for q in &cols {
                let d: f64 = q.iter().zip(&c).map(|(x, y)| x * y).sum();
                for (ci, qi) in c.iter_mut().zip(q) {
                    *ci -= d * qi;
                }
            }
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(c.into_iter().map(|x| x / norm).collect());
        }
    }
    DenseMatrix::from_fn(n, n, |i, j| cols[j][i]).unwrap()
}
