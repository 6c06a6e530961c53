use super::{check_rhs, BaselineConfig};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, DenseMatrix, DenseVector};
use crate::trnnc::SolveResult;

/// Cyclic Kaczmarz (ART) from `v = 0`, `art_sweeps` full passes over the rows.
///
/// `converged` reports whether the last sweep moved `v` by at most
/// `tol · ||v||₂`.
pub fn art_solve(a: &DenseMatrix, b: &DenseVector, cfg: &BaselineConfig) -> Result<SolveResult> {
    cfg.validate()?;
    check_rhs("art", a, b)?;
    let row_sq: Vec<f64> = (0..a.rows()).map(|i| dot(a.row(i), a.row(i))).collect();
    if let Some(i) = row_sq.iter().position(|&s| s == 0.0) {
        return Err(Error::ZeroRow(i));
    }
    let mut v = vec![0.0; a.cols()];
    let mut prev = v.clone();
    let mut step_norms = Vec::with_capacity(cfg.art_sweeps);
    for _ in 0..cfg.art_sweeps {
        prev.copy_from_slice(&v);
        for (i, &sq) in row_sq.iter().enumerate() {
            let ai = a.row(i);
            let c = cfg.art_relax * (b[i] - dot(ai, &v)) / sq;
            for (vj, aij) in v.iter_mut().zip(ai) {
                *vj += c * aij;
            }
        }
        let d: Vec<f64> = v.iter().zip(&prev).map(|(x, y)| x - y).collect();
        step_norms.push(norm2(&d));
    }
    let last = *step_norms.last().expect("at least one sweep");
    let converged = last <= cfg.tol * norm2(&v).max(f64::MIN_POSITIVE);
    SolveResult::new(a, b, v, cfg.art_sweeps, converged, step_norms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecd(x: &[f64]) -> DenseVector {
        DenseVector::new(x.to_vec()).unwrap()
    }

    fn sweeps(n: usize) -> BaselineConfig {
        BaselineConfig { art_sweeps: n, ..BaselineConfig::default() }
    }

    #[test]
    fn orthogonal_rows_one_sweep() {
        let r = art_solve(&DenseMatrix::identity(2), &vecd(&[1.0, 2.0]), &sweeps(1)).unwrap();
        assert_eq!(r.v.as_slice(), &[1.0, 2.0]);
        // Scaled orthogonal rows as well.
        let a = DenseMatrix::from_rows(&[vec![2.0, 2.0], vec![-1.0, 1.0]]).unwrap();
        let r = art_solve(&a, &vecd(&[4.0, 0.0]), &sweeps(1)).unwrap();
        assert!((r.v[0] - 1.0).abs() < 1e-15 && (r.v[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn redundant_consistent_rows() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        for n in [1, 5, 50] {
            let r = art_solve(&a, &vecd(&[1.0, 1.0]), &sweeps(n)).unwrap();
            assert_eq!(r.v.as_slice(), &[1.0, 0.0]);
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]]).unwrap();
        let r = art_solve(&a, &vecd(&[0.0, 0.0]), &sweeps(10)).unwrap();
        assert_eq!(r.v.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn zero_row_is_an_error() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(art_solve(&a, &vecd(&[1.0, 1.0]), &sweeps(1)), Err(Error::ZeroRow(1))));
    }

    #[test]
    fn converges_on_well_conditioned_square_system() {
        let a = DenseMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = art_solve(&a, &vecd(&[5.0, 5.0]), &sweeps(200)).unwrap();
        assert!(r.converged);
        assert!((r.v[0] - 1.0).abs() < 1e-10 && (r.v[1] - 2.0).abs() < 1e-10);
    }
}
