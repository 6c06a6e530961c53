use super::{check_rhs, BaselineConfig};
use crate::error::Result;
use crate::linalg::{dot, mat_t_vec, mat_vec, norm2, DenseMatrix, DenseVector};
use crate::trnnc::SolveResult;

/// Modified residual norm steepest descent from `v = 1`.
///
/// Each step searches along the scaled direction `d = −v ∘ g`,
/// `g = Aᵀ(Av − b)`, taking the exact line minimizer capped by the distance
/// to the boundary of the non-negative orthant. Stops once
/// `||d||₂ ≤ tol · ||Aᵀb||₂` or after `cfg.iters` steps; a zero `Ad` with a
/// nonzero direction is a stagnation and ends the run unconverged.
pub fn mrnsd_solve(a: &DenseMatrix, b: &DenseVector, cfg: &BaselineConfig) -> Result<SolveResult> {
    mrnsd_from(a, b, vec![1.0; a.cols()], cfg)
}

pub(crate) fn mrnsd_from(
    a: &DenseMatrix,
    b: &DenseVector,
    mut v: Vec<f64>,
    cfg: &BaselineConfig,
) -> Result<SolveResult> {
    cfg.validate()?;
    check_rhs("mrnsd", a, b)?;
    debug_assert!(v.iter().all(|&x| x >= 0.0));
    let scale = mat_t_vec(a, b)?.norm2();
    let mut step_norms = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    loop {
        let av = mat_vec(a, &v)?;
        let r: Vec<f64> = av.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
        let g = mat_t_vec(a, &r)?;
        let d: Vec<f64> = v.iter().zip(g.iter()).map(|(vj, gj)| -vj * gj).collect();
        if norm2(&d) <= cfg.tol * scale {
            converged = true;
            break;
        }
        if iterations == cfg.iters {
            break;
        }
        let ad = mat_vec(a, &d)?;
        let curvature = dot(&ad, &ad);
        if curvature == 0.0 {
            break;
        }
        let theta_uc = -dot(&g, &d) / curvature;
        let (theta_bd, blocking) = d
            .iter()
            .zip(&v)
            .enumerate()
            .filter(|(_, (&dj, _))| dj < 0.0)
            .map(|(j, (&dj, &vj))| (-vj / dj, j))
            .fold((f64::INFINITY, None), |best, (t, j)| if t < best.0 { (t, Some(j)) } else { best });
        let theta = theta_uc.min(theta_bd);
        for (vj, dj) in v.iter_mut().zip(&d) {
            *vj = (*vj + theta * dj).max(0.0);
        }
        if theta_bd <= theta_uc {
            if let Some(j) = blocking {
                v[j] = 0.0;
            }
        }
        step_norms.push(theta * norm2(&d));
        iterations += 1;
    }
    SolveResult::new(a, b, v, iterations, converged, step_norms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecd(x: &[f64]) -> DenseVector {
        DenseVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn start_at_minimizer() {
        let b = vecd(&[0.5, 2.0, 3.0]);
        let r = mrnsd_from(&DenseMatrix::identity(3), &b, b.to_vec(), &BaselineConfig::default())
            .unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.v, b);
    }

    #[test]
    fn drives_component_to_boundary() {
        let cfg = BaselineConfig { iters: 1000, ..BaselineConfig::default() };
        let r = mrnsd_solve(&DenseMatrix::identity(2), &vecd(&[1.0, -1.0]), &cfg).unwrap();
        assert!(r.iterations <= 1000);
        assert!((r.v[0] - 1.0).abs() < 1e-3 && r.v[1].abs() < 1e-3, "{:?}", r.v);
        assert!(r.v.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn well_conditioned_positive_solution() {
        let a = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0], vec![0.5, 0.5]]).unwrap();
        let b = mat_vec(&a, &[0.5, 2.0]).unwrap();
        let r = mrnsd_solve(&a, &b, &BaselineConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.v[0] - 0.5).abs() < 1e-6 && (r.v[1] - 2.0).abs() < 1e-6, "{:?}", r.v);
    }
}
