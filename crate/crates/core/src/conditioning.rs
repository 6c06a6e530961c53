//! Conditioning of non-negative linear systems.
//!
//! For an entrywise non-negative `A`, the smallest gain `||Ax|| / ||x||` over
//! non-negative `x` is the smallest Euclidean column norm, attained at the
//! corresponding canonical basis vector. Replacing `s_min` by this value in
//! the relative condition estimate gives a much smaller bound whenever the
//! solution is constrained to the non-negative orthant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_extremes, DenseMatrix};

/// Static conditioning summary of a non-negative matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditioningReport {
    /// Largest singular value, equal to the constrained upper gain.
    pub s_max: f64,
    pub s_min: f64,
    /// Smallest gain over the non-negative unit sphere.
    pub m: f64,
    /// 1-based column index attaining `m`.
    pub k_star: usize,
    pub cond_classical: f64,
    pub cond_nonneg: f64,
}

/// Minimum column norm of a non-negative matrix and its 1-based arg min
/// (smallest index on ties).
pub fn m_lower(a: &DenseMatrix) -> Result<(f64, usize)> {
    check_nonnegative(a)?;
    let norms = a.column_norms();
    let (k, m) = norms
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, n)| if n < best.1 { (k, n) } else { best });
    Ok((m, k + 1))
}

pub fn condition_report(a: &DenseMatrix) -> Result<ConditioningReport> {
    let (m, k_star) = m_lower(a)?;
    let (s_max, s_min) = singular_extremes(a);
    Ok(ConditioningReport {
        s_max,
        s_min,
        m,
        k_star,
        cond_classical: s_max / s_min,
        cond_nonneg: s_max / m,
    })
}

fn check_nonnegative(a: &DenseMatrix) -> Result<()> {
    for i in 0..a.rows() {
        for (j, &value) in a.row(i).iter().enumerate() {
            if value < 0.0 {
                return Err(Error::NegativeEntry { row: i, col: j, value });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_vec;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn sym2() -> DenseMatrix {
        DenseMatrix::from_rows(&[vec![2.0 / 3.0, 0.5], vec![0.5, 2.0 / 3.0]]).unwrap()
    }

    #[test]
    fn identity() {
        assert_eq!(m_lower(&DenseMatrix::identity(4)).unwrap(), (1.0, 1));
        let r = condition_report(&DenseMatrix::identity(2)).unwrap();
        assert_eq!(
            r,
            ConditioningReport {
                s_max: 1.0,
                s_min: 1.0,
                m: 1.0,
                k_star: 1,
                cond_classical: 1.0,
                cond_nonneg: 1.0,
            }
        );
    }

    #[test]
    fn two_by_two_tie_takes_first_column() {
        let (m, k) = m_lower(&sym2()).unwrap();
        assert!((m - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(k, 1);
    }

    #[test]
    fn two_by_two_report() {
        let r = condition_report(&sym2()).unwrap();
        assert!((r.cond_classical - 7.0).abs() < 1e-12);
        assert!((r.cond_nonneg - 1.4).abs() < 1e-14);
    }

    #[test]
    fn negative_entry_is_rejected() {
        let a = DenseMatrix::from_rows(&[vec![1.0, -0.5]]).unwrap();
        let err = m_lower(&a).unwrap_err();
        assert!(err.to_string().contains("Lemma requires non-negative matrix"));
        assert!(condition_report(&a).is_err());
    }

    fn random_nonneg(rng: &mut SplitMix64, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols, |_, _| rng.next_f64()).unwrap()
    }

    proptest! {
        #[test]
        fn sampled_gains_bound_m_from_above(seed: u64, rows in 1usize..8, cols in 1usize..8) {
            let mut rng = SplitMix64::new(seed);
            let a = random_nonneg(&mut rng, rows, cols);
            let (m, k) = m_lower(&a).unwrap();
            for _ in 0..50 {
                let x: Vec<f64> = (0..cols).map(|_| rng.next_f64()).collect();
                let n = crate::linalg::norm2(&x);
                if n == 0.0 { continue; }
                let x: Vec<f64> = x.iter().map(|v| v / n).collect();
                prop_assert!(mat_vec(&a, &x).unwrap().norm2() >= m - 1e-12);
            }
            let mut e = vec![0.0; cols];
            e[k - 1] = 1.0;
            prop_assert_eq!(mat_vec(&a, &e).unwrap().norm2(), m);
        }

        #[test]
        // For wide matrices s_min is the smallest of only `rows` singular
        // values, not the (zero) minimum gain over the domain.
        fn ordering_and_homogeneity(seed: u64, cols in 1usize..8, extra in 0usize..4, c in 0.01f64..100.0) {
            let rows = cols + extra;
            let mut rng = SplitMix64::new(seed);
            let a = random_nonneg(&mut rng, rows, cols);
            let r = condition_report(&a).unwrap();
            prop_assert!(r.s_min <= r.m + 1e-10);
            prop_assert!(r.m <= r.s_max + 1e-10);
            prop_assert!(r.cond_nonneg <= r.cond_classical * (1.0 + 1e-10));
            prop_assert!(r.k_star >= 1 && r.k_star <= cols);
            let (mc, _) = m_lower(&a.scale(c).unwrap()).unwrap();
            prop_assert!((mc - c * r.m).abs() <= 1e-12 * c * r.m.max(1.0));
        }
    }
}
