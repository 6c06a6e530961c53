//! Benchmark problems built from the symmetrized Hilbert matrix.
//!
//! The test matrix is `A = (H + H̄) / 2` where `H` is the `N x N` Hilbert
//! matrix and `H̄` its 180-degree rotation. Six non-negative ground-truth
//! vectors are defined on 1-based indices, and data are perturbed as
//! `b = A v0 + s (rnd − 0.5) ||A v0||₂` with `rnd` i.i.d. uniform on `(0, 1)`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{mrnsd_solve, nnls_solve, smart_solve, BaselineConfig};
use crate::conditioning::condition_report;
use crate::error::{Error, Result};
use crate::linalg::{io, mat_vec, DenseMatrix, DenseVector};
use crate::rng::SplitMix64;
use crate::trnnc::{trnnc_solve, SolveResult, TrnncConfig};

/// Noise scale used throughout the benchmark.
pub const DEFAULT_NOISE: f64 = 1e-10;

pub const TEST_IDS: [u8; 6] = [1, 2, 3, 4, 5, 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixShape {
    Square,
    /// All `N` rows, leading `2N/3` columns.
    Over,
    /// Leading `2N/3` rows, all `N` columns.
    Under,
}

impl MatrixShape {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixShape::Square => "square",
            MatrixShape::Over => "over",
            MatrixShape::Under => "under",
        }
    }

    /// `(rows, cols)` for base size `n`.
    pub fn dims(self, n: usize) -> (usize, usize) {
        match self {
            MatrixShape::Square => (n, n),
            MatrixShape::Over => (n, 2 * n / 3),
            MatrixShape::Under => (2 * n / 3, n),
        }
    }
}

impl fmt::Display for MatrixShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(MatrixShape::Square),
            "over" => Ok(MatrixShape::Over),
            "under" => Ok(MatrixShape::Under),
            _ => Err(Error::Config(format!(
                "unknown shape {s:?}; valid shapes: square, over, under"
            ))),
        }
    }
}

/// `H_ij = 1 / (i + j − 1)`, 1-based.
pub fn hilbert(n: usize) -> Result<DenseMatrix> {
    DenseMatrix::from_fn(n, n, |i, j| 1.0 / (i + j + 1) as f64)
}

/// 180-degree rotation: `out_ij = h_{N−i+1, N−j+1}`.
pub fn mirror(h: &DenseMatrix) -> Result<DenseMatrix> {
    if !h.is_square() {
        return Err(Error::InvalidDimensions(format!(
            "mirror needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let n = h.rows();
    DenseMatrix::from_fn(n, n, |i, j| h[(n - 1 - i, n - 1 - j)])
}

/// The symmetrized Hilbert matrix, or one of its leading slices.
pub fn test_matrix(n: usize, shape: MatrixShape) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::InvalidDimensions(format!("test matrix needs N >= 2, got {n}")));
    }
    if shape != MatrixShape::Square && !n.is_multiple_of(3) {
        return Err(Error::InvalidDimensions(format!(
            "{shape} slices need N divisible by 3, got {n}"
        )));
    }
    let h = hilbert(n)?;
    let full = h.add(&mirror(&h)?)?.scale(0.5)?;
    let (rows, cols) = shape.dims(n);
    full.leading_block(rows, cols)
}

/// Ground-truth vector for test `id` (1..=6), length `n`.
///
/// Test 4's descending branch `2 − i/15` would go negative past `i = 30`;
/// it is clamped at zero.
pub fn test_vector(id: u8, n: usize) -> Result<DenseVector> {
    if !(1..=6).contains(&id) {
        return Err(Error::Config(format!(
            "unknown test id {id}; valid ids: 1, 2, 3, 4, 5, 6"
        )));
    }
    if n < 20 {
        return Err(Error::InvalidDimensions(format!("test vectors need N >= 20, got {n}")));
    }
    let band = |i: f64| (10.0..=20.0).contains(&i);
    let v = (1..=n)
        .map(|i| {
            let x = i as f64;
            match id {
                1 => f64::from(u8::from(i == 15)),
                2 => f64::from(u8::from(band(x))),
                3 => f64::from(u8::from(!band(x))),
                4 if i <= 15 => x / 15.0,
                4 => (2.0 - x / 15.0).max(0.0),
                5 => (-(x - 15.0).powi(2) / 20.0).exp(),
                _ => 1.0 + 0.5 * (2.0 * std::f64::consts::PI * x / 15.0).sin(),
            }
        })
        .collect();
    DenseVector::new(v)
}

/// A single benchmark instance.
#[derive(Clone, Debug, PartialEq)]
pub struct TestProblem {
    pub name: String,
    pub a: DenseMatrix,
    pub v0: DenseVector,
    pub p_clean: DenseVector,
    pub b: DenseVector,
    pub seed: u64,
    pub noise_scale: f64,
    pub shape: Option<MatrixShape>,
}

/// Length-`len` vector of `rnd − 0.5` draws.
pub fn noise_draws(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    (0..len).map(|_| rng.next_open01() - 0.5).collect()
}

/// `b = A v0 + noise_scale (rnd − 0.5) ||A v0||₂`, one draw per row of `A`.
pub fn perturb(a: &DenseMatrix, v0: &DenseVector, noise_scale: f64, seed: u64) -> Result<TestProblem> {
    if !(noise_scale >= 0.0 && noise_scale.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise scale must be >= 0, got {noise_scale}"
        )));
    }
    let p = mat_vec(a, v0)?;
    let amp = noise_scale * p.norm2();
    let b: Vec<f64> = p
        .iter()
        .zip(noise_draws(a.rows(), seed))
        .map(|(pi, e)| pi + amp * e)
        .collect();
    Ok(TestProblem {
        name: "custom".into(),
        a: a.clone(),
        v0: v0.clone(),
        p_clean: p,
        b: DenseVector::new(b)?,
        seed,
        noise_scale,
        shape: None,
    })
}

/// Builds benchmark test `id` at base size `n` and the given shape.
///
/// For slices the ground truth has the column count of the sliced matrix.
pub fn benchmark_problem(
    id: u8,
    n: usize,
    shape: MatrixShape,
    noise_scale: f64,
    seed: u64,
) -> Result<TestProblem> {
    let a = test_matrix(n, shape)?;
    let v0 = test_vector(id, n)?;
    let v0 = DenseVector::new(v0[..a.cols()].to_vec())?;
    let mut problem = perturb(&a, &v0, noise_scale, seed)?;
    problem.name = format!("test{id}");
    problem.shape = Some(shape);
    Ok(problem)
}

/// `||v0 − v||₂ / ||v0||₂`.
pub fn rho(v0: &[f64], v: &[f64]) -> Result<f64> {
    if v0.len() != v.len() {
        return Err(Error::DimensionMismatch {
            op: "rho",
            left: format!("length {}", v0.len()),
            right: format!("length {}", v.len()),
        });
    }
    let denom = crate::linalg::norm2(v0);
    if denom == 0.0 {
        return Err(Error::InvalidParameter("rho needs a nonzero ground truth".into()));
    }
    let d: Vec<f64> = v0.iter().zip(v).map(|(x, y)| x - y).collect();
    Ok(crate::linalg::norm2(&d) / denom)
}

#[derive(Serialize)]
struct ProblemMeta<'a> {
    name: &'a str,
    seed: u64,
    noise_scale: f64,
    shape: Option<MatrixShape>,
    rows: usize,
    cols: usize,
}

impl TestProblem {
    /// Writes `A.csv`, `v0.csv`, `b.csv` and `meta.json` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        io::write_matrix(&dir.join("A.csv"), &self.a)?;
        io::write_vector(&dir.join("v0.csv"), &self.v0)?;
        io::write_vector(&dir.join("b.csv"), &self.b)?;
        let meta = ProblemMeta {
            name: &self.name,
            seed: self.seed,
            noise_scale: self.noise_scale,
            shape: self.shape,
            rows: self.a.rows(),
            cols: self.a.cols(),
        };
        let path = dir.join("meta.json");
        let text = serde_json::to_string_pretty(&meta).expect("meta serializes") + "\n";
        fs::write(&path, text).map_err(|e| Error::io(path, e))
    }
}

/// Solvers whose output respects `v ≥ 0`.
#[derive(Clone, Debug)]
pub enum NonNegSolver {
    Trnnc(TrnncConfig),
    Nnls(BaselineConfig),
    Smart(BaselineConfig),
    Mrnsd(BaselineConfig),
}

impl NonNegSolver {
    pub fn solve(&self, a: &DenseMatrix, b: &DenseVector) -> Result<SolveResult> {
        match self {
            NonNegSolver::Trnnc(c) => trnnc_solve(a, b, c),
            NonNegSolver::Nnls(c) => nnls_solve(a, b, c),
            NonNegSolver::Smart(c) => smart_solve(a, b, c),
            NonNegSolver::Mrnsd(c) => mrnsd_solve(a, b, c),
        }
    }
}

/// Observed sensitivity next to the static non-negative bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationOutcome {
    /// `||v_Δ − v||₂ / ||v||₂`.
    pub observed: f64,
    /// `s_max / m` from the conditioning report.
    pub bound: f64,
    /// `||Δp||₂ / ||p||₂`.
    pub data_change: f64,
}

/// Solves for `p` and for `p + Δp`, with `Δp` drawn like the benchmark noise
/// at `delta_scale`, and reports the relative change of the solution.
pub fn perturbation_experiment(
    solver: &NonNegSolver,
    a: &DenseMatrix,
    p: &DenseVector,
    delta_scale: f64,
    seed: u64,
) -> Result<PerturbationOutcome> {
    if !(delta_scale >= 0.0 && delta_scale.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "delta scale must be >= 0, got {delta_scale}"
        )));
    }
    let report = condition_report(a)?;
    let amp = delta_scale * p.norm2();
    let dp: Vec<f64> = noise_draws(p.len(), seed).into_iter().map(|e| amp * e).collect();
    let p_delta = DenseVector::new(p.iter().zip(&dp).map(|(x, d)| x + d).collect())?;
    let v = solver.solve(a, p)?.v;
    let v_delta = solver.solve(a, &p_delta)?.v;
    let dv = v_delta.sub(&v)?;
    let vn = v.norm2();
    let observed = if dv.norm2() == 0.0 { 0.0 } else { dv.norm2() / vn };
    Ok(PerturbationOutcome {
        observed,
        bound: report.cond_nonneg,
        data_change: crate::linalg::norm2(&dp) / p.norm2(),
    })
}
