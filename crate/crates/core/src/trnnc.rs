//! Tikhonov regularization with a non-negativity constraint (TRNNC).
//!
//! The unknown is written as `v = u ∘ u`, so any real `u` yields a
//! non-negative `v`. With `D = diag(u_k)` fixed, the linearized system
//! `A D u = p` is replaced by its Tikhonov normal equations
//!
//! ```text
//! (D AᵀA D + α I) w = D Aᵀ p
//! ```
//!
//! and the iterate is relaxed, `u_{k+1} = ω u_k + (1 − ω) w`, until
//! `||u_{k+1} − u_k||₂ ≤ ε`.
//!
//! A component with `u_j = 0` stays zero forever (row `j` of `D` vanishes),
//! so the starting point must be free of zeros. The map is equivariant under
//! `u → −u`, so the sign of the start never affects `v`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mat_t_vec, mat_vec, norm2, solve_spd, DenseMatrix, DenseVector};

/// Starting iterate `u_0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialGuess {
    Ones,
    Custom(DenseVector),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrnncConfig {
    pub alpha: f64,
    pub omega: f64,
    pub eps_stop: f64,
    pub max_iters: usize,
    pub u0: InitialGuess,
}

impl Default for TrnncConfig {
    fn default() -> Self {
        Self {
            alpha: 1e-13,
            omega: 0.5,
            eps_stop: 1e-8,
            max_iters: 10_000,
            u0: InitialGuess::Ones,
        }
    }
}

impl TrnncConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be > 0, got {}", self.alpha)));
        }
        if !(self.omega > 0.0 && self.omega < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "omega must lie in (0, 1), got {}",
                self.omega
            )));
        }
        if !(self.eps_stop > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps_stop must be > 0, got {}",
                self.eps_stop
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be positive".into()));
        }
        if let InitialGuess::Custom(u) = &self.u0 {
            if let Some(j) = u.iter().position(|&x| x == 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "custom u0 has a zero at index {j}; zero components never move"
                )));
            }
        }
        Ok(())
    }

    fn initial_u(&self, n: usize) -> Result<Vec<f64>> {
        match &self.u0 {
            InitialGuess::Ones => Ok(vec![1.0; n]),
            InitialGuess::Custom(u) if u.len() == n => Ok(u.to_vec()),
            InitialGuess::Custom(u) => Err(Error::DimensionMismatch {
                op: "trnnc u0",
                left: format!("{n} unknowns"),
                right: format!("u0 of length {}", u.len()),
            }),
        }
    }
}

/// Current iterate `u_k` and iteration counter.
#[derive(Clone, Debug, PartialEq)]
pub struct TrnncState {
    pub u: DenseVector,
    pub k: usize,
}

/// Output shared by every solver in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub v: DenseVector,
    pub iterations: usize,
    pub converged: bool,
    /// `||A v − b||₂`.
    pub residual_norm: f64,
    /// Per-iteration step norms; TRNNC records `||u_{k+1} − u_k||₂`.
    pub step_norms: Vec<f64>,
}

impl SolveResult {
    pub(crate) fn new(
        a: &DenseMatrix,
        b: &[f64],
        v: Vec<f64>,
        iterations: usize,
        converged: bool,
        step_norms: Vec<f64>,
    ) -> Result<Self> {
        let v = DenseVector::new(v)?;
        let av = mat_vec(a, &v)?;
        let r: Vec<f64> = av.iter().zip(b).map(|(x, y)| x - y).collect();
        Ok(Self {
            v,
            iterations,
            converged,
            residual_norm: norm2(&r),
            step_norms,
        })
    }
}

/// `AᵀA` and `Aᵀp`, fixed across iterations.
struct Normal {
    gram: DenseMatrix,
    atp: Vec<f64>,
}

impl Normal {
    fn new(a: &DenseMatrix, p: &[f64]) -> Result<Self> {
        Ok(Self {
            gram: a.gram(),
            atp: mat_t_vec(a, p)?.into_vec(),
        })
    }

    /// One relaxed update; returns the next `u`.
    fn step(&self, u: &[f64], alpha: f64, omega: f64) -> Result<Vec<f64>> {
        let n = u.len();
        let g = self.gram.as_slice();
        let mut s = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x = u[i] * g[i * n + j] * u[j];
                s[i * n + j] = x;
                s[j * n + i] = x;
            }
            s[i * n + i] += alpha;
        }
        let s = DenseMatrix::new(n, n, s)?;
        let rhs: Vec<f64> = u.iter().zip(&self.atp).map(|(ui, ai)| ui * ai).collect();
        let w = solve_spd(&s, &rhs).map_err(|e| Error::AlphaTooSmall(Box::new(e)))?;
        Ok(u.iter()
            .zip(w.iter())
            .map(|(ui, wi)| omega * ui + (1.0 - omega) * wi)
            .collect())
    }
}

fn check_rhs(a: &DenseMatrix, p: &[f64]) -> Result<()> {
    if p.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "trnnc",
            left: format!("{}x{} matrix", a.rows(), a.cols()),
            right: format!("right-hand side of length {}", p.len()),
        });
    }
    Ok(())
}

/// A single relaxed TRNNC update.
pub fn trnnc_step(
    a: &DenseMatrix,
    p: &DenseVector,
    state: &TrnncState,
    cfg: &TrnncConfig,
) -> Result<TrnncState> {
    check_rhs(a, p)?;
    if state.u.len() != a.cols() {
        return Err(Error::DimensionMismatch {
            op: "trnnc_step",
            left: format!("{} unknowns", a.cols()),
            right: format!("iterate of length {}", state.u.len()),
        });
    }
    let normal = Normal::new(a, p)?;
    let u = normal.step(&state.u, cfg.alpha, cfg.omega)?;
    Ok(TrnncState {
        u: DenseVector::new(u)?,
        k: state.k + 1,
    })
}

/// Runs TRNNC to the step-norm stop rule or `max_iters`.
///
/// Hitting the iteration cap is not an error: the partial solution is
/// returned with `converged = false`.
pub fn trnnc_solve(a: &DenseMatrix, p: &DenseVector, cfg: &TrnncConfig) -> Result<SolveResult> {
    cfg.validate()?;
    check_rhs(a, p)?;
    let normal = Normal::new(a, p)?;
    let mut u = cfg.initial_u(a.cols())?;
    let mut step_norms = Vec::new();
    let mut converged = false;
    while step_norms.len() < cfg.max_iters {
        let next = normal.step(&u, cfg.alpha, cfg.omega)?;
        let d: Vec<f64> = next.iter().zip(&u).map(|(x, y)| x - y).collect();
        let step = norm2(&d);
        step_norms.push(step);
        u = next;
        if step <= cfg.eps_stop {
            converged = true;
            break;
        }
    }
    let v: Vec<f64> = u.iter().map(|x| x * x).collect();
    SolveResult::new(a, p, v, step_norms.len(), converged, step_norms)
}

/// `max |(Aᵀ(Av − p))_j + α|` over components with `v_j > tau`.
///
/// At an exact fixed point every component with `u_j ≠ 0` satisfies
/// `(Aᵀ(Av − p))_j = −α`, so this measures distance from stationarity.
/// Returns 0 when no component exceeds `tau`.
pub fn trnnc_stationarity_residual(
    a: &DenseMatrix,
    p: &DenseVector,
    result: &SolveResult,
    alpha: f64,
    tau: f64,
) -> Result<f64> {
    check_rhs(a, p)?;
    let av = mat_vec(a, &result.v)?;
    let r: Vec<f64> = av.iter().zip(p.iter()).map(|(x, y)| x - y).collect();
    let g = mat_t_vec(a, &r)?;
    Ok(g.iter()
        .zip(result.v.iter())
        .filter(|(_, &vj)| vj > tau)
        .fold(0.0, |m, (gj, _)| m.max((gj + alpha).abs())))
}
