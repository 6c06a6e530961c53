//! Benchmark harness: runs every (test, solver) pair on the Hilbert problems
//! and persists records, CSV/JSON summaries and reconstruction plots.

mod plot;
mod report;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use plot::{emit_plots, plot_file_name, reconstruction_svg, summary_svg};
pub use report::{emit_csv, emit_json, parse_csv, records_to_csv, CSV_HEADER};

use crate::baselines::{
    art_solve, inv_solve, mrnsd_solve, nnls_solve, smart_solve, tikhonov_solve, BaselineConfig,
};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, DenseVector};
use crate::par::{self, Execution};
use crate::problems::{benchmark_problem, rho, MatrixShape, TestProblem, DEFAULT_NOISE, TEST_IDS};
use crate::trnnc::{trnnc_solve, SolveResult, TrnncConfig};

/// Stable solver identifiers. Declaration order is the record order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverId {
    Inv,
    Tr,
    Art,
    Nnls,
    Smart,
    Mrnsd,
    Trnnc,
}

impl SolverId {
    pub const ALL: [SolverId; 7] = [
        SolverId::Inv,
        SolverId::Tr,
        SolverId::Art,
        SolverId::Nnls,
        SolverId::Smart,
        SolverId::Mrnsd,
        SolverId::Trnnc,
    ];

    /// Identifiers reserved for solvers that are not implemented.
    pub const RESERVED: [&'static str; 3] = ["gmres", "mer", "autoregnn"];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverId::Inv => "inv",
            SolverId::Tr => "tr",
            SolverId::Art => "art",
            SolverId::Nnls => "nnls",
            SolverId::Smart => "smart",
            SolverId::Mrnsd => "mrnsd",
            SolverId::Trnnc => "trnnc",
        }
    }

    /// Solvers whose output is constrained to `v ≥ 0`.
    pub fn is_constrained(self) -> bool {
        matches!(
            self,
            SolverId::Nnls | SolverId::Smart | SolverId::Mrnsd | SolverId::Trnnc
        )
    }

    pub fn solve(
        self,
        a: &DenseMatrix,
        b: &DenseVector,
        trnnc: &TrnncConfig,
        baseline: &BaselineConfig,
    ) -> Result<SolveResult> {
        match self {
            SolverId::Inv => inv_solve(a, b),
            SolverId::Tr => tikhonov_solve(a, b, baseline.alpha_tr),
            SolverId::Art => art_solve(a, b, baseline),
            SolverId::Nnls => nnls_solve(a, b, baseline),
            SolverId::Smart => smart_solve(a, b, baseline),
            SolverId::Mrnsd => mrnsd_solve(a, b, baseline),
            SolverId::Trnnc => trnnc_solve(a, b, trnnc),
        }
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn valid_solver_list() -> String {
    SolverId::ALL.map(SolverId::as_str).join(", ")
}

impl FromStr for SolverId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = SolverId::ALL.into_iter().find(|id| id.as_str() == s) {
            return Ok(id);
        }
        if SolverId::RESERVED.contains(&s) {
            return Err(Error::Config(format!(
                "solver {s:?} is not implemented; valid solvers: {}",
                valid_solver_list()
            )));
        }
        Err(Error::Config(format!(
            "unknown solver {s:?}; valid solvers: {}",
            valid_solver_list()
        )))
    }
}

/// Parses a comma-separated solver list.
pub fn parse_solvers(list: &str) -> Result<Vec<SolverId>> {
    list.split(',').map(|s| s.trim().parse()).collect()
}

/// Parses a comma-separated test-id list.
pub fn parse_tests(list: &str) -> Result<Vec<u8>> {
    list.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<u8>()
                .ok()
                .filter(|id| TEST_IDS.contains(id))
                .ok_or_else(|| {
                    Error::Config(format!("unknown test id {s:?}; valid ids: 1, 2, 3, 4, 5, 6"))
                })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n: usize,
    pub shape: MatrixShape,
    pub tests: Vec<u8>,
    pub solvers: Vec<SolverId>,
    pub trnnc: TrnncConfig,
    pub baseline: BaselineConfig,
    pub noise_scale: f64,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub emit_plots: bool,
    /// Wall-clock timing is opt-in; when off `seconds` is 0 so output files
    /// are byte-reproducible.
    pub record_timing: bool,
    pub execution: Execution,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n: 30,
            shape: MatrixShape::Square,
            tests: TEST_IDS.to_vec(),
            solvers: SolverId::ALL.to_vec(),
            trnnc: TrnncConfig::default(),
            baseline: BaselineConfig::default(),
            noise_scale: DEFAULT_NOISE,
            seed: 42,
            out_dir: None,
            emit_plots: false,
            record_timing: false,
            execution: Execution::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tests.is_empty() || self.solvers.is_empty() {
            return Err(Error::Config("at least one test and one solver are required".into()));
        }
        if let Some(id) = self.tests.iter().find(|id| !TEST_IDS.contains(id)) {
            return Err(Error::Config(format!(
                "unknown test id {id}; valid ids: 1, 2, 3, 4, 5, 6"
            )));
        }
        if !(self.noise_scale >= 0.0 && self.noise_scale.is_finite()) {
            return Err(Error::Config(format!("noise must be >= 0, got {}", self.noise_scale)));
        }
        self.trnnc.validate()?;
        self.baseline.validate()?;
        Ok(())
    }
}

/// One (test, solver) outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub problem: String,
    pub shape: String,
    pub solver: String,
    pub n: usize,
    /// `+∞` when the solver failed.
    #[serde(with = "report::inf_as_string")]
    pub rho: f64,
    pub iterations: usize,
    pub converged: bool,
    pub seconds: f64,
    pub seed: u64,
    /// Most negative solution component, or 0 when none is negative.
    pub min_v: f64,
}

/// Records plus the data needed to plot them.
#[derive(Clone, Debug)]
pub struct BenchRun {
    pub config: BenchConfig,
    pub records: Vec<BenchRecord>,
    /// Problems in test order.
    pub problems: Vec<TestProblem>,
    /// Solution per record, `None` for failed solves.
    pub solutions: Vec<Option<DenseVector>>,
    /// Notices about skipped work.
    pub notices: Vec<String>,
}

/// Runs every requested (test, solver) pair.
///
/// Records come out sorted by test id then solver, independent of the
/// execution mode. INV is skipped for non-square shapes. A failing solver
/// yields a record with `rho = +∞` and `converged = false`.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchRun> {
    cfg.validate()?;
    let mut tests = cfg.tests.clone();
    tests.sort_unstable();
    tests.dedup();
    let mut solvers = cfg.solvers.clone();
    solvers.sort_unstable();
    solvers.dedup();

    let mut notices = Vec::new();
    if cfg.shape != MatrixShape::Square && solvers.contains(&SolverId::Inv) {
        let msg = format!("skipping inv: matrix inversion needs a square matrix (shape {})", cfg.shape);
        log::warn!("{msg}");
        notices.push(msg);
        solvers.retain(|&s| s != SolverId::Inv);
    }

    let problems = tests
        .iter()
        .map(|&id| benchmark_problem(id, cfg.n, cfg.shape, cfg.noise_scale, cfg.seed))
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, SolverId)> = (0..problems.len())
        .flat_map(|t| solvers.iter().map(move |&s| (t, s)))
        .collect();

    let outcomes = par::map(&jobs, cfg.execution, |&(t, solver)| {
        let problem = &problems[t];
        let start = Instant::now();
        let result = solver.solve(&problem.a, &problem.b, &cfg.trnnc, &cfg.baseline);
        let seconds = if cfg.record_timing {
            start.elapsed().as_secs_f64()
        } else {
            0.0
        };
        (result, seconds)
    });

    let mut records = Vec::with_capacity(jobs.len());
    let mut solutions = Vec::with_capacity(jobs.len());
    for (&(t, solver), (result, seconds)) in jobs.iter().zip(outcomes) {
        let problem = &problems[t];
        let (rho_value, iterations, converged, min_v, solution) = match result {
            Ok(r) => {
                let rho_value = rho(&problem.v0, &r.v)?;
                (rho_value, r.iterations, r.converged, r.v.min().min(0.0), Some(r.v))
            }
            Err(e) => {
                log::warn!("{} on {} failed: {e}", solver, problem.name);
                (f64::INFINITY, 0, false, 0.0, None)
            }
        };
        records.push(BenchRecord {
            problem: problem.name.clone(),
            shape: cfg.shape.as_str().to_string(),
            solver: solver.as_str().to_string(),
            n: cfg.n,
            rho: rho_value,
            iterations,
            converged,
            seconds,
            seed: cfg.seed,
            min_v,
        });
        solutions.push(solution);
    }

    Ok(BenchRun {
        config: cfg.clone(),
        records,
        problems,
        solutions,
        notices,
    })
}

/// Writes `results.csv`, `results.json` and, if enabled, the SVG plots.
pub fn write_outputs(run: &BenchRun, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    emit_csv(&run.records, &dir.join("results.csv"))?;
    emit_json(&run.config, &run.records, &dir.join("results.json"))?;
    if run.config.emit_plots {
        emit_plots(run, dir)?;
    }
    Ok(())
}
