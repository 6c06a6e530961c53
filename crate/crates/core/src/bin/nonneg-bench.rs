use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nonneg::bench::{parse_solvers, parse_tests, run_benchmark, write_outputs, BenchConfig};
use nonneg::conditioning::condition_report;
use nonneg::linalg::io::fmt_f64;
use nonneg::par::Execution;
use nonneg::problems::{benchmark_problem, noise_draws, test_matrix, MatrixShape};
use nonneg::trnnc::TrnncConfig;
use nonneg::Error;

#[derive(Parser)]
#[command(name = "nonneg-bench", version, about = "Non-negative solvers on symmetrized Hilbert problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run solvers on the benchmark tests and write results.csv / results.json.
    Run(RunArgs),
    /// Print the conditioning report of the test matrix as JSON.
    Cond {
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value = "square")]
        shape: String,
    },
    /// Write one serialized test problem (A.csv, v0.csv, b.csv, noise.csv, meta.json).
    Gen {
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value = "square")]
        shape: String,
        #[arg(long, default_value = "1")]
        test: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        noise: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value = "square")]
    shape: String,
    #[arg(long, default_value = "1,2,3,4,5,6")]
    tests: String,
    #[arg(long, default_value = "inv,tr,art,nnls,smart,mrnsd,trnnc")]
    solvers: String,
    /// TRNNC regularization (also the TR baseline's unless --alpha-tr is given).
    #[arg(long, default_value_t = 1e-13)]
    alpha: f64,
    #[arg(long)]
    alpha_tr: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    omega: f64,
    #[arg(long, default_value_t = 1e-8)]
    eps: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1000)]
    art_sweeps: usize,
    #[arg(long, default_value_t = 1.0)]
    art_relax: f64,
    /// Iteration cap for SMART and MRNSD.
    #[arg(long, default_value_t = 10_000)]
    iters: usize,
    /// Stop tolerance for NNLS, SMART and MRNSD.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    noise: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Also write SVG reconstruction plots.
    #[arg(long)]
    plots: bool,
    /// Record wall-clock seconds (makes results.csv non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Run solver jobs on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn config(&self) -> Result<BenchConfig, Error> {
        let defaults = BenchConfig::default();
        Ok(BenchConfig {
            n: self.n,
            shape: self.shape.parse()?,
            tests: parse_tests(&self.tests)?,
            solvers: parse_solvers(&self.solvers)?,
            trnnc: TrnncConfig {
                alpha: self.alpha,
                omega: self.omega,
                eps_stop: self.eps,
                max_iters: self.max_iters,
                ..defaults.trnnc
            },
            baseline: nonneg::baselines::BaselineConfig {
                alpha_tr: self.alpha_tr.unwrap_or(self.alpha),
                art_sweeps: self.art_sweeps,
                art_relax: self.art_relax,
                iters: self.iters,
                tol: self.tol,
            },
            noise_scale: self.noise,
            seed: self.seed,
            out_dir: Some(self.out.clone()),
            emit_plots: self.plots,
            record_timing: self.timing,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
        })
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(args) => {
            let cfg = args.config()?;
            let run = run_benchmark(&cfg)?;
            for notice in &run.notices {
                eprintln!("notice: {notice}");
            }
            write_outputs(&run, &args.out)?;
            eprintln!(
                "wrote {} records to {}",
                run.records.len(),
                args.out.join("results.csv").display()
            );
            Ok(())
        }
        Command::Cond { n, shape } => {
            let a = test_matrix(n, shape.parse::<MatrixShape>()?)?;
            let report = condition_report(&a)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(())
        }
        Command::Gen {
            n,
            shape,
            test,
            seed,
            noise,
            out,
        } => {
            let ids = parse_tests(&test)?;
            let [id] = ids[..] else {
                return Err(Error::Config("gen takes exactly one test id".into()));
            };
            let problem = benchmark_problem(id, n, shape.parse()?, noise, seed)?;
            problem.save(&out)?;
            let draws: String = noise_draws(problem.a.rows(), seed)
                .into_iter()
                .map(|x| fmt_f64(x) + "\n")
                .collect();
            let path = out.join("noise.csv");
            std::fs::write(&path, draws).map_err(|e| Error::Io { path, source: e })?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
