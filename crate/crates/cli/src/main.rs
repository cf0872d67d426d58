//! `scalespec`: command-line front end.
//!
//! Every run is described by a [`config::RunConfig`], read from `--config`
//! or assembled from a subcommand and its flags. Reports go to
//! `<out>/<task>.json` and `<out>/<task>.csv` unless the config names other
//! paths. Exit status: 0 on success, 1 on a violated precondition, 2 on a
//! config or resource error.

mod config;
mod error;
mod report;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Int, Params, RunConfig, Task, TripleSpec};
use error::CliError;
use scalespec::Exec;

#[derive(Parser, Debug)]
#[command(name = "scalespec", version, about = "Spectral eigenvalues of Hadamard-triple measures and related prime statistics")]
struct Cli {
    /// JSON run configuration. Subcommand flags override its parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Seed for randomized steps (default grids).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Hadamard triple as `N:b1,b2,...:l1,l2,...`, e.g. `4:0,2:0,1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    triple: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Hadamard condition for (N, B, L).
    Verify,
    /// List the extreme cycles of the dual maps.
    Cycles,
    /// Canonical spectrum levels Λ_0, ..., Λ_n.
    Spectrum {
        #[arg(long)]
        levels: u32,
    },
    /// Decide whether q·Λ is again a spectrum.
    Eigenvalue {
        #[arg(long)]
        q: String,
    },
    /// Eigenvalue test over all primes p ≤ x coprime to N.
    Scan {
        #[arg(long)]
        x: String,
    },
    /// Power-closure check for products of the given primes.
    PowerClosure {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<String>,
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        budget: u32,
    },
    /// D_p ∩ K(N, dL) by p-power level.
    DpScan {
        #[arg(long)]
        p: String,
        #[arg(long = "M")]
        m: u32,
    },
    /// Completeness functional Q over the canonical levels.
    FourierQ(FourierArgs),
    /// Density of primes with Ord_a(p) > p^δ.
    OrderStats {
        #[arg(long)]
        a: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        x: String,
    },
    /// Density of primes with P⁺(p - 1) > p^δ.
    PplusStats {
        #[arg(long)]
        x: String,
        #[arg(long)]
        delta: String,
    },
    /// Dickman's function ρ(u).
    Dickman {
        #[arg(long)]
        u: f64,
    },
    /// Elliott–Halberstam discrepancy sum up to q ≤ x^θ.
    EhSum {
        #[arg(long)]
        x: String,
        #[arg(long)]
        theta: String,
    },
}

#[derive(Args, Debug)]
struct FourierArgs {
    #[arg(long)]
    levels: u32,
    #[arg(long)]
    depth: Option<u32>,
    /// File of grid points, one real per line.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Evaluate on q·Λ_n instead of Λ_n.
    #[arg(long)]
    q: Option<String>,
}

fn text(s: &str) -> Int {
    Int::Text(s.to_string())
}

fn read_grid(path: &PathBuf) -> Result<Vec<f64>, CliError> {
    let body =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    body.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<f64>().map_err(|_| CliError::Config(format!("grid value {l:?} is not a number"))))
        .collect()
}

/// Folds subcommand flags into the base config.
fn apply(mut config: RunConfig, command: &Command) -> Result<RunConfig, CliError> {
    let p = &mut config.params;
    config.task = match command {
        Command::Verify => Task::Verify,
        Command::Cycles => Task::Cycles,
        Command::Spectrum { levels } => {
            p.levels = Some((*levels).into());
            Task::Spectrum
        }
        Command::Eigenvalue { q } => {
            p.q = Some(text(q));
            Task::Eigenvalue
        }
        Command::Scan { x } => {
            p.x = Some(text(x));
            Task::Scan
        }
        Command::PowerClosure { primes, m, budget } => {
            p.primes = Some(primes.iter().map(|s| text(s)).collect());
            p.m = Some((*m).into());
            p.budget = Some((*budget).into());
            Task::PowerClosure
        }
        Command::DpScan { p: prime, m } => {
            p.p = Some(text(prime));
            p.m = Some((*m).into());
            Task::DpScan
        }
        Command::FourierQ(args) => {
            p.levels = Some(args.levels.into());
            if let Some(d) = args.depth {
                p.depth = Some(d.into());
            }
            if let Some(g) = &args.grid {
                p.grid = Some(read_grid(g)?);
            }
            if let Some(q) = &args.q {
                p.q = Some(text(q));
            }
            Task::FourierQ
        }
        Command::OrderStats { a, delta, x } => {
            p.a = Some(text(a));
            p.delta = Some(delta.clone());
            p.x = Some(text(x));
            Task::OrderStats
        }
        Command::PplusStats { x, delta } => {
            p.x = Some(text(x));
            p.delta = Some(delta.clone());
            Task::PplusStats
        }
        Command::Dickman { u } => {
            p.u = Some(*u);
            Task::Dickman
        }
        Command::EhSum { x, theta } => {
            p.x = Some(text(x));
            p.theta = Some(theta.clone());
            Task::EhSum
        }
    };
    Ok(config)
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let base = match &cli.config {
        Some(path) => Some(RunConfig::from_file(path)?),
        None => None,
    };
    let mut config = match (&cli.command, base) {
        (Some(cmd), Some(base)) => apply(base, cmd)?,
        (Some(cmd), None) => apply(
            RunConfig { triple: None, task: Task::Verify, params: Params::default(), output: Default::default() },
            cmd,
        )?,
        (None, Some(base)) => base,
        (None, None) => return Err(CliError::Config("give a subcommand or --config".into())),
    };
    if let Some(t) = &cli.triple {
        config.triple = Some(t.parse::<TripleSpec>()?);
    }
    if config.params.seed.is_none() {
        config.params.seed = Some(cli.seed.into());
    }
    Ok(config)
}

fn execute(cli: &Cli) -> Result<report::Report, CliError> {
    let config = build_config(cli)?;
    let seed: u64 = config.params.seed.as_ref().map(|s| s.parse("seed")).transpose()?.unwrap_or(0);
    let report = with_workers(cli.workers, |exec| tasks::run(&config, exec, seed))??;
    let name = config.task.name();
    let json_path = config.output.json.clone().unwrap_or_else(|| cli.out.join(format!("{name}.json")));
    let csv_path = config.output.csv.clone().unwrap_or_else(|| cli.out.join(format!("{name}.csv")));
    report.write(&json_path, &csv_path)?;
    Ok(report)
}

#[cfg(feature = "parallel")]
fn with_workers<T: Send>(workers: usize, f: impl FnOnce(Exec) -> T + Send) -> Result<T, CliError> {
    if workers <= 1 {
        return Ok(f(Exec::Sequential));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| f(Exec::Parallel)))
}

#[cfg(not(feature = "parallel"))]
fn with_workers<T: Send>(_workers: usize, f: impl FnOnce(Exec) -> T + Send) -> Result<T, CliError> {
    Ok(f(Exec::Sequential))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
