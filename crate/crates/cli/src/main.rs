mod commands;
mod grid;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use dynsamp::field::{FieldKind, Float, GaussianRational, Q};
use dynsamp::Execution;

use commands::Status;
use input::{declared_mode, problem_file, read_json, InputError, PoolSpec};

#[derive(Parser)]
#[command(
    name = "dynsamp",
    version,
    about = "Source recovery from space-time samples of linear dynamical systems"
)]
struct Cli {
    /// Scalar field; overrides the `mode` declared in the input file.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Evaluate candidate subsets one at a time.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
    Gaussian,
}

impl From<Mode> for FieldKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => FieldKind::Exact,
            Mode::Float => FieldKind::Float,
            Mode::Gaussian => FieldKind::Gaussian,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the file's sensors are complete for its source space.
    Check {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Suggest observational sets: the default placement and minimal subsets of a pool.
    Place {
        problem: PathBuf,
        #[arg(long, default_value = "standard")]
        pool: PoolSpec,
        /// Largest subset size searched (default: dim W + 1).
        #[arg(long)]
        max_l: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal standard-basis sensor sets for every standard-basis source.
    Tables {
        problem: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_l: usize,
    },
    /// Sample the system driven by the source with the given coefficients.
    Simulate {
        problem: PathBuf,
        /// Coefficients of ω in the source basis, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Initial state, comma separated (default: random integers from --seed).
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per sensor, n = 0..N-1 (default: d + 1).
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the recovery plan for a complete problem.
    Plan {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the source from measurements with a saved plan.
    Recover {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        measurements: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Place sensors on a grid with wind, then simulate and recover the sources.
    DemoGrid {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

macro_rules! dispatch {
    ($kind:expr, $f:ident ( $($arg:expr),* )) => {
        match $kind {
            FieldKind::Exact => commands::$f::<Q>($($arg),*),
            FieldKind::Float => commands::$f::<Float>($($arg),*),
            FieldKind::Gaussian => commands::$f::<GaussianRational>($($arg),*),
        }
    };
}

fn run(cli: Cli) -> Result<Status> {
    let mode = cli.mode.map(FieldKind::from);
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Check { problem, out } => {
            let file = problem_file(&problem, mode)?;
            dispatch!(file.mode, check(&problem, &file, out.as_deref()))
        }
        Command::Place {
            problem,
            pool,
            max_l,
            out,
        } => {
            let file = problem_file(&problem, mode)?;
            dispatch!(
                file.mode,
                place(&problem, &file, &pool, max_l, exec, out.as_deref())
            )
        }
        Command::Tables { problem, max_l } => {
            let file = problem_file(&problem, mode)?;
            dispatch!(file.mode, tables(&problem, &file, max_l, exec))
        }
        Command::Simulate {
            problem,
            coeffs,
            x0,
            seed,
            horizon,
            out,
        } => {
            let file = problem_file(&problem, mode)?;
            dispatch!(
                file.mode,
                simulate_cmd(
                    &problem,
                    &file,
                    &coeffs,
                    x0.as_deref(),
                    seed,
                    horizon,
                    out.as_deref()
                )
            )
        }
        Command::Plan { problem, out } => {
            let file = problem_file(&problem, mode)?;
            dispatch!(file.mode, plan(&problem, &file, out.as_deref()))
        }
        Command::Recover {
            plan,
            measurements,
            out,
        } => {
            let v = read_json(&plan)?;
            let declared = declared_mode(&v, &plan)?;
            if let Some(m) = mode {
                if m != declared {
                    return Err(input::bad_input(format!(
                        "{}: plan is in {declared} mode, --mode asked for {m}",
                        plan.display()
                    )));
                }
            }
            dispatch!(
                declared,
                recover_cmd(&plan, &v, &measurements, out.as_deref())
            )
        }
        Command::DemoGrid { scenario, out } => grid::demo(&scenario, out.as_deref()),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InputError>().is_some()
        || err.downcast_ref::<std::io::Error>().is_some()
        || err.downcast_ref::<serde_json::Error>().is_some()
    {
        return 2;
    }
    match err.downcast_ref::<dynsamp::Error>() {
        Some(dynsamp::Error::Parse(_) | dynsamp::Error::DimensionMismatch { .. }) => 2,
        Some(dynsamp::Error::NotComplete) => 3,
        Some(_) => 4,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Complete) => ExitCode::SUCCESS,
        Ok(Status::Incomplete) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
