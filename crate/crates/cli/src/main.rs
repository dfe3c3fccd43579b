use std::fs::File;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use blockrat::sample::NoiseSpec;
use clap::{Args, Parser, Subcommand};

use blockrat_cli::io::load_samples;
use blockrat_cli::problems::{problem_by_name, Problem, PROBLEM_NAMES};
use blockrat_cli::sweep::{run_sweep, write_csv, write_trace_csv, Method, SweepOptions};

#[derive(Parser)]
#[command(name = "blockrat", version, about = "Rational approximation of sampled matrix-valued functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a problem with several methods over a range of orders.
    Fit(FitArgs),
}

#[derive(Args)]
struct FitArgs {
    /// Built-in problem: toy1, toy2, buckling or scalar-noise.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    problem: Option<String>,
    /// Sample file to fit instead of a built-in problem.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', required = true)]
    method: Vec<Method>,
    /// Inclusive order range `a:b`, or a single order.
    #[arg(long, value_parser = parse_orders)]
    orders: (usize, usize),
    /// Relative tolerance for the AAA variants (default: run to the order).
    #[arg(long)]
    tol: Option<f64>,
    /// Iterations for vf and rkfit.
    #[arg(long, default_value_t = 5)]
    iters: usize,
    /// Add Gaussian noise of this standard deviation to the samples.
    #[arg(long, requires = "seed")]
    noise: Option<f64>,
    /// Seed for the noise and the surrogate directions.
    #[arg(long)]
    seed: Option<u64>,
    /// Timing repetitions per cell.
    #[arg(long, default_value_t = 20)]
    repeats: usize,
    /// CSV output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-iteration traces to `<out>.trace.csv`.
    #[arg(long, requires = "out")]
    trace: bool,
    /// Measure RMSE against the clean samples when noise was added.
    #[arg(long)]
    against_truth: bool,
}

fn parse_orders(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid order `{t}`"));
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let a = parse(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty order range {a}:{b}"));
    }
    Ok((a, b))
}

fn load_problem(args: &FitArgs) -> Result<Problem> {
    let mut problem = match (&args.problem, &args.input) {
        (Some(name), _) => match problem_by_name(name) {
            Some(p) => p?,
            None => bail!("unknown problem `{name}` (expected one of {})", PROBLEM_NAMES.join(", ")),
        },
        (None, Some(path)) => {
            let samples = load_samples(path).with_context(|| format!("loading {}", path.display()))?;
            let name = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
            Problem::new(name, samples)
        }
        (None, None) => bail!("either --problem or --input is required"),
    };
    if let Some(std) = args.noise {
        let spec = NoiseSpec::new(std, args.seed.unwrap_or(0))?;
        problem = problem.with_noise(spec);
    }
    Ok(problem)
}

fn run(args: FitArgs) -> Result<bool> {
    let problem = load_problem(&args)?;
    let opts = SweepOptions {
        tol: args.tol,
        iterations: args.iters,
        repeats: args.repeats,
        against_truth: args.against_truth,
        seed: args.seed.unwrap_or(0),
    };
    let records = run_sweep(&problem, &args.method, args.orders.0..=args.orders.1, &opts);
    for r in &records {
        for w in &r.warnings {
            eprintln!("{} d={}: {w}", r.method, r.order);
        }
        if !r.is_ok() {
            eprintln!("{} d={}: error: {}", r.method, r.order, r.status);
        }
    }
    match &args.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(f, &records)?;
            if args.trace {
                let mut tp = path.clone().into_os_string();
                tp.push(".trace.csv");
                let f = File::create(&tp).with_context(|| format!("creating {}", tp.to_string_lossy()))?;
                write_trace_csv(f, &records)?;
            }
        }
        None => write_csv(io::stdout().lock(), &records)?,
    }
    Ok(records.iter().all(|r| r.is_ok()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Fit(args) => match run(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(2),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}
