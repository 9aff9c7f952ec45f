//! Runs fractional evolution sweeps and writes CSV tables and SVG plots.
//!
//! Three invocation shapes:
//!
//! * `simulate --config run.conf` executes a configuration document;
//! * `simulate --preset fig9 --out results/` reproduces a canned study,
//!   one `<label>.csv` and `<label>.svg` pair per qubit count;
//! * ad-hoc flags, e.g. `simulate --variant new --qubits 1 --beta 0.2,0.8`,
//!   print CSV to stdout unless `--csv`, `--svg` or `--out` are given.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 numerical failure during evaluation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tfqs::config::{parse_config, ConfigError, RunConfig};
use tfqs::svg::{emit_svg, Grouping, SvgError};
use tfqs::sweep::{run_sweep, write_csv, PresetRun, SweepError};

#[derive(Parser)]
#[command(
    name = "simulate",
    version,
    about = "Time-fractional Jaynes-Cummings sweeps: CSV tables and SVG plots"
)]
struct Cli {
    /// Configuration document (key=value lines, # comments)
    #[arg(long, value_name = "PATH", exclusive = true)]
    config: Option<PathBuf>,

    /// Canned parameter study, fig1 through fig13
    #[arg(long, value_name = "NAME", requires = "out", conflicts_with_all = AXIS_FLAGS)]
    preset: Option<String>,

    /// Evolution law(s): naber1, naber2, xgf, new (comma list)
    #[arg(long, value_name = "LIST")]
    variant: Option<String>,

    /// Number of atoms in the cavity: 1 or 2
    #[arg(long, value_name = "L")]
    qubits: Option<u8>,

    /// Fractional order value(s) in (0, 1] (comma list)
    #[arg(long, value_name = "LIST")]
    beta: Option<String>,

    /// Coupling strength value(s) in [0, 1] (comma list)
    #[arg(long, value_name = "LIST")]
    lambda: Option<String>,

    /// Initial photon number(s) (comma list)
    #[arg(long, value_name = "LIST")]
    n: Option<String>,

    /// Initial concurrence value(s) in [0, 1] (comma list)
    #[arg(long, value_name = "LIST")]
    c0: Option<String>,

    /// End of the time grid
    #[arg(long, value_name = "T")]
    tmax: Option<f64>,

    /// Number of time samples (at least 2)
    #[arg(long, value_name = "N")]
    steps: Option<usize>,

    /// Columns to compute: total, excited, rho_diag (comma list)
    #[arg(long, value_name = "LIST")]
    observables: Option<String>,

    /// Plotted probability: total or excited
    #[arg(long, value_name = "FIELD")]
    plot: Option<String>,

    /// Write the CSV table here
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Write the SVG plot here
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,

    /// Directory for per-run <label>.csv and <label>.svg files
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

const AXIS_FLAGS: [&str; 10] = [
    "variant", "qubits", "beta", "lambda", "n", "c0", "tmax", "steps", "observables", "plot",
];

enum AppError {
    Io(std::io::Error),
    Config(ConfigError),
    Sweep(SweepError),
    Svg(SvgError),
    Usage(String),
}

impl AppError {
    fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Io(_) | AppError::Svg(SvgError::Io(_)) => ExitCode::from(1),
            AppError::Config(_)
            | AppError::Usage(_)
            | AppError::Svg(SvgError::EmptySelection(_))
            | AppError::Sweep(SweepError::InvalidConfig(_)) => ExitCode::from(2),
            AppError::Sweep(SweepError::Numerical { .. }) => ExitCode::from(3),
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Io(e) => format!("io: {e}"),
            AppError::Config(e) => e.to_string(),
            AppError::Sweep(e) => e.to_string(),
            AppError::Svg(e) => format!("plot: {e}"),
            AppError::Usage(m) => m.clone(),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl From<ConfigError> for AppError {
    fn from(e: ConfigError) -> Self {
        AppError::Config(e)
    }
}

impl From<SweepError> for AppError {
    fn from(e: SweepError) -> Self {
        AppError::Sweep(e)
    }
}

impl From<SvgError> for AppError {
    fn from(e: SvgError) -> Self {
        AppError::Svg(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simulate: {}", e.message());
            e.exit_code()
        }
    }
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => document_from_flags(cli)?,
    };
    let rc = parse_config(&text)?;
    execute(&rc)
}

/// Renders the command line as a configuration document so that flag and
/// file invocations share one parsing and validation path.
fn document_from_flags(cli: &Cli) -> Result<String, AppError> {
    let mut doc = String::new();
    let mut put = |key: &str, value: Option<String>| {
        if let Some(v) = value {
            let _ = writeln!(doc, "{key}={v}");
        }
    };
    put("preset", cli.preset.clone());
    put("variant", cli.variant.clone());
    put("l", cli.qubits.map(|l| l.to_string()));
    put("beta", cli.beta.clone());
    put("lambda", cli.lambda.clone());
    put("n", cli.n.clone());
    put("c0", cli.c0.clone());
    put("tmax", cli.tmax.map(|t| t.to_string()));
    put("steps", cli.steps.map(|s| s.to_string()));
    put("observables", cli.observables.clone());
    put("plot", cli.plot.clone());
    put("csv", path_value(cli.csv.as_ref())?);
    put("svg", path_value(cli.svg.as_ref())?);
    put("out", path_value(cli.out.as_ref())?);
    if doc.is_empty() {
        return Err(AppError::Usage(
            "nothing to do; pass --config, --preset or at least --variant/--qubits/--beta \
             (see --help)"
                .into(),
        ));
    }
    Ok(doc)
}

fn path_value(path: Option<&PathBuf>) -> Result<Option<String>, AppError> {
    match path {
        None => Ok(None),
        Some(p) => match p.to_str() {
            Some(s) => Ok(Some(s.to_string())),
            None => Err(AppError::Usage(format!("path {p:?} is not valid UTF-8"))),
        },
    }
}

fn execute(rc: &RunConfig) -> Result<(), AppError> {
    if rc.runs.len() > 1 && rc.out.is_none() {
        return Err(AppError::Usage(format!(
            "this study expands to {} runs; pass --out <dir> to receive one file pair per run",
            rc.runs.len()
        )));
    }
    if let Some(dir) = &rc.out {
        std::fs::create_dir_all(dir)?;
    }
    for run in &rc.runs {
        execute_run(rc, run)?;
    }
    Ok(())
}

fn execute_run(rc: &RunConfig, run: &PresetRun) -> Result<(), AppError> {
    let table = run_sweep(&run.config)?;
    let grouping = Grouping { curves: run.curves, y: run.y };
    let mut sink_count = 0;
    if let Some(dir) = &rc.out {
        write_csv(&table, &dir.join(format!("{}.csv", run.label)))?;
        emit_svg(&table, grouping, &dir.join(format!("{}.svg", run.label)))?;
        sink_count += 2;
    }
    if let Some(path) = &rc.csv {
        write_csv(&table, path)?;
        sink_count += 1;
    }
    if let Some(path) = &rc.svg {
        emit_svg(&table, grouping, path)?;
        sink_count += 1;
    }
    if sink_count == 0 {
        print!("{}", table.to_csv_string());
    }
    Ok(())
}
