use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand};

use qptlab::experiment::{read_record, run, write_outputs, ExperimentConfig, ResultRecord, Subcommand};
use qptlab::spectra::dim_cap_from_env;
use qptlab::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPABILITY: u8 = 3;

#[derive(Parser)]
#[command(name = "qptlab", version, about = "Seeded experiments with passive quantum property testers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Fourier-sampling monotonicity tester
    TestMonotonicity(RunArgs),
    /// Symmetric-subspace symmetry tester
    TestSymmetry(RunArgs),
    /// Triangle-freeness tester (--epsilon is the density gap)
    TestTriangleFreeness(RunArgs),
    /// Maiorana–McFarland membership tester
    TestMm(RunArgs),
    /// 2-fold intersection estimator
    Intersection2(RunArgs),
    /// Closed-form and brute-force trace norms of twin ensembles
    TwinSpectrum(RunArgs),
    /// Distinct-subspace identity for 3-fold intersection ensembles
    ThreeFoldCheck(RunArgs),
    /// Sample and certify a hard-instance family
    EnsembleDistinguish(RunArgs),
    /// Classical triangle-witness baseline
    BaselineTriangle(RunArgs),
    /// Exact oracles for one function
    Oracle(RunArgs),
    /// Re-run the config echoed in a result file
    Replay(ReplayArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Builtin name, `mm:<hex>`, `mm_dual:<hex>`, `pair:<hex>,<hex>`,
    /// `triple:<hex>,<hex>,<hex>` or `@path` to a hex truth table
    #[arg(long)]
    function: Option<String>,
    /// Instance family (test-mm: mm, mm_dual; ensemble-distinguish: twin, mm, triple)
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Samples per baseline run
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory to export sampled ensemble members into
    #[arg(long)]
    export: Option<PathBuf>,
    /// JSON result path; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// Per-trial CSV path
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    record: PathBuf,
    /// Compare against the stored record (wall clock excluded) instead of writing
    #[arg(long)]
    check: bool,
}

impl RunArgs {
    fn into_config(self, subcommand: Subcommand) -> Result<ExperimentConfig, Error> {
        Ok(ExperimentConfig {
            subcommand,
            function: self.function,
            family: self.family,
            n: self.n,
            t: self.t,
            m: self.m,
            q: self.q,
            epsilon: self.epsilon,
            delta: Some(self.delta),
            eta: self.eta,
            trials: self.trials,
            seed: self.seed,
            dim_cap: dim_cap_from_env()?,
            export: self.export,
            output: self.output,
            csv: self.csv,
        })
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Arity(_) | Error::Parse(_) | Error::UnknownBuiltin(_) => EXIT_USAGE,
        Error::Capability(_) => EXIT_CAPABILITY,
        _ => EXIT_FAILURE,
    }
}

fn summarize(record: &ResultRecord) {
    let a = &record.aggregates;
    let mut line = format!("{}: {} trial(s)", record.config.subcommand, a.trials);
    if let Some(rate) = a.accept_rate {
        line += &format!(", accept rate {rate:.4}");
    }
    if let Some(mean) = a.mean_statistic {
        line += &format!(", mean statistic {mean:.6}");
    }
    line += &format!(", {:.2}s", record.wall_clock_seconds);
    eprintln!("{line}");
}

fn execute(command: Command) -> Result<u8, Error> {
    let (subcommand, args) = match command {
        Command::Replay(r) => return replay(r),
        Command::TestMonotonicity(a) => (Subcommand::TestMonotonicity, a),
        Command::TestSymmetry(a) => (Subcommand::TestSymmetry, a),
        Command::TestTriangleFreeness(a) => (Subcommand::TestTriangleFreeness, a),
        Command::TestMm(a) => (Subcommand::TestMm, a),
        Command::Intersection2(a) => (Subcommand::Intersection2, a),
        Command::TwinSpectrum(a) => (Subcommand::TwinSpectrum, a),
        Command::ThreeFoldCheck(a) => (Subcommand::ThreeFoldCheck, a),
        Command::EnsembleDistinguish(a) => (Subcommand::EnsembleDistinguish, a),
        Command::BaselineTriangle(a) => (Subcommand::BaselineTriangle, a),
        Command::Oracle(a) => (Subcommand::Oracle, a),
    };
    let record = run(&args.into_config(subcommand)?)?;
    emit(&record)?;
    Ok(0)
}

fn emit(record: &ResultRecord) -> Result<(), Error> {
    if let Some(json) = write_outputs(record)? {
        print!("{json}");
    }
    summarize(record);
    Ok(())
}

fn replay(args: ReplayArgs) -> Result<u8, Error> {
    let stored = read_record(&args.record)?;
    let fresh = run(&stored.config)?;
    if !args.check {
        emit(&fresh)?;
        return Ok(0);
    }
    if fresh.canonical_json()? == stored.canonical_json()? {
        eprintln!("replay matches {}", args.record.display());
        Ok(0)
    } else {
        eprintln!("replay differs from {}", args.record.display());
        Ok(EXIT_FAILURE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qptlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
