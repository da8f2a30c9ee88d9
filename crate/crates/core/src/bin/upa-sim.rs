//! Command-line front end: `upa-sim <subspace|sumrate|runtime> [options]`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use upa_precoding::harness::{emit_results, load_config, run_experiment, ExperimentKind, OutputFormat, ScenarioConfig};
use upa_precoding::Error;

#[derive(Parser, Debug)]
#[command(name = "upa-sim", version, about = "Tensor precoding experiments for UPA base stations")]
struct Cli {
    #[command(subcommand)]
    experiment: Experiment,
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Eigenvector drift of channel correlations and interference Grams over time.
    Subspace(RunArgs),
    /// TDD sum-rate of each precoder with periodic uplink CSI.
    Sumrate(RunArgs),
    /// Wall-clock ECDF of precoder designs.
    Runtime(RunArgs),
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// JSON config file, or `-` for stdin. Defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn run(kind: ExperimentKind, args: &RunArgs) -> Result<(), Error> {
    let mut config = match &args.config {
        Some(path) => load_config(path)?,
        None => {
            let c = ScenarioConfig::default();
            c.validate()?;
            c
        }
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    for w in config.warnings() {
        eprintln!("warning: {w}");
    }
    let result = run_experiment(kind, &config)?;
    for note in &result.notes {
        eprintln!("note: {note}");
    }
    emit_results(&result, args.format.into(), args.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.experiment {
        Experiment::Subspace(a) => (ExperimentKind::Subspace, a),
        Experiment::Sumrate(a) => (ExperimentKind::Sumrate, a),
        Experiment::Runtime(a) => (ExperimentKind::Runtime, a),
    };
    match run(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("upa-sim {}: {e}", kind.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
