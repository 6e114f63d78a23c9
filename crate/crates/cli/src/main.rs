//! `ptspectra` command-line driver.
//!
//! Exit status: 0 on success, 1 when a computation fails, 2 for bad flags or
//! config files.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use commands::*;
use config::{merge, ConfigFile, ModelArgs, OutputArgs};
use output::{emit, Artifact, Meta};

pub enum Fail {
    Config(anyhow::Error),
    Compute(anyhow::Error),
}

impl std::fmt::Display for Fail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fail::Config(e) | Fail::Compute(e) => write!(f, "{e:#}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "ptspectra", version, about = "Spectra, regions and observables of PT-symmetric transfer matrices")]
struct Cli {
    /// JSON config file; flags given on the command line override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for scans, enumeration and trajectories.
    #[arg(long, global = true, env = "PTSPECTRA_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Run<C: Args> {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    computation: C,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, region label and PT diagnostics of one model.
    Spectrum(Run<SpectrumArgs>),
    /// Region label of a model or of an explicit eigenvalue list.
    Classify(Run<ClassifyArgs>),
    /// Two-point function as CSV (r, G, method).
    Correlator(Run<CorrelatorArgs>),
    /// Phase-diagram scan over two parameter ranges, as CSV.
    Scan(Run<ScanArgs>),
    /// Partition-function zeros along a one-parameter path.
    Zeros(Run<ZerosArgs>),
    /// Spectrum of a character-basis gauge Hamiltonian.
    GaugeSpectrum(Run<GaugeSpectrumArgs>),
    /// Lowest gauge eigenvalues versus beta_mu, as CSV (beta_mu, k, re_E, im_E).
    Trajectory(Run<TrajectoryArgs>),
    /// Brute-force enumeration checked against the transfer matrix.
    Oracle(Run<OracleArgs>),
    /// Similarity transform to an isospectral Hermitian matrix.
    Hermitize(Run<HermitizeArgs>),
    /// The matrix in a PT-invariant basis, where it is real.
    Realbasis(Run<RealBasisArgs>),
}

struct Resolved<C> {
    model: ModelArgs,
    computation: C,
    output: OutputArgs,
    seed: Option<u64>,
}

fn resolve<C>(name: &str, run: &Run<C>, file: Option<&ConfigFile>) -> Result<Resolved<C>, Fail>
where
    C: Args + Serialize + DeserializeOwned,
{
    let cfg = |e: anyhow::Error| Fail::Config(e);
    if let Some(sub) = file.and_then(|f| f.subcommand.as_deref()) {
        if sub != name {
            return Err(cfg(anyhow!("config is for `{sub}` but `{name}` was run")));
        }
    }
    Ok(Resolved {
        model: merge(&run.model, file.and_then(|f| f.model.as_ref()), "model").map_err(cfg)?,
        computation: merge(&run.computation, file.and_then(|f| f.computation.as_ref()), "computation")
            .map_err(cfg)?,
        output: merge(&run.output, file.and_then(|f| f.output.as_ref()), "output").map_err(cfg)?,
        seed: file.and_then(|f| f.seed),
    })
}

fn execute<C>(
    name: &str,
    run: &Run<C>,
    file: Option<&ConfigFile>,
    f: fn(&ModelArgs, &C) -> Result<Artifact, Fail>,
) -> Result<(), Fail>
where
    C: Args + Serialize + DeserializeOwned,
{
    let r = resolve(name, run, file)?;
    let artifact = f(&r.model, &r.computation)?;
    let meta = Meta {
        subcommand: name,
        version: env!("CARGO_PKG_VERSION"),
        library_version: ptspectra::VERSION,
        format: artifact.format,
        columns: artifact.columns,
        model: serde_json::to_value(&r.model).unwrap_or_default(),
        resolved: artifact.resolved.clone(),
        computation: serde_json::to_value(&r.computation).unwrap_or_default(),
        seed: r.seed,
        notes: artifact.notes.clone(),
    };
    emit(r.output.out.as_deref(), &artifact, &meta).map_err(Fail::Compute)
}

fn dispatch(cli: &Cli) -> Result<(), Fail> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Fail::Config(anyhow!("--threads must be at least 1")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Fail::Compute(e.into()))?;
    }
    let file = match &cli.config {
        Some(p) => Some(ConfigFile::load(p).map_err(Fail::Config)?),
        None => None,
    };
    let file = file.as_ref();
    match &cli.command {
        Command::Spectrum(r) => execute("spectrum", r, file, spectrum),
        Command::Classify(r) => execute("classify", r, file, classify),
        Command::Correlator(r) => execute("correlator", r, file, correlator),
        Command::Scan(r) => execute("scan", r, file, scan),
        Command::Zeros(r) => execute("zeros", r, file, zeros),
        Command::GaugeSpectrum(r) => execute("gauge-spectrum", r, file, gauge_spectrum),
        Command::Trajectory(r) => execute("trajectory", r, file, trajectory),
        Command::Oracle(r) => execute("oracle", r, file, oracle),
        Command::Hermitize(r) => execute("hermitize", r, file, hermitize_cmd),
        Command::Realbasis(r) => execute("realbasis", r, file, realbasis),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Config(e)) => {
            eprintln!("ptspectra: configuration error: {e:#}");
            ExitCode::from(2)
        }
        Err(Fail::Compute(e)) => {
            eprintln!("ptspectra: {e:#}");
            ExitCode::from(1)
        }
    }
}
