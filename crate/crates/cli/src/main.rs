//! `twomode`: entanglement measures of two-mode Gaussian states from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical-domain error,
//! 3 iteration or rejection budget exceeded.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twomode_core::channels::{ChannelKind, Mode};
use twomode_core::decomp::local_squeeze_params;
use twomode_core::error::{Error, Result};
use twomode_core::experiments::{channel_sweep, fig2, fig3, linspace, sample_corpus};
use twomode_core::measures::{eof_lower_bound, r_tilde_interval};
use twomode_core::oracle::{exact_eof, min_beta, EofConfig, EofStrategy};
use twomode_core::records::{
    parse_state, ser12, write_records, EofRecord, EprRecord, MeasureRecord, Metadata, OutputFormat,
};
use twomode_core::sampler::{SamplerConfig, Symmetry};
use twomode_core::StandardForm;

#[derive(Debug, Parser)]
#[command(name = "twomode", version, about = "Entanglement of two-mode Gaussian states")]
struct Cli {
    /// Seed for every random draw; recorded in the output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Bracket width on the optimal two-mode squeezing.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Mode the channel acts on.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    mode: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    JsonLines,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::JsonLines => OutputFormat::JsonLines,
        }
    }
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Read 16 covariance-matrix entries (row-major) instead of `a b c1 c2`.
    #[arg(long)]
    dense: bool,

    #[arg(required = true, allow_negative_numbers = true, num_args = 1..)]
    values: Vec<f64>,
}

impl StateArgs {
    fn state(&self) -> Result<StandardForm> {
        let want = if self.dense { 16 } else { 4 };
        if self.values.len() != want {
            return Err(Error::InvalidArgument(format!(
                "expected {want} numbers, got {}",
                self.values.len()
            )));
        }
        parse_state(&self.values)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymmetryArg {
    Generic,
    Symmetric,
    Balanced,
}

impl From<SymmetryArg> for Symmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Generic => Symmetry::Generic,
            SymmetryArg::Symmetric => Symmetry::Symmetric,
            SymmetryArg::Balanced => Symmetry::Balanced,
        }
    }
}

#[derive(Debug, Args)]
struct SamplerArgs {
    /// Keep only entangled states.
    #[arg(long)]
    entangled: bool,

    #[arg(long, value_enum, default_value_t = SymmetryArg::Generic)]
    symmetry: SymmetryArg,

    /// Upper end of the local-variance range.
    #[arg(long, default_value_t = 5.0)]
    a_max: f64,
}

impl SamplerArgs {
    fn config(&self, force_entangled: bool) -> SamplerConfig {
        SamplerConfig {
            a_max: self.a_max,
            entangled_only: self.entangled || force_entangled,
            symmetry: self.symmetry.into(),
            ..SamplerConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Nested,
    FullSimplex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChannelArg {
    Lossy,
    Amplifier,
    ClassicalNoise,
}

impl From<ChannelArg> for ChannelKind {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Lossy => ChannelKind::Lossy,
            ChannelArg::Amplifier => ChannelKind::Amplifier,
            ChannelArg::ClassicalNoise => ChannelKind::ClassicalNoise,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Logarithmic negativity, entanglement-of-formation lower bound and
    /// separability of one state.
    Measure(StateArgs),
    /// Numerical entanglement of formation with full diagnostics.
    ExactEof {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Nested)]
        strategy: StrategyArg,
        /// Extra random simplex starts (drawn from --seed).
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iterations: usize,
    },
    /// Disentangling interval, lower bound and the local squeezing of the
    /// minimal decomposition.
    Lowerbound(StateArgs),
    /// Minimum of the gain-optimised EPR product.
    Epr(StateArgs),
    /// Sweep a channel applied to two-mode squeezed vacua.
    Channel {
        #[arg(long, value_enum)]
        kind: ChannelArg,
        /// Channel parameter range; defaults cover the physical range.
        #[arg(long, allow_negative_numbers = true)]
        param_min: Option<f64>,
        #[arg(long)]
        param_max: Option<f64>,
        #[arg(long, default_value_t = 11)]
        param_points: usize,
        #[arg(long, default_value_t = 0.0)]
        chi_min: f64,
        #[arg(long, default_value_t = 0.99)]
        chi_max: f64,
        #[arg(long, default_value_t = 11)]
        chi_points: usize,
    },
    /// Random corpus of standard-form states.
    Sample {
        #[arg(long, short)]
        n: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// Optimal against lower-bound symplectic eigenvalues on random
    /// entangled states.
    Fig2 {
        #[arg(long, short, default_value_t = 1000)]
        n: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// Lossy-channel curves for a squeezed vacuum of squeezing r.
    Fig3 {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 101)]
        n_tau: usize,
    },
}

#[derive(Debug, Serialize)]
struct LowerBoundRecord {
    #[serde(serialize_with = "ser12")]
    a: f64,
    #[serde(serialize_with = "ser12")]
    b: f64,
    #[serde(serialize_with = "ser12")]
    c1: f64,
    #[serde(serialize_with = "ser12")]
    c2: f64,
    #[serde(serialize_with = "ser12")]
    r_tilde_minus: f64,
    #[serde(serialize_with = "ser12")]
    r_tilde_plus: f64,
    #[serde(rename = "E_F_tilde", serialize_with = "ser12")]
    e_f_tilde: f64,
    /// Local squeezing of the local-then-squeeze decomposition at r~_-;
    /// empty for separable states.
    r1_tilde: Option<f64>,
    r2_tilde: Option<f64>,
}

fn exit_code(err: &Error) -> u8 {
    if err.is_budget() {
        3
    } else if err.is_numerical() {
        2
    } else {
        1
    }
}

fn emit<T: Serialize>(cli: &Cli, meta: &Metadata, rows: &[T]) -> Result<()> {
    let meta = meta.clone().with("tol", cli.tol).with("mode", cli.mode);
    match &cli.out {
        Some(path) => {
            let file = BufWriter::new(File::create(path)?);
            write_records(file, &meta, cli.format.into(), rows)
        }
        None => write_records(io::stdout().lock(), &meta, cli.format.into(), rows),
    }
}

fn run(cli: &Cli) -> Result<()> {
    if cli.tol.is_nan() || cli.tol <= 0.0 || cli.tol.is_infinite() {
        return Err(Error::InvalidArgument(format!("--tol must be positive, got {}", cli.tol)));
    }
    let mode = Mode::try_from(cli.mode)?;
    let seed = Some(cli.seed);
    match &cli.command {
        Command::Measure(state) => {
            let sf = state.state()?;
            emit(cli, &Metadata::new("measure", seed), &[MeasureRecord::of(&sf)?])
        }
        Command::ExactEof { state, strategy, restarts, max_iterations } => {
            let sf = state.state()?;
            let cfg = EofConfig {
                tol: cli.tol,
                max_outer_iterations: *max_iterations,
                random_restarts: *restarts,
                seed: cli.seed,
                strategy: match strategy {
                    StrategyArg::Nested => EofStrategy::Nested,
                    StrategyArg::FullSimplex => EofStrategy::FullSimplex,
                },
                ..EofConfig::default()
            };
            let meta = Metadata::new("exact-eof", seed).with("max_iterations", max_iterations).with("restarts", restarts);
            match exact_eof(&sf, &cfg) {
                Ok(res) => emit(cli, &meta, &[EofRecord::new(&sf, &res)]),
                Err(Error::EofBudgetExceeded { best }) => {
                    let meta = meta.with("status", "budget-exceeded");
                    emit(cli, &meta, &[EofRecord::new(&sf, &best)])?;
                    Err(Error::EofBudgetExceeded { best })
                }
                Err(e) => Err(e),
            }
        }
        Command::Lowerbound(state) => {
            let sf = state.state()?;
            let interval = r_tilde_interval(&sf)?;
            let locals = if interval.r_minus > 0.0 { Some(local_squeeze_params(&sf, interval.r_minus)?) } else { None };
            let [a, b, c1, c2] = sf.params();
            let rec = LowerBoundRecord {
                a,
                b,
                c1,
                c2,
                r_tilde_minus: interval.r_minus,
                r_tilde_plus: interval.r_plus,
                e_f_tilde: eof_lower_bound(&sf)?,
                r1_tilde: locals.map(|l| twomode_core::records::round_sig(l.0)),
                r2_tilde: locals.map(|l| twomode_core::records::round_sig(l.1)),
            };
            emit(cli, &Metadata::new("lowerbound", seed), &[rec])
        }
        Command::Epr(state) => {
            let sf = state.state()?;
            let res = min_beta(&sf)?;
            emit(cli, &Metadata::new("epr", seed), &[EprRecord::from(&res)])
        }
        Command::Channel { kind, param_min, param_max, param_points, chi_min, chi_max, chi_points } => {
            let kind: ChannelKind = (*kind).into();
            let (lo, hi) = match kind {
                ChannelKind::Lossy => (0.0, 1.0),
                ChannelKind::Amplifier => (1.0, 5.0),
                ChannelKind::ClassicalNoise => (0.0, 4.0),
            };
            let params = linspace(param_min.unwrap_or(lo), param_max.unwrap_or(hi), *param_points);
            let chis = linspace(*chi_min, *chi_max, *chi_points);
            let rows = channel_sweep(kind, &chis, &params, mode)?;
            let meta = Metadata::new("channel", seed).with("kind", kind);
            emit(cli, &meta, &rows)
        }
        Command::Sample { n, sampler } => {
            let cfg = sampler.config(false);
            let rows = sample_corpus(*n, cli.seed, cfg)?;
            let meta = Metadata::new("sample", seed).with("n", n).with("sampler", cfg.describe());
            emit(cli, &meta, &rows)
        }
        Command::Fig2 { n, sampler } => {
            let cfg = sampler.config(true);
            let rows = fig2(*n, cli.seed, cfg, &EofConfig::default().with_tol(cli.tol))?;
            let meta = Metadata::new("fig2", seed).with("n", n).with("sampler", cfg.describe());
            emit(cli, &meta, &rows)
        }
        Command::Fig3 { r, n_tau } => {
            let rows = fig3(*r, *n_tau, mode)?;
            let meta = Metadata::new("fig3", seed).with("r", r).with("n_tau", n_tau).with("channel", "lossy");
            emit(cli, &meta, &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
