use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use multiport::statistics::{DistributionKind, Mode, OccupancyVariant};

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "MULTIPORT_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "multiport",
    version,
    about = "Bosons in Fourier multiport beam splitters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row per quantum equivalence class, sorted by classical probability.
    Classes {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Event and class census for n = 2..=n-max.
    Table1 {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Nonsuppressed classes and their exact enhancements for n = 2..=n-max.
    Table2 {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coarse-grained distributions (classical, quantum, bosonic estimate).
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Normalization of the port-occupancy distribution.
        #[arg(long, value_enum, default_value_t = VariantArg::Marginal)]
        variant: VariantArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Runs the oracle and structural checks for one n.
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Phase histogram c_k of one arrangement.
    Ck {
        /// Occupancies, e.g. 0,1,2,1,0,2
        #[arg(long)]
        arrangement: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Zero threshold for floating probabilities, in units of n!/n^n.
    #[arg(long, default_value_t = multiport::scattering::DEFAULT_ZERO_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Lift the default size caps (float n ≤ 14, exact n ≤ 12, verify n ≤ 8).
    /// Runtime grows steeply beyond them.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float,
    Exact,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    OccupiedPorts,
    PortOccupancy,
    ClassicalClasses,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Marginal,
    AtLeastOne,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Float => Mode::Float,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Both => Mode::Both,
        }
    }
}

impl From<KindArg> for DistributionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::OccupiedPorts => DistributionKind::OccupiedPorts,
            KindArg::PortOccupancy => DistributionKind::PortOccupancy,
            KindArg::ClassicalClasses => DistributionKind::ClassicalClasses,
        }
    }
}

impl From<VariantArg> for OccupancyVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Marginal => OccupancyVariant::Marginal,
            VariantArg::AtLeastOne => OccupancyVariant::AtLeastOne,
        }
    }
}

impl CommonArgs {
    pub fn to_config(&self, n: usize) -> CliResult<RunConfig> {
        let jobs = match self.jobs {
            Some(j) => j,
            None => std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1),
        };
        let config = RunConfig {
            n,
            mode: self.mode.into(),
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            },
            output: self.output.clone(),
            jobs,
            tolerance: self.tolerance,
            cache_dir: self.cache_dir.clone(),
            force: self.force,
        };
        config.validate()?;
        Ok(config)
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidArguments(msg.into())
}
