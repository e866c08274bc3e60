use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncwalk_core::Variant;

#[derive(Debug, Parser)]
#[command(name = "ncwalk", version, about = "Count and uniformly sample 3-noncrossing set partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact number of partitions of [n].
    Count(CountArgs),
    /// Draw uniformly random partitions of [n].
    Sample(SampleArgs),
    /// List every partition of [n] (small n only).
    Enumerate(EnumerateArgs),
    /// Build count tables and write them to a cache directory.
    Tables(TablesArgs),
    /// Cross-check every counting identity and test sampler uniformity.
    Verify(VerifyArgs),
    /// Draw arc diagrams for partitions read from standard input.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    #[value(name = "two_regular", alias = "two-regular")]
    TwoRegular,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::TwoRegular => Variant::TwoRegular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Blocks,
    Arcs,
    Tableau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    /// Ground set size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub variant: VariantArg,
    /// Lift the n <= 256 table size cap.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub size: SizeArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    /// Number of samples.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    /// RNG seed; drawn from the clock and reported on stderr when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "blocks")]
    pub format: OutputFormat,
    /// Directory searched for a table written by `tables`.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "blocks")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    /// Cache directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest n for the exhaustive checks.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=9))]
    pub n_max: u64,
    /// Seed for the uniformity runs.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Samples per partition in the uniformity runs.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples_per_class: u64,
    /// Also write the CHECK lines to this file.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: DiagramFormat,
}
