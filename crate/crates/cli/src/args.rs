use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use topk_hui::Variant;

#[derive(Debug, Parser)]
#[command(
    name = "topk-hui",
    version,
    about = "Exact top-k high-utility itemset mining with negative utilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine the top-k itemsets of an SPMF file.
    Mine(MineArgs),
    /// Brute-force top-k of a small SPMF file.
    Oracle(OracleArgs),
    /// Compare every variant with the oracle.
    Verify(VerifyArgs),
    /// Run every variant for each k and report runtime, candidates and the
    /// memory proxy.
    Bench(BenchArgs),
    /// Write a synthetic database in SPMF format.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Full,
    MergeOnly,
    SubtreeOnly,
    None,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::MergeOnly => Variant::MergeOnly,
            VariantArg::SubtreeOnly => Variant::SubtreeOnly,
            VariantArg::None => Variant::None,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// SPMF file: `items:TU:utilities` per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Accept lines whose declared TU differs from the sum of utilities.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value = "full")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Database to verify. Without it only random databases are checked.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub lenient: bool,
    #[arg(long, value_delimiter = ',', default_value = "1,3,5,10,20",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Vec<u64>,
    /// Number of random small databases (at most 10 items and 25
    /// transactions). Defaults to 200 without --input and 0 with it.
    #[arg(long)]
    pub seeds: Option<u64>,
    /// First seed of the random campaign.
    #[arg(long, default_value_t = 0)]
    pub seed_start: u64,
}

#[derive(Debug, Args)]
pub struct SyntheticArgs {
    #[arg(long, default_value_t = 10_000)]
    pub transactions: usize,
    #[arg(long, default_value_t = 200)]
    pub items: usize,
    #[arg(long, default_value_t = 10)]
    pub avg_len: usize,
    #[arg(long, default_value_t = 1)]
    pub min_utility: i64,
    #[arg(long, default_value_t = 100)]
    pub max_utility: i64,
    #[arg(long, default_value_t = 0.3)]
    pub negative_fraction: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// SPMF file. Without it a synthetic database is generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub lenient: bool,
    #[command(flatten)]
    pub synthetic: SyntheticArgs,
    #[arg(long, value_delimiter = ',', default_value = "100,500",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Vec<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub synthetic: SyntheticArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
