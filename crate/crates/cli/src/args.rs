use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "richrt",
    version,
    about = "Rich words, bispecial series and certified repetition thresholds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a prefix of u_D, or of π(u_{2d+1}) with --pi.
    Gen(GenArgs),
    /// Run the verification sweeps for one d ≥ 3.
    Verify(VerifyArgs),
    /// Certified E*(u_D) values for a list of alphabet sizes.
    RtTable(RtTableArgs),
    /// Palindromic defect and complete-return-word test on a prefix.
    Richness(RichnessArgs),
    /// Bispecial factors of a prefix with their shortest return words.
    Bispecials(BispecialsArgs),
    /// Maximal factor exponent and bispecial estimates on a prefix.
    Exponent(ExponentArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbKind {
    Seed,
    Matrix,
    Both,
}

/// Which sequence a prefix is taken from.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Source {
    /// Alphabet size D of the fixed point u_D.
    #[arg(long = "D", conflicts_with = "pi")]
    pub big_d: Option<usize>,
    /// Use π(u_{2d+1}) instead of u_D.
    #[arg(long, requires = "d")]
    pub pi: bool,
    /// Parameter d of π.
    #[arg(long = "d")]
    pub d: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub len: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[arg(long = "d")]
    pub d: usize,
    /// Sweep bound on the series index n.
    #[arg(long = "N", default_value_t = 500)]
    pub n_max: usize,
    /// Prefix length for the word-level checks.
    #[arg(long, default_value_t = 100_000)]
    pub prefix: usize,
    /// Factor-length cutoff for the bispecial census.
    #[arg(long, default_value_t = 400)]
    pub cutoff: usize,
    /// Longest palindrome for the complete-return-word test.
    #[arg(long, default_value_t = 50)]
    pub crw_max_len: usize,
    /// Bits of Λ after which an unresolved comparison is reported undecided.
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u32).range(1..=2048))]
    pub precision_bits: u32,
    /// Relative tolerance of the numeric recurrence check.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Seed for the sampled return-word check.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled factors in the return-word check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Negative control: corrupt the series seeds or the matrix (default: both).
    #[arg(long, num_args = 0..=1, default_missing_value = "both")]
    pub perturb: Option<PerturbKind>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
    #[arg(long, short)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RtTableArgs {
    /// Comma-separated odd alphabet sizes.
    #[arg(long = "D", value_delimiter = ',', default_value = "3,5,7,9,11,21,51,101")]
    pub big_d: Vec<usize>,
    /// Decimal digits guaranteed for each E* value.
    #[arg(long, default_value_t = 12)]
    pub digits: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RichnessArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 10_000)]
    pub len: usize,
    #[arg(long, default_value_t = 50)]
    pub crw_max_len: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BispecialsArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 100_000)]
    pub len: usize,
    #[arg(long, default_value_t = 200)]
    pub cutoff: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExponentArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 50_000)]
    pub len: usize,
    /// Comma-separated factor-length cutoffs for the bispecial estimate.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400,800")]
    pub cutoffs: Vec<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}
