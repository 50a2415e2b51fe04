use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lrc", version, about = "Locally repairable codes with (r, t)-availability")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Field as `p^m`, `GF(p^m)`, an order such as `32`, or a JSON spec file.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for analysis sweeps; 1 runs sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub parallel: Option<u64>,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Rank-check budget for exhaustive distance sweeps.
    #[arg(long, default_value_t = 5_000_000, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a resolvable design or membership matrix.
    Design(DesignArgs),
    /// Build a code and write its bundle.
    Construct(ConstructArgs),
    /// Encode a message.
    Encode(EncodeArgs),
    /// Recover the message from a word with erasures.
    Decode(DecodeArgs),
    /// Erase positions of a codeword.
    Corrupt(CorruptArgs),
    /// Rebuild one symbol from one of its repair groups.
    Repair(RepairArgs),
    /// Bounds, minimum distance, subcode trace and asymptotic tables.
    Analyze(AnalyzeArgs),
    /// Check every repair group of a code.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignKind {
    Kirkman15,
    Affine,
    Zigzag,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[arg(value_enum)]
    pub kind: DesignKind,
    /// Order of the affine plane.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Keep the first t classes and emit a membership matrix.
    #[arg(long)]
    pub t: Option<usize>,
    /// Also check the structural requirements of the constructions.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    C1,
    C2,
    /// The binary (7, 3, 2, 2) example code.
    Example1,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    /// Membership matrix or design JSON.
    #[arg(long = "R", value_name = "FILE")]
    pub membership: Option<PathBuf>,
    /// Number of systematic plus global symbols.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Dimension; defaults to the membership matrix's k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Group size; defaults to the largest column weight.
    #[arg(long)]
    pub r: Option<usize>,
    /// Availability; defaults to the number of classes.
    #[arg(long)]
    pub t: Option<usize>,
    /// Subfield order for the Gabidulin code; defaults to the characteristic.
    #[arg(long)]
    pub base_q: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long, value_name = "BUNDLE")]
    pub code: PathBuf,
    /// Message file; stdin when absent.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecodeMethod {
    /// Structured decoder of the code's construction, generic otherwise.
    Auto,
    Structured,
    Generic,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long, value_name = "BUNDLE")]
    pub code: PathBuf,
    /// Codeword file; stdin when absent.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Extra 1-based positions to erase, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub erase: Vec<usize>,
    #[arg(long, value_enum, default_value_t = DecodeMethod::Auto)]
    pub method: DecodeMethod,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["erase", "random"])))]
pub struct CorruptArgs {
    /// Codeword file; stdin when absent.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// 1-based positions, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub erase: Vec<usize>,
    /// Erase this many positions chosen with `--seed`.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RepairArgs {
    #[arg(long, value_name = "BUNDLE")]
    pub code: PathBuf,
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// 1-based symbol index.
    #[arg(long)]
    pub symbol: usize,
    /// 1-based group index; the first group with no erased member when absent.
    #[arg(long)]
    pub group: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Affine,
    Zigzag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    WeightEnum,
    ErasureRank,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("task").required(true).multiple(true).args(["bounds", "dmin", "subcode", "asymptotics"])))]
#[command(group(ArgGroup::new("source").args(["code", "codebook"])))]
pub struct AnalyzeArgs {
    #[arg(long, value_name = "BUNDLE")]
    pub code: Option<PathBuf>,
    /// Explicit codebook JSON for the subcode trace.
    #[arg(long, value_name = "FILE")]
    pub codebook: Option<PathBuf>,
    #[arg(long)]
    pub bounds: bool,
    #[arg(long)]
    pub dmin: bool,
    #[arg(long)]
    pub subcode: bool,
    #[arg(long)]
    pub asymptotics: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// A value, or a range `a..b` (inclusive) or list `a,b,c` for tables.
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Affine orders for tables, same syntax as `--r`.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "BUNDLE")]
    pub code: PathBuf,
}
