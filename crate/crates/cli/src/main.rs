use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Exact Fourier-sampling laboratory for hidden involutions in S_n and S_n ≀ Z₂.
///
/// Exit codes: 0 pass, 1 verification failure, 2 usage error,
/// 3 precondition or resource error.
#[derive(Parser, Debug)]
#[command(name = "hsplab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List irreps, dimensions and the character table of a group.
    Irreps(IrrepsArgs),
    /// Emit weak, strong or multiregister sampling distributions.
    Sample(SampleArgs),
    /// Compare formulas against brute-force oracles.
    Verify(VerifyArgs),
    /// Evaluate the bound chain for S_n ≀ Z₂ against exact counterparts.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisKind {
    Standard,
    Haar,
    Product,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for every randomized quantity.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on this value.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Irrep matrix cache directory (default: $HSPLAB_CACHE_DIR, else the
    /// system temp directory).
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Build irrep matrices without reading or writing the cache.
    #[arg(long)]
    no_cache: bool,
    /// Largest total register dimension.
    #[arg(long, default_value_t = hsplab::sampling::DEFAULT_TENSOR_CAP)]
    tensor_cap: usize,
}

#[derive(Args, Debug)]
struct IrrepsArgs {
    /// Group: sym:n or wreath:n.
    #[arg(long)]
    group: String,
    /// Skip the matrix-level checks and report character data only.
    #[arg(long)]
    no_matrices: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    group: String,
    /// Number of registers.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Weak sampling: the irrep name only.
    #[arg(long, conflicts_with = "strong")]
    weak: bool,
    /// Strong sampling in the irreps given by --irrep.
    #[arg(long)]
    strong: bool,
    /// Hide the trivial subgroup instead of an involution.
    #[arg(long, conflicts_with = "m")]
    trivial: bool,
    /// Hidden involution, as "(0 1)" for S_n or "([..],[..],1)" for the
    /// wreath product; defaults to the first member of the default class.
    #[arg(long)]
    m: Option<String>,
    /// Irrep label per register, e.g. "[2,1]", "{[2],[1,1]}", "([2],+)".
    #[arg(long)]
    irrep: Vec<String>,
    /// Measurement basis for strong and multiregister sampling.
    #[arg(long, value_enum)]
    basis: Option<BasisKind>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// integrity, appendix, rank, overlap, second-moment, expectation,
    /// variance, claim-average, projector-sum, expected-decomp, control, all.
    #[arg(long, default_value = "all")]
    lemma: String,
    #[arg(long, default_value = "wreath:2")]
    group: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Random vectors or tuples per configuration.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Element whose class plays the role of M.
    #[arg(long)]
    m: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Degree n of K = S_n ≀ Z₂.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Haar bases per tuple (exact mode) or sampled triples.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Bad-set rule; "paper" takes the diagonal labels with d⁵ < nⁿ.
    #[arg(long, value_parser = ["paper"], conflicts_with_all = ["lambda_all", "bad", "bad_all"])]
    cutoff: Option<String>,
    /// Empty bad set: λ is the maximum over every irrep.
    #[arg(long, conflicts_with_all = ["bad", "bad_all"])]
    lambda_all: bool,
    /// Explicit bad-set label (repeatable).
    #[arg(long, conflicts_with = "bad_all")]
    bad: Vec<String>,
    /// Put every irrep in the bad set.
    #[arg(long)]
    bad_all: bool,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Irreps(a) => commands::irreps(a),
        Command::Sample(a) => commands::sample(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bounds(a) => commands::bounds(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
