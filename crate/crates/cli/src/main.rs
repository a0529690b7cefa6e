//! `armstrong`: construct, verify, bound and search for Armstrong codes.
//!
//! Exit status: 0 success, 2 usage or invalid parameters, 3 verification
//! failed, 4 parse error, 5 nothing found within the budget, 1 internal.

mod commands;
mod explain;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "armstrong",
    version,
    about = "Armstrong codes: constructions, verifiers and bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format for artifacts and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Attach the names of the results behind each step to reports.
    #[arg(long, global = true)]
    explain: bool,
    /// Ceiling on (t+1)-row subsets enumerated by the verifiers.
    #[arg(long, global = true, env = "ARMSTRONG_MAX_ROW_SUBSETS")]
    max_row_subsets: Option<u128>,
    /// Ceiling on (k-1)-column subsets tracked by the verifiers.
    #[arg(long, global = true, env = "ARMSTRONG_MAX_COLUMN_SUBSETS")]
    max_column_subsets: Option<u128>,
    /// Ceiling on points for exhaustive enumeration.
    #[arg(long, global = true, env = "ARMSTRONG_MAX_POINTS")]
    max_points: Option<usize>,
    /// Ceiling on partitions of a type for exhaustive enumeration.
    #[arg(long, global = true, env = "ARMSTRONG_MAX_PARTITIONS")]
    max_partitions: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a design or code and verify it.
    Construct(ConstructArgs),
    /// Run the matching verifier on an artifact file.
    Verify(VerifyArgs),
    /// Report upper and lower bounds on f_{s,t}(q,k).
    Bounds(BoundsArgs),
    /// Search for designs, or enumerate double covers exhaustively.
    Search(SearchArgs),
    /// Re-emit an artifact in another format.
    Convert(ConvertArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Extodc,
    OdcCode,
    ExtodcCode,
    St22,
    K2,
    Rs,
    RandomLll,
    GddOdd,
    GddEven,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BasePartition,
    Gdd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    K7Odc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infinity {
    Leading,
    Linear,
}

#[derive(Args, Debug)]
pub struct Budget {
    /// Random seed; runs with equal seeds and one worker are identical.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget: f64,
    /// Total node budget.
    #[arg(long)]
    nodes: Option<u64>,
    /// Nodes in the first restart.
    #[arg(long, default_value_t = 20_000)]
    restart_nodes: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Resume file written by an earlier run.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Where to write a resume file when the budget runs out.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// How to obtain the extODC for `extodc`.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Input design (partition system or GDD, depending on the family).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in input instead of `--input`.
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    /// Part ordering file fixing the symbol of each part.
    #[arg(long)]
    ordering: Option<PathBuf>,
    /// 18-point extODC with 17 partitions used by `gdd-even`.
    #[arg(long)]
    seed_design: Option<PathBuf>,
    /// Extra coordinate of the extended Reed-Solomon code.
    #[arg(long, value_enum, default_value_t = Infinity::Leading)]
    infinity: Infinity,
    /// Attempts for `random-lll`.
    #[arg(long, default_value_t = 100)]
    retries: u64,
    #[command(flatten)]
    search: Budget,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Code,
    Design,
    Gdd,
    BasePartition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    AtLeast,
    AtMost,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    path: PathBuf,
    /// Expected artifact kind; detected from the file when omitted.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Override the code's k.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Overlap rule for partition systems.
    #[arg(long, value_enum, default_value_t = Mode::AtLeast)]
    mode: Mode,
    /// Check condition (i) of the generalized verifier on this many random
    /// row subsets instead of all of them.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phi {
    Formula,
    Oracle,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value_t = 1)]
    s: u64,
    #[arg(long, default_value_t = 1)]
    t: u64,
    #[arg(long, value_enum, default_value_t = Phi::Formula)]
    phi: Phi,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(subcommand)]
    target: SearchTarget,
}

#[derive(Subcommand, Debug)]
pub enum SearchTarget {
    /// A k-GDD of the given type, e.g. `2^7` or `2^18 17^1`.
    Gdd {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// A 4-GDD of type 2^{p+1} p^1 completing a cyclic resolvable 3-GDD of
    /// type 2^{p+1} (p = 17 gives the 2^18 17^1 design for q = 18).
    Completion {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// A base partition of Z_{3q-1} with infinity (even q).
    BasePartition {
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Every double cover of K_m by partitions of a graph type.
    Exhaust {
        #[arg(long)]
        m: usize,
        /// Part sizes, e.g. `3,3,1`.
        #[arg(long)]
        graph_type: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Enumerate without fixing the first partition.
        #[arg(long)]
        no_pruning: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write one representative per isomorphism class here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    input: PathBuf,
    /// Target format (defaults to the other one).
    #[arg(long, value_enum)]
    to: Option<Format>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// A failure with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            status: 2,
            message: msg.into(),
        }
    }
}

impl From<armstrong::Error> for Failure {
    fn from(e: armstrong::Error) -> Self {
        use armstrong::Error as E;
        let status = match &e {
            E::Parse { .. } | E::Structural(_) => 4,
            E::InvalidParams(_)
            | E::Precondition(_)
            | E::TooLarge { .. }
            | E::NotPrimePower(..)
            | E::ZeroInverse(_) => 2,
            E::Internal(_) => 1,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            status: 1,
            message: format!("i/o error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => commands::construct(&a, &cli.common),
        Command::Verify(a) => commands::verify(&a, &cli.common),
        Command::Bounds(a) => commands::bounds(&a, &cli.common),
        Command::Search(a) => commands::search(&a, &cli.common),
        Command::Convert(a) => commands::convert(&a),
    };
    match result {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
