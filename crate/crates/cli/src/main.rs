mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::Output;

/// Exact verification of cyclic bar constructions, edgewise subdivision,
/// index categories, big Witt vectors and the characteristic-polynomial
/// trace.
///
/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
/// 3 malformed or mistyped input document.
#[derive(Parser, Debug)]
#[command(name = "epicyclic", version, about, long_about)]
pub struct Cli {
    /// Seed for randomized checks (default: the configuration's, or 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for suites (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for relative output paths and suite reports.
    #[arg(long, global = true, env = "EPICYCLIC_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Edgewise subdivision sd_r of a simplicial or cyclic set.
    Subdivide(SubdivideArgs),
    /// Face relations of the coherence cubes h^U for every U in a prime set.
    Coherence(CoherenceArgs),
    /// Checks on the cyclic bar construction of a monoid or category.
    Barcy(BarcyArgs),
    /// Integral homology of a simplicial set.
    Homology(HomologyArgs),
    /// Checks on the index category and its Grothendieck models.
    Indexcat(IndexcatArgs),
    /// Truncated big Witt vector arithmetic.
    Witt(WittArgs),
    /// The trace det(1 - tα) of a matrix, or the trace property suite.
    Trace(TraceArgs),
    /// Runs named verification suites and writes a report.
    Suite(SuiteArgs),
    /// Summarizes any document produced or read by this tool.
    Inspect(InspectArgs),
    /// Writes a builtin complex or monoid as a document.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ComplexSource {
    /// Simplicial document to read.
    #[arg(long, conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    /// Builtin complex: circle, sphere2 or point.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Truncation for a builtin complex.
    #[arg(long, default_value_t = 6)]
    pub truncation: usize,
}

#[derive(Args, Debug)]
pub struct SubdivideArgs {
    #[command(flatten)]
    pub source: ComplexSource,
    #[arg(long)]
    pub r: usize,
    /// Emit the C_r-fixed subcomplex instead of sd_r X.
    #[arg(long)]
    pub fixed: bool,
    /// Write the resulting document here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CoherenceArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub primes: Vec<u64>,
    /// Print the expansion of h^U for the full prime set.
    #[arg(long)]
    pub show: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarCheckArg {
    Validate,
    Diagonal,
    Frobenius,
    Projection,
    Power,
    All,
}

#[derive(Args, Debug)]
pub struct BarcyArgs {
    /// Monoid or category document, or a builtin monoid (z<n>, s3, idem2, trivial).
    #[arg(long)]
    pub monoid: String,
    /// Highest degree in which statements are checked.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Truncation of the enumerated construction (default: the degree).
    #[arg(long)]
    pub truncation: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    pub check: Vec<BarCheckArg>,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub source: ComplexSource,
    /// Highest degree to compute; must be below the truncation.
    #[arg(long)]
    pub through: usize,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexCheck {
    Relations,
    Factorization,
    Grothendieck,
    Theta,
    Kan,
    All,
}

#[derive(Args, Debug)]
pub struct IndexcatArgs {
    #[arg(long, default_value_t = 24)]
    pub bound: u64,
    #[arg(long, value_enum, default_value = "relations")]
    pub check: Vec<IndexCheck>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Mul,
    Frob,
    Ver,
    Restrict,
    Ghost,
}

#[derive(Args, Debug)]
pub struct WittArgs {
    #[arg(value_enum)]
    pub op: WittOp,
    /// z:0 (integers), z:m (integers mod m) or q (rationals).
    #[arg(long, default_value = "z:0")]
    pub ring: String,
    /// Truncation set ⟨n⟩, the divisors of n.
    #[arg(long)]
    pub trunc: Option<u64>,
    /// Coordinates, comma separated, in increasing order of S.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coords: Option<Vec<String>>,
    /// Second operand for add and mul.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub other: Option<Vec<String>>,
    /// Read the first operand from a Witt document instead.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Operator index for frob and ver.
    #[arg(long)]
    pub r: Option<u64>,
    /// Target ⟨n⟩ for restrict (and for ver, default ⟨r·max S⟩).
    #[arg(long)]
    pub to: Option<u64>,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    /// Matrix as JSON rows, e.g. '[[0,1],[1,0]]'.
    #[arg(long, required_unless_present = "laws")]
    pub matrix: Option<String>,
    #[arg(long, default_value = "z:0")]
    pub ring: String,
    /// Truncation set ⟨n⟩.
    #[arg(long, default_value_t = 4)]
    pub trunc: u64,
    /// Accept a singular matrix.
    #[arg(long)]
    pub allow_singular: bool,
    /// Run the trace property suite instead.
    #[arg(long, conflicts_with = "matrix")]
    pub laws: bool,
    /// Trace suite configuration (JSON).
    #[arg(long, requires = "laws")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Suite configuration document (kind "suite-config").
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Suites to run, added to the configuration's; "full" runs all.
    #[arg(long, value_delimiter = ',')]
    pub check: Vec<String>,
    /// List the registered suites and exit.
    #[arg(long)]
    pub list: bool,
    /// Base name of the report files written to the output directory.
    #[arg(long, default_value = "report")]
    pub report: String,
}

#[derive(Args, Debug)]
pub struct InspectArgs {
    pub path: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    /// A builtin complex (circle, sphere2, point), a builtin monoid
    /// (z<n>, s3, idem2, trivial) or bar:<monoid> for its cyclic bar
    /// construction.
    pub name: String,
    #[arg(long, default_value_t = 6)]
    pub truncation: usize,
    /// Export a monoid as a one-object category document.
    #[arg(long)]
    pub as_category: bool,
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = Output { dir: cli.out_dir.clone() };
    match commands::run(&cli, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 3 for malformed or mistyped documents, 2 for everything else that
/// stops a command before it can report a verdict.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<epicyclic::Error>() {
        Some(epicyclic::Error::Schema(_) | epicyclic::Error::Parse { .. } | epicyclic::Error::Mismatch) => 3,
        _ => 2,
    }
}
