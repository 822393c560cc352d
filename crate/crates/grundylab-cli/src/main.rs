//! grundylab: Grundy sequences for restricted Nim variants, fractal
//! sequence verification, triangle and array tooling, and a
//! correctness-gated benchmark.
//!
//! Exit codes: 0 success or verification pass, 1 verification fail,
//! 2 usage error, 3 domain error (bad rule, horizon, limits).

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod render;
mod rulespec;

use render::Format;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    VerifyFailed,
    Domain(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::VerifyFailed => 1,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
            CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<grundylab::Error> for CliError {
    fn from(e: grundylab::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "grundylab",
    about = "Grundy sequences for restricted Nim variants and fractal sequence tooling",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct CommonOpts {
    /// Rule: half | sqrt | pow2 | table:<path> | serial:<a1,a2,...>
    #[arg(long)]
    pub rule: String,

    /// Output format (default: table on a terminal, csv when piped)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum Nim Grundy values g_0 .. g_{n-1}
    Max {
        #[command(flatten)]
        common: CommonOpts,

        /// Number of terms
        #[arg(long)]
        n: usize,

        /// fast (linear fill), naive (mex oracle), or closed (half/pow2 only)
        #[arg(long, default_value = "fast")]
        method: String,
    },
    /// Minimum Nim Grundy values h_0 .. h_{n-1}
    Min {
        #[command(flatten)]
        common: CommonOpts,

        /// Number of terms
        #[arg(long)]
        n: usize,

        /// fast (q-chain, regular rules) or naive (prefix mex)
        #[arg(long, default_value = "fast")]
        method: String,
    },
    /// Run a verification suite; exit 0 on pass, 1 on fail
    Verify {
        /// fractal | interspersion | minimax | bijection | triangle-roundtrip | serial-oracle
        what: String,

        /// Rule for sequence-producing checks
        #[arg(long)]
        rule: Option<String>,

        /// Window length
        #[arg(long)]
        n: Option<usize>,

        /// Check a sequence file (one integer per line or a JSON array)
        /// instead of a generated sequence
        #[arg(long)]
        seq: Option<String>,

        /// serial-oracle: maximum number of heaps in the sweep
        #[arg(long, default_value_t = 4)]
        kmax: usize,

        /// serial-oracle: maximum heap size in the sweep
        #[arg(long, default_value_t = 6)]
        size_max: u64,

        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Subadditive triangles: emit, reconstruct, or rebuild from column sums
    Triangle {
        #[command(subcommand)]
        action: TriangleAction,
    },
    /// Serial Nim: closed-form solving, winning moves, two-heap tables
    Serial {
        #[command(subcommand)]
        action: SerialAction,
    },
    /// The pair arrays A' (offset-justified) and A (left-justified)
    Arrays {
        #[command(flatten)]
        common: CommonOpts,

        /// Number of rows (values 0..rows-1)
        #[arg(long)]
        rows: usize,

        /// Number of columns
        #[arg(long)]
        cols: usize,

        /// offset (blank lower-left, as displayed) or left
        #[arg(long, default_value = "offset")]
        justify: String,

        /// Write the JSON export here in addition to stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Time methods against each other after verifying they agree
    Bench {
        #[command(flatten)]
        common: CommonOpts,

        /// Number of terms
        #[arg(long)]
        n: usize,

        /// Comma-separated methods to time (fast, naive, closed)
        #[arg(long, default_value = "fast,naive")]
        methods: String,
    },
}

#[derive(Subcommand)]
enum TriangleAction {
    /// Triangle of a rule's Grundy sequence with the given number of rows
    Emit {
        #[command(flatten)]
        common: CommonOpts,

        /// Number of rows (row i holds counts against values i+1..=dim)
        #[arg(long)]
        dim: usize,

        /// Write triangle JSON here in addition to stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Rebuild the sequence a triangle file determines
    Reconstruct {
        /// Triangle JSON file
        #[arg(long)]
        input: String,

        /// Terms to rebuild (default: everything the triangle determines)
        #[arg(long)]
        n: Option<usize>,

        /// Write the sequence here (one integer per line)
        #[arg(long)]
        out: Option<String>,

        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Rebuild a triangle from its column sums
    FromColsums {
        /// Comma-separated column sums c_1,c_2,...
        #[arg(long)]
        colsums: String,

        /// Write triangle JSON here in addition to stdout
        #[arg(long)]
        out: Option<String>,

        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand)]
enum SerialAction {
    /// Grundy value of a row of heaps
    Solve {
        /// Comma-separated heap sizes, leftmost first
        #[arg(long)]
        heaps: String,

        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// A winning reduction of the leftmost heap, if any
    Move {
        #[arg(long)]
        heaps: String,

        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Two-heap values [a, b] for a = 0..=max-first
    Table {
        /// Size b of the second heap
        #[arg(long)]
        second: u64,

        /// Largest first-heap size a to tabulate
        #[arg(long, default_value_t = 16)]
        max_first: u64,

        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Max { common, n, method } => commands::maxcmd::run(&common, n, &method),
        Command::Min { common, n, method } => commands::mincmd::run(&common, n, &method),
        Command::Verify {
            what,
            rule,
            n,
            seq,
            kmax,
            size_max,
            format,
        } => commands::verify::run(&what, rule.as_deref(), n, seq.as_deref(), kmax, size_max, format),
        Command::Triangle { action } => match action {
            TriangleAction::Emit { common, dim, out } => {
                commands::triangle::emit(&common, dim, out.as_deref())
            }
            TriangleAction::Reconstruct {
                input,
                n,
                out,
                format,
            } => commands::triangle::reconstruct(&input, n, out.as_deref(), format),
            TriangleAction::FromColsums {
                colsums,
                out,
                format,
            } => commands::triangle::from_colsums(&colsums, out.as_deref(), format),
        },
        Command::Serial { action } => match action {
            SerialAction::Solve { heaps, format } => commands::serial::solve(&heaps, format),
            SerialAction::Move { heaps, format } => commands::serial::winning_move(&heaps, format),
            SerialAction::Table {
                second,
                max_first,
                format,
            } => commands::serial::table(second, max_first, format),
        },
        Command::Arrays {
            common,
            rows,
            cols,
            justify,
            out,
        } => commands::arrays::run(&common, rows, cols, &justify, out.as_deref()),
        Command::Bench { common, n, methods } => commands::bench::run(&common, n, &methods),
    }
}
