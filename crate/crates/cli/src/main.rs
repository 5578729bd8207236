mod exit;
mod jordan_cmd;
mod matrix_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lcpq_core::jordan::{AlgebraSpec, RANK_ONE_TOL, VERIFY_TOL};

use exit::CliResult;
use jordan_cmd::{EmbedArgs, FrameKind, RankOneArgs};
use matrix_cmd::{ClassifyArgs, GenerateArgs, InputFormat, OutputFormat};

/// Exact Q-property classification of structured matrices.
///
/// Exit codes: 0 yes/pass, 1 no/fail, 2 undecided, 64 bad input,
/// 65 enumeration cap exceeded, 66 unreadable file, 70 internal error.
#[derive(Debug, Parser)]
#[command(name = "lcpq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify matrix files; exit 0 yes, 1 no, 2 undecided (worst over all files).
    Classify {
        #[arg(required = true)]
        paths: Vec<String>,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        /// Emit one JSON record per matrix.
        #[arg(long)]
        json: bool,
        /// Include wall-clock timings in JSON records.
        #[arg(long)]
        timings: bool,
        /// Oracle sample budget when no theorem applies.
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the classifier and the brute-force oracle side by side; exit 1 on any contradiction.
    Verify {
        #[arg(required = true)]
        paths: Vec<String>,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write seeded random instances of a structured family.
    Generate {
        /// tri, tri-plus-row, bdsw-1, bdsw-2, bdsw-3, bdsw-4 or 2x2
        #[arg(long = "type")]
        kind: String,
        /// Matrix order; 2 for the 2x2 family, 3 otherwise.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `R` for -R..=R, or `lo..hi`.
        #[arg(long, default_value = "5", allow_hyphen_values = true)]
        entry_range: String,
        /// Directory for one file per matrix; JSON lines on stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "plain")]
        format: OutputFormat,
    },
    /// Print the LCP degree of an R0-matrix.
    Degree {
        path: String,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks on Euclidean Jordan algebras.
    Jordan {
        #[command(subcommand)]
        command: JordanCommand,
    },
}

#[derive(Debug, Subcommand)]
enum JordanCommand {
    /// Lift every solution of LCP(A, q) into Sym(n) and check it there.
    EmbedCheck {
        #[arg(long)]
        matrix: String,
        /// Comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "standard")]
        frame: FrameKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = VERIFY_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Decide the Q-property of x -> <b, x> a; exit 0 yes, 1 no, 2 undecided.
    RankOne {
        /// `eigs:l1,..` or `coords:c1,..`
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// rn:N or sym:M; inferred from `eigs:` otherwise.
        #[arg(long)]
        algebra: Option<AlgebraSpec>,
        #[arg(long, value_enum, default_value = "standard")]
        frame: FrameKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = RANK_ONE_TOL)]
        tol: f64,
        /// Samples for the cone-violation search on a No verdict.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Sample the algebra and hat/bracket identities; exit 1 if any residual reaches tol.
    Identities {
        #[arg(long)]
        algebra: AlgebraSpec,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Classify { paths, format, json, timings, budget, seed } => {
            matrix_cmd::classify(ClassifyArgs { paths: &paths, format, json, timings, budget, seed })
        }
        Command::Verify { paths, format, json, timings, budget, seed } => {
            matrix_cmd::verify(ClassifyArgs { paths: &paths, format, json, timings, budget, seed })
        }
        Command::Generate { kind, n, count, seed, entry_range, out, format } => {
            matrix_cmd::generate_cmd(GenerateArgs {
                kind: &kind,
                n,
                count,
                seed,
                entry_range: &entry_range,
                out: out.as_deref(),
                format,
            })
        }
        Command::Degree { path, format, seed } => matrix_cmd::degree(&path, format, seed),
        Command::Jordan { command } => match command {
            JordanCommand::EmbedCheck { matrix, q, n, frame, seed, tol, json } => {
                jordan_cmd::embed_check(EmbedArgs { matrix: &matrix, q: &q, n, frame, seed, tol, json })
            }
            JordanCommand::RankOne { a, b, algebra, frame, seed, tol, samples, json } => {
                jordan_cmd::rank_one_cmd(RankOneArgs { a: &a, b: &b, algebra, frame, seed, tol, samples, json })
            }
            JordanCommand::Identities { algebra, samples, seed, tol, json } => {
                jordan_cmd::identities(algebra, samples, seed, tol, json)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("lcpq: {f}");
            f.exit_code()
        }
    }
}
