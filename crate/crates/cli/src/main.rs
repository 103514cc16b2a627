//! `asmdet` command line: evaluate `d_{n,k}(x,q)`, print enumeration tables,
//! run the verification suites, and query the ASM oracle.
//!
//! Exit codes: 0 success, 1 a hard verification failure, 2 usage error
//! (including guard violations and malformed `--q`/`--x`).

mod cache;
mod commands;
mod spec;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spec::{QSpec, Suite, XSpec};

/// Size limit for symbolic determinants unless `--max-n` raises it.
pub const DEFAULT_SYMBOLIC_LIMIT: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "asmdet", version, about = "Binomial determinants and weighted ASM enumeration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print d_{n,k}(x,q), optionally specialized.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// A rational value or `symbolic`.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        x: XSpec,
        /// `symbolic`, `zeta1` .. `zeta6`, or a rational value.
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        q: QSpec,
        /// Raise the size guard (at most the library ceiling).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Enumeration table: n, A_n, A_n(2), A_n(3) (oracle), A_n(4) (determinant).
    Table {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Run verification suites and print a report.
    Verify {
        /// Comma-separated suite names.
        #[arg(long, value_delimiter = ',', required = true)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Weighted ASM enumeration by brute force.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Raise the oracle guard (at most the library ceiling).
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<asmdet_core::Error> for Failure {
    fn from(e: asmdet_core::Error) -> Self {
        // Everything the library rejects up front is a bad request; a broken
        // engine invariant is a verification failure.
        let code = match e {
            asmdet_core::Error::EngineDisagreement { .. }
            | asmdet_core::Error::StructuralViolation { .. }
            | asmdet_core::Error::FFactorization { .. }
            | asmdet_core::Error::FirstRootRecursion { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<asmdet_core::AlgebraError> for Failure {
    fn from(e: asmdet_core::AlgebraError) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(dir) = cache::directory() {
        if let Err(e) = cache::load(&dir) {
            eprintln!("warning: ignoring determinant cache: {e}");
        }
    }
    let result = commands::run(&cli);
    if let Some(dir) = cache::directory() {
        if let Err(e) = cache::store(&dir) {
            eprintln!("warning: could not write determinant cache: {e}");
        }
    }
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
