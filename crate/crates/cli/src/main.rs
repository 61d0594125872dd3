//! `lensinv`: exact Hennings and Kuperberg invariants of lens spaces.
//!
//! Exit codes: 0 success, 1 a failed check, 2 invalid input, 3 term budget
//! exhausted.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lensinv_core::error::Error;
use lensinv_core::kuperberg::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(
    name = "lensinv",
    version,
    about = "Exact quantum invariants of lens spaces over u_q sl(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Kuperberg,
    HenningsClosed,
    HenningsDiagram,
    All,
}

#[derive(Args, Clone, Copy)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest number of nonzero terms any intermediate tensor may hold.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Z_Kup(L(p,q)) and Z_Henn(L(p,q) # conj L(p,q)) over u_q sl(2).
    Invariant {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 3)]
        l: u32,
        /// hennings-diagram contracts the full chain-mail link and is only
        /// practical for small p.
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Leave runtimes out so the output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Checks Z_Kup = closed Z_Henn and reality for all coprime 1 ≤ q < p ≤ pmax.
    VerifyTheorem {
        #[arg(long, default_value_t = 3)]
        l: u32,
        #[arg(long)]
        pmax: i64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the axiom suite on a built-in algebra or a structure file.
    VerifyAxioms {
        /// Build u_q sl(2) at this odd order l.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        uqsl2: Option<u32>,
        /// JSON structure-constant file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Check product-closed identities on all basis pairs, not only generators.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Drinfeld double of a structure file, with its factorizability rank and
    /// the ribbon criterion of the input.
    Double {
        #[arg(long)]
        file: PathBuf,
        /// Where to write D(H); standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Z_Henn of a framed link in the Morse text format.
    Link {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        l: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Prints the chain-mail link of L(p,q) # conj L(p,q) in the Morse text format.
    ChainMail {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    /// Kuperberg exponent data of L(p,q) as JSON, or evaluates a data file.
    Exponents {
        #[arg(long, required_unless_present = "file")]
        p: Option<i64>,
        #[arg(long, required_unless_present = "file")]
        q: Option<i64>,
        /// Evaluate this exponent-data file instead.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        l: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Writes u_q sl(2), or the group algebra C[Z/n], as a JSON
    /// structure-constant file.
    Export {
        #[arg(long, conflicts_with = "cyclic", required_unless_present = "cyclic")]
        uqsl2: Option<u32>,
        #[arg(long)]
        cyclic: Option<usize>,
        /// Field order for --cyclic.
        #[arg(long, default_value_t = 3)]
        l: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Invalid(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Invalid(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::InvalidBasis { .. }
            | Error::Scalar(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariant {
            p,
            q,
            l,
            method,
            no_timing,
            common,
        } => commands::invariant(p, q, l, method, !no_timing, common),
        Command::VerifyTheorem {
            l,
            pmax,
            workers,
            no_timing,
            common,
        } => commands::verify_theorem(l, pmax, workers, !no_timing, common),
        Command::VerifyAxioms {
            uqsl2,
            file,
            exhaustive,
            common,
        } => commands::verify_axioms(uqsl2, file, exhaustive, common),
        Command::Double { file, out, common } => commands::double(&file, out.as_deref(), common),
        Command::Link { file, l, common } => commands::link(&file, l, common),
        Command::ChainMail { p, q } => commands::chain_mail(p, q),
        Command::Exponents {
            p,
            q,
            file,
            l,
            common,
        } => commands::exponents(p, q, file.as_deref(), l, common),
        Command::Export {
            uqsl2,
            cyclic,
            l,
            out,
        } => commands::export(uqsl2, cyclic, l, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
