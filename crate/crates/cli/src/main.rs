mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfcount::algebra::Field;
use pfcount::Error;

#[derive(Parser, Debug)]
#[command(name = "pfcount", version, about = "Count structures through Pfaffian matrix pairs and parities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count bases (or minimum-weight bases) through the algebraic route.
    Count(Common),
    /// Check the Pfaffian property and the family's sign identities by enumeration.
    Verify(Common),
    /// Print the reduced pair or parity as a raw instance.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Emit::Native)]
        emit: Emit,
    },
    /// List every structure by brute force.
    Oracle(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// The family's own pair or parity.
    Native,
    /// A pair rewritten as a parity with one line per column.
    Lawler,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    file: PathBuf,
    /// Count minimum-weight bases, using edge lengths or `weight` directives.
    #[arg(long)]
    weighted: bool,
    /// Field override: `rational` or `gf:P`.
    #[arg(long)]
    field: Option<Field>,
    /// Count modulo a sequence of primes and reconstruct (rational, integral instances only).
    #[arg(long)]
    crt: bool,
    /// Largest ground set any enumeration may visit.
    #[arg(long, env = "PFCOUNT_BUDGET")]
    budget: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Add wall-clock timings to the report.
    #[arg(long)]
    timings: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::Internal(_) | Error::InconsistentResidues | Error::InsufficientModulus => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Count(c) => (c, commands::count(c)),
        Command::Verify(c) => (c, commands::verify(c)),
        Command::Reduce { common, emit } => (common, commands::reduce(common, *emit)),
        Command::Oracle(c) => (c, commands::oracle(c)),
    };
    match result {
        Ok(out) => {
            print!("{}", render::output(&out, common.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
