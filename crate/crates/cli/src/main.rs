use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Exit codes: 0/1 encode the mathematical verdict, 2 operational failure,
/// 3 unmet identity precondition, 4 theorem violation found during a hunt.
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "iips", version, about = "Exact Moore-Penrose inverses between indefinite inner product spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the MN-adjoint N^-1 A* M of a matrix
    Adjoint(MatrixWeightsArgs),
    /// Compute the Moore-Penrose inverse between IIPSs (exit 1 when it does not exist)
    Pinv(MatrixWeightsArgs),
    /// Classify the reverse order law for a pair (A, B) (exit 0 iff it holds)
    RolCheck(RolCheckArgs),
    /// Evaluate one rank identity (exit 0 iff it holds)
    Identity(IdentityArgs),
    /// Seeded search for reverse-order-law behavior and open-problem candidates
    Hunt(HuntArgs),
}

#[derive(Args)]
struct MatrixWeightsArgs {
    /// Matrix JSON file
    #[arg(long)]
    matrix: PathBuf,
    /// Weights JSON file {"M": ..., "N": ...}
    #[arg(long)]
    weights: PathBuf,
}

#[derive(Args)]
struct RolCheckArgs {
    /// Matrix A JSON file
    #[arg(long)]
    a: PathBuf,
    /// Matrix B JSON file
    #[arg(long)]
    b: PathBuf,
    /// Weights JSON file {"M": ..., "N": ..., "L": ...}
    #[arg(long)]
    weights: PathBuf,
    /// Where to write the full report JSON
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct IdentityArgs {
    /// Identity name, e.g. SchurGeneric or CommutatorThm15
    id: String,
    /// Named operand files, repeatable: -o A=a.json -o B=b.json
    #[arg(short = 'o', long = "operand", value_name = "NAME=PATH")]
    operands: Vec<String>,
    /// Weights JSON file, required by the weighted identities
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, default_value_t = 1)]
    entry_bound: i64,
    /// Weight generation policy: signature, random-hermitian or identity
    #[arg(long, default_value = "signature")]
    weights: String,
    /// random or exhaustive
    #[arg(long, default_value = "random")]
    mode: String,
    /// JSONL file for candidate and violation records
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Adjoint(args) => commands::adjoint(&args.matrix, &args.weights),
        Command::Pinv(args) => commands::pinv(&args.matrix, &args.weights),
        Command::RolCheck(args) => {
            commands::rol_check(&args.a, &args.b, &args.weights, &args.report)
        }
        Command::Identity(args) => {
            commands::identity(&args.id, &args.operands, args.weights.as_deref())
        }
        Command::Hunt(args) => commands::hunt(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
