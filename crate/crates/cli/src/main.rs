use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wonderful::limits::Limits;
use wonderful::Error;

mod commands;
mod output;
mod verify;

use output::Format;

/// Bad flags or input detected by the CLI itself.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "wonderful", version, about = "Motivic decompositions of wonderful compactifications")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Raise the enumeration cap on n (default 9, or $WONDERFUL_CAP_N).
    #[arg(long, global = true, value_name = "N")]
    unsafe_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fulton-MacPherson configuration spaces X[n].
    #[command(subcommand)]
    Fm(FmCommand),
    /// The symmetric quotient X[n]/S_n.
    #[command(subcommand)]
    Quotient(QuotientCommand),
    /// Wonderful compactifications of arbitrary arrangements.
    #[command(subcommand)]
    Wonderful(WonderfulCommand),
    /// Run the internal cross-checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(Subcommand)]
enum FmCommand {
    /// Multiplicities of h(X^k)(i) in h(X[n]).
    Decompose {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        dim: usize,
    },
    /// Total Chow rank from the ranks of the powers X^k.
    Rank {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        dim: usize,
        /// `projective` or a JSON file {"ranks":[{"k":..,"rank":..}]}.
        #[arg(long, default_value = "projective")]
        ranks: String,
    },
    /// Coefficients f_n of the generating series.
    Genfun {
        #[arg(short, long)]
        dim: usize,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// Poincare polynomial of X[n].
    Betti {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        dim: usize,
        /// Comma-separated Betti numbers b_0..b_2dim (default: P^dim).
        #[arg(long)]
        betti: Option<String>,
    },
}

#[derive(Subcommand)]
enum QuotientCommand {
    Decompose {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        dim: usize,
        #[arg(long)]
        betti: Option<String>,
        /// List the forests behind each summand.
        #[arg(long)]
        verbose: bool,
    },
    Betti {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        dim: usize,
        #[arg(long)]
        betti: Option<String>,
    },
}

#[derive(Subcommand)]
enum WonderfulCommand {
    Decompose {
        #[arg(long)]
        arrangement: PathBuf,
        /// Blow-up order: stratum ids separated by commas outside parentheses.
        #[arg(long)]
        order: Option<String>,
        /// Blow up one center at a time instead of using the nest formula.
        #[arg(long)]
        iterative: bool,
    },
    /// Write the polydiagonal arrangement of X^n as JSON.
    ExportFm {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        dim: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let limits = match cli.unsafe_cap {
        Some(n) => Limits::uniform(n),
        None => Limits::from_env(),
    };
    let report = match cli.command {
        Command::Fm(c) => match c {
            FmCommand::Decompose { n, dim } => commands::fm_decompose(n, dim, limits)?,
            FmCommand::Rank { n, dim, ranks } => commands::fm_rank(n, dim, &ranks, limits)?,
            FmCommand::Genfun { dim, order } => commands::fm_genfun(dim, order, limits)?,
            FmCommand::Betti { n, dim, betti } => commands::fm_betti(n, dim, betti.as_deref(), limits)?,
        },
        Command::Quotient(c) => match c {
            QuotientCommand::Decompose { n, dim, betti, verbose } => {
                commands::quotient_decompose(n, dim, betti.as_deref(), verbose, limits)?
            }
            QuotientCommand::Betti { n, dim, betti } => {
                commands::quotient_betti(n, dim, betti.as_deref(), limits)?
            }
        },
        Command::Wonderful(c) => match c {
            WonderfulCommand::Decompose { arrangement, order, iterative } => {
                commands::wonderful_decompose(&arrangement, order.as_deref().map(commands::split_order), iterative)?
            }
            WonderfulCommand::ExportFm { n, dim } => {
                std::io::stdout().write_all(commands::export_fm(n, dim)?.as_bytes())?;
                return Ok(true);
            }
        },
        Command::Verify { suite, max_n, max_dim } => verify::run(suite, max_n, max_dim, limits)?,
    };
    std::io::stdout().write_all(report.render(cli.format)?.as_bytes())?;
    Ok(!report.failed)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::CapExceeded { .. } => 3,
                Error::CrossCheck(_)
                | Error::InexactDivision(_)
                | Error::NonzeroConstantTerm
                | Error::BeyondTruncation { .. } => 4,
                Error::InvalidInput(_)
                | Error::Arrangement(_)
                | Error::IncompatibleOrder(_)
                | Error::Json(_) => 2,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
