use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ybx_cli::commands;
use ybx_cli::{CliError, Options, Report};

#[derive(Parser)]
#[command(
    name = "ybx",
    version,
    about = "Exact checks for Yang-Baxter operators and flatness of their quadratic algebras"
)]
struct Cli {
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = ybx_core::tower::DEFAULT_SEED)]
    seed: u64,
    /// Override the resource guard (ambient dimension, or matrix size for `tower`).
    #[arg(long, global = true)]
    max_ambient: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify spectrum, braid relation and the axioms of the declared kind.
    Check { file: String },
    /// Dimensions of (V, J_M) at generic q and at the classical point.
    Dims {
        file: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// 1-based eigenvalue index m; J_m is the sum of the other eigenspaces.
        #[arg(long, default_value_t = 1)]
        algebra: usize,
        #[arg(long, default_value = "1")]
        classical_at: String,
        /// Add the note on Koszul algebras to the report.
        #[arg(long)]
        koszul: bool,
    },
    /// Tower algebras A_k: dimensions and trace-form certificates.
    Tower {
        file: String,
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
    },
    /// Quantum semigroup relations, both constructions, and dimensions.
    Semigroup {
        file: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Built-in symmetries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Write the symmetry evaluated at q = A.
    Specialize {
        file: String,
        #[arg(long)]
        at: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit { name: String },
}

enum Output {
    Report(Report),
    Text(String),
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = Options { seed: cli.seed, max_ambient: cli.max_ambient };
    Ok(match &cli.command {
        Command::Check { file } => Output::Report(commands::check(file, &opts)?),
        Command::Dims { file, max_degree, algebra, classical_at, koszul } => {
            let at = commands::parse_point(classical_at)?;
            Output::Report(commands::dims(file, *max_degree, *algebra, &at, *koszul, &opts)?)
        }
        Command::Tower { file, k } => Output::Report(commands::tower(file, *k, &opts)?),
        Command::Semigroup { file, max_degree } => Output::Report(commands::semigroup(file, *max_degree, &opts)?),
        Command::Catalog { action: CatalogAction::List } => Output::Text(commands::catalog_list()),
        Command::Catalog { action: CatalogAction::Emit { name } } => Output::Text(commands::catalog_emit(name)?),
        Command::Specialize { file, at } => Output::Text(commands::specialize(file, &commands::parse_point(at)?)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Report(r)) => {
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ybx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
