use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "nilspec", version)]
#[command(about = "Reidemeister numbers and spectra of 2-step nilpotent graph groups")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Format,

    /// Abort a search after this many visited nodes
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, R-infinity verdict and closed-form spectrum of a graph
    Analyze { graph: PathBuf },
    /// Reidemeister number of an automorphism
    Reid { graph: PathBuf, aut: PathBuf },
    /// Bounded search for Reidemeister numbers
    Search {
        graph: PathBuf,
        /// Entry bound; defaults to 3 up to three vertices, 2 (or 1) on four, 1 beyond
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Check every graph on at most four vertices against its closed form
    VerifyTables {
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Count twisted classes in a finite quotient and compare with the formula
    Oracle {
        graph: PathBuf,
        aut: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.output,
        budget: cli.budget,
    };
    let result = match &cli.command {
        Command::Analyze { graph } => commands::analyze(&ctx, graph),
        Command::Reid { graph, aut } => commands::reid(&ctx, graph, aut),
        Command::Search { graph, bound } => commands::search(&ctx, graph, *bound),
        Command::VerifyTables { bound } => commands::verify_tables(&ctx, *bound),
        Command::Oracle {
            graph,
            aut,
            modulus,
        } => commands::oracle(&ctx, graph, aut, *modulus),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
