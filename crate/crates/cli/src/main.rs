mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "seqthin", version, about = "Thinning and skeleton metrics for binary patterns")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Thin one pattern file and write the skeleton
    Thin(commands::ThinArgs),
    /// Run several algorithms over 2D inputs and print metrics as CSV
    Compare(commands::CompareArgs),
    /// Score an existing skeleton against its input
    Metrics(commands::MetricsArgs),
    /// Generate a synthetic shape
    Gen(commands::GenArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Commands::Thin(args) => commands::thin(args),
        Commands::Compare(args) => commands::compare(args),
        Commands::Metrics(args) => commands::metrics(args),
        Commands::Gen(args) => commands::gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("seqthin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
