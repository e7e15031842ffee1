//! `craftgen`: generate Ikat and Block Print designs, train the pruning
//! model, and score judge annotations.

mod commands;
mod config;
mod io;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use commands::{blockprint, evaluate, ikat, palette, pruner};

#[derive(Debug, Parser)]
#[command(name = "craftgen", version, about = "Generative Ikat and Block Print textile designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Colorize a motif, transfer inspiration colors, and quantize to a grid
    GenerateIkat(ikat::IkatArgs),
    /// Generate tiled Block Print designs from an inspiration palette
    GenerateBlockprint(blockprint::BlockprintArgs),
    /// Extract a palette of at most ten colors from an image
    ExtractPalette(palette::PaletteArgs),
    /// Train the pruning model from judged designs
    TrainPruner(pruner::TrainArgs),
    /// Score design documents with a pruning model
    Prune(pruner::PruneArgs),
    /// Compute likeability indices from annotation matrices
    Evaluate(evaluate::EvaluateArgs),
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("CRAFTGEN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("CRAFTGEN_THREADS={raw:?} is not a thread count"))?;
    if n == 0 {
        bail!("CRAFTGEN_THREADS must be at least 1");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::GenerateIkat(args) => ikat::run(args),
        Command::GenerateBlockprint(args) => blockprint::run(args),
        Command::ExtractPalette(args) => palette::run(args),
        Command::TrainPruner(args) => pruner::train(args),
        Command::Prune(args) => pruner::prune(args),
        Command::Evaluate(args) => evaluate::run(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
