mod config;
mod extract;
mod output;
mod synth;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use config::FileConfig;

/// Shape descriptors for labelled rasters and a dependence check for
/// feature sets.
#[derive(Debug, Parser)]
#[command(name = "shapesuite", version)]
struct Cli {
    /// TOML file with default option values; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one CSV row of descriptors per region.
    Extract(extract::ExtractArgs),
    /// Check feature columns pairwise; exit 2 if some pair is a causal risk.
    Validate(validate::ValidateArgs),
    /// Write a synthetic scene with known shapes.
    Synth(synth::SynthArgs),
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SHAPESUITE_THREADS") {
        let n: usize = v.parse().with_context(|| format!("SHAPESUITE_THREADS=`{v}` is not a count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    init_threads()?;
    let file = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Extract(a) => extract::run(a, &file).map(|()| ExitCode::SUCCESS),
        Command::Validate(a) => validate::run(a, &file).map(|ok| if ok { ExitCode::SUCCESS } else { ExitCode::from(2) }),
        Command::Synth(a) => synth::run(a, &file).map(|()| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1 so that 2 keeps meaning "set rejected".
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
