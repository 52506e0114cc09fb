//! `foldscope`: reproducible experiments on Fourier supports, folding
//! directions and parity decision trees.
//!
//! Every command prints a `CONFIG` line with its effective configuration,
//! then `CLAIM <id> PASS|FAIL <details>` and `RESULT` lines. The exit code
//! is 0 iff every claim passed, 1 if one failed and 2 on errors.

mod commands;
mod report;
mod source;

use std::process::ExitCode;

use clap::{Args, Parser};
use foldscope_core::Limits;
use serde_json::json;

pub type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Debug, Parser)]
#[command(name = "foldscope", version, about = "Fourier folding experiments over GF(2)^n")]
struct Cli {
    #[command(flatten)]
    limits: LimitArgs,
    #[command(subcommand)]
    command: commands::Command,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Largest n for dense truth tables
    #[arg(long, global = true, default_value_t = Limits::default().dense)]
    dense_limit: usize,
    /// Largest coset dimension that may be enumerated
    #[arg(long, global = true, default_value_t = Limits::default().enumeration)]
    enumeration_limit: usize,
    /// Largest support size for exhaustive fold histograms
    #[arg(long, global = true, default_value_t = Limits::default().histogram)]
    histogram_budget: usize,
    /// Largest number of masks a structural generator may emit
    #[arg(long, global = true, default_value_t = Limits::default().structural)]
    structural_budget: usize,
}

impl LimitArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            dense: self.dense_limit,
            enumeration: self.enumeration_limit,
            histogram: self.histogram_budget,
            structural: self.structural_budget,
        }
    }

    pub fn config(&self) -> serde_json::Value {
        json!({
            "dense": self.dense_limit,
            "enumeration": self.enumeration_limit,
            "histogram": self.histogram_budget,
            "structural": self.structural_budget,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, &cli.limits) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
