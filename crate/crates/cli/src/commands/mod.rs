mod construct;
mod fold_stats;
mod pdt;
mod verify;
mod wht;

use clap::Subcommand;

use crate::{CliResult, LimitArgs};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an instance, check it and optionally write it to a file
    Construct(construct::ConstructArgs),
    /// Compute a spectrum (dense transform or closed form)
    Wht(wht::WhtArgs),
    /// Run an oracle-equivalence or statistical check
    Verify(verify::VerifyArgs),
    /// Fold histogram or sampled fold probabilities of a support
    FoldStats(fold_stats::FoldStatsArgs),
    /// Build and check parity decision trees
    Pdt(pdt::PdtArgs),
}

/// Returns whether every claim passed.
pub fn run(command: &Command, limits: &LimitArgs) -> CliResult<bool> {
    match command {
        Command::Construct(a) => construct::run(a, limits),
        Command::Wht(a) => wht::run(a, limits),
        Command::Verify(a) => verify::run(a, limits),
        Command::FoldStats(a) => fold_stats::run(a, limits),
        Command::Pdt(a) => pdt::run(a, limits),
    }
}
