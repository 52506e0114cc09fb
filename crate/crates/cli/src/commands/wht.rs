use std::path::PathBuf;

use clap::{Args, ValueEnum};
use foldscope_core::spectrum::wht;
use serde_json::json;

use crate::report::{write_atomic, Report};
use crate::source::SourceArgs;
use crate::{CliResult, LimitArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Transform of the dense truth table
    Dense,
    /// Closed-form generator
    Structural,
    /// Both, checked against each other
    Both,
}

#[derive(Debug, Args)]
pub struct WhtArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Defaults to dense when the table fits, structural otherwise
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Spectrum file to write
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &WhtArgs, limits: &LimitArgs) -> CliResult<bool> {
    let lim = limits.limits();
    let source = args.source.resolve()?;
    let method = args.method.unwrap_or(if source.n() <= lim.dense {
        Method::Dense
    } else {
        Method::Structural
    });
    let mut report = Report::new(json!({
        "command": "wht",
        "source": args.source.config(),
        "resolved": source.describe(),
        "method": format!("{method:?}").to_lowercase(),
        "out": args.out,
        "limits": limits.config(),
    }));
    let spectrum = match method {
        Method::Dense => wht(&source.table(&lim)?, &lim)?,
        Method::Structural => source.structural_spectrum(&lim)?,
        Method::Both => {
            let dense = wht(&source.table(&lim)?, &lim)?;
            let structural = source.structural_spectrum(&lim)?;
            report.claim(
                "spectrum-equivalence",
                dense == structural,
                format!("dense {} terms, structural {} terms", dense.sparsity(), structural.sparsity()),
            );
            structural
        }
    };
    report.claim(
        "parseval",
        spectrum.satisfies_parseval(),
        format!("sum of squared numerators = 4^{}", spectrum.n()),
    );
    report.result("sparsity", spectrum.sparsity());
    if let Some(path) = &args.out {
        write_atomic(path, &spectrum.to_text())?;
        report.result("written", path.display());
    }
    report.summary();
    Ok(report.all_passed())
}
