use std::path::PathBuf;

use clap::{Args, ValueEnum};
use foldscope_core::pdt::{explicit_subspace_addressing_pdt, greedy_build, StepKind};
use foldscope_core::{BitVec, Error, Limits, Pdt, SparseSpectrum, TruthTable};
use serde_json::json;

use crate::report::{write_atomic, Report};
use crate::source::{Source, SourceArgs};
use crate::{CliResult, LimitArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builder {
    /// Query the max-fold direction of the current support
    Greedy,
    /// Address bits then the owning data bit (subspace addressing only)
    Explicit,
    Both,
}

#[derive(Debug, Args)]
pub struct PdtArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Use the single character χ_γ instead (hex, with --n)
    #[arg(long, conflicts_with_all = ["instance", "construction"], requires = "n")]
    character: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Builder::Greedy)]
    builder: Builder,
    /// Greedy gives up beyond this depth; defaults to n
    #[arg(long)]
    depth_limit: Option<usize>,
    /// Greedy tree file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Explicit tree file
    #[arg(long)]
    explicit_out: Option<PathBuf>,
}

enum Target {
    Source(Source),
    Character(BitVec),
}

impl Target {
    fn n(&self) -> usize {
        match self {
            Target::Source(s) => s.n(),
            Target::Character(g) => g.len(),
        }
    }

    fn spectrum(&self, lim: &Limits) -> CliResult<SparseSpectrum> {
        match self {
            Target::Source(s) => s.structural_spectrum(lim),
            Target::Character(g) => Ok(SparseSpectrum::character(g.clone(), 1)),
        }
    }

    fn table(&self, lim: &Limits) -> CliResult<TruthTable> {
        match self {
            Target::Source(s) => s.table(lim),
            Target::Character(g) => {
                lim.check_dense(g.len())?;
                Ok(TruthTable::character(g.len(), g.to_u64().unwrap() as usize)?)
            }
        }
    }
}

pub fn run(args: &PdtArgs, limits: &LimitArgs) -> CliResult<bool> {
    let lim = limits.limits();
    let target = match (&args.character, args.n) {
        (Some(hex), Some(n)) => {
            let g = BitVec::from_hex(n, hex)?;
            if g.is_zero() {
                return Err("--character must be nonzero".into());
            }
            Target::Character(g)
        }
        (Some(_), None) => return Err("--character needs --n".into()),
        _ => Target::Source(args.source.resolve()?),
    };
    let n = target.n();
    let depth_limit = args.depth_limit.unwrap_or(n);
    let mut report = Report::new(json!({
        "command": "pdt",
        "source": args.source.config(),
        "resolved": match &target {
            Target::Source(s) => s.describe(),
            Target::Character(g) => json!({"kind": "character", "n": n, "gamma": g.to_hex()}),
        },
        "builder": format!("{:?}", args.builder).to_lowercase(),
        "depth_limit": depth_limit,
        "out": args.out,
        "explicit_out": args.explicit_out,
        "limits": limits.config(),
    }));
    let table = if n <= lim.dense { Some(target.table(&lim)?) } else { None };

    if matches!(args.builder, Builder::Greedy | Builder::Both) {
        match greedy_build(&target.spectrum(&lim)?, depth_limit, &lim) {
            Ok(outcome) => {
                let (mut folds, mut chars, mut leaves) = (0, 0, 0);
                for step in &outcome.trace {
                    match step.kind {
                        StepKind::Fold { .. } => folds += 1,
                        StepKind::Character { .. } => chars += 1,
                        StepKind::Leaf { .. } => leaves += 1,
                    }
                }
                let pdt = &outcome.pdt;
                report.result("greedy-depth", pdt.depth());
                report.result(
                    "greedy-trace",
                    format!("{} queries: {folds} fold, {chars} character, {leaves} constant", pdt.query_count()),
                );
                if let Some(step) = outcome.trace.first() {
                    if let StepKind::Fold { mask, fold } = &step.kind {
                        report.result("greedy-root", format!("{mask} folds {fold} of {} terms", step.sparsity));
                    }
                }
                check(&mut report, "pdt-verify-greedy", pdt, table.as_ref())?;
                if let Some(path) = &args.out {
                    write_atomic(path, &pdt.to_text())?;
                    report.result("written", path.display());
                }
            }
            Err(Error::DepthLimit { limit }) => {
                report.result("greedy", format!("depth-limit-exceeded at {limit}"));
            }
            Err(e) => return Err(e.into()),
        }
    }

    if matches!(args.builder, Builder::Explicit | Builder::Both) {
        match &target {
            Target::Source(Source::Subspace(inst)) => {
                let pdt = explicit_subspace_addressing_pdt(inst, &lim)?;
                let m = inst.params().m;
                report.claim(
                    "explicit-depth",
                    pdt.depth() == m + 1,
                    format!("depth {} = m + 1 = {}", pdt.depth(), m + 1),
                );
                check(&mut report, "pdt-verify-explicit", &pdt, table.as_ref())?;
                if let Some(path) = &args.explicit_out {
                    write_atomic(path, &pdt.to_text())?;
                    report.result("written", path.display());
                }
            }
            _ if args.builder == Builder::Explicit => {
                return Err("the explicit builder needs a subspace-addressing instance".into())
            }
            _ => report.result("explicit", "skipped: not a subspace-addressing instance"),
        }
    }
    report.summary();
    Ok(report.all_passed())
}

fn check(report: &mut Report, id: &str, pdt: &Pdt, table: Option<&TruthTable>) -> CliResult<()> {
    match table {
        Some(t) => {
            let v = pdt.verify(t)?;
            report.claim(
                id,
                v.passed(),
                match v {
                    foldscope_core::Verification::Pass => format!("agrees on all 2^{} inputs", t.n()),
                    foldscope_core::Verification::Mismatch { input, expected, actual } => {
                        format!("input {input}: expected {expected}, tree gives {actual}")
                    }
                },
            );
        }
        None => report.result(id, "skipped: n exceeds the dense limit"),
    }
    Ok(())
}
