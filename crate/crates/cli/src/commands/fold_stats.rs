use std::path::PathBuf;

use clap::{Args, ValueEnum};
use foldscope_core::folding::{fold_histogram, sample_fold_counts, DiagonalPolicy, FoldProbabilityEstimate};
use serde_json::json;

use crate::report::{write_atomic, Report};
use crate::source::{Source, SourceArgs};
use crate::{CliResult, LimitArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Diagonal {
    Include,
    Exclude,
}

impl From<Diagonal> for DiagonalPolicy {
    fn from(d: Diagonal) -> Self {
        match d {
            Diagonal::Include => DiagonalPolicy::Include,
            Diagonal::Exclude => DiagonalPolicy::Exclude,
        }
    }
}

#[derive(Debug, Args)]
pub struct FoldStatsArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Pairs to draw when |S| exceeds the histogram budget
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    sample_seed: u64,
    /// Also report Pr[fold count >= threshold]
    #[arg(long)]
    threshold: Option<u64>,
    /// Whether pairs with γ1 = γ2 count
    #[arg(long, value_enum, default_value_t = Diagonal::Include)]
    diagonal: Diagonal,
    /// Tail thresholds 2^(k+2) for k = 1..=max-k (tree function)
    #[arg(long, default_value_t = 5)]
    max_k: i32,
    /// Histogram text (exhaustive) or estimates as JSON (sampled)
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &FoldStatsArgs, limits: &LimitArgs) -> CliResult<bool> {
    let lim = limits.limits();
    let source = args.source.resolve()?;
    let policy: DiagonalPolicy = args.diagonal.into();
    let support = source.support(&lim)?;
    let exhaustive = support.len() <= lim.histogram;
    let mut report = Report::new(json!({
        "command": "fold-stats",
        "source": args.source.config(),
        "resolved": source.describe(),
        "mode": if exhaustive { "exhaustive" } else { "sampled" },
        "samples": args.samples,
        "sample_seed": args.sample_seed,
        "threshold": args.threshold,
        "diagonal": policy.as_str(),
        "max_k": args.max_k,
        "out": args.out,
        "limits": limits.config(),
    }));
    report.result("support", support.len());

    // tree tail: Pr[count >= 2^(k+2)] <= 2^-k + 2^(1-d)
    let tails: Vec<(i32, u64, f64)> = match &source {
        Source::Tree(t) => (1..=args.max_k.min(60))
            .map(|k| (k, 1u64 << (k + 2), 2f64.powi(-k) + 2f64.powi(1 - t.d() as i32)))
            .collect(),
        _ => Vec::new(),
    };
    let family_k = match &source {
        Source::Subspace(s) => s.params().family_k(),
        _ => None,
    };

    if exhaustive {
        let h = fold_histogram(&support, &lim)?;
        report.claim(
            "mass-identity",
            h.mass_identity_holds(),
            format!("sum of nonzero-direction counts = |S|^2 - |S| = {}", h.mass()),
        );
        match h.max_fold() {
            Some((mask, count)) => report.result("max-fold", format!("{count} at {mask}")),
            None => report.result("max-fold", "none (|S| <= 1)"),
        }
        for &(k, threshold, bound) in &tails {
            let p = h.tail_probability(threshold, policy);
            report.claim(
                &format!("tail-bound-k{k}"),
                p <= bound,
                format!("Pr[count >= {threshold}] = {p:.6} <= {bound:.6} (exact)"),
            );
        }
        if let Some(k) = family_k {
            let bound = 1u64 << (5 * k + 4);
            let max = h.max_fold().map_or(0, |(_, c)| c);
            report.claim("max-fold-bound", max <= bound, format!("{max} <= 2^{}", 5 * k + 4));
        }
        if let Some(t) = args.threshold {
            report.result("probability", format!("{:.6} at threshold {t} (exact)", h.tail_probability(t, policy)));
        }
        if let Some(path) = &args.out {
            write_atomic(path, &h.to_text())?;
            report.result("written", path.display());
        }
    } else {
        let pairs = sample_fold_counts(&support, args.samples, args.sample_seed, policy)?;
        let estimate = |t| FoldProbabilityEstimate::from_samples(t, &pairs, args.sample_seed, policy);
        let mut written = Vec::new();
        for &(k, threshold, bound) in &tails {
            let e = estimate(threshold);
            report.claim(
                &format!("tail-bound-k{k}"),
                e.estimate <= bound + e.half_width,
                format!(
                    "Pr[count >= {threshold}] ~ {:.6} <= {bound:.6} + {:.6} ({} samples)",
                    e.estimate, e.half_width, e.samples
                ),
            );
            written.push(e.to_json());
        }
        let off_diagonal = pairs.iter().filter(|p| p.first != p.second).map(|p| p.count).max();
        report.result(
            "max-sampled-fold",
            off_diagonal.map_or("none".to_string(), |c| c.to_string()),
        );
        if let Some(k) = family_k {
            let max = off_diagonal.unwrap_or(0);
            report.claim(
                "max-fold-bound",
                max <= 1 << (5 * k + 4),
                format!("largest sampled off-diagonal count {max} <= 2^{}", 5 * k + 4),
            );
        }
        if let Some(t) = args.threshold {
            let e = estimate(t);
            report.result(
                "probability",
                format!("{:.6} +- {:.6} at threshold {t}", e.estimate, e.half_width),
            );
            written.push(e.to_json());
        }
        if let Some(path) = &args.out {
            let body = json!({"support": support.len(), "estimates": written});
            write_atomic(path, &format!("{}\n", serde_json::to_string_pretty(&body)?))?;
            report.result("written", path.display());
        }
    }
    report.summary();
    Ok(report.all_passed())
}
