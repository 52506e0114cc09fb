use std::collections::HashSet;

use clap::{Args, Subcommand};
use foldscope_core::constructions::{
    in_addressed_layer, tree_function_support, verify_instance, SubspaceAddressingInstance,
    DEFAULT_MULTIPLICITY_THRESHOLD,
};
use foldscope_core::folding::{hoeffding_half_width, lca_fold_bound};
use foldscope_core::gf2::{coset_intersection_size, enumerate_coset, random_vector, seeded_rng};
use foldscope_core::spectrum::wht;
use foldscope_core::{AffineSubspace, BitVec, Gf2Matrix, Subspace};
use rand::Rng;
use serde_json::json;

use crate::report::Report;
use crate::source::{subspace_params, Source, SourceArgs, DEFAULT_SEED};
use crate::{CliResult, LimitArgs};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    suite: Suite,
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// Closed-form spectrum against the transform of the dense table
    Spectrum(SourceArgs),
    /// Failure rate of randomly sampled subspace instances
    Lemma {
        #[arg(long, conflicts_with_all = ["m", "t", "r"])]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Trial i samples with seed + i
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MULTIPLICITY_THRESHOLD)]
        multiplicity_threshold: usize,
        /// Allowed failure rate; defaults to 2^(2-k) for family parameters
        #[arg(long)]
        max_rate: Option<f64>,
    },
    /// |W1^⊥ ∩ (W2^⊥ + x)| = 2^(n - dim W1 - dim W2) when W1 ∩ W2 = {0}
    ClaimIntersection {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exhaustive check of the LCA fold bound on the tree function
    Lca {
        #[arg(long, default_value_t = 4)]
        d: usize,
    },
}

pub fn run(args: &VerifyArgs, limits: &LimitArgs) -> CliResult<bool> {
    match &args.suite {
        Suite::Spectrum(source) => spectrum(source, limits),
        Suite::Lemma {
            k,
            m,
            t,
            r,
            trials,
            seed,
            multiplicity_threshold,
            max_rate,
        } => {
            let params = subspace_params(*k, *m, *t, *r)?;
            let mut report = Report::new(json!({
                "command": "verify lemma",
                "m": params.m, "t": params.t, "r": params.r, "k": params.family_k(),
                "trials": trials, "seed": seed,
                "multiplicity_threshold": multiplicity_threshold,
                "max_rate": max_rate,
                "limits": limits.config(),
            }));
            if *trials == 0 {
                return Err("--trials must be positive".into());
            }
            let mut per_item = [0u64; 4];
            let mut failures = 0u64;
            for i in 0..*trials {
                let inst = SubspaceAddressingInstance::sample(params, seed.wrapping_add(i))?;
                let v = verify_instance(&inst, *multiplicity_threshold);
                for (slot, (_, item)) in per_item.iter_mut().zip(v.items()) {
                    *slot += !item.passed() as u64;
                }
                failures += !v.all_passed() as u64;
            }
            let rate = failures as f64 / *trials as f64;
            let margin = hoeffding_half_width(*trials, 0.99);
            report.result(
                "item-failures",
                format!("(a) {} (b) {} (c) {} (d) {}", per_item[0], per_item[1], per_item[2], per_item[3]),
            );
            let bound = max_rate.or_else(|| params.family_k().map(|k| 2f64.powi(2 - k as i32)));
            match bound {
                Some(b) => report.claim(
                    "lemma-failure-rate",
                    rate <= b + margin,
                    format!("{failures}/{trials} = {rate:.4} <= {b} + {margin:.4} (Hoeffding 99%)"),
                ),
                None => report.result("failure-rate", format!("{failures}/{trials} = {rate:.4} (no bound for these parameters)")),
            }
            report.summary();
            Ok(report.all_passed())
        }
        Suite::ClaimIntersection { n, trials, seed } => {
            let mut report = Report::new(json!({
                "command": "verify claim-intersection",
                "n": n, "trials": trials, "seed": seed,
                "limits": limits.config(),
            }));
            if *n < 2 || *n > 60 {
                return Err("--n must be in 2..=60".into());
            }
            let enumerate = *n <= 16;
            let mut rng = seeded_rng(*seed);
            let (mut done, mut bad, mut draws) = (0u64, 0u64, 0u64);
            let mut first_bad = None;
            while done < *trials {
                draws += 1;
                if draws > 1000 * trials.max(&1) {
                    return Err("could not draw trivially meeting pairs".into());
                }
                let d1 = rng.gen_range(1..=(*n / 3).max(1));
                let d2 = rng.gen_range(1..=(*n / 3).max(1));
                let w1: Vec<BitVec> = (0..d1).map(|_| random_vector(&mut rng, *n)).collect();
                let w2: Vec<BitVec> = (0..d2).map(|_| random_vector(&mut rng, *n)).collect();
                let stacked = Gf2Matrix::new(*n, w1.iter().chain(&w2).cloned().collect())?;
                if stacked.rank() != d1 + d2 {
                    continue;
                }
                let x = random_vector(&mut rng, *n);
                let a1 = AffineSubspace::linear(Subspace::span(&Gf2Matrix::new(*n, w1)?).orthogonal_complement());
                let a2 = AffineSubspace::linear(Subspace::span(&Gf2Matrix::new(*n, w2)?).orthogonal_complement())
                    .translate(&x);
                let size = coset_intersection_size(&a1, &a2)?;
                let mut ok = size == 1u128 << (n - d1 - d2);
                if enumerate {
                    let p1: HashSet<BitVec> = enumerate_coset(&a1, limits.limits().enumeration)?.collect();
                    let counted = enumerate_coset(&a2, limits.limits().enumeration)?
                        .filter(|p| p1.contains(p))
                        .count() as u128;
                    ok &= counted == size;
                }
                if !ok {
                    bad += 1;
                    first_bad.get_or_insert(done);
                }
                done += 1;
            }
            report.claim(
                "coset-intersection",
                bad == 0,
                format!(
                    "{}/{trials} exact{}{}",
                    trials - bad,
                    if enumerate { ", cross-checked by enumeration" } else { "" },
                    first_bad.map(|i| format!("; first failure at trial {i}")).unwrap_or_default()
                ),
            );
            report.summary();
            Ok(report.all_passed())
        }
        Suite::Lca { d } => {
            let mut report = Report::new(json!({
                "command": "verify lca",
                "d": d,
                "limits": limits.config(),
            }));
            let ts = tree_function_support(*d, &limits.limits())?;
            if ts.len() > limits.limits().histogram {
                return Err(format!("|S| = {} exceeds the histogram budget", ts.len()).into());
            }
            let inst = ts.instance();
            let support = ts.support();
            let (mut checked, mut worst_ratio, mut violation) = (0u64, 0f64, None);
            for (g1, n1) in ts.entries() {
                for (g2, n2) in ts.entries() {
                    if n1 == n2 {
                        continue;
                    }
                    let bound = lca_fold_bound(&inst, g1, g2)?;
                    let actual = support.fold_count(&(g1 ^ g2)) as u64;
                    worst_ratio = worst_ratio.max(actual as f64 / bound as f64);
                    if actual > bound && violation.is_none() {
                        violation = Some(format!("{g1} {g2}: {actual} > {bound}"));
                    }
                    checked += 1;
                }
            }
            report.claim(
                "lca-fold-bound",
                violation.is_none(),
                match &violation {
                    None => format!("{checked} pairs, largest count/bound ratio {worst_ratio:.3}"),
                    Some(v) => v.clone(),
                },
            );
            report.summary();
            Ok(report.all_passed())
        }
    }
}

fn spectrum(source: &SourceArgs, limits: &LimitArgs) -> CliResult<bool> {
    let lim = limits.limits();
    let resolved = source.resolve()?;
    let mut report = Report::new(json!({
        "command": "verify spectrum",
        "source": source.config(),
        "resolved": resolved.describe(),
        "limits": limits.config(),
    }));
    let structural = resolved.structural_spectrum(&lim)?;
    let dense = wht(&resolved.table(&lim)?, &lim)?;
    report.claim(
        "spectrum-equivalence",
        dense == structural,
        format!("{} terms, exact numerators", dense.sparsity()),
    );
    match &resolved {
        Source::Tree(t) => {
            let support = tree_function_support(t.d(), &lim)?;
            let same = support.masks().eq(dense.masks());
            let expected = 1usize << (2 * (t.d() - 1));
            report.claim(
                "support-size",
                same && support.len() == expected,
                format!("|S| = {} (4^(d-1) = {expected})", dense.sparsity()),
            );
            let unique = support
                .masks()
                .all(|m| m.iter_ones().filter(|&i| t.is_deepest(i + 1)).count() == 1);
            report.claim("single-deepest-node", unique, "every support mask holds one deepest node");
        }
        Source::Subspace(inst) => {
            let p = inst.params();
            let bound = p.t << (p.m - p.r);
            let layer = dense.masks().filter(|mk| in_addressed_layer(inst, mk)).count();
            report.claim(
                "support-lower-bound",
                layer == bound && dense.sparsity() >= bound,
                format!("|S| = {} >= t*2^(m-r) = {bound}", dense.sparsity()),
            );
        }
        Source::Addressing(_) => {}
    }
    report.summary();
    Ok(report.all_passed())
}
