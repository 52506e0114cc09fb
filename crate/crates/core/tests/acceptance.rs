//! Acceptance gate. Runs every criterion, prints one line each and exits
//! nonzero if any fails:
//!
//!     cargo test -p foldscope-core --test acceptance

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use foldscope_core::constructions::*;
use foldscope_core::folding::*;
use foldscope_core::gf2::{coset_intersection_size, enumerate_coset};
use foldscope_core::pdt::*;
use foldscope_core::spectrum::{dense_values, inverse_wht, restrict_parity, wht};
use foldscope_core::{AffineSubspace, BitVec, Gf2Matrix, Limits, Subspace, Support};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn tree_spectrum() -> Outcome {
    let limits = Limits::default();
    let mut sizes = Vec::new();
    for d in [3, 4] {
        let table = tree_function_table(d, &limits).unwrap();
        let dense: BTreeSet<BitVec> = wht(&table, &limits).unwrap().masks().cloned().collect();
        let structural: BTreeSet<BitVec> = tree_function_support(d, &limits).unwrap().masks().cloned().collect();
        ensure!(dense == structural, "d={d}: transform support differs from structural support");
        ensure!(dense.len() == 1 << (2 * (d - 1)), "d={d}: |S| = {}", dense.len());
        sizes.push(format!("d={d} |S|={}", dense.len()));
    }
    Ok(sizes.join(", "))
}

fn subspace_spectrum() -> Outcome {
    let limits = Limits::default();
    let inst = build_subspace_addressing(SubspaceParams::new(14, 4, 4).unwrap(), 1, 100, 7).unwrap();
    ensure!(verify_instance(&inst, 7).all_passed(), "instance failed verification");
    let table = subspace_addressing_table(&inst, &limits).unwrap();
    let dense = wht(&table, &limits).unwrap();
    let structural = structural_spectrum_subspace_addressing(&inst, &limits).unwrap();
    ensure!(dense == structural, "structural spectrum differs from transform");
    Ok(format!("seed={} terms={}", inst.seed(), dense.sparsity()))
}

fn coset_intersections() -> Outcome {
    let n = 10;
    let mut rng = common::XorShift(0xc0ffee);
    let mut done = 0;
    while done < 500 {
        let d1 = 1 + rng.below(4) as usize;
        let d2 = 1 + rng.below(4) as usize;
        let w1: Vec<u64> = (0..d1).map(|_| rng.below(1 << n)).collect();
        let w2: Vec<u64> = (0..d2).map(|_| rng.below(1 << n)).collect();
        let stacked: Vec<u64> = w1.iter().chain(&w2).copied().collect();
        if Gf2Matrix::from_u64_rows(n, &stacked).rank() != d1 + d2 {
            continue;
        }
        let x = BitVec::from_u64(n, rng.below(1 << n));
        let a1 = AffineSubspace::linear(Subspace::span(&Gf2Matrix::from_u64_rows(n, &w1)).orthogonal_complement());
        let a2 = AffineSubspace::linear(Subspace::span(&Gf2Matrix::from_u64_rows(n, &w2)).orthogonal_complement())
            .translate(&x);
        let size = coset_intersection_size(&a1, &a2).unwrap();
        let expected = 1u128 << (n - d1 - d2);
        ensure!(size == expected, "trial {done}: size {size}, formula {expected}");
        let p1: HashSet<BitVec> = enumerate_coset(&a1, 26).unwrap().collect();
        let counted = enumerate_coset(&a2, 26).unwrap().filter(|p| p1.contains(p)).count() as u128;
        ensure!(counted == size, "trial {done}: enumeration {counted}, solver {size}");
        done += 1;
    }
    Ok(format!("{done} triples exact"))
}

fn lemma_trials() -> Outcome {
    let params = SubspaceParams::from_k(3).unwrap();
    let trials = 200u64;
    let failures = (0..trials)
        .filter(|&seed| !verify_instance(&SubspaceAddressingInstance::sample(params, seed).unwrap(), 7).all_passed())
        .count();
    let rate = failures as f64 / trials as f64;
    ensure!(rate <= 0.5 + 0.1, "failure rate {rate}");
    Ok(format!("{failures}/{trials} sampled instances failed (bound 0.6)"))
}

fn max_fold_bound() -> Outcome {
    let limits = Limits::default();
    let params = SubspaceParams::from_k(3).unwrap();
    let (k, m, t, r) = (3, params.m, params.t, params.r);
    let mut worst = 0;
    for i in 0..5u64 {
        let inst = build_subspace_addressing(params, 1000 * i + 1, 100, 7).unwrap();
        let s = structural_spectrum_subspace_addressing(&inst, &limits).unwrap();
        let addressed = s.masks().filter(|mk| in_addressed_layer(&inst, mk)).count();
        ensure!(addressed == t << (m - r), "addressed layer has {addressed} masks");
        ensure!(s.sparsity() >= 1 << (6 * k), "|S| = {} < 2^18", s.sparsity());
        let support = s.support();
        let pairs = sample_fold_counts(&support, 10_000, inst.seed(), DiagonalPolicy::Exclude).unwrap();
        let max = pairs.iter().map(|p| p.count).max().unwrap();
        ensure!(max <= 1 << (5 * k + 4), "instance {i}: fold {max} > 2^19");
        worst = worst.max(max);
    }
    Ok(format!("5 instances, largest sampled fold {worst} <= 2^19"))
}

fn tail_bound() -> Outcome {
    let limits = Limits::default();
    let support = tree_function_support(10, &limits).unwrap().support();
    let pairs = sample_fold_counts(&support, 10_000, 2024, DiagonalPolicy::Include).unwrap();
    let mut report = Vec::new();
    for k in 1..=5 {
        let bound = 2f64.powi(-k) + 2f64.powi(1 - 10);
        let est = FoldProbabilityEstimate::from_samples(1 << (k + 2), &pairs, 2024, DiagonalPolicy::Include);
        ensure!(est.estimate <= bound + est.half_width, "d=10 k={k}: {} > {bound} + {}", est.estimate, est.half_width);
        report.push(format!("k={k}:{:.4}", est.estimate));
    }
    let small = tree_function_support(4, &limits).unwrap().support();
    let h = fold_histogram(&small, &limits).unwrap();
    for k in 1..=5 {
        let exact = h.tail_probability(1 << (k + 2), DiagonalPolicy::Include);
        let bound = 2f64.powi(-k) + 2f64.powi(1 - 4);
        ensure!(exact <= bound, "d=4 k={k}: exact tail {exact} > {bound}");
    }
    Ok(format!("d=10 estimates {} (half-width {:.4}); d=4 exact tails within bound", report.join(" "), hoeffding_half_width(10_000, 0.99)))
}

fn lca_bound() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for d in [3, 4] {
        let ts = tree_function_support(d, &limits).unwrap();
        let inst = ts.instance();
        let set: HashSet<BitVec> = ts.masks().cloned().collect();
        for (g1, n1) in ts.entries() {
            for (g2, n2) in ts.entries() {
                if n1 == n2 {
                    continue;
                }
                let bound = lca_fold_bound(&inst, g1, g2).unwrap();
                let actual = common::shifted_intersection(&set, g1, g2) as u64;
                ensure!(actual <= bound, "d={d} {g1} {g2}: {actual} > {bound}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn pdt_correctness() -> Outcome {
    let limits = Limits::default();
    let mut depths = Vec::new();
    for d in 1..=4 {
        let table = tree_function_table(d, &limits).unwrap();
        let s = wht(&table, &limits).unwrap();
        let out = greedy_build(&s, s.n(), &limits).unwrap();
        ensure!(out.pdt.verify(&table).unwrap().passed(), "greedy tree wrong at d={d}");
        depths.push(out.pdt.depth().to_string());
    }
    let inst = build_subspace_addressing(SubspaceParams::new(14, 4, 4).unwrap(), 1, 100, 7).unwrap();
    let pdt = explicit_subspace_addressing_pdt(&inst, &limits).unwrap();
    ensure!(pdt.depth() == 15, "explicit depth {}", pdt.depth());
    let table = subspace_addressing_table(&inst, &limits).unwrap();
    ensure!(pdt.verify(&table).unwrap().passed(), "explicit tree wrong");
    Ok(format!("greedy tree depths d=1..4: {}; explicit depth 15 verified", depths.join(",")))
}

fn spectrum_properties() -> Outcome {
    let limits = Limits::default();
    let mut rng = common::XorShift(0xfeed);
    for n in [6, 8, 10] {
        for trial in 0..100 {
            let table = rng.table(n);
            let s = wht(&table, &limits).unwrap();
            ensure!(s.parseval_sum() == 1i128 << (2 * n), "n={n} trial {trial}: Parseval");
            ensure!(inverse_wht(&s, &limits).unwrap() == table, "n={n} trial {trial}: round trip");
            let g = 1 + rng.below((1 << n) - 1);
            for b in [false, true] {
                let r = restrict_parity(&s, &BitVec::from_u64(n, g), b).unwrap();
                let values = dense_values(&r, &limits).unwrap();
                for x in 0..1usize << n {
                    if ((x as u64 & g).count_ones() % 2 == 1) == b {
                        ensure!(values[x] == (table.get(x) as i64) << n, "n={n} trial {trial}: restriction at {x}");
                    }
                }
            }
        }
    }
    Ok("300 tables".into())
}

fn mass_identity() -> Outcome {
    let limits = Limits::default();
    let mut supports: Vec<(String, Support)> = Vec::new();
    for d in 1..=7 {
        supports.push((format!("tree d={d}"), tree_function_support(d, &limits).unwrap().support()));
    }
    for k in 1..=3 {
        let s = wht(&addressing_table(k, &limits).unwrap(), &limits).unwrap();
        supports.push((format!("addressing k={k}"), s.support()));
    }
    for (m, t, r) in [(8, 3, 2), (10, 3, 3), (14, 4, 4)] {
        let inst = build_subspace_addressing(SubspaceParams::new(m, t, r).unwrap(), 1, 100, 7).unwrap();
        let s = structural_spectrum_subspace_addressing(&inst, &limits).unwrap();
        supports.push((format!("subspace ({m},{t},{r})"), s.support()));
    }
    for (name, support) in &supports {
        ensure!(support.len() <= limits.histogram, "{name} exceeds histogram budget");
        let h = fold_histogram(support, &limits).unwrap();
        ensure!(h.mass_identity_holds(), "{name}: mass {} != |S|^2 - |S|", h.mass());
    }
    Ok(format!("{} supports", supports.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "tree-function spectrum equals structural support", 1, tree_spectrum),
        (2, "subspace-addressing structural spectrum equals transform", 30, subspace_spectrum),
        (3, "coset intersection sizes for trivially meeting complements", 5, coset_intersections),
        (4, "random subspace instances fail at most at the stated rate", 10, lemma_trials),
        (5, "sampled fold counts at k=3 stay below 2^19", 300, max_fold_bound),
        (6, "tree-function fold tail at d=10 and d=4", 120, tail_bound),
        (7, "LCA fold bound over all support pairs", 60, lca_bound),
        (8, "greedy and explicit parity decision trees verify", 60, pdt_correctness),
        (9, "transform round trip, Parseval and restriction", 30, spectrum_properties),
        (10, "fold histogram mass identity", 600, mass_identity),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit}s"))
            }
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id:>2} {status} {name} [{elapsed:.2?}] {detail}");
        failed += outcome.is_err() as u32;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
