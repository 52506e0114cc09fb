use std::path::PathBuf;

use clap::{Args, Subcommand};
use foldscope_core::constructions::{
    build_subspace_addressing, in_addressed_layer, structural_spectrum_subspace_addressing, tree_function_support,
    verify_instance, Instance, InstanceVerdict, ItemVerdict, DEFAULT_MULTIPLICITY_THRESHOLD,
};
use foldscope_core::{Error, SubspaceAddressingInstance, TreeFunctionInstance};
use serde_json::json;

use crate::report::{write_atomic, Report};
use crate::source::{subspace_params, DEFAULT_SEED};
use crate::{CliResult, LimitArgs};

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    kind: Kind,
}

#[derive(Debug, Subcommand)]
enum Kind {
    /// Subspace addressing: pairwise disjoint cosets A_1..A_t in F_2^m
    Subspace {
        /// Use (m, t, r) = (7k, 2^k, 2k)
        #[arg(long, conflicts_with_all = ["m", "t", "r"])]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_retries: u64,
        #[arg(long, default_value_t = DEFAULT_MULTIPLICITY_THRESHOLD)]
        multiplicity_threshold: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full binary decision tree of depth d
    Tree {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(args: &ConstructArgs, limits: &LimitArgs) -> CliResult<bool> {
    match &args.kind {
        Kind::Tree { d, out } => {
            let mut report = Report::new(json!({
                "command": "construct tree",
                "d": d,
                "out": out,
                "limits": limits.config(),
            }));
            let inst = TreeFunctionInstance::new(*d)?;
            let support = tree_function_support(*d, &limits.limits())?;
            let expected = 1usize << (2 * (d - 1));
            report.claim(
                "support-size",
                support.len() == expected,
                format!("|S| = {} (4^(d-1) = {expected})", support.len()),
            );
            report.result("instance", format!("tree d={} n={}", d, inst.n()));
            finish(report, out, &Instance::Tree(inst))
        }
        Kind::Subspace {
            k,
            m,
            t,
            r,
            seed,
            max_retries,
            multiplicity_threshold,
            out,
        } => {
            let params = subspace_params(*k, *m, *t, *r)?;
            let mut report = Report::new(json!({
                "command": "construct subspace",
                "m": params.m,
                "t": params.t,
                "r": params.r,
                "k": params.family_k(),
                "seed": seed,
                "max_retries": max_retries,
                "multiplicity_threshold": multiplicity_threshold,
                "out": out,
                "limits": limits.config(),
            }));
            let inst = match build_subspace_addressing(params, *seed, *max_retries, *multiplicity_threshold) {
                Ok(inst) => inst,
                Err(Error::RetriesExhausted { attempts, .. }) => {
                    // show why the final attempt was rejected
                    let last_seed = seed.wrapping_add(attempts - 1);
                    let last = SubspaceAddressingInstance::sample(params, last_seed)?;
                    lemma_claims(&mut report, &verify_instance(&last, *multiplicity_threshold));
                    report.result(
                        "build",
                        format!("retries-exhausted after {attempts} attempts; verdicts above are for seed {last_seed}"),
                    );
                    report.summary();
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            lemma_claims(&mut report, &verify_instance(&inst, *multiplicity_threshold));
            report.result(
                "build",
                format!("seed={} attempts={} n={}", inst.seed(), inst.attempts(), inst.n()),
            );
            match structural_spectrum_subspace_addressing(&inst, &limits.limits()) {
                Ok(s) => {
                    let layer = s.masks().filter(|mk| in_addressed_layer(&inst, mk)).count();
                    let bound = params.t << (params.m - params.r);
                    report.claim(
                        "support-lower-bound",
                        layer == bound && s.sparsity() >= bound,
                        format!("|S| = {} >= t*2^(m-r) = {bound}; addressed layer has {layer} masks", s.sparsity()),
                    );
                }
                Err(e) => report.result("support", format!("skipped: {e}")),
            }
            finish(report, out, &Instance::Subspace(inst))
        }
    }
}

pub fn lemma_claims(report: &mut Report, v: &InstanceVerdict) {
    let names = [
        "lemma-dimension",
        "lemma-disjoint",
        "lemma-trivial-intersection",
        "lemma-complement-multiplicity",
    ];
    for (id, (_, item)) in names.iter().zip(v.items()) {
        match item {
            ItemVerdict::Pass => report.claim(id, true, "ok"),
            ItemVerdict::Fail(w) => report.claim(id, false, w),
        }
    }
}

fn finish(mut report: Report, out: &Option<PathBuf>, inst: &Instance) -> CliResult<bool> {
    if let Some(path) = out {
        write_atomic(path, &inst.to_text())?;
        report.result("written", path.display());
    }
    report.summary();
    Ok(report.all_passed())
}
