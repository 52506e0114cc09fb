use std::path::Path;
use std::process::{Command, Output};

fn foldscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foldscope"))
        .args(args)
        .output()
        .expect("spawn foldscope")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn claim<'a>(out: &'a str, id: &str) -> &'a str {
    let prefix = format!("CLAIM {id} ");
    out.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no claim {id} in\n{out}"))
}

fn result<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("RESULT {key} ");
    out.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no result {key} in\n{out}"))
}

fn config(out: &str) -> serde_json::Value {
    let line = out.lines().next().unwrap();
    serde_json::from_str(line.strip_prefix("CONFIG ").unwrap()).unwrap()
}

#[test]
fn every_run_starts_with_config_and_ends_with_summary() {
    let o = foldscope(&["construct", "tree", "--d", "2"]);
    let out = stdout(&o);
    assert!(o.status.success());
    let cfg = config(&out);
    assert_eq!(cfg["command"], "construct tree");
    assert_eq!(cfg["limits"]["histogram"], 8192);
    assert_eq!(out.lines().last().unwrap(), "SUMMARY claims=1 failed=0");
}

#[test]
fn construct_family_instance_and_reload_it() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k3.txt");
    let o = foldscope(&["construct", "subspace", "--k", "3", "--seed", "7", "--out", file.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    let cfg = config(&out);
    assert_eq!((cfg["m"].as_u64(), cfg["t"].as_u64(), cfg["r"].as_u64()), (Some(21), Some(8), Some(6)));
    for id in [
        "lemma-dimension",
        "lemma-disjoint",
        "lemma-trivial-intersection",
        "lemma-complement-multiplicity",
        "support-lower-bound",
    ] {
        assert!(claim(&out, id).starts_with("PASS"), "{id}: {out}");
    }
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("subspace-addressing m=21 t=8 r=6 seed="));
    assert_eq!(text.lines().count(), 9);

    // the written instance drives other commands
    let o = foldscope(&["wht", "--instance", file.to_str().unwrap(), "--method", "structural"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(claim(&out, "parseval").starts_with("PASS"));
    assert!(result(&out, "sparsity").parse::<usize>().unwrap() >= 1 << 18);
}

#[test]
fn construct_tree_reports_support_size() {
    let o = foldscope(&["construct", "tree", "--d", "4"]);
    let out = stdout(&o);
    assert!(o.status.success());
    assert!(claim(&out, "support-size").starts_with("PASS |S| = 64"));
}

#[test]
fn infeasible_parameters_exit_one_with_a_witness() {
    // four disjoint cosets of dimension 2 cannot fit in F_2^2
    let o = foldscope(&["construct", "subspace", "--m", "2", "--t", "4", "--r", "2"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(claim(&out, "lemma-disjoint").starts_with("FAIL cosets"));
    assert!(result(&out, "build").starts_with("retries-exhausted after 100 attempts"));
}

#[test]
fn bad_input_is_exit_two() {
    let o = foldscope(&["construct", "subspace", "--m", "4", "--t", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.txt");
    std::fs::write(&file, "tree d=3 extra=1\n").unwrap();
    let o = foldscope(&["wht", "--instance", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = foldscope(&["--dense-limit", "10", "wht", "--construction", "tree", "--d", "4", "--method", "dense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wht_methods_agree_and_write_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("spec.txt");
    let o = foldscope(&[
        "wht", "--construction", "subspace", "--m", "8", "--t", "3", "--r", "2", "--method", "both", "--out",
        file.to_str().unwrap(),
    ]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(claim(&out, "spectrum-equivalence").starts_with("PASS"));
    let n: usize = result(&out, "sparsity").parse().unwrap();
    let text = std::fs::read_to_string(&file).unwrap();
    let parsed = foldscope_core::SparseSpectrum::from_text(&text).unwrap();
    assert_eq!(parsed.sparsity(), n);
    assert!(parsed.satisfies_parseval());
}

#[test]
fn verify_spectrum_tree() {
    let o = foldscope(&["verify", "spectrum", "--construction", "tree", "--d", "3"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(claim(&out, "spectrum-equivalence").starts_with("PASS 16 terms"));
    assert!(claim(&out, "single-deepest-node").starts_with("PASS"));
}

#[test]
fn verify_lemma_failure_rate() {
    let o = foldscope(&["verify", "lemma", "--k", "3", "--trials", "200"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(claim(&out, "lemma-failure-rate").starts_with("PASS"));
    assert!(result(&out, "item-failures").starts_with("(a) 0"));
}

#[test]
fn verify_claim_intersection() {
    let o = foldscope(&["verify", "claim-intersection", "--n", "10", "--trials", "500"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(
        claim(&out, "coset-intersection"),
        "PASS 500/500 exact, cross-checked by enumeration"
    );
}

#[test]
fn verify_lca_bound() {
    let o = foldscope(&["verify", "lca", "--d", "4"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    // 8 deepest nodes with 8 masks each: 64 * 56 ordered pairs
    assert!(claim(&out, "lca-fold-bound").starts_with("PASS 3584 pairs"));
}

#[test]
fn fold_stats_tree_exhaustive() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("hist.txt");
    let o = foldscope(&["fold-stats", "--construction", "tree", "--d", "4", "--out", file.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(config(&out)["mode"], "exhaustive");
    assert!(claim(&out, "mass-identity").starts_with("PASS"));
    for k in 1..=5 {
        assert!(claim(&out, &format!("tail-bound-k{k}")).starts_with("PASS"));
    }
    let text = std::fs::read_to_string(&file).unwrap();
    let total: u64 = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 64 * 63);
    assert!(text.lines().last().unwrap().starts_with("# summary {"));
}

#[test]
fn fold_stats_subspace_max_fold() {
    let o = foldscope(&[
        "--histogram-budget", "20000", "fold-stats", "--construction", "subspace", "--m", "14", "--t", "4", "--r", "4",
    ]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    // (14, 4, 4) is in the family for k = 2: bound 2^14
    assert!(claim(&out, "max-fold-bound").starts_with("PASS"));
    assert!(claim(&out, "mass-identity").starts_with("PASS"));
}

#[test]
fn fold_stats_sampled_writes_estimates() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("est.json");
    let o = foldscope(&[
        "--histogram-budget", "100", "fold-stats", "--construction", "tree", "--d", "5", "--samples", "2000",
        "--sample-seed", "9", "--max-k", "2", "--out", file.to_str().unwrap(),
    ]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(config(&out)["mode"], "sampled");
    let body: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let est = body["estimates"].as_array().unwrap();
    assert_eq!(est.len(), 2);
    assert_eq!(est[0]["samples"], 2000);
    assert_eq!(est[0]["seed"], 9);

    // same seed, same numbers
    let again = foldscope(&[
        "--histogram-budget", "100", "fold-stats", "--construction", "tree", "--d", "5", "--samples", "2000",
        "--sample-seed", "9", "--max-k", "2",
    ]);
    let a: Vec<&str> = out.lines().filter(|l| l.starts_with("CLAIM")).collect();
    let again = stdout(&again);
    let b: Vec<&str> = again.lines().filter(|l| l.starts_with("CLAIM")).collect();
    assert_eq!(a, b);
}

#[test]
fn threshold_above_support_has_probability_zero() {
    for diagonal in ["include", "exclude"] {
        let o = foldscope(&[
            "fold-stats", "--construction", "tree", "--d", "3", "--threshold", "17", "--diagonal", diagonal,
        ]);
        let out = stdout(&o);
        assert!(o.status.success(), "{out}");
        assert!(result(&out, "probability").starts_with("0.000000 "), "{out}");
    }
}

#[test]
fn pdt_greedy_on_tree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.pdt");
    let o = foldscope(&["pdt", "--construction", "tree", "--d", "3", "--out", file.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(result(&out, "greedy-depth"), "3");
    assert!(claim(&out, "pdt-verify-greedy").starts_with("PASS"));
    let pdt = foldscope_core::Pdt::from_text(7, &std::fs::read_to_string(&file).unwrap()).unwrap();
    let table = foldscope_core::constructions::tree_function_table(3, &Default::default()).unwrap();
    assert!(pdt.verify(&table).unwrap().passed());
}

#[test]
fn pdt_explicit_depth() {
    let o = foldscope(&["pdt", "--construction", "subspace", "--m", "14", "--t", "4", "--r", "4", "--builder", "explicit"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(claim(&out, "explicit-depth"), "PASS depth 15 = m + 1 = 15");
    assert!(claim(&out, "pdt-verify-explicit").starts_with("PASS"));
}

#[test]
fn pdt_character_is_one_query() {
    let o = foldscope(&["pdt", "--character", "a5", "--n", "8"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(result(&out, "greedy-depth"), "1");
}

#[test]
fn pdt_depth_limit_is_reported_not_fatal() {
    let o = foldscope(&["pdt", "--construction", "tree", "--d", "4", "--depth-limit", "2"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(result(&out, "greedy"), "depth-limit-exceeded at 2");
}

#[test]
fn out_path_in_missing_directory_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("missing").join("x.txt");
    let o = foldscope(&["construct", "tree", "--d", "2", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new(&file).exists());
}
