use std::path::PathBuf;

use clap::{Args, ValueEnum};
use foldscope_core::constructions::{
    addressing_table, build_subspace_addressing, structural_spectrum_subspace_addressing, structural_spectrum_tree,
    subspace_addressing_table, tree_function_support, tree_function_table, Instance, DEFAULT_MULTIPLICITY_THRESHOLD,
};
use foldscope_core::spectrum::wht;
use foldscope_core::{Limits, SparseSpectrum, SubspaceAddressingInstance, SubspaceParams, Support, TreeFunctionInstance, TruthTable};
use serde_json::{json, Value};

use crate::CliResult;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Tree,
    Subspace,
    Addressing,
}

/// Where a function comes from: an instance file or construction flags.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Instance file written by `construct`
    #[arg(long, conflicts_with = "construction")]
    pub instance: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub construction: Option<Construction>,
    /// Tree depth
    #[arg(long)]
    pub d: Option<usize>,
    /// Family parameter: (m, t, r) = (7k, 2^k, 2k) for subspace, address bits for addressing
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_retries: u64,
    /// Item (d) bound on how many complements may share a nonzero vector
    #[arg(long, default_value_t = DEFAULT_MULTIPLICITY_THRESHOLD)]
    pub multiplicity_threshold: usize,
}

pub enum Source {
    Tree(TreeFunctionInstance),
    Subspace(SubspaceAddressingInstance),
    Addressing(usize),
}

pub fn subspace_params(k: Option<usize>, m: Option<usize>, t: Option<usize>, r: Option<usize>) -> CliResult<SubspaceParams> {
    match (k, m, t, r) {
        (Some(k), None, None, None) => Ok(SubspaceParams::from_k(k)?),
        (None, Some(m), Some(t), Some(r)) => Ok(SubspaceParams::new(m, t, r)?),
        _ => Err("give either --k or all of --m, --t, --r".into()),
    }
}

impl SourceArgs {
    pub fn config(&self) -> Value {
        json!({
            "instance": self.instance,
            "construction": self.construction.map(|c| format!("{c:?}").to_lowercase()),
            "d": self.d,
            "k": self.k,
            "m": self.m,
            "t": self.t,
            "r": self.r,
            "seed": self.seed,
            "max_retries": self.max_retries,
            "multiplicity_threshold": self.multiplicity_threshold,
        })
    }

    pub fn resolve(&self) -> CliResult<Source> {
        if let Some(path) = &self.instance {
            let text = std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
            return Ok(match Instance::from_text(&text).map_err(|e| format!("{}: {e}", path.display()))? {
                Instance::Tree(t) => Source::Tree(t),
                Instance::Subspace(s) => Source::Subspace(s),
            });
        }
        match self.construction {
            Some(Construction::Tree) => {
                let d = self.d.ok_or("--construction tree needs --d")?;
                Ok(Source::Tree(TreeFunctionInstance::new(d)?))
            }
            Some(Construction::Addressing) => Ok(Source::Addressing(self.k.ok_or("--construction addressing needs --k")?)),
            Some(Construction::Subspace) => {
                let params = subspace_params(self.k, self.m, self.t, self.r)?;
                Ok(Source::Subspace(build_subspace_addressing(
                    params,
                    self.seed,
                    self.max_retries,
                    self.multiplicity_threshold,
                )?))
            }
            None => Err("give --instance or --construction".into()),
        }
    }
}

impl Source {
    pub fn n(&self) -> usize {
        match self {
            Source::Tree(t) => t.n(),
            Source::Subspace(s) => s.n(),
            Source::Addressing(k) => k + (1 << k),
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            Source::Tree(t) => json!({"kind": "tree", "d": t.d(), "n": t.n()}),
            Source::Subspace(s) => {
                let p = s.params();
                json!({"kind": "subspace-addressing", "m": p.m, "t": p.t, "r": p.r, "n": p.n(), "seed": s.seed(), "attempts": s.attempts()})
            }
            Source::Addressing(k) => json!({"kind": "addressing", "k": k, "n": self.n()}),
        }
    }

    pub fn table(&self, limits: &Limits) -> CliResult<TruthTable> {
        Ok(match self {
            Source::Tree(t) => tree_function_table(t.d(), limits)?,
            Source::Subspace(s) => subspace_addressing_table(s, limits)?,
            Source::Addressing(k) => addressing_table(*k, limits)?,
        })
    }

    /// Closed-form spectrum where one exists, else the transform of the table.
    pub fn structural_spectrum(&self, limits: &Limits) -> CliResult<SparseSpectrum> {
        Ok(match self {
            Source::Tree(t) => structural_spectrum_tree(t.d(), limits)?,
            Source::Subspace(s) => structural_spectrum_subspace_addressing(s, limits)?,
            Source::Addressing(_) => wht(&self.table(limits)?, limits)?,
        })
    }

    pub fn support(&self, limits: &Limits) -> CliResult<Support> {
        Ok(match self {
            Source::Tree(t) => tree_function_support(t.d(), limits)?.support(),
            _ => self.structural_spectrum(limits)?.support(),
        })
    }
}
