//! The addressing function, subspace addressing and the tree function,
//! each as a dense table for small parameters and a structural spectrum
//! for large ones.

mod addressing;
mod subspace;
mod tree;

pub use addressing::addressing_table;
pub use subspace::{
    build_subspace_addressing, in_addressed_layer, pair_overlap_dim, structural_spectrum_subspace_addressing,
    subspace_addressing_table, verify_instance, InstanceVerdict, ItemVerdict, SubspaceAddressingInstance,
    SubspaceParams, Witness, DEFAULT_MULTIPLICITY_THRESHOLD,
};
pub use tree::{
    structural_spectrum_tree, tree_function_support, tree_function_table, TreeFunctionInstance, TreeSupport,
    MAX_TREE_DEPTH,
};

use crate::error::{parse_err, Result};
use crate::gf2::AffineSubspace;

/// Contents of an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Subspace(SubspaceAddressingInstance),
    Tree(TreeFunctionInstance),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::Subspace(s) => s.n(),
            Instance::Tree(t) => t.n(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Instance::Tree(t) => format!("tree d={}\n", t.d()),
            Instance::Subspace(s) => {
                let p = s.params();
                let mut out = format!("subspace-addressing m={} t={} r={} seed={}\n", p.m, p.t, p.r, s.seed());
                for a in s.subspaces() {
                    out.push_str(&a.to_line());
                    out.push('\n');
                }
                out
            }
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty instance file"))?;
        let mut words = header.split_whitespace();
        let kind = words.next().unwrap_or_default();
        let mut fields = std::collections::BTreeMap::new();
        for w in words {
            let (key, value) = w
                .split_once('=')
                .ok_or_else(|| parse_err(1, format!("expected key=value, got {w:?}")))?;
            let value: u64 = value
                .parse()
                .map_err(|e| parse_err(1, format!("bad value for {key}: {e}")))?;
            if fields.insert(key, value).is_some() {
                return Err(parse_err(1, format!("duplicate field {key}")));
            }
        }
        let mut take = |key: &str| {
            fields
                .remove(key)
                .ok_or_else(|| parse_err(1, format!("missing field {key}")))
        };
        let inst = match kind {
            "tree" => {
                let d = take("d")? as usize;
                Instance::Tree(TreeFunctionInstance::new(d)?)
            }
            "subspace-addressing" => {
                let params = SubspaceParams::new(take("m")? as usize, take("t")? as usize, take("r")? as usize)?;
                let seed = take("seed")?;
                let mut subspaces = Vec::with_capacity(params.t);
                for (line_no, line) in lines.by_ref() {
                    let a = AffineSubspace::from_line(line).map_err(|e| parse_err(line_no, e.to_string()))?;
                    subspaces.push(a);
                }
                Instance::Subspace(SubspaceAddressingInstance::new(params, seed, subspaces)?)
            }
            other => return Err(parse_err(1, format!("unknown instance kind {other:?}"))),
        };
        if let Some(key) = fields.keys().next() {
            return Err(parse_err(1, format!("unexpected field {key}")));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, "trailing content"));
        }
        Ok(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_round_trip() {
        let i = Instance::Tree(TreeFunctionInstance::new(4).unwrap());
        assert_eq!(i.to_text(), "tree d=4\n");
        assert_eq!(Instance::from_text(&i.to_text()).unwrap(), i);
    }

    #[test]
    fn subspace_round_trip() {
        let params = SubspaceParams::new(14, 4, 4).unwrap();
        let inst = build_subspace_addressing(params, 3, 50, 7).unwrap();
        let text = Instance::Subspace(inst.clone()).to_text();
        assert!(text.starts_with(&format!("subspace-addressing m=14 t=4 r=4 seed={}\n", inst.seed())));
        let Instance::Subspace(back) = Instance::from_text(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back.subspaces(), inst.subspaces());
        assert_eq!(back.seed(), inst.seed());
    }

    #[test]
    fn malformed_headers() {
        assert!(Instance::from_text("").is_err());
        assert!(Instance::from_text("tree").is_err());
        assert!(Instance::from_text("tree d=3 x=1").is_err());
        assert!(Instance::from_text("forest d=3").is_err());
        assert!(Instance::from_text("subspace-addressing m=4 t=1 r=1 seed=0").is_err());
    }
}
