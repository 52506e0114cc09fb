use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::limits::Limits;
use crate::spectrum::{SparseSpectrum, Support, TruthTable};

/// Largest supported tree depth; `n = 2^d - 1` must stay addressable.
pub const MAX_TREE_DEPTH: usize = 24;

/// Full binary decision tree of depth `d` on `n = 2^d - 1` variables.
///
/// Nodes use heap numbering: node `i` (1-based) queries variable `x_i`,
/// stored at bit `i - 1`, and has children `2i` (answer 0) and `2i + 1`
/// (answer 1). Below each deepest node the left leaf is `-1` and the right
/// leaf is `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeFunctionInstance {
    d: usize,
}

impl TreeFunctionInstance {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 || d > MAX_TREE_DEPTH {
            return Err(Error::InvalidParameters(format!(
                "tree depth {d} out of range 1..={MAX_TREE_DEPTH}"
            )));
        }
        Ok(TreeFunctionInstance { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        (1 << self.d) - 1
    }

    /// Heap indices of the deepest internal nodes, `2^{d-1} .. 2^d`.
    pub fn deepest_nodes(&self) -> std::ops::Range<usize> {
        (1 << (self.d - 1))..(1 << self.d)
    }

    pub fn is_deepest(&self, node: usize) -> bool {
        self.deepest_nodes().contains(&node)
    }

    /// Nodes on the root path of `node`, root first, `node` last.
    pub fn path(&self, node: usize) -> Vec<usize> {
        let mut p: Vec<usize> = std::iter::successors(Some(node), |&v| (v > 1).then_some(v / 2)).collect();
        p.reverse();
        p
    }

    /// The path of `node` as a variable mask.
    pub fn path_mask(&self, node: usize) -> BitVec {
        BitVec::from_indices(self.n(), self.path(node).into_iter().map(|v| v - 1))
    }

    pub fn evaluate(&self, x: &BitVec) -> i8 {
        let mut node = 1;
        loop {
            let b = x.get(node - 1);
            if self.is_deepest(node) {
                return if b { 1 } else { -1 };
            }
            node = 2 * node + b as usize;
        }
    }

    /// `N(γ)`: the deepest node of a support mask. Every mask in the
    /// support is a subset of one root path containing its deepest node,
    /// which is then its highest set bit.
    pub fn deepest_of(&self, mask: &BitVec) -> Result<usize> {
        mask.check_len(self.n())?;
        let not_in = || Error::NotInSupport(mask.to_hex());
        let node = mask.highest_one().ok_or_else(not_in)? + 1;
        if !self.is_deepest(node) {
            return Err(not_in());
        }
        let path = self.path_mask(node);
        if mask.iter_ones().any(|i| !path.get(i)) {
            return Err(not_in());
        }
        Ok(node)
    }

    /// Depth of the lowest common ancestor of two nodes (root has depth 0).
    pub fn lca_depth(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        while a != b {
            if a > b {
                a /= 2;
            } else {
                b /= 2;
            }
        }
        node_depth(a)
    }
}

fn node_depth(node: usize) -> usize {
    (usize::BITS - 1 - node.leading_zeros()) as usize
}

pub fn tree_function_table(d: usize, limits: &Limits) -> Result<TruthTable> {
    let inst = TreeFunctionInstance::new(d)?;
    limits.check_dense(inst.n())?;
    TruthTable::from_fn(inst.n(), |x| {
        let mut node = 1;
        loop {
            let b = (x >> (node - 1)) & 1;
            if inst.is_deepest(node) {
                return if b == 1 { 1 } else { -1 };
            }
            node = 2 * node + b;
        }
    })
}

/// The structural support: for each deepest node `N`, every subset of its
/// root path that contains `N`.
#[derive(Debug, Clone)]
pub struct TreeSupport {
    inst: TreeFunctionInstance,
    /// Sorted masks with their deepest node.
    entries: Vec<(BitVec, usize)>,
}

impl TreeSupport {
    pub fn instance(&self) -> TreeFunctionInstance {
        self.inst
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(BitVec, usize)] {
        &self.entries
    }

    pub fn masks(&self) -> impl Iterator<Item = &BitVec> {
        self.entries.iter().map(|(m, _)| m)
    }

    pub fn support(&self) -> Support {
        Support::from_sorted_unique(self.inst.n(), self.entries.iter().map(|(m, _)| m.clone()).collect())
    }
}

pub fn tree_function_support(d: usize, limits: &Limits) -> Result<TreeSupport> {
    let inst = TreeFunctionInstance::new(d)?;
    let needed = 1u128 << (2 * (d - 1));
    if needed > limits.structural as u128 {
        return Err(Error::BudgetExceeded {
            what: "tree-function support",
            needed,
            budget: limits.structural as u128,
        });
    }
    let n = inst.n();
    let mut entries = Vec::with_capacity(needed as usize);
    for node in inst.deepest_nodes() {
        let ancestors: Vec<BitVec> = inst.path(node)[..d - 1]
            .iter()
            .map(|&v| BitVec::unit(n, v - 1))
            .collect();
        let mut mask = BitVec::unit(n, node - 1);
        entries.push((mask.clone(), node));
        for step in 1u64..1 << (d - 1) {
            mask ^= &ancestors[step.trailing_zeros() as usize];
            entries.push((mask.clone(), node));
        }
    }
    entries.sort_unstable();
    Ok(TreeSupport { inst, entries })
}

/// Exact spectrum from the leaf-sum decomposition. For a mask made of a
/// deepest node `N` and ancestors `P`, the numerator is
/// `-2^{n-d+1} (-1)^{Σ_{t∈P} a_t}` where `a_t` is the branch taken at `t`
/// on the way to `N`.
pub fn structural_spectrum_tree(d: usize, limits: &Limits) -> Result<SparseSpectrum> {
    let support = tree_function_support(d, limits)?;
    let n = support.inst.n();
    if n > 62 {
        return Err(Error::Overflow(format!("numerators over 2^{n}")));
    }
    let magnitude = 1i64 << (n - d + 1);
    let terms = support.entries.into_iter().map(|(mask, node)| {
        let parity = mask
            .iter_ones()
            .filter(|&i| i + 1 != node)
            .map(|i| {
                // the child of ancestor `i + 1` on the way to `node`
                let t = i + 1;
                (node >> (node_depth(node) - node_depth(t) - 1)) & 1
            })
            .sum::<usize>()
            & 1;
        let c = if parity == 1 { magnitude } else { -magnitude };
        (mask, c)
    });
    SparseSpectrum::from_terms(n, terms)
}
