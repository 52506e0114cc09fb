use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{coset_intersection, coset_intersection_dim, sample_affine_subspaces, AffineSubspace, BitVec, Echelon};
use crate::limits::Limits;
use crate::spectrum::{SparseSpectrum, TruthTable};

/// Default multiplicity bound for item (d): no nonzero vector may lie in
/// more than this many of the complements `V_i^⊥`.
pub const DEFAULT_MULTIPLICITY_THRESHOLD: usize = 7;

/// Address-space dimension `m`, subspace count `t` and subspace dimension `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceParams {
    pub m: usize,
    pub t: usize,
    pub r: usize,
}

impl SubspaceParams {
    pub fn new(m: usize, t: usize, r: usize) -> Result<Self> {
        if m == 0 || t == 0 {
            return Err(Error::InvalidParameters("need m >= 1 and t >= 1".into()));
        }
        if r > m {
            return Err(Error::InvalidParameters(format!("r = {r} exceeds m = {m}")));
        }
        Ok(SubspaceParams { m, t, r })
    }

    /// `(m, t, r) = (7k, 2^k, 2k)`.
    pub fn from_k(k: usize) -> Result<Self> {
        if k == 0 || k > 20 {
            return Err(Error::InvalidParameters(format!("k = {k} out of range 1..=20")));
        }
        Self::new(7 * k, 1 << k, 2 * k)
    }

    /// `Some(k)` when the parameters are `(7k, 2^k, 2k)`.
    pub fn family_k(&self) -> Option<usize> {
        self.m.is_multiple_of(7)
            .then_some(self.m / 7)
            .filter(|&k| k >= 1 && self.r == 2 * k && k < 64 && self.t == 1 << k)
    }

    /// Total input dimension `m + t`.
    pub fn n(&self) -> usize {
        self.m + self.t
    }
}

/// `f(x, y) = (-1)^{y_i}` for `x ∈ A_i`, `+1` when `x` is in no `A_i`.
///
/// Inputs are encoded with `x` in bits `0..m` and `y` in bits `m..m+t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceAddressingInstance {
    params: SubspaceParams,
    /// Seed of the sampling run that produced `subspaces`.
    seed: u64,
    /// Number of sampling runs it took to reach this instance.
    attempts: u64,
    subspaces: Vec<AffineSubspace>,
}

impl SubspaceAddressingInstance {
    pub fn new(params: SubspaceParams, seed: u64, subspaces: Vec<AffineSubspace>) -> Result<Self> {
        if subspaces.len() != params.t {
            return Err(Error::InvalidParameters(format!(
                "expected {} subspaces, got {}",
                params.t,
                subspaces.len()
            )));
        }
        for a in &subspaces {
            if a.ambient() != params.m {
                return Err(Error::DimensionMismatch {
                    expected: params.m,
                    actual: a.ambient(),
                });
            }
        }
        Ok(SubspaceAddressingInstance {
            params,
            seed,
            attempts: 1,
            subspaces,
        })
    }

    /// One unverified sampling run.
    pub fn sample(params: SubspaceParams, seed: u64) -> Result<Self> {
        let s = sample_affine_subspaces(seed, params.m, params.t, params.r)?;
        Self::new(params, seed, s.subspaces)
    }

    pub fn params(&self) -> SubspaceParams {
        self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn attempts(&self) -> u64 {
        self.attempts
    }

    pub fn subspaces(&self) -> &[AffineSubspace] {
        &self.subspaces
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// Index of the first coset containing the address `x`.
    pub fn owner(&self, x: &BitVec) -> Option<usize> {
        self.subspaces.iter().position(|a| a.contains(x))
    }
}

/// Failure evidence for one item of the instance check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Dimension { index: usize, dim: usize },
    Overlap { i: usize, j: usize, point: BitVec },
    SharedDirection { i: usize, j: usize, vector: BitVec },
    Multiplicity { vector: BitVec, indices: Vec<usize> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Dimension { index, dim } => write!(f, "subspace {index} has dimension {dim}"),
            Witness::Overlap { i, j, point } => write!(f, "cosets {i} and {j} share point {point}"),
            Witness::SharedDirection { i, j, vector } => {
                write!(f, "directions {i} and {j} share nonzero vector {vector}")
            }
            Witness::Multiplicity { vector, indices } => {
                write!(f, "vector {vector} is orthogonal to directions {indices:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemVerdict {
    Pass,
    Fail(Witness),
}

impl ItemVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ItemVerdict::Pass)
    }
}

/// Outcome of the four structural checks on a subspace-addressing instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceVerdict {
    /// (a) every direction has dimension exactly `r`.
    pub dimension: ItemVerdict,
    /// (b) the cosets are pairwise disjoint.
    pub disjoint: ItemVerdict,
    /// (c) the directions pairwise intersect only in zero.
    pub trivial_intersection: ItemVerdict,
    /// (d) no nonzero vector lies in more than `threshold` complements.
    pub multiplicity: ItemVerdict,
    pub threshold: usize,
}

impl InstanceVerdict {
    pub fn all_passed(&self) -> bool {
        self.items().iter().all(|(_, v)| v.passed())
    }

    pub fn items(&self) -> [(&'static str, &ItemVerdict); 4] {
        [
            ("a", &self.dimension),
            ("b", &self.disjoint),
            ("c", &self.trivial_intersection),
            ("d", &self.multiplicity),
        ]
    }
}

impl fmt::Display for InstanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .items()
            .iter()
            .map(|(name, v)| match v {
                ItemVerdict::Pass => format!("({name}) pass"),
                ItemVerdict::Fail(w) => format!("({name}) fail: {w}"),
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks items (a)–(d) with exact linear algebra; witnesses are returned
/// for the first violation found in each item.
pub fn verify_instance(inst: &SubspaceAddressingInstance, threshold: usize) -> InstanceVerdict {
    let subs = inst.subspaces();
    let r = inst.params.r;

    let dimension = subs
        .iter()
        .enumerate()
        .find(|(_, a)| a.dim() != r)
        .map_or(ItemVerdict::Pass, |(index, a)| {
            ItemVerdict::Fail(Witness::Dimension { index, dim: a.dim() })
        });

    let mut disjoint = ItemVerdict::Pass;
    let mut trivial_intersection = ItemVerdict::Pass;
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            if disjoint.passed() {
                if let Some(common) = coset_intersection(&subs[i], &subs[j]).expect("same ambient dimension") {
                    disjoint = ItemVerdict::Fail(Witness::Overlap {
                        i,
                        j,
                        point: common.offset().clone(),
                    });
                }
            }
            if trivial_intersection.passed() {
                let shared = subs[i].direction().intersection(subs[j].direction());
                if let Some(v) = shared.basis().first() {
                    trivial_intersection = ItemVerdict::Fail(Witness::SharedDirection {
                        i,
                        j,
                        vector: v.clone(),
                    });
                }
            }
        }
    }

    let multiplicity = match multiplicity_witness(inst, threshold) {
        None => ItemVerdict::Pass,
        Some(w) => ItemVerdict::Fail(w),
    };

    InstanceVerdict {
        dimension,
        disjoint,
        trivial_intersection,
        multiplicity,
        threshold,
    }
}

/// A nonzero `v` lies in `V_i^⊥` for every `i ∈ I` iff `v ∈ (Σ_{i∈I} V_i)^⊥`,
/// which is nontrivial iff `rank(Σ_{i∈I} V_i) < m`. Searches index sets of
/// size `threshold + 1` depth-first, pruning any prefix whose directions
/// already span F₂^m.
fn multiplicity_witness(inst: &SubspaceAddressingInstance, threshold: usize) -> Option<Witness> {
    let m = inst.params.m;
    let subs = inst.subspaces();
    let want = threshold + 1;
    if subs.len() < want {
        return None;
    }

    fn search(
        subs: &[AffineSubspace],
        m: usize,
        want: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        acc: &Echelon,
    ) -> Option<(Vec<usize>, Echelon)> {
        if chosen.len() == want {
            return Some((chosen.clone(), acc.clone()));
        }
        // leave room for the remaining picks
        for i in start..=subs.len() - (want - chosen.len()) {
            let mut next = acc.clone();
            for row in subs[i].direction().basis() {
                next.insert(row);
            }
            if next.rank() == m {
                continue;
            }
            chosen.push(i);
            if let Some(found) = search(subs, m, want, i + 1, chosen, &next) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    let (_, span) = search(subs, m, want, 0, &mut Vec::new(), &Echelon::new(m))?;
    let vector = span.orthogonal_complement().rows()[0].clone();
    // report every complement containing the vector, not just the search set
    let indices = (0..subs.len())
        .filter(|&i| subs[i].direction().basis().iter().all(|b| !b.dot(&vector)))
        .collect::<Vec<_>>();
    debug_assert!(indices.len() >= want);
    Some(Witness::Multiplicity { vector, indices })
}

/// Samples until [`verify_instance`] passes. Attempt `j` (0-based) uses
/// seed `seed + j` (wrapping).
pub fn build_subspace_addressing(
    params: SubspaceParams,
    seed: u64,
    max_retries: u64,
    threshold: usize,
) -> Result<SubspaceAddressingInstance> {
    let mut last = String::new();
    for attempt in 0..max_retries.max(1) {
        let s = seed.wrapping_add(attempt);
        let mut inst = SubspaceAddressingInstance::sample(params, s)?;
        let verdict = verify_instance(&inst, threshold);
        if verdict.all_passed() {
            inst.attempts = attempt + 1;
            return Ok(inst);
        }
        last = verdict.to_string();
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries.max(1),
        last,
    })
}

/// Dense truth table; when cosets overlap the lowest index wins.
pub fn subspace_addressing_table(inst: &SubspaceAddressingInstance, limits: &Limits) -> Result<TruthTable> {
    let SubspaceParams { m, t, .. } = inst.params;
    limits.check_dense(m + t)?;
    let mut owner = vec![u16::MAX; 1usize << m];
    for (i, a) in inst.subspaces.iter().enumerate().rev() {
        for x in a.enumerate(limits.enumeration)? {
            owner[x.to_u64().unwrap() as usize] = i as u16;
        }
    }
    let xmask = (1usize << m) - 1;
    TruthTable::from_fn(m + t, |v| {
        let o = owner[v & xmask];
        if o == u16::MAX || (v >> (m + o as usize)) & 1 == 0 {
            1
        } else {
            -1
        }
    })
}

/// Exact spectrum from `f = 1 + Σ_i 1_{A_i}(x) ((-1)^{y_i} - 1)`.
///
/// With `c = 2^{t+r}` the numerators are `c χ_α(a_i)` on `(α, e_i)` for
/// `α ∈ V_i^⊥`, and `[α = 0] 2^n - Σ_{i : α ∈ V_i^⊥} c χ_α(a_i)` on
/// `(α, 0)`. The `y = 0` layer is accumulated by key so cancellations
/// between overlapping complements are exact.
pub fn structural_spectrum_subspace_addressing(
    inst: &SubspaceAddressingInstance,
    limits: &Limits,
) -> Result<SparseSpectrum> {
    let SubspaceParams { m, t, r } = inst.params;
    let n = m + t;
    if n > 62 {
        return Err(Error::Overflow(format!("numerators over 2^{n}")));
    }
    let per = (1u128) << (m - r);
    let needed = per * t as u128;
    if needed > limits.structural as u128 {
        return Err(Error::BudgetExceeded {
            what: "structural subspace-addressing spectrum",
            needed,
            budget: limits.structural as u128,
        });
    }
    let c = 1i64 << (t + r);
    let mut terms: Vec<(u64, i64)> = Vec::with_capacity(needed as usize);
    let mut base: HashMap<u64, i64> = HashMap::with_capacity(needed as usize);
    base.insert(0, 1i64 << n);
    for (i, a) in inst.subspaces.iter().enumerate() {
        let complement = AffineSubspace::linear(a.direction().orthogonal_complement());
        let e_i = 1u64 << (m + i);
        for alpha in complement.enumerate(limits.enumeration)? {
            let sign = if alpha.dot(a.offset()) { -c } else { c };
            let key = alpha.to_u64().unwrap();
            terms.push((key | e_i, sign));
            *base.entry(key).or_insert(0) -= sign;
        }
    }
    terms.extend(base.into_iter().filter(|&(_, v)| v != 0));
    SparseSpectrum::from_terms(n, terms.into_iter().map(|(k, v)| (BitVec::from_u64(n, k), v)))
}

/// `true` when `mask` lies in `∪ V_i^⊥ + e_i`, the layer that no
/// cancellation can touch.
pub fn in_addressed_layer(inst: &SubspaceAddressingInstance, mask: &BitVec) -> bool {
    let SubspaceParams { m, t, .. } = inst.params;
    let y = mask.slice(m, t);
    if y.count_ones() != 1 {
        return false;
    }
    let i = y.lowest_one().unwrap();
    let alpha = mask.slice(0, m);
    inst.subspaces[i]
        .direction()
        .basis()
        .iter()
        .all(|b| !b.dot(&alpha))
}

/// Dimension of `A_i ∩ A_j`, used by reports; `None` when disjoint.
pub fn pair_overlap_dim(inst: &SubspaceAddressingInstance, i: usize, j: usize) -> Option<usize> {
    coset_intersection_dim(&inst.subspaces[i], &inst.subspaces[j]).expect("same ambient dimension")
}
