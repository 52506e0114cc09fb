use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use serde_json::json;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::limits::Limits;
use crate::spectrum::Support;

/// Dimension up to which pair sums are accumulated in a flat array.
const DENSE_ACCUMULATOR_MAX_DIM: usize = 22;

/// Whether the `γ₁ = γ₂` corner counts when sampling or taking tails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiagonalPolicy {
    /// Pairs are drawn from all of `S × S`; the diagonal has fold count `|S|`.
    #[default]
    Include,
    /// Pairs are drawn from `S × S` minus the diagonal.
    Exclude,
}

impl DiagonalPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagonalPolicy::Include => "include",
            DiagonalPolicy::Exclude => "exclude",
        }
    }
}

/// Fold counts of every nonzero direction in `S + S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldHistogram {
    n: usize,
    support_size: usize,
    /// Sorted by mask; every count is positive.
    entries: Vec<(BitVec, u64)>,
}

#[derive(Default)]
struct Mix(u64);

impl Hasher for Mix {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = (v ^ (v >> 29)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    }
}

/// Exhaustive histogram over all ordered pairs of distinct support elements.
///
/// Each unordered pair `{s₁, s₂}` adds 2 to direction `s₁ + s₂`, so the
/// count of `γ` is `|S ∩ (S + γ)|`.
pub fn fold_histogram(support: &Support, limits: &Limits) -> Result<FoldHistogram> {
    let size = support.len();
    if size > limits.histogram {
        return Err(Error::BudgetExceeded {
            what: "exhaustive fold histogram (use sampling)",
            needed: size as u128,
            budget: limits.histogram as u128,
        });
    }
    let n = support.n();
    let masks = support.masks();
    let entries: Vec<(BitVec, u64)> = if n <= DENSE_ACCUMULATOR_MAX_DIM {
        let values: Vec<usize> = masks.iter().map(|m| m.to_u64().unwrap() as usize).collect();
        let mut acc = vec![0u32; 1 << n];
        for (i, &a) in values.iter().enumerate() {
            for &b in &values[i + 1..] {
                acc[a ^ b] += 2;
            }
        }
        acc.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(g, &c)| (BitVec::from_u64(n, g as u64), c as u64))
            .collect()
    } else if n <= 64 {
        let values: Vec<u64> = masks.iter().map(|m| m.to_u64().unwrap()).collect();
        let mut acc: HashMap<u64, u64, BuildHasherDefault<Mix>> = HashMap::default();
        for (i, &a) in values.iter().enumerate() {
            for &b in &values[i + 1..] {
                *acc.entry(a ^ b).or_insert(0) += 2;
            }
        }
        let mut v: Vec<_> = acc.into_iter().map(|(g, c)| (BitVec::from_u64(n, g), c)).collect();
        v.sort_unstable();
        v
    } else {
        let mut acc: HashMap<BitVec, u64, BuildHasherDefault<Mix>> = HashMap::default();
        for (i, a) in masks.iter().enumerate() {
            for b in &masks[i + 1..] {
                *acc.entry(a ^ b).or_insert(0) += 2;
            }
        }
        let mut v: Vec<_> = acc.into_iter().collect();
        v.sort_unstable();
        v
    };
    Ok(FoldHistogram {
        n,
        support_size: size,
        entries,
    })
}

/// The direction with the largest fold count, smallest mask on ties.
pub fn max_fold(support: &Support, limits: &Limits) -> Result<(BitVec, u64)> {
    if support.len() <= 1 {
        return Err(Error::NoDirection(support.len()));
    }
    let h = fold_histogram(support, limits)?;
    let (g, c) = h.max_fold().expect("two distinct masks give a direction");
    Ok((g.clone(), c))
}

impl FoldHistogram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support_size(&self) -> usize {
        self.support_size
    }

    /// `(γ, count)` sorted by mask.
    pub fn entries(&self) -> &[(BitVec, u64)] {
        &self.entries
    }

    /// Number of distinct nonzero directions.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fold count of `γ`; `|S|` for `γ = 0`, zero outside `S + S`.
    pub fn count(&self, gamma: &BitVec) -> u64 {
        if gamma.is_zero() {
            return self.support_size as u64;
        }
        self.entries
            .binary_search_by(|(g, _)| g.cmp(gamma))
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn mass(&self) -> u128 {
        self.entries.iter().map(|&(_, c)| c as u128).sum()
    }

    /// `Σ_γ count(γ) = |S|² - |S|`.
    pub fn mass_identity_holds(&self) -> bool {
        let s = self.support_size as u128;
        self.mass() == s * s - s
    }

    pub fn max_fold(&self) -> Option<(&BitVec, u64)> {
        let mut best: Option<(&BitVec, u64)> = None;
        for (g, c) in &self.entries {
            if best.is_none_or(|(_, b)| *c > b) {
                best = Some((g, *c));
            }
        }
        best
    }

    /// Ordered pairs `(γ₁, γ₂) ∈ S × S` with `|S ∩ (S + γ₁ + γ₂)| ≥ threshold`.
    pub fn tail_count(&self, threshold: u64, policy: DiagonalPolicy) -> u128 {
        let off: u128 = self
            .entries
            .iter()
            .filter(|&&(_, c)| c >= threshold)
            .map(|&(_, c)| c as u128)
            .sum();
        let size = self.support_size as u64;
        match policy {
            DiagonalPolicy::Include if size >= threshold => off + size as u128,
            _ => off,
        }
    }

    /// Exact probability over uniform pairs, matching the sampled estimator.
    pub fn tail_probability(&self, threshold: u64, policy: DiagonalPolicy) -> f64 {
        let s = self.support_size as u128;
        let total = match policy {
            DiagonalPolicy::Include => s * s,
            DiagonalPolicy::Exclude => s * s - s,
        };
        if total == 0 {
            return 0.0;
        }
        self.tail_count(threshold, policy) as f64 / total as f64
    }

    /// `<gamma-hex> <count>` lines by descending count then ascending mask,
    /// followed by a `# summary` JSON line.
    pub fn to_text(&self) -> String {
        let mut order: Vec<&(BitVec, u64)> = self.entries.iter().collect();
        order.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let mut out = String::new();
        for (g, c) in order {
            out.push_str(&format!("{} {}\n", g.to_hex(), c));
        }
        out.push_str(&format!("# summary {}\n", self.summary()));
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        let (dir, max) = match self.max_fold() {
            Some((g, c)) => (Some(g.to_hex()), c),
            None => (None, 0),
        };
        json!({
            "support_size": self.support_size,
            "directions": self.entries.len(),
            "max_fold": max,
            "max_direction": dir,
            "mass": self.mass().to_string(),
            "mass_identity": self.mass_identity_holds(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(n: usize, values: &[u64]) -> Support {
        Support::from_masks(n, values.iter().map(|&v| BitVec::from_u64(n, v)))
    }

    #[test]
    fn full_space_folds_completely() {
        let s = support(2, &[0, 1, 2, 3]);
        let h = fold_histogram(&s, &Limits::default()).unwrap();
        assert_eq!(h.len(), 3);
        assert!(h.entries().iter().all(|&(_, c)| c == 4));
        assert_eq!(max_fold(&s, &Limits::default()).unwrap(), (BitVec::from_u64(2, 1), 4));
        assert!(h.mass_identity_holds());
    }

    #[test]
    fn singleton_has_no_direction() {
        let s = support(3, &[5]);
        assert!(matches!(max_fold(&s, &Limits::default()), Err(Error::NoDirection(1))));
        let h = fold_histogram(&s, &Limits::default()).unwrap();
        assert!(h.is_empty() && h.mass_identity_holds());
    }

    #[test]
    fn wide_supports_use_hashed_accumulators() {
        for n in [40, 100] {
            let masks: Vec<BitVec> = (0..30).map(|i| BitVec::from_indices(n, [i % 7, 20 + i % 11, n - 1 - i % 3])).collect();
            let s = Support::from_masks(n, masks);
            let h = fold_histogram(&s, &Limits::default()).unwrap();
            assert!(h.mass_identity_holds());
            for (g, c) in h.entries() {
                assert_eq!(*c, s.fold_count(g) as u64);
            }
        }
    }

    #[test]
    fn tails_and_text() {
        let s = support(3, &[0, 1, 2, 4]);
        let h = fold_histogram(&s, &Limits::default()).unwrap();
        // directions 1, 2, 4 count 2 each; 3, 5, 6 count 2 each
        assert_eq!(h.tail_count(1, DiagonalPolicy::Include), 16);
        assert_eq!(h.tail_count(3, DiagonalPolicy::Include), 4);
        assert_eq!(h.tail_count(3, DiagonalPolicy::Exclude), 0);
        assert_eq!(h.tail_probability(5, DiagonalPolicy::Include), 0.0);
        let text = h.to_text();
        assert!(text.starts_with("1 2\n2 2\n3 2\n"));
        assert!(text.lines().last().unwrap().starts_with("# summary {"));
    }

    #[test]
    fn budget_is_enforced() {
        let s = support(8, &(0..100).collect::<Vec<_>>());
        let tight = Limits { histogram: 50, ..Limits::default() };
        assert!(matches!(fold_histogram(&s, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
