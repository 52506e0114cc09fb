//! Brute-force oracles. Nothing here calls the library's algorithms; they
//! work on plain integers so a bug in the packed code cannot hide itself.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use foldscope_core::{BitVec, TruthTable};

/// `c(α) = Σ_x f(x) (-1)^{popcount(x & α)}` by direct summation, zeros dropped.
pub fn naive_wht(values: &[i8]) -> BTreeMap<u64, i64> {
    let size = values.len();
    let mut out = BTreeMap::new();
    for alpha in 0..size {
        let c: i64 = values
            .iter()
            .enumerate()
            .map(|(x, &v)| if (x & alpha).count_ones() % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        if c != 0 {
            out.insert(alpha as u64, c);
        }
    }
    out
}

/// Every XOR combination of `rows`.
pub fn span(rows: &[u64]) -> HashSet<u64> {
    let mut set = HashSet::from([0u64]);
    for &r in rows {
        let next: Vec<u64> = set.iter().map(|&v| v ^ r).collect();
        set.extend(next);
    }
    set
}

pub fn coset(rows: &[u64], offset: u64) -> HashSet<u64> {
    span(rows).into_iter().map(|v| v ^ offset).collect()
}

/// `{w : popcount(w & v) even for all v in rows}` by scanning F₂ⁿ.
pub fn complement_by_scan(n: usize, rows: &[u64]) -> HashSet<u64> {
    (0..1u64 << n)
        .filter(|&w| rows.iter().all(|&v| (w & v).count_ones() % 2 == 0))
        .collect()
}

/// Rank as log₂ of the span size.
pub fn rank_by_span(rows: &[u64]) -> usize {
    span(rows).len().trailing_zeros() as usize
}

/// `|{(a, b) ∈ S × S : a ≠ b, a + b = γ}|`, scanning all ordered pairs.
pub fn pair_fold_count(support: &[u64], gamma: u64) -> usize {
    let mut n = 0;
    for &a in support {
        for &b in support {
            if a != b && a ^ b == gamma {
                n += 1;
            }
        }
    }
    n
}

/// `|(S + g1) ∩ (S + g2)|` with explicit sets.
pub fn shifted_intersection(support: &HashSet<BitVec>, g1: &BitVec, g2: &BitVec) -> usize {
    let a: HashSet<BitVec> = support.iter().map(|s| s ^ g1).collect();
    support.iter().map(|s| s ^ g2).filter(|v| a.contains(v)).count()
}

pub fn values_u64(masks: impl IntoIterator<Item = BitVec>) -> Vec<u64> {
    masks.into_iter().map(|m| m.to_u64().unwrap()).collect()
}

/// Small xorshift so oracle inputs do not share the library's generator.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    pub fn table(&mut self, n: usize) -> TruthTable {
        let values = (0..1usize << n).map(|_| if self.next() & 1 == 1 { 1 } else { -1 }).collect();
        TruthTable::new(n, values).unwrap()
    }
}

/// Direct sums up to n = 15, the library transform above that.
pub fn naive_or_fast(t: &TruthTable) -> BTreeMap<u64, i64> {
    if t.n() <= 15 {
        return naive_wht(t.values());
    }
    let s = foldscope_core::spectrum::wht(t, &foldscope_core::Limits::default()).unwrap();
    s.terms().map(|(m, c)| (m.to_u64().unwrap(), c)).collect()
}
