use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Write as _;

use crate::error::{parse_err, Result};
use crate::gf2::BitVec;

use super::Support;

/// Fourier coefficients `f̂(α) = c(α) / 2^n` with exact integer numerators.
///
/// Zero numerators are never stored, so the number of terms is the Fourier
/// sparsity. Terms iterate in ascending mask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSpectrum {
    n: usize,
    terms: BTreeMap<BitVec, i64>,
}

impl SparseSpectrum {
    pub fn new(n: usize) -> Self {
        SparseSpectrum { n, terms: BTreeMap::new() }
    }

    /// The constant function `value` (numerator `value * 2^n` at mask 0).
    pub fn constant(n: usize, value: i64) -> Self {
        let mut s = Self::new(n);
        s.add(BitVec::zeros(n), value << n);
        s
    }

    /// `sign * χ_γ`.
    pub fn character(gamma: BitVec, sign: i64) -> Self {
        let n = gamma.len();
        let mut s = Self::new(n);
        s.add(gamma, sign << n);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (BitVec, i64)>>(n: usize, terms: I) -> Result<Self> {
        let mut s = Self::new(n);
        for (mask, c) in terms {
            mask.check_len(n)?;
            s.add(mask, c);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sparsity(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` to the numerator at `mask`, dropping the term if it cancels.
    pub fn add(&mut self, mask: BitVec, c: i64) {
        debug_assert_eq!(mask.len(), self.n);
        if c == 0 {
            return;
        }
        match self.terms.entry(mask) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, mask: &BitVec) -> i64 {
        self.terms.get(mask).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BitVec, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn masks(&self) -> impl Iterator<Item = &BitVec> + '_ {
        self.terms.keys()
    }

    pub fn support(&self) -> Support {
        Support::from_sorted_unique(self.n, self.terms.keys().cloned().collect())
    }

    /// `Σ c(α)²`; equals `4^n` for every ±1-valued function.
    pub fn parseval_sum(&self) -> i128 {
        self.terms.values().map(|&c| (c as i128) * (c as i128)).sum()
    }

    pub fn satisfies_parseval(&self) -> bool {
        self.n < 63 && self.parseval_sum() == 1i128 << (2 * self.n)
    }

    /// `Some(±1)` when the spectrum is the constant function ±1.
    pub fn constant_value(&self) -> Option<i8> {
        if self.terms.len() != 1 {
            return None;
        }
        let (mask, &c) = self.terms.iter().next().unwrap();
        if !mask.is_zero() || self.n >= 63 {
            return None;
        }
        match c {
            c if c == 1i64 << self.n => Some(1),
            c if c == -(1i64 << self.n) => Some(-1),
            _ => None,
        }
    }

    /// `n <n> denom 2^<n>` followed by `<mask-hex> <numerator>` per term in
    /// ascending mask order.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {} denom 2^{}\n", self.n, self.n);
        for (mask, c) in &self.terms {
            writeln!(s, "{} {}", mask.to_hex(), c).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty spectrum file"))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        let n: usize = match tok.as_slice() {
            ["n", n, "denom", d] => {
                let n: usize = n.parse().map_err(|e| parse_err(1, format!("bad n: {e}")))?;
                if *d != format!("2^{n}") {
                    return Err(parse_err(1, format!("denominator {d} does not match n = {n}")));
                }
                n
            }
            _ => return Err(parse_err(1, "expected header `n <n> denom 2^<n>`")),
        };
        let mut s = Self::new(n);
        let mut last: Option<BitVec> = None;
        for (i, line) in lines {
            let lineno = i + 1;
            let mut tok = line.split_whitespace();
            let (Some(mask), Some(c), None) = (tok.next(), tok.next(), tok.next()) else {
                return Err(parse_err(lineno, "expected `<mask-hex> <numerator>`"));
            };
            let mask = BitVec::from_hex(n, mask).map_err(|e| parse_err(lineno, e.to_string()))?;
            let c: i64 = c.parse().map_err(|e| parse_err(lineno, format!("bad numerator: {e}")))?;
            if c == 0 {
                return Err(parse_err(lineno, "zero numerators are not stored"));
            }
            if last.as_ref().is_some_and(|l| l >= &mask) {
                return Err(parse_err(lineno, "terms must be strictly ascending by mask"));
            }
            last = Some(mask.clone());
            s.terms.insert(mask, c);
        }
        Ok(s)
    }
}
