use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use smallvec::SmallVec;

use crate::error::{parse_err, Error, Result};

type Words = SmallVec<[u64; 2]>;

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// An element of F₂ⁿ packed into 64-bit words, least significant bit first.
///
/// Bit `i` is coordinate `i`. Bits at positions `>= len` are always zero,
/// which keeps equality, hashing and ordering purely structural.
///
/// Ordering is numeric: the vector is read as the integer `Σ bit_i 2^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Words,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    /// Builds a vector from the low `len` bits of `value`. Panics if `value`
    /// has bits at or above `len`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        if len == 0 {
            assert_eq!(value, 0, "value does not fit in zero bits");
            return v;
        }
        if len < 64 {
            assert!(value >> len == 0, "value {value:#x} does not fit in {len} bits");
        }
        v.words[0] = value;
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    /// Builds a vector from raw words, masking off bits beyond `len`.
    pub fn from_words_truncated(len: usize, words: &[u64]) -> Self {
        let mut v = Self::zeros(len);
        for (dst, src) in v.words.iter_mut().zip(words) {
            *dst = *src;
        }
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over F₂: parity of the AND of the two vectors.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn highest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// The vector as an integer when it fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            _ if self.words[1..].iter().all(|&w| w == 0) => Some(self.words[0]),
            _ => None,
        }
    }

    /// Copies `len` bits starting at `start` into a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    /// Places `self` at bit offset `start` inside a zero vector of length `len`.
    pub fn embed(&self, len: usize, start: usize) -> BitVec {
        assert!(start + self.len <= len);
        let mut out = BitVec::zeros(len);
        for i in self.iter_ones() {
            out.set(start + i, true);
        }
        out
    }

    /// Hex digits of the numeric value, most significant first, padded to
    /// `ceil(len / 4)` digits (at least one).
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nibble = if bit >= self.words.len() * 64 {
                0
            } else {
                (self.words[bit / 64] >> (bit % 64)) & 0xf
            };
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Parses a hex string as produced by [`BitVec::to_hex`]. Leading zeros
    /// are optional; set bits beyond `len` are rejected.
    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        if hex.is_empty() {
            return Err(parse_err(0, "empty hex string"));
        }
        let mut v = BitVec::zeros(len);
        for (d, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| parse_err(0, format!("invalid hex digit {ch:?}")))?;
            for b in 0..4 {
                if (nibble >> b) & 1 == 1 {
                    let i = d * 4 + b;
                    if i >= len {
                        return Err(parse_err(0, format!("hex value {hex} exceeds {len} bits")));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.len,
            });
        }
        Ok(())
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    #[inline]
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVec> for &BitVec {
    type Output = BitVec;

    #[inline]
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitXor<&BitVec> for BitVec {
    type Output = BitVec;

    #[inline]
    fn bitxor(mut self, rhs: &BitVec) -> BitVec {
        self ^= rhs;
        self
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({}; 0x{})", self.len, self.to_hex())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}
