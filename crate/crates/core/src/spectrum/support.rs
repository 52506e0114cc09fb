use std::collections::hash_map::{Entry, HashMap};
use std::hash::{BuildHasherDefault, Hasher};

use crate::gf2::BitVec;

/// Largest dimension for which membership may use a bitmap over all of F₂ⁿ.
const DENSE_MEMBERSHIP_MAX_DIM: usize = 30;
/// Bitmap bytes allowed per support element before falling back to sketches.
const DENSE_BYTES_PER_ELEMENT: usize = 256;

/// A set of masks with fast membership, built for fold counting.
///
/// `fold_count(γ)` touches every element once, so the membership test is
/// the whole cost. Two layouts are used:
///
/// * small `n`: a bitmap over F₂ⁿ, probed in ascending mask order so that
///   `s ^ γ` walks memory in near-sequential blocks;
/// * large `n`: a 64-bit GF(2)-linear sketch of every mask. Linearity gives
///   `sketch(s ^ γ) = sketch(s) ^ sketch(γ)`, so a probe is one XOR, a
///   bitmap prefilter on the top sketch bits, and an exact check of the
///   full mask on every prefilter hit.
#[derive(Debug, Clone)]
pub struct Support {
    n: usize,
    masks: Vec<BitVec>,
    index: Membership,
}

#[derive(Debug, Clone)]
enum Membership {
    Dense {
        values: Vec<u64>,
        bitmap: Vec<u64>,
    },
    Sketched {
        sketcher: Sketcher,
        /// `(sketch, index into masks)`, sorted by sketch.
        entries: Vec<(u64, u32)>,
        filter: Vec<u64>,
        filter_shift: u32,
        table: HashMap<u64, u32, BuildHasherDefault<PassThrough>>,
        /// Masks whose sketch collides with an earlier one.
        collisions: Vec<(u64, u32)>,
    },
}

#[derive(Default)]
struct PassThrough(u64);

impl Hasher for PassThrough {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ b as u64;
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = v;
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fixed random linear map F₂ⁿ → F₂⁶⁴: XOR of one pseudo-random word per
/// set bit.
#[derive(Debug, Clone)]
struct Sketcher {
    columns: Vec<u64>,
}

impl Sketcher {
    fn new(n: usize) -> Self {
        Sketcher {
            columns: (0..n as u64).map(splitmix).collect(),
        }
    }

    fn sketch(&self, v: &BitVec) -> u64 {
        v.iter_ones().fold(0, |acc, i| acc ^ self.columns[i])
    }
}

#[inline]
fn xor_equals(a: &BitVec, b: &BitVec, gamma: &BitVec) -> bool {
    a.words()
        .iter()
        .zip(b.words())
        .zip(gamma.words())
        .all(|((x, y), g)| *x == y ^ g)
}

impl Support {
    /// Builds a support from arbitrary masks; duplicates are removed.
    pub fn from_masks<I: IntoIterator<Item = BitVec>>(n: usize, masks: I) -> Self {
        let mut masks: Vec<BitVec> = masks.into_iter().collect();
        for m in &masks {
            assert_eq!(m.len(), n, "mask length does not match ambient dimension");
        }
        masks.sort_unstable();
        masks.dedup();
        Self::from_sorted_unique(n, masks)
    }

    pub(crate) fn from_sorted_unique(n: usize, masks: Vec<BitVec>) -> Self {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        let dense_ok = n <= DENSE_MEMBERSHIP_MAX_DIM
            && (1usize << n) / 8 <= DENSE_BYTES_PER_ELEMENT * masks.len().max(64);
        let index = if dense_ok {
            let values: Vec<u64> = masks.iter().map(|m| m.to_u64().unwrap()).collect();
            let mut bitmap = vec![0u64; (1usize << n).div_ceil(64)];
            for &v in &values {
                bitmap[(v / 64) as usize] |= 1 << (v % 64);
            }
            Membership::Dense { values, bitmap }
        } else {
            Self::sketched(n, &masks)
        };
        Support { n, masks, index }
    }

    fn sketched(n: usize, masks: &[BitVec]) -> Membership {
        let sketcher = Sketcher::new(n);
        let mut entries: Vec<(u64, u32)> = masks
            .iter()
            .enumerate()
            .map(|(i, m)| (sketcher.sketch(m), i as u32))
            .collect();
        entries.sort_unstable();
        // About 8 filter bits per element keeps the false-positive rate near 1/8.
        let bits = (usize::BITS - masks.len().max(1).leading_zeros() + 3).clamp(10, 32);
        let filter_shift = 64 - bits;
        let mut filter = vec![0u64; (1usize << bits) / 64];
        let mut table = HashMap::with_capacity_and_hasher(entries.len(), Default::default());
        let mut collisions = Vec::new();
        for &(sk, i) in &entries {
            let slot = (sk >> filter_shift) as usize;
            filter[slot / 64] |= 1 << (slot % 64);
            match table.entry(sk) {
                Entry::Occupied(_) => collisions.push((sk, i)),
                Entry::Vacant(e) => {
                    e.insert(i);
                }
            }
        }
        Membership::Sketched {
            sketcher,
            entries,
            filter,
            filter_shift,
            table,
            collisions,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Masks in ascending order.
    pub fn masks(&self) -> &[BitVec] {
        &self.masks
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitVec> {
        self.masks.iter()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        if v.len() != self.n {
            return false;
        }
        match &self.index {
            Membership::Dense { bitmap, .. } => {
                let x = v.to_u64().unwrap();
                (bitmap[(x / 64) as usize] >> (x % 64)) & 1 == 1
            }
            Membership::Sketched { .. } => self.masks.binary_search(v).is_ok(),
        }
    }

    /// `|S ∩ (S + γ)| = |{s ∈ S : s + γ ∈ S}|`, counting ordered elements.
    ///
    /// Panics if `γ` has a different length than the support's masks.
    pub fn fold_count(&self, gamma: &BitVec) -> usize {
        assert_eq!(gamma.len(), self.n, "direction length does not match support");
        match &self.index {
            Membership::Dense { values, bitmap } => {
                let g = gamma.to_u64().unwrap();
                values
                    .iter()
                    .filter(|&&s| {
                        let q = s ^ g;
                        (bitmap[(q / 64) as usize] >> (q % 64)) & 1 == 1
                    })
                    .count()
            }
            Membership::Sketched {
                sketcher,
                entries,
                filter,
                filter_shift,
                table,
                collisions,
            } => {
                let g = sketcher.sketch(gamma);
                let mut count = 0;
                for &(sk, i) in entries {
                    let q = sk ^ g;
                    let slot = (q >> filter_shift) as usize;
                    if (filter[slot / 64] >> (slot % 64)) & 1 == 0 {
                        continue;
                    }
                    let Some(&j) = table.get(&q) else {
                        continue;
                    };
                    let src = &self.masks[i as usize];
                    if xor_equals(&self.masks[j as usize], src, gamma)
                        || collisions
                            .iter()
                            .any(|&(c, k)| c == q && xor_equals(&self.masks[k as usize], src, gamma))
                    {
                        count += 1;
                    }
                }
                count
            }
        }
    }
}

/// `|S ∩ (S + γ)|` for a support given as a [`Support`].
pub fn fold_count(support: &Support, gamma: &BitVec) -> usize {
    support.fold_count(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(masks: &[BitVec], gamma: &BitVec) -> usize {
        masks
            .iter()
            .filter(|s| masks.contains(&(*s ^ gamma)))
            .count()
    }

    #[test]
    fn zero_direction_counts_everything() {
        let s = Support::from_masks(4, (0..5).map(|v| BitVec::from_u64(4, v)));
        assert_eq!(s.fold_count(&BitVec::zeros(4)), 5);
    }

    #[test]
    fn single_pair_counts_twice() {
        let s = Support::from_masks(2, [BitVec::from_u64(2, 0), BitVec::from_u64(2, 1)]);
        assert_eq!(s.fold_count(&BitVec::from_u64(2, 1)), 2);
        assert_eq!(s.fold_count(&BitVec::from_u64(2, 2)), 0);
    }

    #[test]
    fn sketched_layout_matches_brute_force() {
        // n = 200 forces the sketched layout
        let masks: Vec<BitVec> = (0..300u64)
            .map(|i| BitVec::from_indices(200, [(i % 7) as usize, (i % 13) as usize + 50, (i % 37) as usize + 150]))
            .collect();
        let s = Support::from_masks(200, masks.clone());
        assert!(matches!(s.index, Membership::Sketched { .. }));
        let uniq = s.masks().to_vec();
        for a in uniq.iter().take(20) {
            for b in uniq.iter().skip(5).take(20) {
                let g = a ^ b;
                assert_eq!(s.fold_count(&g), brute(&uniq, &g));
            }
        }
        assert!(s.contains(&uniq[3]));
        assert!(!s.contains(&BitVec::unit(200, 199)));
    }

    #[test]
    fn dense_layout_is_used_for_small_n() {
        let s = Support::from_masks(10, (0..40).map(|v| BitVec::from_u64(10, v * 7)));
        assert!(matches!(s.index, Membership::Dense { .. }));
        assert!(s.contains(&BitVec::from_u64(10, 14)));
        assert!(!s.contains(&BitVec::from_u64(10, 15)));
    }
}
