use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{AffineSubspace, BitVec, Gf2Matrix};

/// The deterministic generator behind every seeded routine in the crate:
/// ChaCha8 keyed by `seed_from_u64(seed)`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform vector of F₂ⁿ, drawn one 64-bit word at a time (low word
/// first) with the unused high bits of the last word discarded.
pub fn random_vector<R: RngCore>(rng: &mut R, n: usize) -> BitVec {
    let words: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.next_u64()).collect();
    BitVec::from_words_truncated(n, &words)
}

/// The raw draw behind one sampled coset: an offset and `r` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCoset {
    pub offset: BitVec,
    pub generators: Vec<BitVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSubspaces {
    pub seed: u64,
    pub subspaces: Vec<AffineSubspace>,
    pub raw: Vec<RawCoset>,
}

/// Draws `t` cosets `span(v_1..v_r) + a` in F₂^m from `t * (r + 1)`
/// independent uniform vectors. For each coset the offset is drawn first,
/// then the generators. No structural property is enforced; the generators
/// may be dependent and the cosets may overlap.
pub fn sample_affine_subspaces(seed: u64, m: usize, t: usize, r: usize) -> Result<SampledSubspaces> {
    if r > m {
        return Err(Error::InvalidParameters(format!("r = {r} exceeds m = {m}")));
    }
    if t == 0 || m == 0 {
        return Err(Error::InvalidParameters("need m >= 1 and t >= 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut subspaces = Vec::with_capacity(t);
    let mut raw = Vec::with_capacity(t);
    for _ in 0..t {
        let offset = random_vector(&mut rng, m);
        let generators: Vec<BitVec> = (0..r).map(|_| random_vector(&mut rng, m)).collect();
        let gens = Gf2Matrix::new(m, generators.clone())?;
        subspaces.push(AffineSubspace::from_spanning(&gens, offset.clone())?);
        raw.push(RawCoset { offset, generators });
    }
    Ok(SampledSubspaces { seed, subspaces, raw })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_when_r_is_zero() {
        let s = sample_affine_subspaces(3, 8, 1, 0).unwrap();
        assert_eq!(s.subspaces.len(), 1);
        assert_eq!(s.subspaces[0].dim(), 0);
        assert_eq!(s.subspaces[0].offset(), &s.raw[0].offset);
    }

    #[test]
    fn same_seed_same_instance() {
        let a = sample_affine_subspaces(42, 14, 4, 4).unwrap();
        let b = sample_affine_subspaces(42, 14, 4, 4).unwrap();
        assert_eq!(a, b);
        let c = sample_affine_subspaces(43, 14, 4, 4).unwrap();
        assert_ne!(a.raw, c.raw);
    }

    #[test]
    fn rejects_r_above_m() {
        assert!(sample_affine_subspaces(0, 3, 2, 4).is_err());
    }

    #[test]
    fn vectors_stay_in_range() {
        let mut rng = seeded_rng(9);
        for _ in 0..100 {
            let v = random_vector(&mut rng, 70);
            assert!(v.iter_ones().all(|i| i < 70));
        }
    }
}
