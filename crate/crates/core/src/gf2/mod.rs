//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are [`BitVec`]s; spans are kept in reduced row-echelon form
//! ([`Echelon`], [`Subspace`]) so that ranks, complements, membership and
//! coset intersections all reduce to a single elimination pass.

mod affine;
mod bitvec;
mod matrix;
mod sample;

pub use affine::{coset_intersection, coset_intersection_dim, coset_intersection_size, AffineSubspace, CosetIter};
pub use bitvec::BitVec;
pub use matrix::{Echelon, Gf2Matrix, Subspace};
pub use sample::{random_vector, sample_affine_subspaces, seeded_rng, RawCoset, SampledSubspaces};

/// Rank of the row span.
pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// A basis of the orthogonal complement of the row span.
pub fn orthogonal_complement(m: &Gf2Matrix) -> Gf2Matrix {
    m.orthogonal_complement()
}

/// Every member of `a`, failing when `dim(a)` exceeds `limit`.
pub fn enumerate_coset(a: &AffineSubspace, limit: usize) -> crate::Result<CosetIter> {
    a.enumerate(limit)
}
