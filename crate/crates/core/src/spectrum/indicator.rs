use crate::error::{Error, Result};
use crate::gf2::{AffineSubspace, BitVec};
use crate::limits::Limits;

use super::SparseSpectrum;

/// Closed-form spectrum of the 0/1 indicator of a coset `A = V + a`.
///
/// `1_A = Σ_{α ∈ V^⊥} 2^{-codim} χ_α(a) χ_α`, so over the denominator
/// `2^n` every support mask carries numerator `±2^{dim}` with sign
/// `χ_α(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorSpectrum {
    support: AffineSubspace,
    offset: BitVec,
    dim: usize,
}

pub fn indicator_spectrum(a: &AffineSubspace) -> IndicatorSpectrum {
    IndicatorSpectrum {
        support: AffineSubspace::linear(a.direction().orthogonal_complement()),
        offset: a.offset().clone(),
        dim: a.dim(),
    }
}

impl IndicatorSpectrum {
    pub fn n(&self) -> usize {
        self.offset.len()
    }

    /// `V^⊥` as a linear subspace.
    pub fn support(&self) -> &AffineSubspace {
        &self.support
    }

    pub fn sparsity_log2(&self) -> usize {
        self.support.dim()
    }

    /// `|c(α)| = 2^{dim A}`.
    pub fn magnitude(&self) -> Result<i64> {
        if self.dim >= 63 {
            return Err(Error::Overflow(format!("2^{}", self.dim)));
        }
        Ok(1i64 << self.dim)
    }

    pub fn coefficient(&self, alpha: &BitVec) -> Result<i64> {
        if !self.support.contains(alpha) {
            return Ok(0);
        }
        let mag = self.magnitude()?;
        Ok(if alpha.dot(&self.offset) { -mag } else { mag })
    }

    pub fn to_sparse(&self, limits: &Limits) -> Result<SparseSpectrum> {
        let mag = self.magnitude()?;
        let mut s = SparseSpectrum::new(self.n());
        for alpha in self.support.enumerate(limits.enumeration)? {
            let c = if alpha.dot(&self.offset) { -mag } else { mag };
            s.add(alpha, c);
        }
        Ok(s)
    }
}
