use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

use super::SparseSpectrum;

/// Restricts `f` to the hyperplane `{x : <γ, x> = b}`.
///
/// Each pair `{α, α + γ}` collapses onto the member whose bit at the lowest
/// set bit of `γ` (the pivot) is zero, with numerator
/// `c(α) + (-1)^b c(α + γ)`. Masks stay in the ambient dimension; the
/// result, read as a function on F₂ⁿ, agrees with `f` on the hyperplane and
/// ignores coordinate `pivot`.
pub fn restrict_parity(s: &SparseSpectrum, gamma: &BitVec, b: bool) -> Result<SparseSpectrum> {
    gamma.check_len(s.n())?;
    let pivot = gamma.lowest_one().ok_or(Error::ZeroDirection)?;
    let mut acc: HashMap<BitVec, i64> = HashMap::with_capacity(s.sparsity());
    for (alpha, c) in s.terms() {
        let (rep, c) = if alpha.get(pivot) {
            (alpha ^ gamma, if b { -c } else { c })
        } else {
            (alpha.clone(), c)
        };
        *acc.entry(rep).or_insert(0) += c;
    }
    SparseSpectrum::from_terms(s.n(), acc)
}
