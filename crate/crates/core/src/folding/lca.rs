use crate::constructions::TreeFunctionInstance;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// `2^{ℓ+2}` where `ℓ` is the depth of the lowest common ancestor of
/// `N(γ₁)` and `N(γ₂)`; an upper bound on `|(S + γ₁) ∩ (S + γ₂)|`.
pub fn lca_fold_bound(inst: &TreeFunctionInstance, gamma1: &BitVec, gamma2: &BitVec) -> Result<u64> {
    let a = inst.deepest_of(gamma1)?;
    let b = inst.deepest_of(gamma2)?;
    if a == b {
        return Err(Error::InvalidParameters(format!(
            "{} and {} share deepest node {a}",
            gamma1.to_hex(),
            gamma2.to_hex()
        )));
    }
    Ok(1 << (inst.lca_depth(a, b) + 2))
}
