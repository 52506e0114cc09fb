use crate::constructions::SubspaceAddressingInstance;
use crate::error::Result;
use crate::gf2::BitVec;
use crate::limits::Limits;

use super::{Node, Pdt};

/// Reads the address bits one at a time, then the data bit of the coset
/// that owns the address (the first one, if cosets overlap). Depth `m + 1`.
///
/// The tree has `2^m` address leaves, so `m` is held to the dense limit.
pub fn explicit_subspace_addressing_pdt(inst: &SubspaceAddressingInstance, limits: &Limits) -> Result<Pdt> {
    let p = inst.params();
    let n = p.n();
    limits.check_dense(p.m)?;
    let mut owner = vec![None; 1 << p.m];
    for (i, a) in inst.subspaces().iter().enumerate().rev() {
        for x in a.enumerate(limits.enumeration)? {
            owner[x.to_u64().unwrap() as usize] = Some(i);
        }
    }

    fn build(level: usize, prefix: usize, m: usize, n: usize, owner: &[Option<usize>]) -> Node {
        if level == m {
            return match owner[prefix] {
                Some(i) => Node::query(BitVec::unit(n, m + i), Node::Leaf(1), Node::Leaf(-1)),
                None => Node::Leaf(1),
            };
        }
        Node::query(
            BitVec::unit(n, level),
            build(level + 1, prefix, m, n, owner),
            build(level + 1, prefix | 1 << level, m, n, owner),
        )
    }

    Pdt::new(n, build(0, 0, p.m, n, &owner))
}
