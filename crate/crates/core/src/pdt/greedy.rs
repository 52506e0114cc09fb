use crate::error::{Error, Result};
use crate::folding::max_fold;
use crate::gf2::BitVec;
use crate::limits::Limits;
use crate::spectrum::{restrict_parity, SparseSpectrum};

use super::{Node, Pdt};

/// How a node of a greedy tree was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    /// The restriction is the constant `value`.
    Leaf { value: i8 },
    /// A single character `±χ_α`, resolved by querying `α`.
    Character { mask: BitVec },
    /// Query along the max-fold direction.
    Fold { mask: BitVec, fold: u64 },
}

/// One node of the greedy build, in pre-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: usize,
    pub sparsity: usize,
    pub kind: StepKind,
    /// Sparsities after restricting to answer 0 and answer 1.
    pub children: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub pdt: Pdt,
    pub trace: Vec<TraceStep>,
}

/// Greedy max-fold tree: query the direction that folds the most pairs of
/// the current support and recurse on both restrictions.
///
/// Ties go to the smallest mask. Restricted masks keep their pivot bits at
/// zero, so each new direction is independent of the ones above it.
pub fn greedy_build(s: &SparseSpectrum, depth_limit: usize, limits: &Limits) -> Result<GreedyOutcome> {
    if !s.satisfies_parseval() {
        return Err(Error::NonBooleanSpectrum(format!(
            "sum of squared numerators is {}, not 4^{}",
            s.parseval_sum(),
            s.n()
        )));
    }
    let mut trace = Vec::new();
    let root = build(s, 0, depth_limit, limits, &mut trace)?;
    Ok(GreedyOutcome {
        pdt: Pdt::new(s.n(), root)?,
        trace,
    })
}

fn build(
    s: &SparseSpectrum,
    depth: usize,
    depth_limit: usize,
    limits: &Limits,
    trace: &mut Vec<TraceStep>,
) -> Result<Node> {
    if let Some(value) = s.constant_value() {
        trace.push(TraceStep {
            depth,
            sparsity: 1,
            kind: StepKind::Leaf { value },
            children: None,
        });
        return Ok(Node::Leaf(value));
    }
    if depth >= depth_limit {
        return Err(Error::DepthLimit { limit: depth_limit });
    }
    if s.sparsity() == 1 {
        let (mask, c) = s.terms().next().map(|(m, c)| (m.clone(), c)).unwrap();
        let sign = if c > 0 { 1 } else { -1 };
        trace.push(TraceStep {
            depth,
            sparsity: 1,
            kind: StepKind::Character { mask: mask.clone() },
            children: Some((1, 1)),
        });
        for value in [sign, -sign] {
            trace.push(TraceStep {
                depth: depth + 1,
                sparsity: 1,
                kind: StepKind::Leaf { value },
                children: None,
            });
        }
        return Ok(Node::query(mask, Node::Leaf(sign), Node::Leaf(-sign)));
    }
    let (gamma, fold) = max_fold(&s.support(), limits)?;
    let zero = restrict_parity(s, &gamma, false)?;
    let one = restrict_parity(s, &gamma, true)?;
    trace.push(TraceStep {
        depth,
        sparsity: s.sparsity(),
        kind: StepKind::Fold {
            mask: gamma.clone(),
            fold,
        },
        children: Some((zero.sparsity(), one.sparsity())),
    });
    let zero = build(&zero, depth + 1, depth_limit, limits, trace)?;
    let one = build(&one, depth + 1, depth_limit, limits, trace)?;
    Ok(Node::query(gamma, zero, one))
}
