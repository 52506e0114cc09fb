//! Parity decision trees: evaluation, exhaustive verification, the greedy
//! max-fold builder and the explicit address-then-data strategy.

mod explicit;
mod greedy;
mod tree;

pub use explicit::explicit_subspace_addressing_pdt;
pub use greedy::{greedy_build, GreedyOutcome, StepKind, TraceStep};
pub use tree::{Node, Pdt, Verification};
