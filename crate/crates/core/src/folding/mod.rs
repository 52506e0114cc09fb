//! Fold counts over Fourier supports: exhaustive histograms of `S + S`,
//! the maximum fold, the LCA bound for the tree function and sampled
//! fold probabilities.

mod histogram;
mod lca;
mod sampling;

pub use histogram::{fold_histogram, max_fold, DiagonalPolicy, FoldHistogram};
pub use lca::lca_fold_bound;
pub use sampling::{
    hoeffding_half_width, sample_fold_counts, sampled_fold_probability, FoldProbabilityEstimate, PairSample,
    DEFAULT_CONFIDENCE,
};
pub use crate::spectrum::fold_count;
