use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gf2::seeded_rng;
use crate::spectrum::Support;

use super::DiagonalPolicy;

/// Default confidence for reported half-widths.
pub const DEFAULT_CONFIDENCE: f64 = 0.99;

/// Two-sided Hoeffding half-width `sqrt(ln(2/δ) / 2N)` for a mean of
/// `samples` values in `[0, 1]` at confidence `1 - δ`.
pub fn hoeffding_half_width(samples: u64, confidence: f64) -> f64 {
    assert!(samples > 0 && confidence > 0.0 && confidence < 1.0);
    let delta = 1.0 - confidence;
    ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

/// One sampled pair: indices into the support's sorted masks and the fold
/// count of their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSample {
    pub first: usize,
    pub second: usize,
    pub count: u64,
}

/// Draws `samples` pairs uniformly from `S × S` (or off-diagonal pairs
/// under [`DiagonalPolicy::Exclude`]) and computes each fold count.
///
/// Pairs come from a ChaCha8 stream seeded with `seed`: two `gen_range`
/// draws per pair, the second redrawn while equal to the first when the
/// diagonal is excluded.
pub fn sample_fold_counts(
    support: &Support,
    samples: u64,
    seed: u64,
    policy: DiagonalPolicy,
) -> Result<Vec<PairSample>> {
    let size = support.len();
    let min = match policy {
        DiagonalPolicy::Include => 1,
        DiagonalPolicy::Exclude => 2,
    };
    if size < min {
        return Err(Error::NoDirection(size));
    }
    let mut rng = seeded_rng(seed);
    let masks = support.masks();
    let mut out = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let first = rng.gen_range(0..size);
        let mut second = rng.gen_range(0..size);
        while policy == DiagonalPolicy::Exclude && second == first {
            second = rng.gen_range(0..size);
        }
        let count = if first == second {
            size as u64
        } else {
            support.fold_count(&(&masks[first] ^ &masks[second])) as u64
        };
        out.push(PairSample { first, second, count });
    }
    Ok(out)
}

/// Sampled `Pr[|S ∩ (S + γ₁ + γ₂)| ≥ threshold]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldProbabilityEstimate {
    pub threshold: u64,
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub half_width: f64,
    pub confidence: f64,
    pub seed: u64,
    pub policy: DiagonalPolicy,
}

impl FoldProbabilityEstimate {
    pub fn from_samples(threshold: u64, pairs: &[PairSample], seed: u64, policy: DiagonalPolicy) -> Self {
        let samples = pairs.len() as u64;
        let hits = pairs.iter().filter(|p| p.count >= threshold).count() as u64;
        let (estimate, half_width) = if samples == 0 {
            (0.0, 1.0)
        } else {
            (
                hits as f64 / samples as f64,
                hoeffding_half_width(samples, DEFAULT_CONFIDENCE),
            )
        };
        FoldProbabilityEstimate {
            threshold,
            samples,
            hits,
            estimate,
            half_width,
            confidence: DEFAULT_CONFIDENCE,
            seed,
            policy,
        }
    }

    /// Upper end of the confidence interval.
    pub fn upper(&self) -> f64 {
        self.estimate + self.half_width
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "threshold": self.threshold,
            "samples": self.samples,
            "hits": self.hits,
            "estimate": self.estimate,
            "half_width": self.half_width,
            "confidence": self.confidence,
            "seed": self.seed,
            "diagonal": self.policy.as_str(),
        })
    }
}

pub fn sampled_fold_probability(
    support: &Support,
    threshold: u64,
    samples: u64,
    seed: u64,
    policy: DiagonalPolicy,
) -> Result<FoldProbabilityEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameters("need at least one sample".into()));
    }
    let pairs = sample_fold_counts(support, samples, seed, policy)?;
    Ok(FoldProbabilityEstimate::from_samples(threshold, &pairs, seed, policy))
}
