//! Exact Fourier analysis of boolean functions over F₂ⁿ.
//!
//! The crate computes integer Fourier spectra (dense fast transform and
//! closed-form structural generators), measures how Fourier supports fold
//! along directions `γ` (`|S ∩ (S + γ)|`), and builds and checks parity
//! decision trees. Two families of functions are provided: subspace
//! addressing, whose support has no large folding direction, and the full
//! binary decision-tree function, whose support has few good directions.
//!
//! Every coefficient is an exact integer numerator over `2^n`.

pub mod constructions;
pub mod error;
pub mod folding;
pub mod gf2;
pub mod limits;
pub mod pdt;
pub mod spectrum;

pub use constructions::{Instance, SubspaceAddressingInstance, SubspaceParams, TreeFunctionInstance};
pub use error::{Error, Result};
pub use folding::{DiagonalPolicy, FoldHistogram, FoldProbabilityEstimate};
pub use gf2::{AffineSubspace, BitVec, Gf2Matrix, Subspace};
pub use limits::Limits;
pub use pdt::{Node, Pdt, Verification};
pub use spectrum::{SparseSpectrum, Support, TruthTable};
