//! Exact Fourier analysis: dense transform, sparse spectra, coset
//! indicators, parity restrictions and fold counting.

mod indicator;
mod restrict;
mod sparse;
mod support;
mod table;
mod transform;

pub use indicator::{indicator_spectrum, IndicatorSpectrum};
pub use restrict::restrict_parity;
pub use sparse::SparseSpectrum;
pub use support::{fold_count, Support};
pub use table::{TruthTable, MAX_TABLE_DIM};
pub use transform::{dense_values, fwht_in_place, inverse_wht, wht};
