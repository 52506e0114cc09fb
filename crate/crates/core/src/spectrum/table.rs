use crate::error::{Error, Result};

/// A ±1-valued function on F₂ⁿ stored densely; entry `x` is `f(x)` where
/// bit `i` of the index is coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    values: Vec<i8>,
}

/// Hard cap on table dimension regardless of configured limits.
pub const MAX_TABLE_DIM: usize = 32;

impl TruthTable {
    pub fn new(n: usize, values: Vec<i8>) -> Result<Self> {
        if n > MAX_TABLE_DIM {
            return Err(Error::DenseLimit { n, limit: MAX_TABLE_DIM });
        }
        if values.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1usize << n,
                actual: values.len(),
            });
        }
        if let Some((index, &v)) = values.iter().enumerate().find(|(_, &v)| v != 1 && v != -1) {
            return Err(Error::NonBooleanEntry { index, value: v as i64 });
        }
        Ok(TruthTable { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> i8) -> Result<Self> {
        if n > MAX_TABLE_DIM {
            return Err(Error::DenseLimit { n, limit: MAX_TABLE_DIM });
        }
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    pub fn constant(n: usize, value: i8) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// The character `χ_γ(x) = (-1)^<γ, x>`.
    pub fn character(n: usize, gamma: usize) -> Result<Self> {
        Self::from_fn(n, |x| if (x & gamma).count_ones().is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize) -> i8 {
        self.values[x]
    }
}
