/// Size budgets shared by the dense, enumerative and structural code paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which a 2^n truth table is materialized.
    pub dense: usize,
    /// Largest coset dimension that may be enumerated point by point.
    pub enumeration: usize,
    /// Largest support size for exhaustive pair histograms.
    pub histogram: usize,
    /// Largest number of masks a structural generator may emit.
    pub structural: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dense: 20,
            enumeration: 26,
            histogram: 1 << 13,
            structural: 1 << 22,
        }
    }
}

impl Limits {
    pub fn check_dense(&self, n: usize) -> crate::Result<()> {
        if n > self.dense {
            return Err(crate::Error::DenseLimit { n, limit: self.dense });
        }
        Ok(())
    }
}
