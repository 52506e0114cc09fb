use crate::error::{Error, Result};

use super::BitVec;

/// A list of row vectors sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn new(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            r.check_len(cols)?;
        }
        Ok(Gf2Matrix { cols, rows })
    }

    pub fn empty(cols: usize) -> Self {
        Gf2Matrix { cols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Convenience for small matrices: each row given as an integer.
    pub fn from_u64_rows(cols: usize, rows: &[u64]) -> Self {
        Gf2Matrix {
            cols,
            rows: rows.iter().map(|&r| BitVec::from_u64(cols, r)).collect(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Gf2Matrix { cols: self.cols, rows })
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Reduced row-echelon form with zero rows dropped.
    pub fn reduced(&self) -> Gf2Matrix {
        self.echelon().to_matrix()
    }

    /// A basis of `{w : <w, v> = 0 for every row v}`.
    pub fn orthogonal_complement(&self) -> Gf2Matrix {
        self.echelon().orthogonal_complement()
    }
}

/// Incrementally built, fully reduced echelon basis.
///
/// Every stored row has a distinct pivot (its lowest set bit) and every
/// pivot column is zero in all other rows. Sorting rows by pivot gives
/// the unique reduced row-echelon form of the span.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the span in place. The result is zero iff `v`
    /// was in the span, and has no bits at pivot columns otherwise.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                *v ^= row;
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span. Returns `false` if it was already there.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut v = v.clone();
        self.reduce(&mut v);
        let Some(p) = v.lowest_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                *row ^= &v;
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Rows sorted by pivot.
    pub fn to_matrix(&self) -> Gf2Matrix {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        Gf2Matrix {
            cols: self.cols,
            rows: order.into_iter().map(|i| self.rows[i].clone()).collect(),
        }
    }

    pub fn orthogonal_complement(&self) -> Gf2Matrix {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut w = BitVec::unit(self.cols, f);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(f) {
                        w.set(p, true);
                    }
                }
                w
            })
            .collect();
        Gf2Matrix { cols: self.cols, rows }
    }
}

/// A linear subspace held in reduced row-echelon form.
///
/// Two values compare equal iff they span the same subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    cols: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(m: &Gf2Matrix) -> Self {
        Self::from_echelon(&m.echelon())
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        let m = e.to_matrix();
        let pivots = m.rows.iter().map(|r| r.lowest_one().unwrap()).collect();
        Subspace {
            cols: e.cols,
            basis: m.rows,
            pivots,
        }
    }

    pub fn zero(cols: usize) -> Self {
        Subspace {
            cols,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(cols: usize) -> Self {
        Self::span(&Gf2Matrix::identity(cols))
    }

    pub fn ambient(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Gf2Matrix {
        Gf2Matrix {
            cols: self.cols,
            rows: self.basis.clone(),
        }
    }

    pub fn echelon(&self) -> Echelon {
        Echelon {
            cols: self.cols,
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        }
    }

    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                *v ^= row;
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace::span(&self.echelon().orthogonal_complement())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = self.echelon();
        for r in &other.basis {
            e.insert(r);
        }
        Subspace::from_echelon(&e)
    }

    /// `self ∩ other`, computed as `(self^⊥ + other^⊥)^⊥`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::from_u64_rows(4, &[0, 0]).rank(), 0);
        // 1100, 0110, 1010 written with bit 0 as the leftmost coordinate
        assert_eq!(Gf2Matrix::from_u64_rows(4, &[0b0011, 0b0110, 0b0101]).rank(), 2);
    }

    #[test]
    fn rank_leaves_input_untouched() {
        let m = Gf2Matrix::from_u64_rows(4, &[0b0011, 0b0110, 0b0101]);
        let before = m.clone();
        let _ = m.rank();
        assert_eq!(m, before);
    }

    #[test]
    fn reduction_is_idempotent() {
        let m = Gf2Matrix::from_u64_rows(6, &[0b111000, 0b011011, 0b100011, 0b000111]);
        let r = m.reduced();
        assert_eq!(r.reduced(), r);
    }

    #[test]
    fn complement_examples() {
        let e1 = Gf2Matrix::from_u64_rows(3, &[0b001]);
        let c = e1.orthogonal_complement();
        assert_eq!(
            Subspace::span(&c),
            Subspace::span(&Gf2Matrix::from_u64_rows(3, &[0b010, 0b100]))
        );
        assert_eq!(Gf2Matrix::identity(3).orthogonal_complement().nrows(), 0);
        assert_eq!(Gf2Matrix::empty(3).orthogonal_complement().rank(), 3);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Subspace::span(&Gf2Matrix::from_u64_rows(4, &[0b0001, 0b0010]));
        let b = Subspace::span(&Gf2Matrix::from_u64_rows(4, &[0b0010, 0b0100]));
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&BitVec::from_u64(4, 0b0010)));
    }

    #[test]
    fn stack_rejects_mismatched_widths() {
        let a = Gf2Matrix::identity(3);
        assert!(a.stack(&Gf2Matrix::identity(4)).is_err());
    }
}
