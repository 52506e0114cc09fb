use std::fmt;

use crate::error::{parse_err, Error, Result};

use super::{BitVec, Gf2Matrix, Subspace};

/// A coset `V + a` of a linear subspace of F₂ⁿ, kept in canonical form.
///
/// The direction is stored in reduced row-echelon form and the offset is
/// reduced modulo the direction, so two values are equal exactly when they
/// describe the same point set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    direction: Subspace,
    offset: BitVec,
}

impl AffineSubspace {
    pub fn new(direction: Subspace, offset: BitVec) -> Result<Self> {
        offset.check_len(direction.ambient())?;
        let mut offset = offset;
        direction.reduce(&mut offset);
        Ok(AffineSubspace { direction, offset })
    }

    /// The coset `span(generators) + offset`; generators may be dependent.
    pub fn from_spanning(generators: &Gf2Matrix, offset: BitVec) -> Result<Self> {
        Self::new(Subspace::span(generators), offset)
    }

    pub fn linear(direction: Subspace) -> Self {
        let offset = BitVec::zeros(direction.ambient());
        AffineSubspace { direction, offset }
    }

    pub fn point(v: BitVec) -> Self {
        AffineSubspace {
            direction: Subspace::zero(v.len()),
            offset: v,
        }
    }

    pub fn ambient(&self) -> usize {
        self.direction.ambient()
    }

    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    /// Canonical offset: the unique coset member with zeros at every pivot.
    pub fn offset(&self) -> &BitVec {
        &self.offset
    }

    pub fn contains(&self, x: &BitVec) -> bool {
        let mut w = x ^ &self.offset;
        self.direction.reduce(&mut w);
        w.is_zero()
    }

    pub fn translate(&self, by: &BitVec) -> AffineSubspace {
        let mut offset = &self.offset ^ by;
        self.direction.reduce(&mut offset);
        AffineSubspace {
            direction: self.direction.clone(),
            offset,
        }
    }

    /// All `2^dim` members in Gray-code order, starting at the offset.
    pub fn enumerate(&self, limit: usize) -> Result<CosetIter> {
        if self.dim() > limit || self.dim() >= 64 {
            return Err(Error::EnumerationLimit {
                dim: self.dim(),
                limit,
            });
        }
        Ok(CosetIter {
            current: self.offset.clone(),
            basis: self.direction.basis().to_vec(),
            index: 0,
            total: 1u64 << self.dim(),
        })
    }

    /// `n dim offset row_1 ... row_dim`, all vectors in hex.
    pub fn to_line(&self) -> String {
        let mut s = format!("{} {} {}", self.ambient(), self.dim(), self.offset.to_hex());
        for row in self.direction.basis() {
            s.push(' ');
            s.push_str(&row.to_hex());
        }
        s
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let mut tok = line.split_whitespace();
        let mut next = |what: &str| {
            tok.next()
                .ok_or_else(|| parse_err(0, format!("missing {what}")))
        };
        let n: usize = next("ambient dimension")?
            .parse()
            .map_err(|e| parse_err(0, format!("bad ambient dimension: {e}")))?;
        let dim: usize = next("dimension")?
            .parse()
            .map_err(|e| parse_err(0, format!("bad dimension: {e}")))?;
        let offset = BitVec::from_hex(n, next("offset")?)?;
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            rows.push(BitVec::from_hex(n, next("basis row")?)?);
        }
        if tok.next().is_some() {
            return Err(parse_err(0, "trailing tokens after basis rows"));
        }
        let a = Self::from_spanning(&Gf2Matrix::new(n, rows)?, offset)?;
        if a.dim() != dim {
            return Err(parse_err(0, format!("basis rows are dependent (rank {} < {dim})", a.dim())));
        }
        Ok(a)
    }
}

impl fmt::Display for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

pub struct CosetIter {
    current: BitVec,
    basis: Vec<BitVec>,
    index: u64,
    total: u64,
}

impl Iterator for CosetIter {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.index == self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current ^= &self.basis[flip];
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for CosetIter {}

/// `|a1 ∩ a2|`, from the rank of the stacked constraint system.
///
/// The cosets meet iff `o1 + o2 ∈ V1 + V2`; when they do the intersection
/// is a coset of `V1 ∩ V2`, of dimension `d1 + d2 - dim(V1 + V2)`.
pub fn coset_intersection_size(a1: &AffineSubspace, a2: &AffineSubspace) -> Result<u128> {
    match coset_intersection_dim(a1, a2)? {
        None => Ok(0),
        Some(d) if d < 128 => Ok(1u128 << d),
        Some(d) => Err(Error::Overflow(format!("2^{d}"))),
    }
}

/// Dimension of `a1 ∩ a2`, or `None` when the cosets are disjoint.
pub fn coset_intersection_dim(a1: &AffineSubspace, a2: &AffineSubspace) -> Result<Option<usize>> {
    a2.offset.check_len(a1.ambient())?;
    let mut system = a1.direction.echelon();
    for r in a2.direction.basis() {
        system.insert(r);
    }
    let mut diff = &a1.offset ^ &a2.offset;
    system.reduce(&mut diff);
    if !diff.is_zero() {
        return Ok(None);
    }
    Ok(Some(a1.dim() + a2.dim() - system.rank()))
}

/// The intersection as a coset, or `None` when it is empty.
pub fn coset_intersection(a1: &AffineSubspace, a2: &AffineSubspace) -> Result<Option<AffineSubspace>> {
    a2.offset.check_len(a1.ambient())?;
    let n = a1.ambient();
    // Rows carry (value, V1-part); eliminate on value only.
    let mut rows: Vec<(BitVec, BitVec, usize)> = Vec::new();
    let generators = a1
        .direction
        .basis()
        .iter()
        .map(|b| (b.clone(), b.clone()))
        .chain(a2.direction.basis().iter().map(|b| (b.clone(), BitVec::zeros(n))));
    for (mut value, mut tag) in generators {
        for (rv, rt, p) in &rows {
            if value.get(*p) {
                value ^= rv;
                tag ^= rt;
            }
        }
        if let Some(p) = value.lowest_one() {
            for (rv, rt, _) in rows.iter_mut() {
                if rv.get(p) {
                    *rv ^= &value;
                    *rt ^= &tag;
                }
            }
            rows.push((value, tag, p));
        }
    }
    let mut target = &a1.offset ^ &a2.offset;
    let mut v1_part = BitVec::zeros(n);
    for (rv, rt, p) in &rows {
        if target.get(*p) {
            target ^= rv;
            v1_part ^= rt;
        }
    }
    if !target.is_zero() {
        return Ok(None);
    }
    let point = &a1.offset ^ &v1_part;
    let direction = a1.direction.intersection(&a2.direction);
    Ok(Some(AffineSubspace::new(direction, point)?))
}
