use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::limits::Limits;

use super::{SparseSpectrum, TruthTable};

/// In-place unnormalized Walsh–Hadamard butterfly: afterwards
/// `data[α] = Σ_x data_in[x] (-1)^<x, α>`.
pub fn fwht_in_place(data: &mut [i64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "length {len} is not a power of two");
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Exact spectrum of a dense table: `c(α) = Σ_x f(x) (-1)^<x, α>`.
pub fn wht(t: &TruthTable, limits: &Limits) -> Result<SparseSpectrum> {
    limits.check_dense(t.n())?;
    let n = t.n();
    let mut data: Vec<i64> = t.values().iter().map(|&v| v as i64).collect();
    fwht_in_place(&mut data);
    let mut s = SparseSpectrum::new(n);
    for (alpha, c) in data.into_iter().enumerate() {
        if c != 0 {
            s.add(BitVec::from_u64(n, alpha as u64), c);
        }
    }
    Ok(s)
}

/// `2^n f(x)` at every `x` for an arbitrary (not necessarily boolean)
/// spectrum.
pub fn dense_values(s: &SparseSpectrum, limits: &Limits) -> Result<Vec<i64>> {
    let n = s.n();
    limits.check_dense(n)?;
    let mut data = vec![0i64; 1usize << n];
    for (mask, c) in s.terms() {
        let idx = mask.to_u64().expect("dense masks fit in a word") as usize;
        data[idx] = c;
    }
    fwht_in_place(&mut data);
    Ok(data)
}

/// Reconstructs the ±1 table. Fails when the spectrum violates integer
/// Parseval or any reconstructed value is not exactly ±1.
pub fn inverse_wht(s: &SparseSpectrum, limits: &Limits) -> Result<TruthTable> {
    let n = s.n();
    limits.check_dense(n)?;
    if !s.satisfies_parseval() {
        return Err(Error::NonBooleanSpectrum(format!(
            "sum of squared numerators is {}, expected 4^{n}",
            s.parseval_sum()
        )));
    }
    let scale = 1i64 << n;
    let values = dense_values(s, limits)?
        .into_iter()
        .enumerate()
        .map(|(x, v)| match v {
            v if v == scale => Ok(1),
            v if v == -scale => Ok(-1),
            v => Err(Error::NonBooleanSpectrum(format!("value at {x:#x} is {v}/2^{n}"))),
        })
        .collect::<Result<Vec<i8>>>()?;
    TruthTable::new(n, values)
}
