use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::spectrum::TruthTable;

/// `f(x, y) = (-1)^{y_x}` on `n = k + 2^k` variables: `x` is the `k`-bit
/// address in bits `0..k`, `y` the `2^k` data bits after it.
pub fn addressing_table(k: usize, limits: &Limits) -> Result<TruthTable> {
    if k > 20 {
        return Err(Error::InvalidParameters(format!("k = {k} is too large")));
    }
    let n = k + (1 << k);
    limits.check_dense(n)?;
    let xmask = (1usize << k) - 1;
    TruthTable::from_fn(n, |v| {
        let x = v & xmask;
        if (v >> (k + x)) & 1 == 1 {
            -1
        } else {
            1
        }
    })
}
