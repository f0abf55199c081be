//! Access structures over condensed matrices.

mod cmo;
mod lco;

use std::ops::Range;

pub use cmo::Cmo;
pub use lco::Lco;

use crate::error::Result;
use crate::matrix::CondensedMatrix;

/// Condensed representation of the contiguous block `rows x cols` of `m`.
pub fn submatrix(
    m: &CondensedMatrix,
    rows: Range<usize>,
    cols: Range<usize>,
) -> Result<CondensedMatrix> {
    Lco::new(m)?.submatrix(rows, cols)
}
