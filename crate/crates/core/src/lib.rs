//! Min-plus multiplication of core-sparse Monge matrices, with smallest-witness
//! recovery, and range longest-increasing-subsequence queries built on top of
//! it.
//!
//! A Monge matrix is kept in condensed form ([`CondensedMatrix`]): its first
//! row, first column and the nonzero entries of its density grid. The product
//! of two such matrices is computed directly in that form by
//! [`multiply`], in time near-linear in the combined core size plus the inner
//! dimension, without ever materializing a dense matrix.
//!
//! ```
//! use sparse_monge::{multiply_with_witness, to_condensed, DenseMatrix};
//!
//! let a = DenseMatrix::from_rows(&[[0, 4, 5, 6], [0, 1, 2, 3], [0, 1, 2, 0], [0, 1, 2, 0]])?;
//! let b = DenseMatrix::from_rows(&[[0, 2, 4, 6], [0, 0, 2, 4], [0, 0, 0, 2], [0, 0, 0, 0]])?;
//! let (c, wit) = multiply_with_witness(&to_condensed(&a)?, &to_condensed(&b)?)?;
//! assert_eq!(c.to_dense()?.row(1), &[0, 1, 2, 3]);
//! assert_eq!(wit.query(3, 3)?, 3);
//! # Ok::<(), sparse_monge::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod format;
pub mod lis;
pub mod matrix;
pub mod minplus;
pub mod oracle;
pub mod reference;

pub use error::{Error, Result};
pub use lis::{
    brute_lis, build_distance_matrix, build_lis_index, expand_stars, Entry, RangeLisIndex,
    Subpermutation,
};
pub use matrix::{
    core_of, density, is_monge, negate, to_condensed, to_dense, CondensedMatrix, CoreElement,
    CoreSummary, DenseMatrix,
};
pub use minplus::{
    compress, decompress, maxplus, maxplus_with_witness, multiply, multiply_with_witness,
    CompressionMap, WitnessOracle,
};
pub use oracle::{submatrix, Cmo, Lco};
