//! Range longest-increasing-subsequence queries.
//!
//! The values of a permutation are split into a lower and an upper half; the
//! distance matrix of the whole sequence is the max-plus product of the
//! distance matrices of the two halves, each with the other half's elements
//! replaced by placeholders.

mod brute;
mod distance;
mod index;
mod subperm;

pub use brute::brute_lis;
pub use distance::{build_distance_matrix, build_distance_matrix_traced, expand_stars, NodeTrace};
pub use index::{build_lis_index, tau_for, RangeLisIndex};
pub use subperm::{Entry, Subpermutation};
pub(crate) use subperm::check_permutation;
