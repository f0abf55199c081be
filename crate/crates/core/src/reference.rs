//! Dense brute-force oracles and deterministic instance generators.
//!
//! Everything here is deliberately naive. The multiplication, witness and
//! range LIS code is tested against these functions.

use std::collections::HashSet;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{add, Error, Result};
use crate::matrix::{CondensedMatrix, CoreElement, DenseMatrix};

/// Triple-loop min-plus product. Returns the product and, for each entry,
/// the smallest inner index attaining the minimum.
pub fn minplus_dense(a: &DenseMatrix, b: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    tropical_dense(a, b, |cand, best| cand < best)
}

/// Triple-loop max-plus product with smallest maximizing witnesses.
pub fn maxplus_dense(a: &DenseMatrix, b: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    tropical_dense(a, b, |cand, best| cand > best)
}

fn tropical_dense(
    a: &DenseMatrix,
    b: &DenseMatrix,
    better: impl Fn(i64, i64) -> bool,
) -> Result<(DenseMatrix, DenseMatrix)> {
    if a.cols() != b.rows() {
        return Err(Error::dims(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.cols() == 0 {
        return Err(Error::dims("inner dimension is zero"));
    }
    let (p, q, r) = (a.rows(), a.cols(), b.cols());
    let mut c = DenseMatrix::zeros(p, r);
    let mut w = DenseMatrix::zeros(p, r);
    for i in 0..p {
        for k in 0..r {
            let mut best = add(a.get(i, 0), b.get(0, k))?;
            let mut arg = 0;
            for j in 1..q {
                let cand = add(a.get(i, j), b.get(j, k))?;
                if better(cand, best) {
                    best = cand;
                    arg = j;
                }
            }
            c.set(i, k, best);
            w.set(i, k, arg as i64);
        }
    }
    Ok((c, w))
}

/// The Monge condition checked on every pair of rows and every pair of
/// columns, not only adjacent ones.
pub fn is_monge_exhaustive(m: &DenseMatrix) -> bool {
    let (p, q) = (m.rows(), m.cols());
    for a in 0..p {
        for b in a + 1..p {
            for c in 0..q {
                for d in c + 1..q {
                    let lhs = m.get(a, c) as i128 + m.get(b, d) as i128;
                    let rhs = m.get(a, d) as i128 + m.get(b, c) as i128;
                    if lhs > rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// How many density cells of a generated matrix are nonzero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoreTarget {
    /// Exactly this many cells, clamped to the grid size.
    Count(usize),
    /// Each cell independently with this probability.
    Probability(f64),
}

/// Parameters of a random Monge instance. Equal specs generate equal
/// matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub rows: usize,
    pub cols: usize,
    pub core: CoreTarget,
    /// Boundary entries are drawn from `[-max_boundary, max_boundary]`.
    pub max_boundary: i64,
    /// Core values are drawn from `[1, max_core_value]`.
    pub max_core_value: i64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub const DEFAULT_MAX_BOUNDARY: i64 = 1 << 28;
    pub const DEFAULT_MAX_CORE_VALUE: i64 = 1 << 10;

    pub fn with_count(rows: usize, cols: usize, delta: usize, seed: u64) -> Self {
        GeneratorSpec {
            rows,
            cols,
            core: CoreTarget::Count(delta),
            max_boundary: Self::DEFAULT_MAX_BOUNDARY,
            max_core_value: Self::DEFAULT_MAX_CORE_VALUE,
            seed,
        }
    }

    pub fn with_probability(rows: usize, cols: usize, prob: f64, seed: u64) -> Self {
        GeneratorSpec {
            core: CoreTarget::Probability(prob),
            ..Self::with_count(rows, cols, 0, seed)
        }
    }

    pub fn values(mut self, max_boundary: i64, max_core_value: i64) -> Self {
        self.max_boundary = max_boundary;
        self.max_core_value = max_core_value;
        self
    }
}

/// Uniform integer in `[lo, hi]`.
fn uniform(rng: &mut SplitMix64, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo) as u64 + 1;
    lo + (rng.next_u64() % span) as i64
}

/// Uniform index in `[0, n)`.
fn below(rng: &mut SplitMix64, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// A random Monge matrix in condensed form: sampled nonzero density cells
/// with positive values and a random first row and column.
pub fn random_monge_condensed(spec: &GeneratorSpec) -> Result<CondensedMatrix> {
    let (p, q) = (spec.rows, spec.cols);
    if p == 0 || q == 0 {
        return Err(Error::dims("generated matrices must be non-empty"));
    }
    if spec.max_boundary < 0 || spec.max_core_value < 1 {
        return Err(Error::InvalidArgument(
            "value bounds must be non-negative and the core bound positive".into(),
        ));
    }
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    let bound = spec.max_boundary;
    let corner = uniform(&mut rng, -bound, bound);
    let mut top_row = vec![corner];
    top_row.extend((1..q).map(|_| uniform(&mut rng, -bound, bound)));
    let mut left_col = vec![corner];
    left_col.extend((1..p).map(|_| uniform(&mut rng, -bound, bound)));

    let (h, w) = (p - 1, q - 1);
    let cells = h * w;
    let mut positions: Vec<usize> = match spec.core {
        CoreTarget::Probability(prob) => {
            if !(0.0..=1.0).contains(&prob) {
                return Err(Error::InvalidArgument(format!(
                    "core probability {prob} outside [0, 1]"
                )));
            }
            let threshold = (prob * u64::MAX as f64) as u64;
            (0..cells)
                .filter(|_| prob > 0.0 && rng.next_u64() <= threshold)
                .collect()
        }
        CoreTarget::Count(want) => {
            let want = want.min(cells);
            if cells <= 1 << 16 || want * 2 > cells {
                // Partial Fisher-Yates over all cells.
                let mut all: Vec<usize> = (0..cells).collect();
                for t in 0..want {
                    let pick = t + below(&mut rng, cells - t);
                    all.swap(t, pick);
                }
                all.truncate(want);
                all
            } else {
                let mut seen = HashSet::with_capacity(want);
                let mut out = Vec::with_capacity(want);
                while out.len() < want {
                    let c = below(&mut rng, cells);
                    if seen.insert(c) {
                        out.push(c);
                    }
                }
                out
            }
        }
    };
    positions.sort_unstable();
    let core = positions
        .into_iter()
        .map(|c| CoreElement::new(c / w, c % w, uniform(&mut rng, 1, spec.max_core_value)))
        .collect();
    CondensedMatrix::new(p, q, top_row, left_col, core)
}

/// A random Monge matrix, densified.
pub fn random_monge(spec: &GeneratorSpec) -> Result<DenseMatrix> {
    random_monge_condensed(spec)?.to_dense()
}

/// A uniformly shuffled permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = below(&mut rng, i + 1);
        perm.swap(i, j);
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{core_of, fixtures, is_monge};
    use proptest::prelude::*;

    #[test]
    fn example_product() {
        let (c, w) = minplus_dense(&fixtures::a(), &fixtures::b()).unwrap();
        assert_eq!(c, fixtures::c());
        assert_eq!(w.get(0, 0), 0);
        assert_eq!(w.get(1, 1), 1);
        assert_eq!(w.get(3, 3), 3);
    }

    #[test]
    fn single_zero_column_is_every_witness() {
        let a = DenseMatrix::from_fn(3, 5, |i, j| (i * j) as i64);
        let b = DenseMatrix::from_fn(5, 4, |j, _| if j == 2 { -1000 } else { 1000 });
        let (_, w) = minplus_dense(&a, &b).unwrap();
        assert!(w.as_slice().iter().all(|&x| x == 2));
    }

    #[test]
    fn scalar_product() {
        let a = DenseMatrix::from_rows(&[[3]]).unwrap();
        let b = DenseMatrix::from_rows(&[[-5]]).unwrap();
        let (c, w) = minplus_dense(&a, &b).unwrap();
        assert_eq!((c.get(0, 0), w.get(0, 0)), (-2, 0));
        assert!(minplus_dense(&a, &DenseMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn maxplus_witness_is_smallest() {
        let a = DenseMatrix::from_rows(&[[1, 1, 0]]).unwrap();
        let b = DenseMatrix::from_rows(&[[0], [0], [1]]).unwrap();
        let (c, w) = maxplus_dense(&a, &b).unwrap();
        assert_eq!((c.get(0, 0), w.get(0, 0)), (1, 0));
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = GeneratorSpec::with_count(8, 8, 10, 42);
        let x = random_monge(&spec).unwrap();
        assert_eq!(x, random_monge(&spec).unwrap());
        assert_eq!(core_of(&x).unwrap().delta, 10);
        assert_ne!(x, random_monge(&GeneratorSpec { seed: 43, ..spec }).unwrap());
    }

    #[test]
    fn zero_core_generator() {
        let spec = GeneratorSpec::with_probability(6, 5, 0.0, 1);
        let c = random_monge_condensed(&spec).unwrap();
        assert_eq!(c.delta(), 0);
        let d = c.to_dense().unwrap();
        for i in 0..6 {
            for j in 0..5 {
                assert_eq!(d.get(i, j), d.get(0, j) + d.get(i, 0) - d.get(0, 0));
            }
        }
    }

    #[test]
    fn large_sparse_generator() {
        let spec = GeneratorSpec::with_count(5000, 7000, 3000, 9);
        assert_eq!(random_monge_condensed(&spec).unwrap().delta(), 3000);
    }

    #[test]
    fn permutations() {
        assert_eq!(random_permutation(1, 7), vec![0]);
        assert_eq!(random_permutation(5, 11), random_permutation(5, 11));
        let mut p = random_permutation(100, 3);
        p.sort_unstable();
        assert_eq!(p, (0..100).collect::<Vec<_>>());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn generated_matrices_are_monge(
            rows in 1usize..20, cols in 1usize..20, delta in 0usize..100, seed: u64,
        ) {
            let m = random_monge(&GeneratorSpec::with_count(rows, cols, delta, seed).values(50, 5)).unwrap();
            prop_assert!(is_monge(&m).unwrap());
            let want = delta.min((rows - 1) * (cols - 1));
            prop_assert_eq!(core_of(&m).unwrap().delta, want);
        }

        #[test]
        fn adjacent_check_matches_exhaustive(
            rows in 1usize..=5, cols in 1usize..=5,
            cells in proptest::collection::vec(-4i64..=4, 25),
        ) {
            let m = DenseMatrix::from_fn(rows, cols, |i, j| cells[i * 5 + j]);
            prop_assert_eq!(is_monge(&m).unwrap(), is_monge_exhaustive(&m));
        }
    }
}
