//! Min-plus and max-plus products of core-sparse Monge matrices.
//!
//! The product is computed by divide and conquer over the inner dimension:
//! both factors are compressed to at most `δ + 1` rows or columns, the inner
//! range is split so that each half holds at most half of the combined core,
//! and the two half products are merged along a monotone staircase.

mod compress;
mod multiply;
mod witness;

pub use compress::{compress, decompress, CompressionMap};
pub use witness::WitnessOracle;

use crate::error::{Error, Result};
use crate::matrix::CondensedMatrix;

fn check_factors(a: &CondensedMatrix, b: &CondensedMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::dims(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    for (name, m) in [("left", a), ("right", b)] {
        if let Some(e) = m.core().iter().find(|e| e.v <= 0) {
            return Err(Error::NotMonge(format!(
                "{name} factor has density {} at ({}, {})",
                e.v, e.i, e.j
            )));
        }
    }
    Ok(())
}

/// Min-plus product `C[i][k] = min_j A[i][j] + B[j][k]` of two Monge
/// matrices.
pub fn multiply(a: &CondensedMatrix, b: &CondensedMatrix) -> Result<CondensedMatrix> {
    check_factors(a, b)?;
    Ok(multiply::product(a, b, &mut None)?.0)
}

/// Like [`multiply`], also returning an oracle for smallest witnesses.
pub fn multiply_with_witness(
    a: &CondensedMatrix,
    b: &CondensedMatrix,
) -> Result<(CondensedMatrix, WitnessOracle)> {
    check_factors(a, b)?;
    let mut nodes = Some(Vec::new());
    let (c, root) = multiply::product(a, b, &mut nodes)?;
    let oracle = WitnessOracle {
        nodes: nodes.unwrap(),
        root,
        rows: a.rows(),
        cols: b.cols(),
    };
    Ok((c, oracle))
}

/// Max-plus product of two anti-Monge matrices, as `-((-A) ⊗ (-B))`.
pub fn maxplus(a: &CondensedMatrix, b: &CondensedMatrix) -> Result<CondensedMatrix> {
    multiply(&a.negate()?, &b.negate()?)?.negate()
}

/// Like [`maxplus`]; witnesses are the smallest maximizing inner indices.
pub fn maxplus_with_witness(
    a: &CondensedMatrix,
    b: &CondensedMatrix,
) -> Result<(CondensedMatrix, WitnessOracle)> {
    let (c, w) = multiply_with_witness(&a.negate()?, &b.negate()?)?;
    Ok((c.negate()?, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{fixtures, is_monge, to_condensed, DenseMatrix};
    use crate::reference::{
        maxplus_dense, minplus_dense, random_monge, random_monge_condensed, GeneratorSpec,
    };
    use proptest::prelude::*;

    #[test]
    fn example_product_and_witnesses() {
        let a = to_condensed(&fixtures::a()).unwrap();
        let b = to_condensed(&fixtures::b()).unwrap();
        let (c, w) = multiply_with_witness(&a, &b).unwrap();
        assert_eq!(c.to_dense().unwrap(), fixtures::c());
        assert_eq!(c.delta(), 6);
        assert_eq!(w.query(0, 0).unwrap(), 0);
        assert_eq!(w.query(1, 1).unwrap(), 1);
        assert_eq!(w.query(3, 3).unwrap(), 3);
        let (_, brute) = minplus_dense(&fixtures::a(), &fixtures::b()).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                assert_eq!(w.query(i, k).unwrap() as i64, brute.get(i, k));
            }
        }
        let row: Vec<usize> = (0..4).map(|k| w.query(1, k).unwrap()).collect();
        assert!(row.windows(2).all(|x| x[0] <= x[1]));
        assert!(w.query(4, 0).is_err());
    }

    #[test]
    fn single_inner_index() {
        let x = CondensedMatrix::new(3, 1, vec![2], vec![2, 5, -1], vec![]).unwrap();
        let y = CondensedMatrix::new(1, 4, vec![1, 0, 7, 3], vec![1], vec![]).unwrap();
        let c = multiply(&x, &y).unwrap().to_dense().unwrap();
        for i in 0..3 {
            for k in 0..4 {
                assert_eq!(c.get(i, k), x.left_col()[i] + y.top_row()[k]);
            }
        }
    }

    #[test]
    fn row_times_column() {
        let x = to_condensed(&DenseMatrix::from_rows(&[[4, 1, 1, 3]]).unwrap()).unwrap();
        let y = to_condensed(&DenseMatrix::from_rows(&[[0], [2], [0], [0]]).unwrap()).unwrap();
        let (c, w) = multiply_with_witness(&x, &y).unwrap();
        assert_eq!(c.top_row(), &[1]);
        assert_eq!(w.query(0, 0).unwrap(), 2);
    }

    #[test]
    fn both_cores_empty() {
        let x = CondensedMatrix::new(4, 3, vec![0, 5, 1], vec![0, 1, 2, 3], vec![]).unwrap();
        let y = CondensedMatrix::new(3, 5, vec![2, 2, 2, 2, 9], vec![2, 0, 1], vec![]).unwrap();
        let (c, w) = multiply_with_witness(&x, &y).unwrap();
        let (dc, dw) = minplus_dense(&x.to_dense().unwrap(), &y.to_dense().unwrap()).unwrap();
        assert_eq!(c.to_dense().unwrap(), dc);
        assert_eq!(c.delta(), 0);
        for i in 0..4 {
            for k in 0..5 {
                assert_eq!(w.query(i, k).unwrap() as i64, dw.get(i, k));
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = to_condensed(&fixtures::a()).unwrap();
        let short = CondensedMatrix::new(3, 2, vec![0, 0], vec![0; 3], vec![]).unwrap();
        assert!(matches!(multiply(&a, &short), Err(Error::DimensionMismatch(_))));
        let neg = a.negate().unwrap();
        assert!(matches!(multiply(&neg, &a), Err(Error::NotMonge(_))));
    }

    #[test]
    fn maxplus_identities() {
        let a = to_condensed(&fixtures::a()).unwrap();
        let b = to_condensed(&fixtures::b()).unwrap();
        let c = multiply(&a, &b).unwrap();
        let neg = maxplus(&a.negate().unwrap(), &b.negate().unwrap()).unwrap();
        assert_eq!(neg, c.negate().unwrap());
        assert_eq!(neg.negate().unwrap(), c);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn matches_dense_oracle(
            p in 1usize..24, q in 1usize..24, r in 1usize..24,
            da in 0usize..80, db in 0usize..80, seed: u64, small in any::<bool>(),
        ) {
            let (bound, core) = if small { (3, 2) } else { (1000, 50) };
            let x = random_monge_condensed(
                &GeneratorSpec::with_count(p, q, da, seed).values(bound, core)).unwrap();
            let y = random_monge_condensed(
                &GeneratorSpec::with_count(q, r, db, !seed).values(bound, core)).unwrap();
            let (c, w) = multiply_with_witness(&x, &y).unwrap();
            let (dc, dw) = minplus_dense(&x.to_dense().unwrap(), &y.to_dense().unwrap()).unwrap();
            let dense = c.to_dense().unwrap();
            prop_assert_eq!(&dense, &dc);
            prop_assert!(is_monge(&dense).unwrap());
            for i in 0..p {
                for k in 0..r {
                    prop_assert_eq!(w.query(i, k).unwrap() as i64, dw.get(i, k));
                }
            }
            let bound = (1 + x.delta() + y.delta()) as f64;
            prop_assert!(w.depth() as f64 <= bound.log2() + 2.0);
            for b in w.boundaries() {
                prop_assert!(b.windows(2).all(|t| t[0] >= t[1]));
            }
        }

        #[test]
        fn maxplus_matches_dense_oracle(
            p in 1usize..16, q in 1usize..16, r in 1usize..16,
            da in 0usize..40, db in 0usize..40, seed: u64,
        ) {
            let x = random_monge(&GeneratorSpec::with_count(p, q, da, seed).values(5, 3))
                .unwrap().negated().unwrap();
            let y = random_monge(&GeneratorSpec::with_count(q, r, db, seed ^ 77).values(5, 3))
                .unwrap().negated().unwrap();
            let (c, w) = maxplus_with_witness(&to_condensed(&x).unwrap(), &to_condensed(&y).unwrap())
                .unwrap();
            let (dc, dw) = maxplus_dense(&x, &y).unwrap();
            prop_assert_eq!(c.to_dense().unwrap(), dc);
            for i in 0..p {
                for k in 0..r {
                    prop_assert_eq!(w.query(i, k).unwrap() as i64, dw.get(i, k));
                }
            }
        }

        #[test]
        fn compressed_product_expands_to_full_product(
            p in 1usize..20, q in 1usize..20, r in 1usize..20,
            da in 0usize..12, db in 0usize..12, seed: u64,
        ) {
            let x = random_monge_condensed(&GeneratorSpec::with_count(p, q, da, seed).values(9, 3)).unwrap();
            let y = random_monge_condensed(&GeneratorSpec::with_count(q, r, db, seed ^ 3).values(9, 3)).unwrap();
            let (cx, cy, maps) = compress(&x, &y).unwrap();
            prop_assert!(cx.rows() <= x.delta() + 1 && cy.cols() <= y.delta() + 1);
            prop_assert!(maps.kept_rows.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(maps.row_of_original.windows(2).all(|w| w[0] <= w[1]));
            let c = multiply(&cx, &cy).unwrap();
            let full = decompress(&x, &y, &maps, &c).unwrap();
            let (dc, _) = minplus_dense(&x.to_dense().unwrap(), &y.to_dense().unwrap()).unwrap();
            prop_assert_eq!(full.to_dense().unwrap(), dc);
        }
    }
}
