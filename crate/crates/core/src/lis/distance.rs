//! The range-LIS distance matrix of a (sub)permutation.
//!
//! For a sequence `s` of length `n` the matrix `M^s` is `(n+1) x (n+1)` with
//! `M^s[i][j] = LIS(s[i..j))` for `i < j` and `-2(i - j)` otherwise. It is
//! anti-Monge and its core has `O(n)` elements, all on or above the
//! diagonal.

use crate::error::{Error, Result};
use crate::matrix::{CondensedMatrix, CoreElement};
use crate::minplus::maxplus;

use super::subperm::{check_permutation, Subpermutation};

/// `M` of a single element: `[[0, 1], [-2, 0]]`.
pub(crate) fn singleton() -> CondensedMatrix {
    CondensedMatrix::from_parts(
        2,
        2,
        vec![0, 1],
        vec![0, -2],
        vec![CoreElement::new(0, 0, -1)],
    )
}

/// For every boundary `i` in `0..=n`, the smallest value index `j` with
/// `pos[j] >= i`.
pub(crate) fn reverse_positions(pos: &[usize], n: usize) -> Vec<usize> {
    let mut rpos = Vec::with_capacity(n + 1);
    let mut j = 0;
    for i in 0..=n {
        while pos[j] < i {
            j += 1;
        }
        rpos.push(j);
    }
    rpos
}

/// The distance matrix of `s`, given the distance matrix `mt` of its
/// underlying permutation.
pub fn expand_stars(s: &Subpermutation, mt: &CondensedMatrix) -> Result<CondensedMatrix> {
    let n = s.len();
    let pos = s.positions();
    let m = pos.len() - 1;
    if mt.rows() != m + 1 || mt.cols() != m + 1 {
        return Err(Error::dims(format!(
            "{} values need a {}x{} matrix, got {}x{}",
            m,
            m + 1,
            m + 1,
            mt.rows(),
            mt.cols()
        )));
    }
    if m == n {
        return Ok(mt.clone());
    }
    let rpos = reverse_positions(&pos, n);
    let top_row = rpos.iter().map(|&j| mt.top_row()[j]).collect();
    let left_col = (0..=n as i64).map(|i| -2 * i).collect();

    let mut stars = s
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e, super::Entry::Star))
        .map(|(k, _)| CoreElement::new(k, k, -2))
        .peekable();
    let mut core = Vec::with_capacity(mt.delta() + (n - m));
    for e in mt.core() {
        let moved = CoreElement::new(pos[e.i], pos[e.j], e.v);
        while let Some(star) = stars.next_if(|st| st.i < moved.i) {
            core.push(star);
        }
        core.push(moved);
    }
    core.extend(stars);
    Ok(CondensedMatrix::from_parts(
        n + 1,
        n + 1,
        top_row,
        left_col,
        core,
    ))
}

/// A node of the value-splitting recursion, as seen by
/// [`build_distance_matrix_traced`].
pub struct NodeTrace<'a> {
    /// The node's permutation, rank-reduced.
    pub perm: &'a [usize],
    /// Distance matrices of the two star-expanded halves.
    pub lo: &'a CondensedMatrix,
    pub hi: &'a CondensedMatrix,
    /// Their max-plus product, the node's own distance matrix.
    pub product: &'a CondensedMatrix,
}

/// `M^s` for a permutation `s` of `0..n`, `n >= 1`.
pub fn build_distance_matrix(s: &[usize]) -> Result<CondensedMatrix> {
    build_distance_matrix_traced(s, |_| {})
}

/// Like [`build_distance_matrix`], calling `visit` at every internal node.
pub fn build_distance_matrix_traced(
    s: &[usize],
    mut visit: impl FnMut(&NodeTrace<'_>),
) -> Result<CondensedMatrix> {
    check_permutation(s)?;
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty permutation".into()));
    }
    build(s, &mut visit)
}

fn build(s: &[usize], visit: &mut dyn FnMut(&NodeTrace<'_>)) -> Result<CondensedMatrix> {
    let n = s.len();
    if n == 1 {
        return Ok(singleton());
    }
    let m = n / 2;
    let lo = Subpermutation::restrict(s, 0, m);
    let hi = Subpermutation::restrict(s, m, n);
    let a = expand_stars(&lo, &build(&lo.underlying(), visit)?)?;
    let b = expand_stars(&hi, &build(&hi.underlying(), visit)?)?;
    let c = maxplus(&a, &b)?;
    visit(&NodeTrace {
        perm: s,
        lo: &a,
        hi: &b,
        product: &c,
    });
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lis::brute::brute_lis;
    use crate::lis::Entry::{Star, Value};
    use crate::matrix::{to_condensed, DenseMatrix};
    use crate::reference::random_permutation;

    fn formula(s: &Subpermutation) -> DenseMatrix {
        let n = s.len();
        let keys: Vec<Option<usize>> = s
            .entries()
            .iter()
            .map(|e| match e {
                Value(v) => Some(*v),
                Star => None,
            })
            .collect();
        DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
            if i < j {
                let vals: Vec<usize> = keys[i..j].iter().flatten().copied().collect();
                brute_lis(&vals, 0, vals.len()).0 as i64
            } else {
                -2 * (i as i64 - j as i64)
            }
        })
    }

    #[test]
    fn singleton_matrix() {
        let m = build_distance_matrix(&[0]).unwrap();
        assert_eq!(m.to_dense().unwrap().to_rows(), vec![vec![0, 1], vec![-2, 0]]);
    }

    #[test]
    fn example_entries() {
        let m = build_distance_matrix(&[1, 0, 3, 2, 4]).unwrap().to_dense().unwrap();
        assert_eq!(m.get(0, 5), 3);
        assert_eq!(m.get(1, 4), 2);
        assert_eq!(m.get(3, 1), -4);
        for i in 0..6 {
            assert_eq!(m.get(i, i), 0);
        }
    }

    #[test]
    fn expand_one_star() {
        let s = Subpermutation::new(vec![Value(1), Star, Value(0)]).unwrap();
        let mt = to_condensed(
            &DenseMatrix::from_rows(&[[0, 1, 1], [-2, 0, 1], [-4, -2, 0]]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            mt.core(),
            &[
                CoreElement::new(0, 0, -1),
                CoreElement::new(0, 1, -1),
                CoreElement::new(1, 1, -1)
            ]
        );
        let ms = expand_stars(&s, &mt).unwrap();
        let mut core = ms.core().to_vec();
        core.sort_by_key(|e| (e.v, e.i, e.j));
        assert_eq!(
            core,
            vec![
                CoreElement::new(1, 1, -2),
                CoreElement::new(0, 0, -1),
                CoreElement::new(0, 2, -1),
                CoreElement::new(2, 2, -1)
            ]
        );
        assert_eq!(ms.top_row(), &[0, 1, 1, 1]);
        assert_eq!(ms.left_col(), &[0, -2, -4, -6]);
        assert_eq!(ms.to_dense().unwrap(), formula(&s));
    }

    #[test]
    fn expand_without_stars_is_identity() {
        let mt = build_distance_matrix(&[2, 0, 1]).unwrap();
        let s = Subpermutation::from_permutation(&[2, 0, 1]).unwrap();
        assert_eq!(expand_stars(&s, &mt).unwrap(), mt);
    }

    #[test]
    fn star_prefix() {
        let s = Subpermutation::new(vec![Star, Star, Star, Value(1), Value(0), Star]).unwrap();
        let mt = build_distance_matrix(&s.underlying()).unwrap();
        let ms = expand_stars(&s, &mt).unwrap();
        assert_eq!(ms.to_dense().unwrap(), formula(&s));
        for k in [0, 1, 2, 5] {
            assert!(ms.core().contains(&CoreElement::new(k, k, -2)));
        }
        let wrong = build_distance_matrix(&[0]).unwrap();
        assert!(expand_stars(&s, &wrong).is_err());
    }

    #[test]
    fn all_permutations_up_to_seven() {
        fn each(prefix: &mut Vec<usize>, n: usize, f: &mut dyn FnMut(&[usize])) {
            if prefix.len() == n {
                return f(prefix);
            }
            for v in 0..n {
                if !prefix.contains(&v) {
                    prefix.push(v);
                    each(prefix, n, f);
                    prefix.pop();
                }
            }
        }
        for n in 1..=7 {
            each(&mut Vec::new(), n, &mut |perm| {
                let m = build_distance_matrix(perm).unwrap();
                let s = Subpermutation::from_permutation(perm).unwrap();
                assert_eq!(m.to_dense().unwrap(), formula(&s), "{perm:?}");
                assert!(m.core().iter().all(|e| e.i <= e.j));
            });
        }
    }

    #[test]
    fn random_permutations_and_nodes() {
        for seed in 0..20 {
            let n = 1 + (seed as usize * 37) % 200;
            let perm = random_permutation(n, seed);
            let mut nodes = 0;
            let m = build_distance_matrix_traced(&perm, |t| {
                nodes += 1;
                assert!(crate::matrix::is_monge(&t.lo.negate().unwrap().to_dense().unwrap()).unwrap());
                assert!(t.product.core().iter().all(|e| e.i <= e.j));
                assert!(t.product.delta() <= 3 * t.perm.len());
            })
            .unwrap();
            assert_eq!(nodes, n - 1);
            let s = Subpermutation::from_permutation(&perm).unwrap();
            assert_eq!(m.to_dense().unwrap(), formula(&s));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(build_distance_matrix(&[0, 2]), Err(Error::NotPermutation(_))));
        assert!(build_distance_matrix(&[]).is_err());
    }
}
