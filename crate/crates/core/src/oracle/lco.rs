use std::ops::Range;

use crate::error::{add, sub, Error, Result};
use crate::matrix::{CondensedMatrix, CoreElement};

/// Bucketed core lists in compressed-sparse-row layout. Bucket `b` occupies
/// `start[b]..start[b + 1]`; `key` holds the other coordinate in increasing
/// order and `prefix` the running sum of values inside the bucket.
#[derive(Clone, Debug)]
struct Buckets {
    start: Vec<u32>,
    key: Vec<u32>,
    prefix: Vec<i64>,
}

impl Buckets {
    fn build(
        count: usize,
        entries: impl Iterator<Item = (usize, usize, i64)> + Clone,
        total: usize,
    ) -> Result<Self> {
        let mut start = vec![0u32; count + 1];
        for (b, _, _) in entries.clone() {
            start[b + 1] += 1;
        }
        for b in 0..count {
            start[b + 1] += start[b];
        }
        let mut fill = start.clone();
        let mut key = vec![0u32; total];
        let mut value = vec![0i64; total];
        for (b, k, v) in entries {
            let slot = fill[b] as usize;
            fill[b] += 1;
            key[slot] = k as u32;
            value[slot] = v;
        }
        let mut prefix = value;
        for b in 0..count {
            let (s, e) = (start[b] as usize, start[b + 1] as usize);
            for t in s + 1..e {
                prefix[t] = add(prefix[t - 1], prefix[t])?;
            }
        }
        Ok(Buckets { start, key, prefix })
    }

    /// Sum of the values in bucket `b` whose key is below `limit`.
    #[inline]
    fn sum_below(&self, b: usize, limit: usize) -> i64 {
        let (s, e) = (self.start[b] as usize, self.start[b + 1] as usize);
        let t = self.key[s..e].partition_point(|&k| (k as usize) < limit);
        if t == 0 {
            0
        } else {
            self.prefix[s + t - 1]
        }
    }

    fn len(&self, b: usize) -> usize {
        (self.start[b + 1] - self.start[b]) as usize
    }

    fn keys(&self, b: usize) -> &[u32] {
        &self.key[self.start[b] as usize..self.start[b + 1] as usize]
    }
}

/// Local core oracle: constant-time boundary access and cheap recomputation
/// of an entry from a horizontally or vertically adjacent one.
#[derive(Clone, Debug)]
pub struct Lco<'a> {
    matrix: &'a CondensedMatrix,
    rows: Buckets,
    cols: Buckets,
}

impl<'a> Lco<'a> {
    pub fn new(matrix: &'a CondensedMatrix) -> Result<Self> {
        let (p, q) = (matrix.rows(), matrix.cols());
        if p > u32::MAX as usize || q > u32::MAX as usize {
            return Err(Error::dims("matrix dimensions exceed 32-bit indexing"));
        }
        let core = matrix.core();
        let by_row = core.iter().map(|e| (e.i, e.j, e.v));
        // The core is sorted by (i, j), so a stable counting sort by column
        // leaves each column bucket sorted by row.
        let by_col = core.iter().map(|e| (e.j, e.i, e.v));
        Ok(Lco {
            matrix,
            rows: Buckets::build(p - 1, by_row, core.len())?,
            cols: Buckets::build(q - 1, by_col, core.len())?,
        })
    }

    pub fn matrix(&self) -> &'a CondensedMatrix {
        self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `A[i][j]` where `i == 0` or `j == 0`.
    pub fn boundary(&self, i: usize, j: usize) -> Result<i64> {
        self.check(i, j)?;
        match (i, j) {
            (0, _) => Ok(self.matrix.top_row()[j]),
            (_, 0) => Ok(self.matrix.left_col()[i]),
            _ => Err(Error::InvalidArgument(format!(
                "({i}, {j}) is not on the top row or left column"
            ))),
        }
    }

    /// `A[i+1][j] - A[i][j]`.
    pub fn vdiff(&self, i: usize, j: usize) -> Result<i64> {
        if i + 1 >= self.rows() || j >= self.cols() {
            return Err(self.out_of_range(i + 1, j));
        }
        self.vdiff_unchecked(i, j)
    }

    /// `A[i][j+1] - A[i][j]`.
    pub fn hdiff(&self, i: usize, j: usize) -> Result<i64> {
        if i >= self.rows() || j + 1 >= self.cols() {
            return Err(self.out_of_range(i, j + 1));
        }
        self.hdiff_unchecked(i, j)
    }

    #[inline]
    pub(crate) fn vdiff_unchecked(&self, i: usize, j: usize) -> Result<i64> {
        let left = self.matrix.left_col();
        sub(sub(left[i + 1], left[i])?, self.rows.sum_below(i, j))
    }

    #[inline]
    pub(crate) fn hdiff_unchecked(&self, i: usize, j: usize) -> Result<i64> {
        let top = self.matrix.top_row();
        sub(sub(top[j + 1], top[j])?, self.cols.sum_below(j, i))
    }

    /// Number of core elements in density row `i`.
    pub fn row_len(&self, i: usize) -> usize {
        self.rows.len(i)
    }

    /// Number of core elements in density column `j`.
    pub fn col_len(&self, j: usize) -> usize {
        self.cols.len(j)
    }

    /// Columns of the core elements in density row `i`, increasing.
    pub fn row_bucket(&self, i: usize) -> &[u32] {
        self.rows.keys(i)
    }

    /// Rows of the core elements in density column `j`, increasing.
    pub fn col_bucket(&self, j: usize) -> &[u32] {
        self.cols.keys(j)
    }

    /// Condensed representation of the block `rows x cols`.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Result<CondensedMatrix> {
        let (a, b, c, d) = (rows.start, rows.end, cols.start, cols.end);
        if a >= b || c >= d {
            return Err(Error::InvalidArgument(format!(
                "empty submatrix range [{a}, {b}) x [{c}, {d})"
            )));
        }
        if b > self.rows() || d > self.cols() {
            return Err(self.out_of_range(b - 1, d - 1));
        }
        // Walk row a from the left column to column c, then on to d - 1.
        let mut value = self.matrix.left_col()[a];
        for j in 0..c {
            value = add(value, self.hdiff_unchecked(a, j)?)?;
        }
        let corner = value;
        let mut top_row = Vec::with_capacity(d - c);
        top_row.push(value);
        for j in c..d - 1 {
            value = add(value, self.hdiff_unchecked(a, j)?)?;
            top_row.push(value);
        }
        let mut left_col = Vec::with_capacity(b - a);
        value = corner;
        left_col.push(value);
        for i in a..b - 1 {
            value = add(value, self.vdiff_unchecked(i, c)?)?;
            left_col.push(value);
        }
        // Rows a..b-1 of the density grid are contiguous in the sorted core.
        let core = self.matrix.core();
        let lo = self.rows.start[a] as usize;
        let hi = self.rows.start[b - 1] as usize;
        let elements = core[lo..hi]
            .iter()
            .filter(|e| e.j >= c && e.j + 1 < d)
            .map(|e| CoreElement::new(e.i - a, e.j - c, e.v))
            .collect();
        Ok(CondensedMatrix::from_parts(
            b - a,
            d - c,
            top_row,
            left_col,
            elements,
        ))
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i < self.rows() && j < self.cols() {
            Ok(())
        } else {
            Err(self.out_of_range(i, j))
        }
    }

    fn out_of_range(&self, i: usize, j: usize) -> Error {
        Error::IndexOutOfRange {
            row: i,
            col: j,
            rows: self.rows(),
            cols: self.cols(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::fixtures;
    use crate::matrix::to_condensed;

    #[test]
    fn buckets_of_example_a() {
        let a = to_condensed(&fixtures::a()).unwrap();
        let o = Lco::new(&a).unwrap();
        assert_eq!(o.row_bucket(0), &[0]);
        assert_eq!(o.row_bucket(1), &[2]);
        assert!(o.row_bucket(2).is_empty());
        assert_eq!(o.col_bucket(0), &[0]);
        assert!(o.col_bucket(1).is_empty());
        assert_eq!(o.col_bucket(2), &[1]);
        let total: usize = (0..3).map(|i| o.row_len(i)).sum();
        assert_eq!(total, (0..3).map(|j| o.col_len(j)).sum::<usize>());
    }

    #[test]
    fn adjacent_differences() {
        let dense = fixtures::a();
        let a = to_condensed(&dense).unwrap();
        let o = Lco::new(&a).unwrap();
        assert_eq!(o.vdiff(0, 1).unwrap(), -3);
        assert_eq!(o.hdiff(1, 2).unwrap(), 1);
        for i in 0..4 {
            for j in 0..4 {
                if i + 1 < 4 {
                    assert_eq!(o.vdiff(i, j).unwrap(), dense.get(i + 1, j) - dense.get(i, j));
                }
                if j + 1 < 4 {
                    assert_eq!(o.hdiff(i, j).unwrap(), dense.get(i, j + 1) - dense.get(i, j));
                }
            }
        }
        assert!(o.vdiff(3, 0).is_err());
        assert!(o.hdiff(0, 3).is_err());
    }

    #[test]
    fn boundary_access() {
        let a = to_condensed(&fixtures::a()).unwrap();
        let o = Lco::new(&a).unwrap();
        assert_eq!(o.boundary(0, 2).unwrap(), 5);
        assert_eq!(o.boundary(3, 0).unwrap(), 0);
        assert_eq!(o.boundary(0, 0).unwrap(), 0);
        assert!(matches!(o.boundary(1, 1), Err(Error::InvalidArgument(_))));
        assert!(o.boundary(4, 0).is_err());
    }

    #[test]
    fn empty_core_buckets() {
        let c = CondensedMatrix::new(3, 3, vec![1, 4, 9], vec![1, 0, -1], vec![]).unwrap();
        let o = Lco::new(&c).unwrap();
        for t in 0..2 {
            assert!(o.row_bucket(t).is_empty() && o.col_bucket(t).is_empty());
        }
        for j in 0..3 {
            assert_eq!(o.vdiff(0, j).unwrap(), -1);
        }
        for i in 0..3 {
            assert_eq!(o.hdiff(i, 1).unwrap(), 5);
        }
    }

    #[test]
    fn submatrix_of_example_a() {
        let dense = fixtures::a();
        let a = to_condensed(&dense).unwrap();
        let o = Lco::new(&a).unwrap();
        let s = o.submatrix(1..4, 0..4).unwrap();
        assert_eq!(s.top_row(), &[0, 1, 2, 3]);
        assert_eq!(s.core(), &[CoreElement::new(0, 2, 3)]);
        assert_eq!(s.to_dense().unwrap(), dense.slice(1, 4, 0, 4));

        assert_eq!(o.submatrix(0..4, 0..4).unwrap(), a);

        for i in 0..4 {
            for j in 0..4 {
                let one = o.submatrix(i..i + 1, j..j + 1).unwrap();
                assert_eq!(one.delta(), 0);
                assert_eq!(one.top_row(), &[dense.get(i, j)]);
            }
        }
        assert!(o.submatrix(2..2, 0..1).is_err());
        assert!(o.submatrix(0..5, 0..1).is_err());
    }
}
