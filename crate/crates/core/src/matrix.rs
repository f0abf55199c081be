//! Dense and condensed matrices, density grids, and the Monge property.
//!
//! The density of a `p x q` matrix `A` is the `(p-1) x (q-1)` grid
//!
//! ```text
//! dens(A)[i][j] = A[i][j+1] + A[i+1][j] - A[i][j] - A[i+1][j+1]
//! ```
//!
//! and `A` is Monge exactly when every density entry is non-negative. The
//! nonzero density entries form the *core*; together with the topmost row and
//! the leftmost column they determine `A` completely, which is what
//! [`CondensedMatrix`] stores.

use crate::error::{add, mixed_difference, sub, Error, Result};

/// A row-major grid of signed 64-bit integers.
///
/// Zero-sized grids are allowed so that the density of a `1 x q` or `p x 1`
/// matrix has a value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::dims(format!("{rows}x{cols} is too large")))?;
        if data.len() != expected {
            return Err(Error::dims(format!(
                "{rows}x{cols} matrix needs {expected} entries, got {}",
                data.len()
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::dims(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        DenseMatrix::new(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Entry `(i, j)`. Panics when out of range, like slice indexing.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.cols + j]
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<i64> {
        if i < self.rows && j < self.cols {
            Ok(self.data[i * self.cols + j])
        } else {
            Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries on the intersection of the given (sorted or not) rows and
    /// columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        DenseMatrix::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]))
    }

    /// The contiguous block `[r0, r1) x [c0, c1)`.
    pub fn slice(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> DenseMatrix {
        DenseMatrix::from_fn(r1 - r0, c1 - c0, |a, b| self.get(r0 + a, c0 + b))
    }

    pub fn negated(&self) -> Result<DenseMatrix> {
        let data = self
            .data
            .iter()
            .map(|&v| v.checked_neg().ok_or_else(|| Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl std::fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// A nonzero density entry `(i, j, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoreElement {
    pub i: usize,
    pub j: usize,
    pub v: i64,
}

impl CoreElement {
    pub const fn new(i: usize, j: usize, v: i64) -> Self {
        CoreElement { i, j, v }
    }
}

impl From<(usize, usize, i64)> for CoreElement {
    fn from((i, j, v): (usize, usize, i64)) -> Self {
        CoreElement { i, j, v }
    }
}

/// The core of a matrix together with its size and the sum of all density
/// entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSummary {
    pub elements: Vec<CoreElement>,
    pub delta: usize,
    pub core_sum: i64,
}

/// The density grid of `m`.
pub fn density(m: &DenseMatrix) -> Result<DenseMatrix> {
    let rows = m.rows.saturating_sub(1);
    let cols = m.cols.saturating_sub(1);
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            data.push(mixed_difference(
                m.get(i, j),
                m.get(i, j + 1),
                m.get(i + 1, j),
                m.get(i + 1, j + 1),
            )?);
        }
    }
    DenseMatrix::new(rows, cols, data)
}

/// Whether every adjacent 2x2 block satisfies the Monge inequality.
pub fn is_monge(m: &DenseMatrix) -> Result<bool> {
    Ok(density(m)?.as_slice().iter().all(|&d| d >= 0))
}

pub fn core_of(m: &DenseMatrix) -> Result<CoreSummary> {
    let dens = density(m)?;
    let mut elements = Vec::new();
    let mut core_sum = 0i64;
    for i in 0..dens.rows() {
        for j in 0..dens.cols() {
            let v = dens.get(i, j);
            core_sum = add(core_sum, v)?;
            if v != 0 {
                elements.push(CoreElement { i, j, v });
            }
        }
    }
    Ok(CoreSummary {
        delta: elements.len(),
        elements,
        core_sum,
    })
}

/// A matrix stored as its topmost row, its leftmost column, and its core.
///
/// The core is kept sorted by `(i, j)` with distinct positions and nonzero
/// values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensedMatrix {
    rows: usize,
    cols: usize,
    top_row: Vec<i64>,
    left_col: Vec<i64>,
    core: Vec<CoreElement>,
}

impl CondensedMatrix {
    /// Validates the boundary arrays and normalizes the core: elements are
    /// sorted, entries sharing a position are summed, and zeros dropped.
    pub fn new(
        rows: usize,
        cols: usize,
        top_row: Vec<i64>,
        left_col: Vec<i64>,
        mut core: Vec<CoreElement>,
    ) -> Result<Self> {
        Self::check_boundary(rows, cols, &top_row, &left_col)?;
        for e in &core {
            if e.i + 1 >= rows || e.j + 1 >= cols {
                return Err(Error::invalid(format!(
                    "core element ({}, {}) outside the {}x{} density grid",
                    e.i,
                    e.j,
                    rows - 1,
                    cols - 1
                )));
            }
        }
        core.sort_unstable_by_key(|e| (e.i, e.j));
        let mut merged: Vec<CoreElement> = Vec::with_capacity(core.len());
        for e in core {
            match merged.last_mut() {
                Some(last) if last.i == e.i && last.j == e.j => last.v = add(last.v, e.v)?,
                _ => merged.push(e),
            }
        }
        merged.retain(|e| e.v != 0);
        Ok(CondensedMatrix {
            rows,
            cols,
            top_row,
            left_col,
            core: merged,
        })
    }

    /// Builds from parts already known to satisfy every invariant. Only
    /// checked in debug builds.
    pub(crate) fn from_parts(
        rows: usize,
        cols: usize,
        top_row: Vec<i64>,
        left_col: Vec<i64>,
        core: Vec<CoreElement>,
    ) -> Self {
        debug_assert!(Self::check_boundary(rows, cols, &top_row, &left_col).is_ok());
        debug_assert!(core
            .windows(2)
            .all(|w| (w[0].i, w[0].j) < (w[1].i, w[1].j)));
        debug_assert!(core
            .iter()
            .all(|e| e.v != 0 && e.i + 1 < rows && e.j + 1 < cols));
        CondensedMatrix {
            rows,
            cols,
            top_row,
            left_col,
            core,
        }
    }

    fn check_boundary(rows: usize, cols: usize, top: &[i64], left: &[i64]) -> Result<()> {
        if rows == 0 || cols == 0 {
            return Err(Error::dims(format!(
                "condensed matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if top.len() != cols {
            return Err(Error::dims(format!(
                "top row has {} entries, expected {cols}",
                top.len()
            )));
        }
        if left.len() != rows {
            return Err(Error::dims(format!(
                "left column has {} entries, expected {rows}",
                left.len()
            )));
        }
        if top[0] != left[0] {
            return Err(Error::invalid(format!(
                "top row starts with {} but left column starts with {}",
                top[0], left[0]
            )));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn top_row(&self) -> &[i64] {
        &self.top_row
    }

    pub fn left_col(&self) -> &[i64] {
        &self.left_col
    }

    pub fn core(&self) -> &[CoreElement] {
        &self.core
    }

    /// Core size.
    pub fn delta(&self) -> usize {
        self.core.len()
    }

    /// Sum of all density entries.
    pub fn core_sum(&self) -> Result<i64> {
        self.core.iter().try_fold(0i64, |acc, e| add(acc, e.v))
    }

    /// True when every core value is positive, i.e. the matrix is Monge.
    pub fn is_monge(&self) -> bool {
        self.core.iter().all(|e| e.v > 0)
    }

    /// True when every core value is negative, i.e. the matrix is anti-Monge.
    pub fn is_anti_monge(&self) -> bool {
        self.core.iter().all(|e| e.v < 0)
    }

    /// Entry `(b, d)` by a linear scan over the core. Use
    /// [`Cmo`](crate::oracle::Cmo) for repeated access.
    pub fn entry(&self, b: usize, d: usize) -> Result<i64> {
        if b >= self.rows || d >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: b,
                col: d,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut covered = 0i64;
        for e in &self.core {
            if e.i >= b {
                break;
            }
            if e.j < d {
                covered = add(covered, e.v)?;
            }
        }
        sub(
            sub(add(self.top_row[d], self.left_col[b])?, self.top_row[0])?,
            covered,
        )
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let (p, q) = (self.rows, self.cols);
        let mut grid = DenseMatrix::zeros(p, q);
        for d in 0..q {
            grid.set(0, d, self.top_row[d]);
        }
        for b in 0..p {
            grid.set(b, 0, self.left_col[b]);
        }
        // A[i+1][j+1] = A[i][j+1] + A[i+1][j] - A[i][j] - dens[i][j]
        let mut core = self.core.iter().peekable();
        for i in 0..p.saturating_sub(1) {
            for j in 0..q - 1 {
                let dens = match core.next_if(|e| e.i == i && e.j == j) {
                    Some(e) => e.v,
                    None => 0,
                };
                let value = mixed_difference(
                    grid.get(i, j),
                    grid.get(i, j + 1),
                    grid.get(i + 1, j),
                    dens,
                )?;
                grid.set(i + 1, j + 1, value);
            }
        }
        Ok(grid)
    }

    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        to_condensed(m)
    }

    /// Flips the sign of every stored value, exchanging Monge and anti-Monge.
    pub fn negate(&self) -> Result<CondensedMatrix> {
        let neg = |v: &i64| v.checked_neg().ok_or_else(|| Error::Overflow);
        Ok(CondensedMatrix {
            rows: self.rows,
            cols: self.cols,
            top_row: self.top_row.iter().map(neg).collect::<Result<_>>()?,
            left_col: self.left_col.iter().map(neg).collect::<Result<_>>()?,
            core: self
                .core
                .iter()
                .map(|e| Ok(CoreElement::new(e.i, e.j, neg(&e.v)?)))
                .collect::<Result<_>>()?,
        })
    }
}

pub fn to_condensed(m: &DenseMatrix) -> Result<CondensedMatrix> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::dims("cannot condense an empty matrix"));
    }
    let top_row = m.row(0).to_vec();
    let left_col = (0..m.rows).map(|i| m.get(i, 0)).collect();
    let core = core_of(m)?.elements;
    Ok(CondensedMatrix::from_parts(
        m.rows, m.cols, top_row, left_col, core,
    ))
}

pub fn to_dense(c: &CondensedMatrix) -> Result<DenseMatrix> {
    c.to_dense()
}

pub fn negate(c: &CondensedMatrix) -> Result<CondensedMatrix> {
    c.negate()
}


#[cfg(test)]
mod tests {
    use super::*;
    use fixtures::*;

    fn els(v: &[(usize, usize, i64)]) -> Vec<CoreElement> {
        v.iter().copied().map(CoreElement::from).collect()
    }

    #[test]
    fn density_of_example_a() {
        let d = density(&a()).unwrap();
        assert_eq!(d.to_rows(), vec![vec![3, 0, 0], vec![0, 0, 3], vec![0, 0, 0]]);
    }

    #[test]
    fn density_of_constant_and_degenerate() {
        let k = DenseMatrix::from_fn(3, 3, |_, _| 7);
        assert_eq!(density(&k).unwrap().to_rows(), vec![vec![0, 0], vec![0, 0]]);
        let row = DenseMatrix::from_rows(&[[1, 5, -3]]).unwrap();
        let d = density(&row).unwrap();
        assert_eq!((d.rows(), d.cols()), (0, 2));
        assert!(d.is_empty());
    }

    #[test]
    fn monge_checks() {
        assert!(is_monge(&a()).unwrap());
        assert!(is_monge(&b()).unwrap());
        assert!(is_monge(&c()).unwrap());
        assert!(!is_monge(&DenseMatrix::from_rows(&[[0, 0], [0, 1]]).unwrap()).unwrap());
        assert!(is_monge(&DenseMatrix::from_rows(&[[42]]).unwrap()).unwrap());
    }

    #[test]
    fn cores_of_examples() {
        let ca = core_of(&a()).unwrap();
        assert_eq!(ca.delta, 2);
        assert_eq!(ca.elements, els(&[(0, 0, 3), (1, 2, 3)]));
        assert_eq!(ca.core_sum, 6);

        let cb = core_of(&b()).unwrap();
        assert_eq!(cb.delta, 3);
        assert_eq!(cb.elements, els(&[(0, 0, 2), (1, 1, 2), (2, 2, 2)]));

        let k = core_of(&DenseMatrix::from_fn(4, 5, |_, _| 7)).unwrap();
        assert_eq!((k.delta, k.core_sum), (0, 0));
        assert!(k.elements.is_empty());
    }

    #[test]
    fn condense_example_a() {
        let ca = to_condensed(&a()).unwrap();
        assert_eq!(ca.top_row(), &[0, 4, 5, 6]);
        assert_eq!(ca.left_col(), &[0, 0, 0, 0]);
        assert_eq!(ca.core(), els(&[(0, 0, 3), (1, 2, 3)]).as_slice());
        assert_eq!(ca.to_dense().unwrap(), a());
        assert_eq!(ca.entry(1, 2).unwrap(), 2);

        let one = to_condensed(&DenseMatrix::from_rows(&[[5]]).unwrap()).unwrap();
        assert_eq!((one.top_row(), one.left_col(), one.delta()), (&[5][..], &[5][..], 0));

        assert_eq!(to_condensed(&c()).unwrap().delta(), 6);
    }

    #[test]
    fn empty_core_reconstruction() {
        let c = CondensedMatrix::new(3, 4, vec![1, 2, 3, 4], vec![1, 10, 100], vec![]).unwrap();
        let d = c.to_dense().unwrap();
        for b in 0..3 {
            for e in 0..4 {
                assert_eq!(d.get(b, e), c.top_row()[e] + c.left_col()[b] - 1);
            }
        }
    }

    #[test]
    fn negation() {
        let ca = to_condensed(&a()).unwrap();
        let n = ca.negate().unwrap();
        assert_eq!(n.core(), els(&[(0, 0, -3), (1, 2, -3)]).as_slice());
        assert_eq!(n.negate().unwrap(), ca);
        let flat = CondensedMatrix::new(2, 2, vec![1, 2], vec![1, 3], vec![]).unwrap();
        assert_eq!(flat.negate().unwrap().delta(), 0);
        assert!(ca.is_monge() && n.is_anti_monge());
    }

    #[test]
    fn new_normalizes_core() {
        let c = CondensedMatrix::new(
            3,
            3,
            vec![0, 0, 0],
            vec![0, 0, 0],
            els(&[(1, 1, 2), (0, 0, 1), (1, 1, 3), (0, 1, 4), (0, 1, -4)]),
        )
        .unwrap();
        assert_eq!(c.core(), els(&[(0, 0, 1), (1, 1, 5)]).as_slice());
    }

    #[test]
    fn new_rejects_bad_shapes() {
        assert!(matches!(
            CondensedMatrix::new(2, 2, vec![0, 1], vec![1, 0], vec![]),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(matches!(
            CondensedMatrix::new(2, 2, vec![0], vec![0, 0], vec![]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(CondensedMatrix::new(2, 2, vec![0, 0], vec![0, 0], els(&[(1, 0, 1)])).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let m = DenseMatrix::from_rows(&[[i64::MIN, 0], [0, 0]]).unwrap();
        assert!(matches!(density(&m), Err(Error::Overflow)));
    }
}
