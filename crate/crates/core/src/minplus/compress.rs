use std::borrow::Cow;

use crate::error::{add, sub, Error, Result};
use crate::matrix::{CondensedMatrix, CoreElement};

/// Row and column correspondences between an uncompressed pair of factors
/// and its compressed form.
///
/// A row `i > 0` of the left factor is redundant when density row `i - 1` is
/// empty: it then differs from row `i - 1` by a constant, and so does the
/// corresponding row of the product. Columns of the right factor are treated
/// the same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionMap {
    /// Original indices of the kept rows, increasing; starts with 0.
    pub kept_rows: Vec<u32>,
    /// For every original row, the index of the greatest kept row not above it.
    pub row_of_original: Vec<u32>,
    pub kept_cols: Vec<u32>,
    pub col_of_original: Vec<u32>,
}

impl CompressionMap {
    pub fn is_identity(&self) -> bool {
        self.kept_rows.len() == self.row_of_original.len()
            && self.kept_cols.len() == self.col_of_original.len()
    }
}

/// Kept indices and the original-to-kept map along one axis, given which
/// density lines are occupied.
fn keep(len: usize, occupied: impl Iterator<Item = usize>) -> (Vec<u32>, Vec<u32>) {
    let mut mark = vec![false; len];
    mark[0] = true;
    for line in occupied {
        mark[line + 1] = true;
    }
    let mut kept = Vec::new();
    let mut of_original = Vec::with_capacity(len);
    for (x, &m) in mark.iter().enumerate() {
        if m {
            kept.push(x as u32);
        }
        of_original.push(kept.len() as u32 - 1);
    }
    (kept, of_original)
}

/// Removes the redundant rows of `a_star` and the redundant columns of
/// `b_star`.
pub fn compress(
    a_star: &CondensedMatrix,
    b_star: &CondensedMatrix,
) -> Result<(CondensedMatrix, CondensedMatrix, CompressionMap)> {
    let (a, b, maps) = compress_cow(a_star, b_star)?;
    Ok((a.into_owned(), b.into_owned(), maps))
}

/// Like [`compress`], borrowing a factor that has nothing to remove.
pub(crate) fn compress_cow<'a>(
    a_star: &'a CondensedMatrix,
    b_star: &'a CondensedMatrix,
) -> Result<(
    Cow<'a, CondensedMatrix>,
    Cow<'a, CondensedMatrix>,
    CompressionMap,
)> {
    if a_star.cols() != b_star.rows() {
        return Err(Error::dims(format!(
            "inner dimensions differ: {} vs {}",
            a_star.cols(),
            b_star.rows()
        )));
    }
    let (kept_rows, row_of_original) = keep(a_star.rows(), a_star.core().iter().map(|e| e.i));
    let (kept_cols, col_of_original) = keep(b_star.cols(), b_star.core().iter().map(|e| e.j));

    let a = if kept_rows.len() == a_star.rows() {
        Cow::Borrowed(a_star)
    } else {
        Cow::Owned(CondensedMatrix::from_parts(
            kept_rows.len(),
            a_star.cols(),
            a_star.top_row().to_vec(),
            kept_rows
                .iter()
                .map(|&i| a_star.left_col()[i as usize])
                .collect(),
            a_star
                .core()
                .iter()
                .map(|e| CoreElement::new(row_of_original[e.i + 1] as usize - 1, e.j, e.v))
                .collect(),
        ))
    };
    let b = if kept_cols.len() == b_star.cols() {
        Cow::Borrowed(b_star)
    } else {
        Cow::Owned(CondensedMatrix::from_parts(
            b_star.rows(),
            kept_cols.len(),
            kept_cols
                .iter()
                .map(|&k| b_star.top_row()[k as usize])
                .collect(),
            b_star.left_col().to_vec(),
            b_star
                .core()
                .iter()
                .map(|e| CoreElement::new(e.i, col_of_original[e.j + 1] as usize - 1, e.v))
                .collect(),
        ))
    };
    Ok((
        a,
        b,
        CompressionMap {
            kept_rows,
            row_of_original,
            kept_cols,
            col_of_original,
        },
    ))
}

/// Expands the product of a compressed pair into the product of the
/// original pair.
pub fn decompress(
    a_star: &CondensedMatrix,
    b_star: &CondensedMatrix,
    maps: &CompressionMap,
    c: &CondensedMatrix,
) -> Result<CondensedMatrix> {
    if maps.is_identity() && c.rows() == a_star.rows() && c.cols() == b_star.cols() {
        return Ok(c.clone());
    }
    decompress_owned(a_star, b_star, maps, c.clone())
}

pub(crate) fn decompress_owned(
    a_star: &CondensedMatrix,
    b_star: &CondensedMatrix,
    maps: &CompressionMap,
    c: CondensedMatrix,
) -> Result<CondensedMatrix> {
    if c.rows() != maps.kept_rows.len()
        || c.cols() != maps.kept_cols.len()
        || a_star.rows() != maps.row_of_original.len()
        || b_star.cols() != maps.col_of_original.len()
    {
        return Err(Error::dims(
            "compression map does not match the matrices being expanded",
        ));
    }
    if maps.is_identity() {
        return Ok(c);
    }
    let (a_left, b_top) = (a_star.left_col(), b_star.top_row());
    let left_col = maps
        .row_of_original
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let kept = maps.kept_rows[k as usize] as usize;
            add(c.left_col()[k as usize], sub(a_left[i], a_left[kept])?)
        })
        .collect::<Result<Vec<_>>>()?;
    let top_row = maps
        .col_of_original
        .iter()
        .enumerate()
        .map(|(j, &g)| {
            let kept = maps.kept_cols[g as usize] as usize;
            add(c.top_row()[g as usize], sub(b_top[j], b_top[kept])?)
        })
        .collect::<Result<Vec<_>>>()?;
    let core = c
        .core()
        .iter()
        .map(|e| {
            CoreElement::new(
                maps.kept_rows[e.i + 1] as usize - 1,
                maps.kept_cols[e.j + 1] as usize - 1,
                e.v,
            )
        })
        .collect();
    Ok(CondensedMatrix::from_parts(
        a_star.rows(),
        b_star.cols(),
        top_row,
        left_col,
        core,
    ))
}
