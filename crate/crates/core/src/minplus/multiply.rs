use crate::error::{add, mixed_difference, sub, Error, Result};
use crate::matrix::{CondensedMatrix, CoreElement};
use crate::oracle::Lco;

use super::compress::{compress_cow, decompress_owned};
use super::witness::Node;

/// Min-plus product of two Monge matrices in condensed form. When `nodes` is
/// present the recursion tree is appended to it; the returned id is the
/// root's index (or 0 when not recording).
pub(crate) fn product(
    a_star: &CondensedMatrix,
    b_star: &CondensedMatrix,
    nodes: &mut Option<Vec<Node>>,
) -> Result<(CondensedMatrix, u32)> {
    let (a, b, maps) = compress_cow(a_star, b_star)?;
    let (p, q, r) = (a.rows(), a.cols(), b.cols());

    let (c, id) = if p == 1 && r == 1 {
        let (top, left) = (a.top_row(), b.left_col());
        let mut best = add(top[0], left[0])?;
        let mut arg = 0;
        for j in 1..q {
            let cand = add(top[j], left[j])?;
            if cand < best {
                best = cand;
                arg = j;
            }
        }
        let id = push(nodes, || Node::Leaf {
            witness: arg as u32,
        });
        (
            CondensedMatrix::from_parts(1, 1, vec![best], vec![best], Vec::new()),
            id,
        )
    } else {
        // Both density grids empty would have compressed to 1 x 1.
        assert!(q >= 2, "non-trivial product with a single inner index");
        let m = split_point(&a, &b);
        let (al, ar) = split_columns(&a, m)?;
        let (bl, br) = split_rows(&b, m)?;
        drop((a, b));
        let (cl, left) = product(&al, &bl, nodes)?;
        drop((al, bl));
        let (cr, right) = product(&ar, &br, nodes)?;
        drop((ar, br));
        let (c, boundary) = merge(&cl, &cr)?;
        let c = decompress_owned(a_star, b_star, &maps, c)?;
        let id = push(nodes, || Node::Internal {
            row_map: maps.row_of_original,
            col_map: maps.col_of_original,
            split: m as u32,
            boundary,
            left,
            right,
        });
        return Ok((c, id));
    };
    let c = decompress_owned(a_star, b_star, &maps, c)?;
    Ok((c, id))
}

/// `A[.., ..m]` and `A[.., m..]`.
fn split_columns(a: &CondensedMatrix, m: usize) -> Result<(CondensedMatrix, CondensedMatrix)> {
    let (p, q) = (a.rows(), a.cols());
    let (top, left) = (a.top_row(), a.left_col());
    let mut left_core = Vec::new();
    let mut right_core = Vec::new();
    // Column m of A, from the core elements left of it.
    let mut column = Vec::with_capacity(p);
    let shift = sub(top[m], top[0])?;
    let mut covered = 0i64;
    let mut next = 0;
    let core = a.core();
    for i in 0..p {
        while next < core.len() && core[next].i < i {
            let e = core[next];
            if e.j < m {
                covered = add(covered, e.v)?;
                if e.j + 1 < m {
                    left_core.push(e);
                }
            } else {
                right_core.push(CoreElement::new(e.i, e.j - m, e.v));
            }
            next += 1;
        }
        column.push(sub(add(left[i], shift)?, covered)?);
    }
    Ok((
        CondensedMatrix::from_parts(p, m, top[..m].to_vec(), left.to_vec(), left_core),
        CondensedMatrix::from_parts(p, q - m, top[m..].to_vec(), column, right_core),
    ))
}

/// `B[..m, ..]` and `B[m.., ..]`.
fn split_rows(b: &CondensedMatrix, m: usize) -> Result<(CondensedMatrix, CondensedMatrix)> {
    let (q, r) = (b.rows(), b.cols());
    let (top, left) = (b.top_row(), b.left_col());
    let core = b.core();
    let cut = core.partition_point(|e| e.i < m);
    // Row m of B, from the core elements above it.
    let mut above = vec![0i64; r];
    for e in &core[..cut] {
        above[e.j + 1] = add(above[e.j + 1], e.v)?;
    }
    let shift = sub(left[m], left[0])?;
    let mut covered = 0i64;
    let mut row = Vec::with_capacity(r);
    for k in 0..r {
        covered = add(covered, above[k])?;
        row.push(sub(add(top[k], shift)?, covered)?);
    }
    let upper = core[..cut].iter().filter(|e| e.i + 1 < m).copied().collect();
    let lower = core[cut..]
        .iter()
        .map(|e| CoreElement::new(e.i - m, e.j, e.v))
        .collect();
    Ok((
        CondensedMatrix::from_parts(m, r, top.to_vec(), left[..m].to_vec(), upper),
        CondensedMatrix::from_parts(q - m, r, row, left[m..].to_vec(), lower),
    ))
}

fn push(nodes: &mut Option<Vec<Node>>, node: impl FnOnce() -> Node) -> u32 {
    match nodes {
        Some(list) => {
            list.push(node());
            (list.len() - 1) as u32
        }
        None => 0,
    }
}

/// The largest `m` in `[1, q)` such that the core elements falling entirely
/// inside `A[.., ..m]` and `B[..m, ..]` make up at most half of the total.
///
/// A core element of `A` in density column `j` lies in the left part iff
/// `j < m - 1`, and the same holds for the density row of a `B` element. So
/// `m - 1` is capped by the `⌊total/2⌋`-th smallest such coordinate, found by
/// selection.
pub(crate) fn split_point(a: &CondensedMatrix, b: &CondensedMatrix) -> usize {
    let q = a.cols();
    let mut keys: Vec<usize> = a
        .core()
        .iter()
        .map(|e| e.j)
        .chain(b.core().iter().map(|e| e.i))
        .collect();
    if keys.is_empty() {
        return q - 1;
    }
    let t = keys.len() / 2;
    let (_, &mut kth, _) = keys.select_nth_unstable(t);
    (kth + 1).min(q - 1)
}

#[derive(Clone, Copy, Default)]
struct Window {
    /// Row `i`, columns `jn - 1` and `jn`.
    up_prev: i64,
    up: i64,
    /// Row `i + 1`, columns `jn - 1` and `jn`.
    low_prev: i64,
    low: i64,
}

impl Window {
    fn move_right(&mut self, o: &Lco<'_>, i: usize, jn: usize, has_low: bool) -> Result<()> {
        self.up_prev = self.up;
        self.low_prev = self.low;
        if jn + 1 < o.cols() {
            self.up = add(self.up, o.hdiff_unchecked(i, jn)?)?;
            if has_low {
                self.low = add(self.low, o.hdiff_unchecked(i + 1, jn)?)?;
            }
        }
        Ok(())
    }

    /// Shifts the window from rows `(i, i + 1)` to `(i - 1, i)`.
    fn move_up(&mut self, o: &Lco<'_>, i: usize, jn: usize) -> Result<()> {
        self.low_prev = self.up_prev;
        self.low = self.up;
        if jn >= 1 {
            self.up_prev = sub(self.up_prev, o.vdiff_unchecked(i - 1, jn - 1)?)?;
        }
        if jn < o.cols() {
            self.up = sub(self.up, o.vdiff_unchecked(i - 1, jn)?)?;
        }
        Ok(())
    }
}

/// Elementwise minimum of two `p x r` Monge products computed over the left
/// and right inner ranges.
///
/// Returns the condensed minimum and, per row, the number of leading columns
/// taken from the left product. The boundary is traced from the bottom-left
/// corner to the top-right one; density entries the boundary passes through
/// are computed from the four neighbouring values, all others are inherited.
pub(crate) fn merge(
    cl: &CondensedMatrix,
    cr: &CondensedMatrix,
) -> Result<(CondensedMatrix, Vec<u32>)> {
    let (p, r) = (cl.rows(), cl.cols());
    debug_assert_eq!((p, r), (cr.rows(), cr.cols()));
    let (ol, or) = (Lco::new(cl)?, Lco::new(cr)?);

    let mut boundary = vec![0u32; p];
    let mut segment = vec![(0usize, 0usize); p];
    let mut fresh: Vec<CoreElement> = Vec::new();

    let mut i = p - 1;
    let mut jn = 0usize;
    let mut wl = Window {
        up: cl.left_col()[i],
        ..Window::default()
    };
    let mut wr = Window {
        up: cr.left_col()[i],
        ..Window::default()
    };
    segment[i].0 = 0;
    loop {
        if i + 1 < p && jn >= 1 && jn < r {
            let d = mixed_difference(
                wl.up_prev.min(wr.up_prev),
                wl.up.min(wr.up),
                wl.low_prev.min(wr.low_prev),
                wl.low.min(wr.low),
            )?;
            if d < 0 {
                return Err(Error::NotMonge(format!(
                    "product has density {d} at ({i}, {}); an input is not Monge",
                    jn - 1
                )));
            }
            if d > 0 {
                fresh.push(CoreElement::new(i, jn - 1, d));
            }
        }
        if jn == r || wl.up > wr.up {
            boundary[i] = jn as u32;
            segment[i].1 = fresh.len();
            if i == 0 {
                break;
            }
            wl.move_up(&ol, i, jn)?;
            wr.move_up(&or, i, jn)?;
            i -= 1;
            segment[i].0 = fresh.len();
        } else {
            wl.move_right(&ol, i, jn, i + 1 < p)?;
            wr.move_right(&or, i, jn, i + 1 < p)?;
            jn += 1;
        }
    }

    let mut core = Vec::with_capacity(cl.delta() + cr.delta() + fresh.len());
    let (mut lt, mut rt) = (0usize, 0usize);
    let (lcore, rcore) = (cl.core(), cr.core());
    for i in 0..p - 1 {
        let keep_left = boundary[i + 1] as usize;
        let keep_right = boundary[i] as usize;
        while lt < lcore.len() && lcore[lt].i == i {
            if lcore[lt].j + 1 < keep_left {
                core.push(lcore[lt]);
            }
            lt += 1;
        }
        let (s, e) = segment[i];
        core.extend_from_slice(&fresh[s..e]);
        while rt < rcore.len() && rcore[rt].i == i {
            if rcore[rt].j >= keep_right {
                core.push(rcore[rt]);
            }
            rt += 1;
        }
    }

    let top_row = cl
        .top_row()
        .iter()
        .zip(cr.top_row())
        .map(|(&x, &y)| x.min(y))
        .collect();
    let left_col = cl
        .left_col()
        .iter()
        .zip(cr.left_col())
        .map(|(&x, &y)| x.min(y))
        .collect();
    Ok((
        CondensedMatrix::from_parts(p, r, top_row, left_col, core),
        boundary,
    ))
}
