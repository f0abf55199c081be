use crate::error::{add, sub, Error, Result};
use crate::matrix::CondensedMatrix;

#[derive(Clone, Copy, Debug)]
struct Node {
    left: u32,
    right: u32,
    sum: i64,
}

/// Core-based matrix oracle: random access to any entry of a condensed
/// matrix in `O(log δ)` time.
///
/// Dominance sums over the core are answered by a persistent segment tree
/// keyed on the distinct core columns. Version `b` of the tree holds every
/// core element in density rows `< b`.
#[derive(Clone, Debug)]
pub struct Cmo {
    rows: usize,
    cols: usize,
    top_row: Vec<i64>,
    left_col: Vec<i64>,
    /// Number of distinct core columns below `d`, for `d <= q`.
    col_rank: Vec<u32>,
    /// Tree root holding the core elements with row below `b`, for `b <= p`.
    version: Vec<u32>,
    nodes: Vec<Node>,
    width: u32,
}

impl Cmo {
    pub fn new(m: &CondensedMatrix) -> Result<Self> {
        let (p, q) = (m.rows(), m.cols());
        let core = m.core();
        if core.len() >= (u32::MAX as usize) / 64 {
            return Err(Error::dims("core too large for the oracle"));
        }
        let mut distinct: Vec<usize> = core.iter().map(|e| e.j).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let width = distinct.len() as u32;

        let mut col_rank = Vec::with_capacity(q + 1);
        let mut r = 0usize;
        for d in 0..=q {
            while r < distinct.len() && distinct[r] < d {
                r += 1;
            }
            col_rank.push(r as u32);
        }

        let mut cmo = Cmo {
            rows: p,
            cols: q,
            top_row: m.top_row().to_vec(),
            left_col: m.left_col().to_vec(),
            col_rank,
            version: Vec::with_capacity(p + 1),
            nodes: Vec::with_capacity(1 + core.len() * (2 + width.max(1).ilog2() as usize)),
            width,
        };
        cmo.nodes.push(Node {
            left: 0,
            right: 0,
            sum: 0,
        });
        let mut root = 0u32;
        let mut next = core.iter().peekable();
        for b in 0..p {
            cmo.version.push(root);
            while let Some(e) = next.peek() {
                if e.i != b {
                    break;
                }
                let rank = distinct.binary_search(&e.j).unwrap() as u32;
                root = cmo.insert(root, rank, e.v)?;
                next.next();
            }
        }
        cmo.version.push(root);
        Ok(cmo)
    }

    fn insert(&mut self, root: u32, pos: u32, v: i64) -> Result<u32> {
        let mut path = Vec::with_capacity(32);
        let (mut lo, mut hi) = (0u32, self.width);
        let mut cur = root;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let node = self.nodes[cur as usize];
            if pos < mid {
                path.push((node, false));
                cur = node.left;
                hi = mid;
            } else {
                path.push((node, true));
                cur = node.right;
                lo = mid;
            }
        }
        let leaf = self.nodes[cur as usize];
        let mut child = self.push(Node {
            left: 0,
            right: 0,
            sum: add(leaf.sum, v)?,
        });
        while let Some((mut node, went_right)) = path.pop() {
            if went_right {
                node.right = child;
            } else {
                node.left = child;
            }
            node.sum = add(node.sum, v)?;
            child = self.push(node);
        }
        Ok(child)
    }

    fn push(&mut self, node: Node) -> u32 {
        self.nodes.push(node);
        (self.nodes.len() - 1) as u32
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sum of core values `v` over elements `(i, j, v)` with `i < b`, `j < d`,
    /// for `b <= rows` and `d <= cols`.
    pub fn dominance_sum(&self, b: usize, d: usize) -> Result<i64> {
        let limit = self.col_rank[d.min(self.cols)];
        let mut cur = self.version[b.min(self.rows)];
        let (mut lo, mut hi) = (0u32, self.width);
        let mut total = 0i64;
        while cur != 0 && limit > lo {
            let node = self.nodes[cur as usize];
            if limit >= hi {
                total = add(total, node.sum)?;
                break;
            }
            let mid = lo + (hi - lo) / 2;
            if limit > mid {
                total = add(total, self.nodes[node.left as usize].sum)?;
                cur = node.right;
                lo = mid;
            } else {
                cur = node.left;
                hi = mid;
            }
        }
        Ok(total)
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Result<i64> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let base = sub(add(self.top_row[j], self.left_col[i])?, self.top_row[0])?;
        sub(base, self.dominance_sum(i, j)?)
    }
}
