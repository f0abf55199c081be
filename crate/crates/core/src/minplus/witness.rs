use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) enum Node {
    /// A `1 x 1` product after compression; the smallest argmin of its
    /// only entry.
    Leaf { witness: u32 },
    Internal {
        row_map: Vec<u32>,
        col_map: Vec<u32>,
        /// Inner indices `< split` went to the left child.
        split: u32,
        /// Row `i` of the compressed product takes columns `< boundary[i]`
        /// from the left child.
        boundary: Vec<u32>,
        left: u32,
        right: u32,
    },
}

/// Smallest-witness oracle recorded during a multiplication.
///
/// Each query walks one root-to-leaf path of the recursion, so it costs
/// `O(log(2 + δ))` array lookups.
#[derive(Clone, Debug)]
pub struct WitnessOracle {
    pub(crate) nodes: Vec<Node>,
    pub(crate) root: u32,
    pub(crate) rows: usize,
    pub(crate) cols: usize,
}

impl WitnessOracle {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The smallest inner index `j` with `C[i][k] = A[i][j] + B[j][k]`.
    pub fn query(&self, i: usize, k: usize) -> Result<usize> {
        if i >= self.rows || k >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.query_unchecked(i, k))
    }

    pub(crate) fn query_unchecked(&self, i: usize, k: usize) -> usize {
        let (mut i, mut k) = (i, k);
        let mut offset = 0usize;
        let mut node = &self.nodes[self.root as usize];
        loop {
            match node {
                Node::Leaf { witness } => return offset + *witness as usize,
                Node::Internal {
                    row_map,
                    col_map,
                    split,
                    boundary,
                    left,
                    right,
                } => {
                    i = row_map[i] as usize;
                    k = col_map[k] as usize;
                    if (k as u32) < boundary[i] {
                        node = &self.nodes[*left as usize];
                    } else {
                        offset += *split as usize;
                        node = &self.nodes[*right as usize];
                    }
                }
            }
        }
    }

    /// Length of the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        // Children are always pushed before their parent.
        for (id, node) in self.nodes.iter().enumerate() {
            if let Node::Internal { left, right, .. } = node {
                depth[id] = 1 + depth[*left as usize].max(depth[*right as usize]);
            }
        }
        depth[self.root as usize]
    }

    /// Number of recursion nodes.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The per-row boundaries of every internal node.
    pub fn boundaries(&self) -> impl Iterator<Item = &[u32]> {
        self.nodes.iter().filter_map(|n| match n {
            Node::Internal { boundary, .. } => Some(boundary.as_slice()),
            Node::Leaf { .. } => None,
        })
    }

    /// Witness matrix, densified row by row.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| self.query_unchecked(i, k)).collect())
            .collect()
    }
}
