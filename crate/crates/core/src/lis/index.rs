use crate::error::{add, Error, Result};
use crate::matrix::CondensedMatrix;
use crate::minplus::{maxplus, maxplus_with_witness, WitnessOracle};
use crate::oracle::{Cmo, Lco};

use super::distance::{expand_stars, reverse_positions, singleton};
use super::subperm::{check_permutation, Subpermutation};

/// Stored rows `ℓ = 2..=max_len` of one node's dp table. Row `ℓ` covers the
/// prefix of start indices `i` for which some `j <= n` has
/// `LIS(s[i..j)) >= ℓ`.
#[derive(Clone, Debug, Default)]
struct Rows {
    start: Vec<u32>,
    len: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Node {
    len: usize,
    /// Root position of every element, indexed by local position.
    root_pos: Vec<u32>,
    children: Option<Children>,
    rows: Rows,
}

#[derive(Clone, Debug)]
struct Children {
    lo: u32,
    hi: u32,
    /// Boundary `i` of this node maps to boundary `rpos_lo[i]` of the lower
    /// child, and likewise for the upper one.
    rpos_lo: Vec<u32>,
    rpos_hi: Vec<u32>,
    /// Only kept when some range of this node can have an LIS of length at
    /// least `τ`.
    witness: Option<WitnessOracle>,
}

/// Range LIS index of a permutation.
///
/// Value queries are answered from the root distance matrix. Reporting
/// queries for an LIS shorter than `τ` follow precomputed links in the dp
/// tables; longer ones are split at the smallest max-plus witness between the
/// two value halves and recursed into.
#[derive(Clone, Debug)]
pub struct RangeLisIndex {
    perm: Vec<usize>,
    alpha: f64,
    tau: usize,
    nodes: Vec<Node>,
    root: u32,
    value: Cmo,
    /// `dp[x]`: end of the shortest window starting at the state's index
    /// with LIS of the state's length.
    dp: Vec<u32>,
    /// The witness of a state of length `ℓ` is the concatenation of the
    /// witnesses of `(first[x], split[x])` and `(second[x], ℓ - split[x])`.
    /// A length-1 state is stored as a root position, any other as an index
    /// into these arrays.
    first: Vec<u32>,
    second: Vec<u32>,
    split: Vec<u16>,
}

/// `⌈log2(n)^(2 - α)⌉ + 1`, at least 2.
pub fn tau_for(n: usize, alpha: f64) -> usize {
    if n <= 1 {
        return 2;
    }
    let log = (n as f64).log2();
    let raw = log.powf(2.0 - alpha);
    // Guard against 16^2 evaluating to 256.00000000000003.
    let rounded = raw.round();
    let ceil = if (raw - rounded).abs() < 1e-9 { rounded } else { raw.ceil() };
    (ceil as usize + 1).max(2)
}

fn patience_lis(s: &[usize]) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &v in s {
        let at = tails.partition_point(|&t| t < v);
        if at == tails.len() {
            tails.push(v);
        } else {
            tails[at] = v;
        }
    }
    tails.len()
}

/// Builds the index for a permutation `s` of `0..n`, `n >= 1`, with
/// trade-off parameter `alpha` in `[0, 1]`.
pub fn build_lis_index(s: &[usize], alpha: f64) -> Result<RangeLisIndex> {
    RangeLisIndex::new(s, alpha)
}

struct Builder {
    tau: usize,
    nodes: Vec<Node>,
    dp: Vec<u32>,
    first: Vec<u32>,
    second: Vec<u32>,
    split: Vec<u16>,
}

impl Builder {
    fn node(
        &mut self,
        s: &[usize],
        root_pos: Vec<u32>,
        visit: &mut dyn FnMut(&[usize], &CondensedMatrix),
    ) -> Result<(CondensedMatrix, u32)> {
        let n = s.len();
        if n == 1 {
            self.nodes.push(Node {
                len: 1,
                root_pos,
                children: None,
                rows: Rows::default(),
            });
            let m = singleton();
            visit(s, &m);
            return Ok((m, (self.nodes.len() - 1) as u32));
        }
        let mid = n / 2;
        let lo = Subpermutation::restrict(s, 0, mid);
        let hi = Subpermutation::restrict(s, mid, n);
        let (pos_lo, pos_hi) = (lo.positions(), hi.positions());
        let pick = |pos: &[usize]| pos[..pos.len() - 1].iter().map(|&x| root_pos[x]).collect();
        let (root_lo, root_hi): (Vec<u32>, Vec<u32>) = (pick(&pos_lo), pick(&pos_hi));

        let (m_lo, id_lo) = self.node(&lo.underlying(), root_lo, visit)?;
        let a = expand_stars(&lo, &m_lo)?;
        drop(m_lo);
        let (m_hi, id_hi) = self.node(&hi.underlying(), root_hi, visit)?;
        let b = expand_stars(&hi, &m_hi)?;
        drop(m_hi);

        let lis = patience_lis(s);
        let (c, witness) = if lis >= self.tau {
            let (c, w) = maxplus_with_witness(&a, &b)?;
            (c, Some(w))
        } else {
            (maxplus(&a, &b)?, None)
        };
        let to_u32 = |v: Vec<usize>| v.into_iter().map(|x| x as u32).collect::<Vec<u32>>();
        let children = Children {
            lo: id_lo,
            hi: id_hi,
            rpos_lo: to_u32(reverse_positions(&pos_lo, n)),
            rpos_hi: to_u32(reverse_positions(&pos_hi, n)),
            witness,
        };
        let rows = self.fill_dp(&a, &b, &c, lis.min(self.tau), &children, &root_pos)?;
        self.nodes.push(Node {
            len: n,
            root_pos,
            children: Some(children),
            rows,
        });
        visit(s, &c);
        Ok((c, (self.nodes.len() - 1) as u32))
    }

    /// Storage index or root position of the length-`l` state at local index
    /// `i` of `node`.
    fn state(&self, node: u32, i: usize, l: usize) -> u32 {
        let node = &self.nodes[node as usize];
        if l == 1 {
            node.root_pos[i]
        } else {
            debug_assert!((i as u32) < node.rows.len[l - 2]);
            node.rows.start[l - 2] + i as u32
        }
    }

    fn copy(&mut self, from: usize) {
        self.first.push(self.first[from]);
        self.second.push(self.second[from]);
        self.split.push(self.split[from]);
    }

    /// dp rows `2..=max_len` by one three-pointer sweep per length over
    /// `A = M^lo`, `B = M^hi` and `C = M`, keeping `A[i][j]`, `B[j][k]` and
    /// `C[i][k]` current through adjacent recomputation.
    fn fill_dp(
        &mut self,
        a: &CondensedMatrix,
        b: &CondensedMatrix,
        c: &CondensedMatrix,
        max_len: usize,
        ch: &Children,
        root_pos: &[u32],
    ) -> Result<Rows> {
        let n = root_pos.len();
        let (la, lb, lc) = (Lco::new(a)?, Lco::new(b)?, Lco::new(c)?);
        let mut rows = Rows::default();
        for l in 2..=max_len {
            let start = self.dp.len();
            if start + n >= u32::MAX as usize {
                return Err(Error::InvalidArgument(
                    "dp tables exceed 32-bit indexing; use a larger alpha".into(),
                ));
            }
            let target = l as i64;
            let (mut i, mut j, mut k) = (0usize, 0usize, 0usize);
            let (mut av, mut bv, mut cv) = (0i64, 0i64, 0i64);
            loop {
                while cv < target && k < n {
                    cv = add(cv, lc.hdiff_unchecked(i, k)?)?;
                    bv = add(bv, lb.hdiff_unchecked(j, k)?)?;
                    k += 1;
                }
                if cv < target {
                    break;
                }
                while add(av, bv)? != cv {
                    if j >= k {
                        return Err(Error::invalid(
                            "no max-plus witness found during the dp sweep",
                        ));
                    }
                    av = add(av, la.hdiff_unchecked(i, j)?)?;
                    bv = add(bv, lb.vdiff_unchecked(j, k)?)?;
                    j += 1;
                }
                self.dp.push(k as u32);
                let (x_lo, x_hi) = (ch.rpos_lo[i] as usize, ch.rpos_hi[j] as usize);
                if av == 0 {
                    let from = self.state(ch.hi, x_hi, l) as usize;
                    self.copy(from);
                } else if bv == 0 {
                    let from = self.state(ch.lo, x_lo, l) as usize;
                    self.copy(from);
                } else {
                    let (la_len, lb_len) = (av as usize, bv as usize);
                    let f = self.state(ch.lo, x_lo, la_len);
                    let s = self.state(ch.hi, x_hi, lb_len);
                    self.first.push(f);
                    self.second.push(s);
                    self.split.push(la_len as u16);
                }
                if i + 1 == n {
                    break;
                }
                av = add(av, la.vdiff_unchecked(i, j)?)?;
                cv = add(cv, lc.vdiff_unchecked(i, k)?)?;
                i += 1;
            }
            rows.start.push(start as u32);
            rows.len.push((self.dp.len() - start) as u32);
            if self.dp.len() == start {
                // Longer rows are empty as well.
                break;
            }
        }
        // Trim trailing empty rows so that `max_len` reflects stored data.
        while rows.len.last() == Some(&0) {
            rows.len.pop();
            rows.start.pop();
        }
        Ok(rows)
    }
}

impl RangeLisIndex {
    pub fn new(s: &[usize], alpha: f64) -> Result<Self> {
        Self::build(s, alpha, &mut |_, _| {})
    }

    /// Builds the index, passing the rank-reduced permutation and distance
    /// matrix of every recursion node to `visit` before dropping it.
    pub fn build_traced(
        s: &[usize],
        alpha: f64,
        mut visit: impl FnMut(&[usize], &CondensedMatrix),
    ) -> Result<Self> {
        Self::build(s, alpha, &mut visit)
    }

    fn build(
        s: &[usize],
        alpha: f64,
        visit: &mut dyn FnMut(&[usize], &CondensedMatrix),
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        if s.is_empty() {
            return Err(Error::InvalidArgument("empty permutation".into()));
        }
        check_permutation(s)?;
        if s.len() >= u32::MAX as usize {
            return Err(Error::dims("permutation too long for 32-bit indexing"));
        }
        let tau = tau_for(s.len(), alpha);
        if tau > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("threshold {tau} is too large")));
        }
        let mut builder = Builder {
            tau,
            nodes: Vec::new(),
            dp: Vec::new(),
            first: Vec::new(),
            second: Vec::new(),
            split: Vec::new(),
        };
        let root_pos = (0..s.len() as u32).collect();
        let (m, root) = builder.node(s, root_pos, visit)?;
        let value = Cmo::new(&m)?;
        let Builder {
            nodes,
            dp,
            first,
            second,
            split,
            ..
        } = builder;
        Ok(RangeLisIndex {
            perm: s.to_vec(),
            alpha,
            tau,
            nodes,
            root,
            value,
            dp,
            first,
            second,
            split,
        })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        if i < j && j <= self.len() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "range [{i}, {j}) is not a non-empty range of 0..{}",
                self.len()
            )))
        }
    }

    /// Length of the longest increasing subsequence of `s[i..j)`.
    pub fn lis_value(&self, i: usize, j: usize) -> Result<usize> {
        self.check_range(i, j)?;
        Ok(self.value.get(i, j)? as usize)
    }

    /// A longest increasing subsequence of `s[i..j)`, as `(position, value)`
    /// pairs in increasing position order.
    pub fn lis_report(&self, i: usize, j: usize) -> Result<Vec<(usize, usize)>> {
        let mut positions = Vec::new();
        self.lis_report_into(i, j, &mut positions)?;
        Ok(positions.into_iter().map(|p| (p, self.perm[p])).collect())
    }

    /// Like [`lis_report`](Self::lis_report), appending only positions to
    /// `out`.
    pub fn lis_report_into(&self, i: usize, j: usize, out: &mut Vec<usize>) -> Result<()> {
        self.check_range(i, j)?;
        let mut stack = Vec::new();
        self.report(self.root, i, j, out, &mut stack);
        Ok(())
    }

    /// `dp(ν, i, ℓ)`: the smallest `j` with `LIS(s_ν[i..j)) >= ℓ`, or
    /// `len + 1` when there is none or the row is not stored.
    fn dp_at(&self, node: &Node, i: usize, l: usize) -> usize {
        if l == 1 {
            return i + 1;
        }
        let r = l - 2;
        if r < node.rows.len.len() && (i as u32) < node.rows.len[r] {
            self.dp[(node.rows.start[r] + i as u32) as usize] as usize
        } else {
            node.len + 1
        }
    }

    fn report(&self, id: u32, i: usize, j: usize, out: &mut Vec<usize>, stack: &mut Vec<(u32, u32)>) {
        let node = &self.nodes[id as usize];
        if self.dp_at(node, i, self.tau) > j {
            // Largest ℓ with dp(ν, i, ℓ) <= j; dp is non-decreasing in ℓ.
            let (mut lo, mut hi) = (1usize, (node.rows.len.len() + 1).min(self.tau - 1));
            while lo < hi {
                let mid = (lo + hi + 1) / 2;
                if self.dp_at(node, i, mid) <= j {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            if lo == 1 {
                out.push(node.root_pos[i] as usize);
            } else {
                let x = node.rows.start[lo - 2] + i as u32;
                self.unfold(x, lo as u32, out, stack);
            }
            return;
        }
        let ch = node
            .children
            .as_ref()
            .expect("a range with a long LIS lies in an internal node");
        let h = ch
            .witness
            .as_ref()
            .expect("nodes with long ranges keep their witness oracle")
            .query_unchecked(i, j);
        let (a0, a1) = (ch.rpos_lo[i] as usize, ch.rpos_lo[h] as usize);
        if a0 < a1 {
            self.report(ch.lo, a0, a1, out, stack);
        }
        let (b0, b1) = (ch.rpos_hi[h] as usize, ch.rpos_hi[j] as usize);
        if b0 < b1 {
            self.report(ch.hi, b0, b1, out, stack);
        }
    }

    fn unfold(&self, x: u32, l: u32, out: &mut Vec<usize>, stack: &mut Vec<(u32, u32)>) {
        stack.clear();
        let (mut x, mut l) = (x, l);
        loop {
            if l == 1 {
                out.push(x as usize);
                match stack.pop() {
                    Some(next) => (x, l) = next,
                    None => return,
                }
            } else {
                let at = x as usize;
                let split = self.split[at] as u32;
                stack.push((self.second[at], l - split));
                (x, l) = (self.first[at], split);
            }
        }
    }

    /// Number of recursion nodes.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Index of the root node.
    pub fn root(&self) -> usize {
        self.root as usize
    }

    /// The elements of node `id` as root `(position, value)` pairs.
    pub fn node_elements(&self, id: usize) -> Vec<(usize, usize)> {
        self.nodes[id]
            .root_pos
            .iter()
            .map(|&p| (p as usize, self.perm[p as usize]))
            .collect()
    }

    /// `dp(ν, i, ℓ)` of node `id` for `ℓ` in `1..=τ`.
    pub fn node_dp(&self, id: usize, i: usize, l: usize) -> usize {
        self.dp_at(&self.nodes[id], i, l)
    }

    /// Total number of stored dp entries.
    pub fn dp_entries(&self) -> usize {
        self.dp.len()
    }
}
