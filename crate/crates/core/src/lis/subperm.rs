use crate::error::{Error, Result};

/// One position of a [`Subpermutation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Value(usize),
    /// A placeholder that takes part in no increasing subsequence.
    Star,
}

/// A sequence of values and placeholders whose values, read left to right,
/// form a permutation of `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subpermutation {
    entries: Vec<Entry>,
}

impl Subpermutation {
    pub fn new(entries: Vec<Entry>) -> Result<Self> {
        let values: Vec<usize> = entries
            .iter()
            .filter_map(|e| match e {
                Entry::Value(v) => Some(*v),
                Entry::Star => None,
            })
            .collect();
        check_permutation(&values)?;
        Ok(Subpermutation { entries })
    }

    /// A permutation seen as a subpermutation without placeholders.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        check_permutation(perm)?;
        Ok(Subpermutation {
            entries: perm.iter().map(|&v| Entry::Value(v)).collect(),
        })
    }

    /// Keeps the values in `range`, shifted down to start at 0, and replaces
    /// every other value by a placeholder.
    pub(crate) fn restrict(perm: &[usize], lo: usize, hi: usize) -> Self {
        Subpermutation {
            entries: perm
                .iter()
                .map(|&v| {
                    if (lo..hi).contains(&v) {
                        Entry::Value(v - lo)
                    } else {
                        Entry::Star
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// The values with placeholders removed.
    pub fn underlying(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::Value(v) => Some(*v),
                Entry::Star => None,
            })
            .collect()
    }

    /// Positions of the values, followed by `len()`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, Entry::Value(_)))
            .map(|(x, _)| x)
            .collect();
        pos.push(self.entries.len());
        pos
    }

    /// For every boundary `i` in `0..=len()`, the number of values strictly
    /// before position `i`.
    pub fn rank_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.entries.len() + 1);
        let mut seen = 0;
        out.push(0);
        for e in &self.entries {
            if matches!(e, Entry::Value(_)) {
                seen += 1;
            }
            out.push(seen);
        }
        out
    }
}

pub(crate) fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for (x, &v) in perm.iter().enumerate() {
        if v >= perm.len() {
            return Err(Error::NotPermutation(format!(
                "value {v} at position {x} is not below the length {}",
                perm.len()
            )));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotPermutation(format!(
                "value {v} repeats at position {x}"
            )));
        }
    }
    Ok(())
}
