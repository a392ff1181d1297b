//! Subsets of the variable indices `{1..N}`.

use std::cmp::Ordering;
use std::fmt;

/// A sorted, duplicate-free set of 1-based variable indices.
///
/// Subsets order canonically: first by cardinality, then lexicographically
/// on the sorted indices. The empty set sorts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSubset {
    members: Vec<usize>,
}

/// An index outside `1..=n_vars` was supplied to [`VarSubset::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidSubset {
    pub index: usize,
    pub n_vars: usize,
}

impl fmt::Display for InvalidSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variable index {} is outside 1..={}",
            self.index, self.n_vars
        )
    }
}

impl std::error::Error for InvalidSubset {}

impl VarSubset {
    /// Builds a subset from arbitrary indices; sorts and deduplicates.
    pub fn new<I>(members: I, n_vars: usize) -> Result<VarSubset, InvalidSubset>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        for &i in &m {
            if i == 0 || i > n_vars {
                return Err(InvalidSubset { index: i, n_vars });
            }
        }
        Ok(VarSubset { members: m })
    }

    pub fn empty() -> VarSubset {
        VarSubset { members: Vec::new() }
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> VarSubset {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VarSubset { members }
    }

    /// Indices in ascending order.
    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Largest member, or 0 for the empty set.
    pub fn max_index(&self) -> usize {
        self.members.last().copied().unwrap_or(0)
    }
}

impl Ord for VarSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for VarSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}
