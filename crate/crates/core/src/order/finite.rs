use std::fmt;

use super::OrderError;

/// A materialized finite chain: distinct labels listed in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteOrder<L> {
    labels: Vec<L>,
}

impl<L: PartialEq> FiniteOrder<L> {
    pub fn new(labels: Vec<L>) -> Result<Self, OrderError> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(OrderError::DuplicateLabel(i));
            }
        }
        Ok(FiniteOrder { labels })
    }

    pub fn position(&self, label: &L) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &L) -> bool {
        self.position(label).is_some()
    }
}

impl<L> FiniteOrder<L> {
    /// Caller guarantees the labels are pairwise distinct.
    pub(crate) fn from_distinct(labels: Vec<L>) -> Self {
        FiniteOrder { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn get(&self, index: usize) -> Option<&L> {
        self.labels.get(index)
    }

    pub fn first(&self) -> Option<&L> {
        self.labels.first()
    }

    pub fn last(&self) -> Option<&L> {
        self.labels.last()
    }

    pub fn into_labels(self) -> Vec<L> {
        self.labels
    }

    pub fn iter(&self) -> std::slice::Iter<'_, L> {
        self.labels.iter()
    }
}

impl FiniteOrder<usize> {
    /// The chain `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        FiniteOrder {
            labels: (0..n).collect(),
        }
    }
}

impl<L: Clone + PartialEq> FiniteOrder<L> {
    /// The suborder on the labels at the given positions (in any order).
    pub fn select(&self, positions: &[usize]) -> Self {
        let mut ps = positions.to_vec();
        ps.sort_unstable();
        ps.dedup();
        FiniteOrder {
            labels: ps.into_iter().map(|p| self.labels[p].clone()).collect(),
        }
    }

    /// Suborder of the labels whose position bit is set in `mask`.
    pub fn select_mask(&self, mask: u64) -> Self {
        FiniteOrder {
            labels: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, l)| l.clone())
                .collect(),
        }
    }
}

impl<L: fmt::Display> fmt::Display for FiniteOrder<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" < ")?;
            }
            l.fmt(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeated_labels() {
        assert_eq!(
            FiniteOrder::new(vec![1, 2, 1]),
            Err(OrderError::DuplicateLabel(2))
        );
        assert!(FiniteOrder::new(Vec::<u8>::new()).unwrap().is_empty());
    }

    #[test]
    fn selection_keeps_order() {
        let x = FiniteOrder::new(vec!['a', 'b', 'c', 'd']).unwrap();
        assert_eq!(x.select(&[3, 0, 3]).labels(), &['a', 'd']);
        assert_eq!(x.select_mask(0b0110).labels(), &['b', 'c']);
        assert_eq!(x.to_string(), "a < b < c < d");
    }
}
