use std::fmt;

use fixedbitset::FixedBitSet;

use super::Poset;
use crate::error::PosetError;

/// Default cap on the number of poset elements for ideal enumeration.
pub const DEFAULT_IDEAL_BOUND: usize = 20;

/// A down-closed subset, as sorted element indices of the ambient poset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DownSet(pub Vec<usize>);

impl fmt::Display for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl<T> Poset<T> {
    /// All down-closed subsets, provided the poset has at most
    /// [`DEFAULT_IDEAL_BOUND`] elements.
    pub fn poset_ideals(&self) -> Result<Vec<FixedBitSet>, PosetError> {
        self.poset_ideals_bounded(DEFAULT_IDEAL_BOUND, None)
    }

    /// Enumerates down-sets. Fails if the poset has more than
    /// `max_elements` elements, or if more than `max_ideals` ideals turn up.
    pub fn poset_ideals_bounded(
        &self,
        max_elements: usize,
        max_ideals: Option<usize>,
    ) -> Result<Vec<FixedBitSet>, PosetError> {
        if self.len() > max_elements {
            return Err(PosetError::SizeBoundExceeded {
                size: self.len(),
                bound: max_elements,
            });
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut current = FixedBitSet::with_capacity(self.len());
        let limit = max_ideals.unwrap_or(usize::MAX);
        self.extend_ideals(&order, 0, &mut current, &mut out, limit)?;
        Ok(out)
    }

    // Each element, visited along a linear extension, is either skipped or
    // added when all of its lower covers are already present. Every down-set
    // arises from exactly one such sequence of choices.
    fn extend_ideals(
        &self,
        order: &[usize],
        pos: usize,
        current: &mut FixedBitSet,
        out: &mut Vec<FixedBitSet>,
        limit: usize,
    ) -> Result<(), PosetError> {
        if pos == order.len() {
            if out.len() >= limit {
                return Err(PosetError::SizeBoundExceeded {
                    size: out.len() + 1,
                    bound: limit,
                });
            }
            out.push(current.clone());
            return Ok(());
        }
        let x = order[pos];
        self.extend_ideals(order, pos + 1, current, out, limit)?;
        if self.lower_covers(x).iter().all(|&y| current.contains(y)) {
            current.insert(x);
            self.extend_ideals(order, pos + 1, current, out, limit)?;
            current.set(x, false);
        }
        Ok(())
    }

    /// The lattice `J(P)` of down-sets ordered by inclusion.
    pub fn ideal_lattice(&self) -> Result<Poset<DownSet>, PosetError> {
        let ideals = self.poset_ideals()?;
        let sets: Vec<DownSet> = ideals.iter().map(|s| DownSet(s.ones().collect())).collect();
        Poset::build(sets, |a, b| a.0.iter().all(|x| b.0.binary_search(x).is_ok()))
    }

    pub fn is_down_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.down_set(x).is_subset(set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_poset_has_one_ideal() {
        let p: Poset<u32> = Poset::chain(vec![]).unwrap();
        assert_eq!(p.poset_ideals().unwrap().len(), 1);
    }

    #[test]
    fn antichain_ideals_are_all_subsets() {
        let p = Poset::antichain(vec![1, 2]).unwrap();
        assert_eq!(p.poset_ideals().unwrap().len(), 4);
    }

    #[test]
    fn chain_ideals() {
        let p = Poset::chain(vec![1, 2]).unwrap();
        let ideals = p.poset_ideals().unwrap();
        assert_eq!(ideals.len(), 3);
        assert!(ideals.iter().all(|s| p.is_down_closed(s)));
    }

    #[test]
    fn size_bound() {
        let p = Poset::antichain((0..21).collect()).unwrap();
        assert!(matches!(
            p.poset_ideals(),
            Err(PosetError::SizeBoundExceeded { size: 21, bound: 20 })
        ));
        let q = Poset::antichain((0..4).collect()).unwrap();
        assert!(q.poset_ideals_bounded(20, Some(15)).is_err());
        assert_eq!(q.poset_ideals_bounded(20, Some(16)).unwrap().len(), 16);
    }

    #[test]
    fn ideal_lattice_of_chain_is_chain() {
        let p = Poset::chain(vec![1, 2, 3]).unwrap();
        let j = p.ideal_lattice().unwrap();
        assert_eq!(j.len(), 4);
        assert_eq!(j.rank(), 3);
    }
}
