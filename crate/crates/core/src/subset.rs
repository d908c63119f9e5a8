//! Fixed-width bit sets over a universe `{0, .., n-1}` with `n <= 64`.

use std::fmt;

/// Largest universe a [`Subset`] can index.
pub const MAX_UNIVERSE: usize = 64;

/// A subset of the universe `{0, .., n-1}`, stored as a bit vector.
///
/// The universe size is not stored; operations that depend on it
/// (complement, full set) take it explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_UNIVERSE);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    /// Least element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Whether this set is trivial (`∅` or `U`) in a universe of size `n`.
    pub fn is_trivial(self, n: usize) -> bool {
        self.is_empty() || self == Subset::full(n)
    }

    /// All `2^n` subsets in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 64, "cannot enumerate 2^64 subsets");
        (0..1u64 << n).map(Subset)
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

/// Iterator over the elements of a [`Subset`] in increasing order.
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Iterator over all submasks of a mask, in increasing order.
pub struct SubsetsOf {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(Subset(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_stays_in_window() {
        let x = Subset::from_indices([0, 2]);
        assert_eq!(x.complement(4), Subset::from_indices([1, 3]));
        assert_eq!(Subset::EMPTY.complement(64), Subset::full(64));
    }

    #[test]
    fn submasks_are_enumerated_once() {
        let m = Subset::from_indices([1, 3, 4]);
        let subs: Vec<_> = m.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset_of(m)));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn elements_in_order() {
        let x = Subset::from_indices([5, 0, 63]);
        assert_eq!(x.iter().collect::<Vec<_>>(), vec![0, 5, 63]);
        assert_eq!(x.first(), Some(0));
        assert_eq!(x.len(), 3);
    }
}
