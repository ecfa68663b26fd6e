//! Fixed-width bitsets over small universes.
//!
//! Every carrier, filter family and upset family in this crate lives on at
//! most [`Subset::CAPACITY`] points, so a single `u128` is enough.

use std::cmp::Ordering;
use std::fmt;

/// A subset of `{0, .., CAPACITY - 1}`.
///
/// The total order sorts by cardinality first and then by the bit pattern,
/// so the empty set comes first and larger sets come later. Families of
/// subsets therefore sort deterministically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u128);

impl Subset {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        Subset(0)
    }

    /// `{0, .., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= Self::CAPACITY,
            "universe of {n} points exceeds capacity"
        );
        if n == Self::CAPACITY {
            Subset(u128::MAX)
        } else {
            Subset((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < Self::CAPACITY);
        Subset(1u128 << i)
    }

    pub const fn from_bits(bits: u128) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < Self::CAPACITY && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < Self::CAPACITY);
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < Self::CAPACITY {
            self.0 &= !(1u128 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n - 1}`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        Subset(!self.0 & Self::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// All subsets of `{0, .., n - 1}` in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 32, "refusing to enumerate 2^{n} subsets");
        (0u128..1u128 << n).map(Subset)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u128);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for Subset {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = SubsetIter;

    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}
