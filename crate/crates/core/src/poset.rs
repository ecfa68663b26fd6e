//! Finite partial orders stored as up-set/down-set bitsets.

use std::collections::BTreeSet;

use crate::subset::Subset;

/// A finite poset on `{0, .., n - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    // up[a] = { b : a <= b }, down[a] = { b : b <= a }
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl Poset {
    /// Builds the relation `leq(a, b)` over `n` points. The relation is taken
    /// as given; call [`Poset::is_partial_order`] to check it.
    #[allow(clippy::needless_range_loop)]
    pub fn from_fn(n: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n <= Subset::CAPACITY);
        let mut up = vec![Subset::empty(); n];
        let mut down = vec![Subset::empty(); n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        Poset { n, up, down }
    }

    /// Inclusion order on a list of sets.
    pub fn inclusion(sets: &[Subset]) -> Self {
        Self::from_fn(sets.len(), |a, b| sets[a].is_subset(sets[b]))
    }

    /// An antichain of `n` points.
    pub fn discrete(n: usize) -> Self {
        Self::from_fn(n, |a, b| a == b)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `[a)`.
    pub fn principal_up(&self, a: usize) -> Subset {
        self.up[a]
    }

    /// `(a]`.
    pub fn principal_down(&self, a: usize) -> Subset {
        self.down[a]
    }

    pub fn points(&self) -> Subset {
        Subset::full(self.n)
    }

    /// `[Y)`.
    pub fn up_closure(&self, y: Subset) -> Subset {
        y.iter()
            .fold(Subset::empty(), |acc, a| acc.union(self.up[a]))
    }

    /// `(Y]`.
    pub fn down_closure(&self, y: Subset) -> Subset {
        y.iter()
            .fold(Subset::empty(), |acc, a| acc.union(self.down[a]))
    }

    pub fn is_upset(&self, u: Subset) -> bool {
        self.up_closure(u) == u
    }

    pub fn is_downset(&self, d: Subset) -> bool {
        self.down_closure(d) == d
    }

    /// Heyting implication on upsets: `(U ∩ V^c]^c`.
    pub fn upset_implication(&self, u: Subset, v: Subset) -> Subset {
        self.down_closure(u.difference(v)).complement(self.n)
    }

    pub fn is_partial_order(&self) -> bool {
        (0..self.n).all(|a| self.leq(a, a))
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| a == b || !(self.leq(a, b) && self.leq(b, a))))
            && (0..self.n).all(|a| self.up[a].iter().all(|b| self.up[b].is_subset(self.up[a])))
    }

    /// The greatest element, if one exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&a| self.down[a] == self.points())
    }

    /// The least element, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&a| self.up[a] == self.points())
    }

    pub fn maximal(&self) -> Subset {
        (0..self.n).filter(|&a| self.up[a].len() == 1).collect()
    }

    /// Upper covers of `a`.
    pub fn covers(&self, a: usize) -> Subset {
        let strict = self.up[a].difference(Subset::singleton(a));
        strict
            .iter()
            .filter(|&b| strict.iter().all(|c| c == b || !self.leq(c, b)))
            .collect()
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub = self.up[a].intersection(self.up[b]);
        ub.iter().find(|&c| ub.is_subset(self.up[c]))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb = self.down[a].intersection(self.down[b]);
        lb.iter().find(|&c| lb.is_subset(self.down[c]))
    }

    /// Every upset, sorted canonically.
    pub fn upsets(&self) -> Vec<Subset> {
        // Grow upsets one minimal addition at a time, starting from the empty set.
        let mut seen = BTreeSet::new();
        let mut stack = vec![Subset::empty()];
        seen.insert(Subset::empty());
        while let Some(u) = stack.pop() {
            for x in u.complement(self.n) {
                let strict_up = self.up[x].difference(Subset::singleton(x));
                if strict_up.is_subset(u) {
                    let v = u.with(x);
                    if seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Hasse diagram edges `(a, b)` with `b` covering `a`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.covers(a).iter().map(move |b| (a, b)))
            .collect()
    }

    /// Relabels the poset: point `a` becomes `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; self.n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        Self::from_fn(self.n, |a, b| self.leq(inv[a], inv[b]))
    }

    /// Height of each point: length of the longest chain ending at it.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        // Points sorted by size of the down-set form a linear extension.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| self.down[a].len());
        for &a in &order {
            h[a] = self.down[a]
                .iter()
                .filter(|&b| b != a)
                .map(|b| h[b] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }
}
