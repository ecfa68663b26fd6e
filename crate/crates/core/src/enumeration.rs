//! Isomorph-free generation of small algebras.
//!
//! Posets are grown one maximal element at a time and deduplicated by
//! canonical form. Hilbert algebras are found by backtracking over the
//! arrow cells of each poset-with-top; the residuated varieties are read
//! off the poset directly.

use std::collections::BTreeSet;

use crate::algebra::{is_valid, FiniteAlgebra, VarietyTag};
use crate::error::EnumerationError;
use crate::poset::Poset;

/// Largest size accepted by [`enumerate_algebras`] for each tag.
pub fn size_cap(tag: VarietyTag) -> usize {
    match tag {
        VarietyTag::Hil | VarietyTag::HilS | VarietyTag::HilS0 => 6,
        VarietyTag::IS | VarietyTag::GHey | VarietyTag::Hey => 7,
    }
}

/// Pairwise non-isomorphic algebras of one variety, sorted by size and
/// then by table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraCatalog {
    pub tag: VarietyTag,
    pub max_size: usize,
    pub members: Vec<FiniteAlgebra>,
}

impl AlgebraCatalog {
    /// `counts()[n]` is the number of members of size `n`.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.max_size + 1];
        for m in &self.members {
            c[m.size()] += 1;
        }
        c
    }

    pub fn of_size(&self, n: usize) -> impl Iterator<Item = &FiniteAlgebra> {
        self.members.iter().filter(move |m| m.size() == n)
    }

    pub fn up_to(&self, n: usize) -> impl Iterator<Item = &FiniteAlgebra> {
        self.members.iter().filter(move |m| m.size() <= n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Lexicographic permutations of a slice.
struct Permutations {
    current: Vec<usize>,
    first: bool,
    done: bool,
}

impl Permutations {
    fn of(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Permutations {
            current: items,
            first: true,
            done: false,
        }
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(&self.current);
        }
        let v = &mut self.current;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            self.done = true;
            return None;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        Some(&self.current)
    }
}

fn poset_key(p: &Poset, perm: &[usize]) -> u64 {
    let n = p.len();
    let mut key = 0u64;
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                key |= 1 << (perm[a] * n + perm[b]);
            }
        }
    }
    key
}

/// Canonical relabeling of a poset (at most 8 elements).
pub fn canonical_poset(p: &Poset) -> Poset {
    let n = p.len();
    assert!(n <= 8, "canonical_poset supports at most 8 elements");
    let mut perms = Permutations::of((0..n).collect());
    let mut best: Option<(u64, Vec<usize>)> = None;
    while let Some(perm) = perms.advance() {
        let key = poset_key(p, perm);
        if best.as_ref().is_none_or(|(k, _)| key > *k) {
            best = Some((key, perm.to_vec()));
        }
    }
    match best {
        Some((_, perm)) => p.permuted(&perm),
        None => p.clone(),
    }
}

/// All posets on `n` points up to isomorphism.
pub fn posets(n: usize) -> Vec<Poset> {
    let mut level: BTreeSet<Vec<bool>> = BTreeSet::from([Vec::new()]);
    for m in 0..n {
        let mut next = BTreeSet::new();
        for flat in &level {
            let p = Poset::from_fn(m, |a, b| flat[a * m + b]);
            for d in p.upsets().into_iter().map(|u| u.complement(m)) {
                // new point `m` sits strictly above the downset `d`
                let q = Poset::from_fn(m + 1, |a, b| {
                    if a == m {
                        b == m
                    } else if b == m {
                        d.contains(a)
                    } else {
                        p.leq(a, b)
                    }
                });
                let c = canonical_poset(&q);
                next.insert(flatten(&c));
            }
        }
        level = next;
    }
    let k = n;
    level
        .into_iter()
        .map(|flat| Poset::from_fn(k, |a, b| flat[a * k + b]))
        .collect()
}

fn flatten(p: &Poset) -> Vec<bool> {
    let n = p.len();
    (0..n * n).map(|i| p.leq(i / n, i % n)).collect()
}

/// `p` with a new top element appended (index `p.len()`).
pub fn with_top(p: &Poset) -> Poset {
    let m = p.len();
    Poset::from_fn(m + 1, |a, b| b == m || (a < m && b < m && p.leq(a, b)))
}

/// Posets of size `n` that have a greatest element, up to isomorphism.
pub fn posets_with_top(n: usize) -> Vec<Poset> {
    if n == 0 {
        return Vec::new();
    }
    posets(n - 1).iter().map(with_top).collect()
}

struct HilbertSearch<'a> {
    order: &'a Poset,
    n: usize,
    top: usize,
    cells: Vec<(usize, usize)>,
    table: Vec<Option<usize>>,
    out: Vec<Vec<usize>>,
}

impl HilbertSearch<'_> {
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.n + b]
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        let le = |a: usize, b: usize| self.order.leq(a, b);
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.get(a, b) else { continue };
                for c in 0..n {
                    // monotone in the right argument, antitone in the left
                    if le(b, c) {
                        if let Some(ac) = self.get(a, c) {
                            if !le(ab, ac) {
                                return false;
                            }
                        }
                    }
                    if le(c, a) {
                        if let Some(cb) = self.get(c, b) {
                            if !le(ab, cb) {
                                return false;
                            }
                        }
                    }
                    // (a → (b → c)) ≤ ((a → b) → (a → c))
                    let (Some(bc), Some(ac)) = (self.get(b, c), self.get(a, c)) else {
                        continue;
                    };
                    let (Some(lhs), Some(rhs)) = (self.get(a, bc), self.get(ab, ac)) else {
                        continue;
                    };
                    if !le(lhs, rhs) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.cells.len() {
            self.out
                .push(self.table.iter().map(|c| c.expect("complete")).collect());
            return;
        }
        let (a, b) = self.cells[k];
        for c in 0..self.n {
            if c == self.top || !self.order.leq(b, c) {
                continue;
            }
            self.table[a * self.n + b] = Some(c);
            if self.consistent() {
                self.run(k + 1);
            }
        }
        self.table[a * self.n + b] = None;
    }
}

/// Every Hilbert algebra whose natural order is `order` (which must have a
/// top), as arrow tables.
pub fn hilbert_tables(order: &Poset) -> Vec<Vec<usize>> {
    let n = order.len();
    let top = order.top().expect("order has a top");
    let mut table = vec![None; n * n];
    let mut cells = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if order.leq(a, b) {
                table[a * n + b] = Some(top);
            } else {
                cells.push((a, b));
            }
        }
    }
    // fill columns with high targets first: they bound the rest
    let heights = order.heights();
    cells.sort_by_key(|&(a, b)| (std::cmp::Reverse(heights[b]), b, a));
    let mut search = HilbertSearch {
        order,
        n,
        top,
        cells,
        table,
        out: Vec::new(),
    };
    search.run(0);
    search.out
}

fn table_key(alg: &FiniteAlgebra, perm: &[usize], inv: &[usize], out: &mut Vec<usize>) {
    let n = alg.size();
    out.clear();
    out.push(perm[alg.one()]);
    out.push(alg.zero().map_or(usize::MAX, |z| perm[z]));
    for t in [Some(alg.arrow_table()), alg.join_table(), alg.meet_table()]
        .into_iter()
        .flatten()
    {
        for i in 0..n * n {
            out.push(perm[t[inv[i / n] * n + inv[i % n]]]);
        }
    }
}

/// The isomorphic copy of `alg` whose tables are lexicographically least.
/// The top is always relabeled `0` and the bottom, when present, `1`.
/// Labels are dropped; the name is kept.
pub fn canonical_form(alg: &FiniteAlgebra) -> FiniteAlgebra {
    let n = alg.size();
    let mut pinned = vec![alg.one()];
    if let Some(z) = alg.zero().filter(|&z| z != alg.one()) {
        pinned.push(z);
    }
    let free: Vec<usize> = alg.elements().filter(|a| !pinned.contains(a)).collect();
    let mut perms = Permutations::of((pinned.len()..n).collect());
    let mut perm = vec![0; n];
    let mut inv = vec![0; n];
    let mut key = Vec::new();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    while let Some(targets) = perms.advance() {
        for (i, &p) in pinned.iter().enumerate() {
            perm[p] = i;
        }
        for (&a, &t) in free.iter().zip(targets) {
            perm[a] = t;
        }
        for a in 0..n {
            inv[perm[a]] = a;
        }
        table_key(alg, &perm, &inv, &mut key);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key.clone(), perm.clone()));
        }
    }
    let (_, perm) = best.expect("at least one permutation");
    let name = alg.name().to_string();
    alg.permuted(&perm).unlabeled().with_name(name)
}

pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.size() == b.size()
        && a.has_join() == b.has_join()
        && a.has_meet() == b.has_meet()
        && a.zero().is_some() == b.zero().is_some()
        && canonical_form(a).same_structure(&canonical_form(b))
}

fn dedupe(
    tag: VarietyTag,
    algebras: impl IntoIterator<Item = FiniteAlgebra>,
) -> Vec<FiniteAlgebra> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for alg in algebras {
        let c = canonical_form(&alg);
        let mut key = vec![c.size(), c.one(), c.zero().unwrap_or(usize::MAX)];
        key.extend_from_slice(c.arrow_table());
        key.extend(c.join_table().into_iter().flatten());
        key.extend(c.meet_table().into_iter().flatten());
        if seen.insert(key) {
            debug_assert!(is_valid(&c, tag), "enumerated algebra fails {tag}");
            out.push(c);
        }
    }
    out
}

fn hilbert_of_size(n: usize) -> Vec<FiniteAlgebra> {
    let mut all = Vec::new();
    for order in posets_with_top(n) {
        let top = order.top().unwrap();
        for arrow in hilbert_tables(&order) {
            all.push(FiniteAlgebra::new("", n, arrow, top).expect("entries in range"));
        }
    }
    dedupe(VarietyTag::Hil, all)
}

fn residuated_of_size(n: usize) -> Vec<FiniteAlgebra> {
    posets_with_top(n)
        .iter()
        .filter_map(|order| FiniteAlgebra::residuated_from_order("", order).ok())
        .collect()
}

fn members_of_size(tag: VarietyTag, n: usize) -> Vec<FiniteAlgebra> {
    match tag {
        VarietyTag::Hil => hilbert_of_size(n),
        VarietyTag::HilS => dedupe(
            tag,
            hilbert_of_size(n)
                .into_iter()
                .filter_map(|a| a.with_derived_join()),
        ),
        VarietyTag::HilS0 => dedupe(
            tag,
            hilbert_of_size(n)
                .into_iter()
                .filter_map(|a| a.with_derived_join()?.with_derived_zero()),
        ),
        VarietyTag::IS => dedupe(
            tag,
            residuated_of_size(n).into_iter().map(|a| a.reduct(tag)),
        ),
        VarietyTag::GHey | VarietyTag::Hey => dedupe(
            tag,
            residuated_of_size(n)
                .into_iter()
                .filter(|a| a.has_join() && (tag == VarietyTag::GHey || a.zero().is_some()))
                .map(|a| a.reduct(tag)),
        ),
    }
}

/// All algebras of `tag` with `1 ≤ size ≤ max_size`, up to isomorphism.
pub fn enumerate_algebras(
    tag: VarietyTag,
    max_size: usize,
) -> Result<AlgebraCatalog, EnumerationError> {
    let cap = size_cap(tag);
    if max_size > cap {
        return Err(EnumerationError::CapExceeded {
            tag,
            requested: max_size,
            cap,
        });
    }
    let mut members = Vec::new();
    for n in 1..=max_size {
        let mut of_size = members_of_size(tag, n);
        of_size.sort_by(|a, b| {
            (a.arrow_table(), a.join_table(), a.meet_table(), a.zero()).cmp(&(
                b.arrow_table(),
                b.join_table(),
                b.meet_table(),
                b.zero(),
            ))
        });
        for (i, alg) in of_size.into_iter().enumerate() {
            members.push(alg.with_name(format!("{tag}{n}-{i}")));
        }
    }
    Ok(AlgebraCatalog {
        tag,
        max_size,
        members,
    })
}
