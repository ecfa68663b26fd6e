//! Implicative filters, order-ideals and irreducible filters.
//!
//! Everything here is table-driven: filters are [`Subset`]s of the carrier
//! and families of filters are enumerated outright. Irreducibility uses the
//! unique-upper-cover test in the (finite) filter lattice; the pairwise
//! intersection definition is kept as [`irreducible_filters_by_definition`]
//! for cross-checking.

use std::collections::BTreeSet;

use crate::algebra::FiniteAlgebra;
use crate::error::FilterError;
use crate::morphisms::Morphism;
use crate::poset::Poset;
use crate::subset::Subset;

/// A canonically sorted, duplicate-free family of filters of one algebra,
/// ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterPoset {
    base: FiniteAlgebra,
    filters: Vec<Subset>,
    order: Poset,
}

impl FilterPoset {
    pub fn new(base: FiniteAlgebra, filters: impl IntoIterator<Item = Subset>) -> Self {
        let filters: Vec<Subset> = filters
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let order = Poset::inclusion(&filters);
        FilterPoset {
            base,
            filters,
            order,
        }
    }

    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn filters(&self) -> &[Subset] {
        &self.filters
    }

    pub fn get(&self, i: usize) -> Subset {
        self.filters[i]
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn index_of(&self, f: Subset) -> Option<usize> {
        self.filters.binary_search(&f).ok()
    }

    pub fn contains(&self, f: Subset) -> bool {
        self.index_of(f).is_some()
    }

    /// Points containing the element `a`, as a subset of point indices.
    pub fn points_containing(&self, a: usize) -> Subset {
        self.filters
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(a))
            .map(|(i, _)| i)
            .collect()
    }

    /// Points that include `f`.
    pub fn points_above(&self, f: Subset) -> Subset {
        self.filters
            .iter()
            .enumerate()
            .filter(|(_, p)| f.is_subset(**p))
            .map(|(i, _)| i)
            .collect()
    }

    /// Intersection of the filters indexed by `points` (the whole carrier when
    /// `points` is empty).
    pub fn intersection_of(&self, points: Subset) -> Subset {
        points.iter().fold(self.base.carrier(), |acc, i| {
            acc.intersection(self.filters[i])
        })
    }

    pub fn describe(&self, i: usize) -> String {
        self.base.format_subset(self.filters[i])
    }
}

/// `1 ∈ F` and `F` is closed under modus ponens.
pub fn is_implicative_filter(alg: &FiniteAlgebra, f: Subset) -> bool {
    if !f.is_subset(alg.carrier()) || !f.contains(alg.one()) {
        return false;
    }
    let closed = f.iter().all(|a| {
        alg.elements()
            .all(|b| !f.contains(alg.arrow(a, b)) || f.contains(b))
    });
    debug_assert!(
        !closed || is_upset(alg, f),
        "implicative filters are upsets"
    );
    closed
}

fn is_upset(alg: &FiniteAlgebra, s: Subset) -> bool {
    s.iter()
        .all(|a| alg.elements().all(|b| !alg.leq(a, b) || s.contains(b)))
}

/// Least implicative filter containing `x`, by modus-ponens closure.
pub fn generated_filter(alg: &FiniteAlgebra, x: Subset) -> Subset {
    let mut f = x.intersection(alg.carrier()).with(alg.one());
    loop {
        let mut next = f;
        for a in f {
            for b in alg.elements() {
                if f.contains(alg.arrow(a, b)) {
                    next.insert(b);
                }
            }
        }
        if next == f {
            return f;
        }
        f = next;
    }
}

/// `F(X)` from the nested-implication description: `x ∈ F(X)` iff
/// `a1 → (a2 → .. (an → x)) = 1` for some `a1, .., an ∈ X`.
///
/// Sequences range over orderings of subsets of `X`, so this is only
/// practical for small `X`.
pub fn generated_filter_by_formula(alg: &FiniteAlgebra, x: Subset) -> Subset {
    fn nested(alg: &FiniteAlgebra, seq: &[usize], target: usize) -> usize {
        seq.iter().rev().fold(target, |acc, &a| alg.arrow(a, acc))
    }
    fn orderings(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut tail in orderings(&rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    let x = x.intersection(alg.carrier());
    let sequences: Vec<Vec<usize>> = x.subsets().flat_map(|s| orderings(&s.to_vec())).collect();
    alg.elements()
        .filter(|&t| sequences.iter().any(|seq| nested(alg, seq, t) == alg.one()))
        .collect()
}

fn filter_family(alg: &FiniteAlgebra) -> Vec<Subset> {
    let start = generated_filter(alg, Subset::empty());
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for a in f.complement(alg.size()) {
            let g = generated_filter(alg, f.with(a));
            if seen.insert(g) {
                stack.push(g);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every implicative filter.
pub fn all_filters(alg: &FiniteAlgebra) -> FilterPoset {
    FilterPoset::new(alg.clone(), filter_family(alg))
}

/// Proper filters with a unique upper cover in the filter lattice.
pub fn irreducible_filters(alg: &FiniteAlgebra) -> FilterPoset {
    let all = all_filters(alg);
    let carrier = alg.carrier();
    let irr: Vec<Subset> = (0..all.len())
        .filter(|&i| all.get(i) != carrier && all.order().covers(i).len() == 1)
        .map(|i| all.get(i))
        .collect();
    FilterPoset::new(alg.clone(), irr)
}

/// Proper filters `F` such that `F = F1 ∩ F2` forces `F = F1` or `F = F2`.
pub fn irreducible_filters_by_definition(alg: &FiniteAlgebra) -> FilterPoset {
    let all = filter_family(alg);
    let carrier = alg.carrier();
    let irr: Vec<Subset> = all
        .iter()
        .copied()
        .filter(|&f| f != carrier)
        .filter(|&f| {
            all.iter().all(|&f1| {
                all.iter()
                    .all(|&f2| f1.intersection(f2) != f || f1 == f || f2 == f)
            })
        })
        .collect();
    FilterPoset::new(alg.clone(), irr)
}

/// Proper filters with `a ∨ b ∈ F` implying `a ∈ F` or `b ∈ F`.
pub fn prime_filters(alg: &FiniteAlgebra) -> Result<FilterPoset, FilterError> {
    if !alg.has_join() {
        return Err(FilterError::NoJoin);
    }
    let carrier = alg.carrier();
    let primes: Vec<Subset> = filter_family(alg)
        .into_iter()
        .filter(|&f| f != carrier)
        .filter(|&f| {
            alg.elements().all(|a| {
                alg.elements()
                    .all(|b| !f.contains(alg.join(a, b).unwrap()) || f.contains(a) || f.contains(b))
            })
        })
        .collect();
    Ok(FilterPoset::new(alg.clone(), primes))
}

/// `(a]` in the natural order.
pub fn principal_downset(alg: &FiniteAlgebra, a: usize) -> Subset {
    alg.elements().filter(|&b| alg.leq(b, a)).collect()
}

/// `(S]` in the natural order.
pub fn downset_of(alg: &FiniteAlgebra, s: Subset) -> Subset {
    s.iter().fold(Subset::empty(), |acc, a| {
        acc.union(principal_downset(alg, a))
    })
}

/// Non-empty, down-closed and up-directed.
pub fn is_order_ideal(alg: &FiniteAlgebra, i: Subset) -> bool {
    if i.is_empty() || !i.is_subset(alg.carrier()) || downset_of(alg, i) != i {
        return false;
    }
    i.iter().all(|a| {
        i.iter()
            .all(|b| i.iter().any(|c| alg.leq(a, c) && alg.leq(b, c)))
    })
}

/// The canonically least irreducible filter `P` with `F ⊆ P` and `P ∩ I = ∅`.
pub fn separate(alg: &FiniteAlgebra, f: Subset, i: Subset) -> Result<Subset, FilterError> {
    separate_within(&irreducible_filters(alg), f, i)
}

/// [`separate`] against a precomputed `X(H)`.
pub fn separate_within(
    irreducible: &FilterPoset,
    f: Subset,
    i: Subset,
) -> Result<Subset, FilterError> {
    let alg = irreducible.base();
    if !is_implicative_filter(alg, f) {
        return Err(FilterError::NotAFilter(f));
    }
    if !is_order_ideal(alg, i) {
        return Err(FilterError::NotAnOrderIdeal(i));
    }
    if !f.is_disjoint(i) {
        return Err(FilterError::NotDisjoint {
            filter: f,
            ideal: i,
        });
    }
    irreducible
        .filters()
        .iter()
        .copied()
        .find(|&p| f.is_subset(p) && p.is_disjoint(i))
        .ok_or(FilterError::NoWitness {
            filter: f,
            ideal: i,
        })
}

/// For a filter `F` and `a ∉ F`: an irreducible `P ⊇ F` with `a ∉ P`.
pub fn separate_from_element(
    alg: &FiniteAlgebra,
    f: Subset,
    a: usize,
) -> Result<Subset, FilterError> {
    separate(alg, f, principal_downset(alg, a))
}

/// For `a ≰ b`: an irreducible `P` with `a ∈ P` and `b ∉ P`.
pub fn separate_elements(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Subset, FilterError> {
    separate(
        alg,
        generated_filter(alg, Subset::singleton(a)),
        principal_downset(alg, b),
    )
}

/// `Some(P)` with `F ⊆ P`, `a ∈ P`, `b ∉ P` exactly when `a → b ∉ F`.
pub fn arrow_witness(
    alg: &FiniteAlgebra,
    f: Subset,
    a: usize,
    b: usize,
) -> Result<Option<Subset>, FilterError> {
    if !is_implicative_filter(alg, f) {
        return Err(FilterError::NotAFilter(f));
    }
    if f.contains(alg.arrow(a, b)) {
        return Ok(None);
    }
    let g = generated_filter(alg, f.with(a));
    separate(alg, g, principal_downset(alg, b)).map(Some)
}

/// Given `f : H → G`, a filter `I` of `G` and an irreducible `J` of `H` with
/// `f⁻¹(I) ⊆ J`, finds an irreducible `K` of `G` with `I ⊆ K` and
/// `f⁻¹(K) = J`, by separating `F(I ∪ f(J))` from `(f(J^c)]`.
pub fn extend_along(f: &Morphism, i: Subset, j: Subset) -> Result<Subset, FilterError> {
    let (dom, cod) = (f.dom(), f.cod());
    if !is_implicative_filter(cod, i) {
        return Err(FilterError::NotAFilter(i));
    }
    if !irreducible_filters(dom).contains(j) {
        return Err(FilterError::NotIrreducible(j));
    }
    let pre = f.preimage(i);
    if !pre.is_subset(j) {
        return Err(FilterError::PreimageNotContained {
            filter: i,
            preimage: pre,
            target: j,
        });
    }
    let ideal = downset_of(cod, f.image(j.complement(dom.size())));
    let seed = generated_filter(cod, i.union(f.image(j)));
    let k = separate(cod, seed, ideal)?;
    debug_assert!(i.is_subset(k) && f.preimage(k) == j);
    Ok(k)
}

/// The finite-intersection version of [`extend_along`]: `J` is an
/// intersection of irreducible filters; each irreducible filter above `J` is
/// extended separately and the results are intersected.
pub fn extend_along_star(f: &Morphism, i: Subset, j: Subset) -> Result<Subset, FilterError> {
    let dom = f.dom();
    let irr = irreducible_filters(dom);
    let above = irr.points_above(j);
    if above.is_empty() || irr.intersection_of(above) != j {
        return Err(FilterError::NotInXStar(j));
    }
    let mut k = f.cod().carrier();
    for q in above {
        k = k.intersection(extend_along(f, i, irr.get(q))?);
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, G_A, G_B, G_C, G_ONE, ONE, X, Y};

    fn set(items: &[usize]) -> Subset {
        items.iter().collect()
    }

    #[test]
    fn filter_membership_in_h3() {
        let h = fixtures::h3();
        assert!(is_implicative_filter(&h, set(&[ONE])));
        assert!(is_implicative_filter(&h, set(&[ONE, X])));
        assert!(!is_implicative_filter(&h, set(&[X])));
    }

    #[test]
    fn generated_filters() {
        let h = fixtures::h3();
        assert_eq!(generated_filter(&h, Subset::empty()), set(&[ONE]));
        assert_eq!(generated_filter(&h, set(&[X])), set(&[ONE, X]));
        let g = fixtures::g4();
        assert_eq!(generated_filter(&g, set(&[G_A])), set(&[G_ONE, G_C, G_A]));
        assert_eq!(
            generated_filter_by_formula(&g, set(&[G_A])),
            set(&[G_ONE, G_C, G_A])
        );
        assert_eq!(
            generated_filter_by_formula(&h, Subset::empty()),
            set(&[ONE])
        );
    }

    #[test]
    fn irreducibles_of_fixtures() {
        let h = fixtures::h3();
        let irr = irreducible_filters(&h);
        assert_eq!(irr.filters(), &[set(&[ONE, X]), set(&[ONE, Y])]);
        assert!(!irr.contains(set(&[ONE])));
        assert_eq!(irreducible_filters_by_definition(&h), irr);

        let g = fixtures::g4();
        let irr = irreducible_filters(&g);
        let mut expect = vec![
            set(&[G_ONE]),
            set(&[G_ONE, G_C, G_A]),
            set(&[G_ONE, G_C, G_B]),
        ];
        expect.sort();
        assert_eq!(irr.filters(), expect.as_slice());
        assert_eq!(irreducible_filters_by_definition(&g), irr);
    }

    #[test]
    fn primes_coincide_with_irreducibles_in_g4() {
        let g = fixtures::g4_hils();
        assert_eq!(
            prime_filters(&g).unwrap().filters(),
            irreducible_filters(&g).filters()
        );
        assert_eq!(prime_filters(&fixtures::h3()), Err(FilterError::NoJoin));
    }

    #[test]
    fn order_ideals() {
        let g = fixtures::g4();
        assert!(is_order_ideal(&g, set(&[G_A, G_B, G_C])));
        let h = fixtures::h3();
        assert!(!is_order_ideal(&h, set(&[X, Y])));
        assert!(!is_order_ideal(&h, Subset::empty()));
        assert!(!is_order_ideal(&g, Subset::empty()));
    }

    #[test]
    fn separation_examples() {
        let h = fixtures::h3();
        assert_eq!(separate(&h, set(&[ONE]), set(&[X])), Ok(set(&[ONE, Y])));
        let g = fixtures::g4();
        assert_eq!(
            separate(&g, set(&[G_ONE]), set(&[G_A, G_B, G_C])),
            Ok(set(&[G_ONE]))
        );
        assert_eq!(
            separate(&h, set(&[ONE, X]), set(&[X])),
            Err(FilterError::NotDisjoint {
                filter: set(&[ONE, X]),
                ideal: set(&[X])
            })
        );
    }

    #[test]
    fn separation_variants() {
        let h = fixtures::h3();
        // x ∉ {1}
        let p = separate_from_element(&h, set(&[ONE]), X).unwrap();
        assert!(!p.contains(X));
        // x ≰ y
        let p = separate_elements(&h, X, Y).unwrap();
        assert!(p.contains(X) && !p.contains(Y));
        // x → y = y ∉ {1}: witness contains x, avoids y
        assert_eq!(
            arrow_witness(&h, set(&[ONE]), X, Y),
            Ok(Some(set(&[ONE, X])))
        );
        // x → 1 = 1 ∈ {1}: no witness
        assert_eq!(arrow_witness(&h, set(&[ONE]), X, ONE), Ok(None));
    }

    #[test]
    fn extension_along_the_fixture_map() {
        let f = fixtures::h3_to_g4();
        assert_eq!(
            extend_along(&f, set(&[G_ONE]), set(&[ONE, X])),
            Ok(set(&[G_ONE, G_C, G_A]))
        );
        // brute force over all irreducible K
        let irr_g = irreducible_filters(f.cod());
        let candidates: Vec<Subset> = irr_g
            .filters()
            .iter()
            .copied()
            .filter(|&k| set(&[G_ONE]).is_subset(k) && f.preimage(k) == set(&[ONE, X]))
            .collect();
        assert_eq!(candidates, vec![set(&[G_ONE, G_C, G_A])]);

        let id = Morphism::identity(fixtures::h3(), crate::VarietyTag::Hil);
        assert_eq!(
            extend_along(&id, set(&[ONE, X]), set(&[ONE, X])),
            Ok(set(&[ONE, X]))
        );
    }

    #[test]
    fn star_extension_intersects_componentwise() {
        let f = fixtures::h3_to_g4();
        // {1} = {1,x} ∩ {1,y}; the components extend to {1,c,a} and {1,c,b}
        let k = extend_along_star(&f, set(&[G_ONE]), set(&[ONE])).unwrap();
        assert_eq!(k, set(&[G_ONE, G_C]));
        assert_eq!(f.preimage(k), set(&[ONE]));
        assert_eq!(
            extend_along_star(&f, set(&[G_ONE]), fixtures::h3().carrier()),
            Err(FilterError::NotInXStar(fixtures::h3().carrier()))
        );
    }

    #[test]
    fn extension_rejects_bad_preconditions() {
        let f = fixtures::h3_to_g4();
        assert_eq!(
            extend_along(&f, set(&[G_ONE]), set(&[ONE])),
            Err(FilterError::NotIrreducible(set(&[ONE])))
        );
        assert!(matches!(
            extend_along(&f, set(&[G_ONE, G_C, G_B]), set(&[ONE, X])),
            Err(FilterError::PreimageNotContained { .. })
        ));
    }

    #[test]
    fn one_element_algebra_has_no_irreducibles() {
        let t = fixtures::one_element();
        assert_eq!(all_filters(&t).len(), 1);
        assert!(irreducible_filters(&t).is_empty());
    }
}
