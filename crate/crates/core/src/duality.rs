//! The finite part of the filter duality for Hilbert algebras.
//!
//! Points are irreducible filters ordered by inclusion. The topology that
//! the duality puts on `X(H)` is rebuilt explicitly from its base
//! `{φ(a)^c}` in [`FiniteTopology`], so the space axioms are checked against
//! the actual open sets rather than assumed from the order.

use std::collections::BTreeSet;

use crate::algebra::{FiniteAlgebra, VarietyTag};
use crate::error::{AlgebraError, FamilyError};
use crate::filters::{irreducible_filters, FilterPoset};
use crate::morphisms::Morphism;
use crate::subset::Subset;

/// `X(H)` together with `φ(a) = { P ∈ X(H) : a ∈ P }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpace {
    points: FilterPoset,
    images: Vec<Subset>,
}

impl DualSpace {
    /// Builds `φ` over an arbitrary family of filters (used for `X*(H)` too).
    pub fn over(points: FilterPoset) -> Self {
        let images = points
            .base()
            .elements()
            .map(|a| points.points_containing(a))
            .collect();
        DualSpace { points, images }
    }

    pub fn points(&self) -> &FilterPoset {
        &self.points
    }

    pub fn image(&self, a: usize) -> Subset {
        self.images[a]
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }

    pub fn all_points(&self) -> Subset {
        Subset::full(self.points.len())
    }

    /// The base `{ φ(a)^c : a ∈ H }`.
    pub fn base(&self) -> Vec<Subset> {
        let n = self.points.len();
        self.images
            .iter()
            .map(|u| u.complement(n))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn topology(&self) -> FiniteTopology {
        FiniteTopology::from_base(self.points.len(), &self.base())
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().collect::<BTreeSet<_>>().len() == self.images.len()
    }

    /// `φ(1) = X` and `φ(a → b) = φ(a) ⇒ φ(b)`.
    pub fn is_morphism(&self) -> bool {
        let alg = self.points.base();
        let order = self.points.order();
        self.images[alg.one()] == self.all_points()
            && alg.elements().all(|a| {
                alg.elements().all(|b| {
                    self.images[alg.arrow(a, b)]
                        == order.upset_implication(self.images[a], self.images[b])
                })
            })
    }
}

/// `X(H)` and the map `φ`.
pub fn phi(alg: &FiniteAlgebra) -> DualSpace {
    DualSpace::over(irreducible_filters(alg))
}

/// A topology on `{0, .., n - 1}` given by its open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<Subset>,
}

impl FiniteTopology {
    /// The topology whose opens are all unions of members of `base`.
    pub fn from_base(n: usize, base: &[Subset]) -> Self {
        let mut opens = BTreeSet::from([Subset::empty()]);
        for &b in base {
            let current: Vec<Subset> = opens.iter().copied().collect();
            for o in current {
                opens.insert(o.union(b));
            }
        }
        FiniteTopology {
            n,
            opens: opens.into_iter().collect(),
        }
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn closed_sets(&self) -> Vec<Subset> {
        let mut c: Vec<Subset> = self.opens.iter().map(|o| o.complement(self.n)).collect();
        c.sort();
        c
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.is_open(s.complement(self.n))
    }

    /// Closure of `{x}`.
    pub fn point_closure(&self, x: usize) -> Subset {
        self.opens
            .iter()
            .filter(|o| !o.contains(x))
            .fold(Subset::empty(), |acc, &o| acc.union(o))
            .complement(self.n)
    }

    /// Saturation: intersection of all opens containing `y`.
    pub fn saturation(&self, y: Subset) -> Subset {
        self.opens
            .iter()
            .filter(|o| y.is_subset(**o))
            .fold(Subset::full(self.n), |acc, &o| acc.intersection(o))
    }

    fn is_irreducible_closed(&self, y: Subset, closed: &[Subset]) -> bool {
        !y.is_empty()
            && closed.iter().all(|&z| {
                closed
                    .iter()
                    .all(|&w| !y.is_subset(z.union(w)) || y.is_subset(z) || y.is_subset(w))
            })
    }

    /// Every irreducible closed set is the closure of exactly one point.
    pub fn is_sober(&self) -> bool {
        let closed = self.closed_sets();
        closed
            .iter()
            .filter(|&&y| self.is_irreducible_closed(y, &closed))
            .all(|&y| (0..self.n).filter(|&x| self.point_closure(x) == y).count() == 1)
    }
}

/// Whether a family is a base: it covers the space and every intersection
/// of two members is a union of members.
pub fn is_base(n: usize, base: &[Subset]) -> bool {
    let covers = base.iter().fold(Subset::empty(), |acc, &b| acc.union(b)) == Subset::full(n);
    covers
        && base.iter().all(|&u| {
            base.iter().all(|&v| {
                let w = u.intersection(v);
                base.iter()
                    .filter(|b| b.is_subset(w))
                    .fold(Subset::empty(), |acc, &b| acc.union(b))
                    == w
            })
        })
}

/// Finite forms of the H-space axioms for `(X(H), {φ(a)^c})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSpaceReport {
    /// The family is a base of the topology it generates (compactness is
    /// automatic for finite spaces).
    pub h1_base: bool,
    /// The specialization order of the generated topology is inclusion of
    /// filters, so closures are `[P)` and saturations are `(Y]`.
    pub specialization_is_inclusion: bool,
    /// `sat(U ∩ V^c)` is again a base member for all base members `U`, `V`.
    pub h2_closed: bool,
    /// Every irreducible closed set is the closure of a unique point.
    pub h3_sober: bool,
}

impl HSpaceReport {
    pub fn passed(&self) -> bool {
        self.h1_base && self.specialization_is_inclusion && self.h2_closed && self.h3_sober
    }
}

pub fn h_space_check(alg: &FiniteAlgebra) -> HSpaceReport {
    let space = phi(alg);
    let n = space.points().len();
    let base = space.base();
    let top = space.topology();
    let order = space.points().order();

    let specialization_is_inclusion = (0..n).all(|x| top.point_closure(x) == order.principal_up(x))
        && top
            .opens()
            .iter()
            .all(|&o| top.saturation(o) == order.down_closure(o))
        && base.iter().all(|&u| {
            base.iter().all(|&v| {
                let y = u.difference(v);
                top.saturation(y) == order.down_closure(y)
            })
        });

    let h2_closed = base.iter().all(|&u| {
        base.iter()
            .all(|&v| base.binary_search(&top.saturation(u.difference(v))).is_ok())
    });

    HSpaceReport {
        h1_base: is_base(n, &base),
        specialization_is_inclusion,
        h2_closed,
        h3_sober: top.is_sober(),
    }
}

/// A family of upsets of a filter poset with the operations it is closed
/// under stored as tables over member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsetFamily {
    points: FilterPoset,
    members: Vec<Subset>,
    top: usize,
    arrow: Option<Vec<usize>>,
    meet: Option<Vec<usize>>,
    join: Option<Vec<usize>>,
    embedding: Option<Vec<usize>>,
}

impl UpsetFamily {
    /// Members are sorted canonically; tables are filled for every operation
    /// under which the family happens to be closed.
    pub fn new(
        points: FilterPoset,
        members: impl IntoIterator<Item = Subset>,
    ) -> Result<Self, FamilyError> {
        let members: Vec<Subset> = members
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let order = points.order();
        if let Some(&bad) = members.iter().find(|&&u| !order.is_upset(u)) {
            return Err(FamilyError::NotAnUpset(bad));
        }
        let all = Subset::full(points.len());
        let top = members
            .binary_search(&all)
            .map_err(|_| FamilyError::MissingTop)?;
        let idx = |s: Subset| members.binary_search(&s).ok();
        let table = |op: &dyn Fn(Subset, Subset) -> Subset| -> Option<Vec<usize>> {
            let mut t = Vec::with_capacity(members.len() * members.len());
            for &u in &members {
                for &v in &members {
                    t.push(idx(op(u, v))?);
                }
            }
            Some(t)
        };
        let arrow = table(&|u, v| order.upset_implication(u, v));
        let meet = table(&|u, v| u.intersection(v));
        let join = table(&|u, v| u.union(v));
        Ok(UpsetFamily {
            members,
            top,
            arrow,
            meet,
            join,
            embedding: None,
            points,
        })
    }

    /// Records `a ↦ images[a]` as the embedding of a source algebra.
    pub fn with_embedding(mut self, images: &[Subset]) -> Result<Self, FamilyError> {
        let emb = images
            .iter()
            .map(|&u| self.index_of(u).ok_or(FamilyError::ImageNotMember(u)))
            .collect::<Result<Vec<_>, _>>()?;
        self.embedding = Some(emb);
        Ok(self)
    }

    pub fn points(&self) -> &FilterPoset {
        &self.points
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> Subset {
        self.members[i]
    }

    pub fn index_of(&self, u: Subset) -> Option<usize> {
        self.members.binary_search(&u).ok()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> Option<usize> {
        self.index_of(Subset::empty())
    }

    pub fn embedding(&self) -> Option<&[usize]> {
        self.embedding.as_deref()
    }

    pub fn is_arrow_closed(&self) -> bool {
        self.arrow.is_some()
    }

    pub fn is_meet_closed(&self) -> bool {
        self.meet.is_some()
    }

    pub fn is_join_closed(&self) -> bool {
        self.join.is_some()
    }

    /// `U ⇒ V = (U ∩ V^c]^c`, computed in the point poset.
    pub fn implication(&self, u: Subset, v: Subset) -> Subset {
        self.points.order().upset_implication(u, v)
    }

    /// `U ∩ W ⊆ V` iff `W ⊆ U ⇒ V` for all members.
    pub fn residuation_holds(&self) -> bool {
        self.members.iter().all(|&u| {
            self.members.iter().all(|&v| {
                let imp = self.implication(u, v);
                self.members
                    .iter()
                    .all(|&w| u.intersection(w).is_subset(v) == w.is_subset(imp))
            })
        })
    }

    /// The family as a finite algebra on member indices. Meet, join and zero
    /// are attached when the family is closed under them.
    pub fn to_algebra(&self, name: impl Into<String>) -> Result<FiniteAlgebra, FamilyError> {
        let arrow = match &self.arrow {
            Some(t) => t.clone(),
            None => {
                let (u, v) = self
                    .members
                    .iter()
                    .flat_map(|&u| self.members.iter().map(move |&v| (u, v)))
                    .find(|&(u, v)| self.index_of(self.implication(u, v)).is_none())
                    .expect("some implication is missing");
                return Err(FamilyError::NotArrowClosed(u, v));
            }
        };
        let n = self.members.len();
        if n > crate::algebra::MAX_CARRIER {
            return Err(FamilyError::TooLarge(n));
        }
        let labels = self.members.iter().map(|u| u.to_string()).collect();
        let build = || -> Result<FiniteAlgebra, AlgebraError> {
            let mut alg = FiniteAlgebra::new(name, n, arrow, self.top)?.with_labels(labels)?;
            if let Some(m) = &self.meet {
                alg = alg.with_meet(m.clone())?;
            }
            if let Some(j) = &self.join {
                alg = alg.with_join(j.clone())?;
            }
            if let Some(z) = self.bottom() {
                alg = alg.with_zero(z)?;
            }
            Ok(alg)
        };
        Ok(build().expect("member tables are in range"))
    }
}

/// All upsets of the points, with `∩`, `∪`, `⇒`, top and bottom.
pub fn upset_algebra(points: &FilterPoset) -> UpsetFamily {
    UpsetFamily::new(points.clone(), points.order().upsets())
        .expect("the full upset family is closed")
}

/// `D(X(H)) = { φ(a) : a ∈ H }` with embedding `φ`.
pub fn d_of_x(alg: &FiniteAlgebra) -> UpsetFamily {
    let space = phi(alg);
    UpsetFamily::new(space.points().clone(), space.images().iter().copied())
        .and_then(|fam| fam.with_embedding(space.images()))
        .expect("φ-images are upsets and φ(1) is the top")
}

/// Certificate for the round trip `H ≅ D(X(H))` and `X(H) ≅ X(D(X(H)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonCertificate {
    /// `D(X(H))` presented on member indices.
    pub dual_algebra: FiniteAlgebra,
    /// Irreducible filters of the presented `D(X(H))`.
    pub dual_points: FilterPoset,
    /// `map[i]` is the index in `dual_points` of `ε(P_i)`, or `None` when
    /// `ε(P_i)` is not an irreducible filter.
    pub map: Vec<Option<usize>>,
    pub bijective: bool,
    pub order_isomorphism: bool,
    /// `φ : H → D(X(H))` is bijective and preserves `1` and `→`.
    pub phi_isomorphism: bool,
}

impl EpsilonCertificate {
    pub fn passed(&self) -> bool {
        self.bijective && self.order_isomorphism && self.phi_isomorphism
    }
}

/// `ε(P) = { U ∈ D(X(H)) : P ∈ U }`, checked to be an order isomorphism
/// onto the irreducible filters of `D(X(H))`.
pub fn epsilon(alg: &FiniteAlgebra) -> EpsilonCertificate {
    let d = d_of_x(alg);
    let dual_algebra = d
        .to_algebra(format!("D(X({}))", alg.name()))
        .expect("D(X(H)) is closed under ⇒");
    let dual_points = irreducible_filters(&dual_algebra);
    let points = d.points();

    let eps: Vec<Subset> = (0..points.len())
        .map(|p| (0..d.len()).filter(|&u| d.get(u).contains(p)).collect())
        .collect();
    let map: Vec<Option<usize>> = eps.iter().map(|&e| dual_points.index_of(e)).collect();
    let image: BTreeSet<usize> = map.iter().flatten().copied().collect();
    let bijective = map.iter().all(Option::is_some)
        && image.len() == points.len()
        && points.len() == dual_points.len();
    let order_isomorphism = bijective
        && (0..points.len()).all(|p| {
            (0..points.len()).all(|q| {
                points.order().leq(p, q)
                    == dual_points.order().leq(map[p].unwrap(), map[q].unwrap())
            })
        });

    let emb = d.embedding().expect("d_of_x records φ");
    let phi_map = Morphism::new(
        alg.clone(),
        dual_algebra.clone(),
        emb.to_vec(),
        VarietyTag::Hil,
    )
    .expect("embedding indices are in range");
    let phi_isomorphism = phi_map.is_injective()
        && emb.iter().collect::<BTreeSet<_>>().len() == d.len()
        && phi_map.check().is_ok();

    EpsilonCertificate {
        dual_algebra,
        dual_points,
        map,
        bijective,
        order_isomorphism,
        phi_isomorphism,
    }
}

/// A relation between two filter posets, stored as the image `R(x)` of
/// each source point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterRelation {
    source: FilterPoset,
    target: FilterPoset,
    images: Vec<Subset>,
}

impl FilterRelation {
    pub fn new(source: FilterPoset, target: FilterPoset, images: Vec<Subset>) -> Self {
        assert_eq!(images.len(), source.len());
        FilterRelation {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &FilterPoset {
        &self.source
    }

    pub fn target(&self) -> &FilterPoset {
        &self.target
    }

    /// `R(x)`.
    pub fn image(&self, x: usize) -> Subset {
        self.images[x]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.images[x].contains(y)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.images
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |y| (x, y)))
            .collect()
    }

    /// `h_R(U) = { x : R(x) ⊆ U }`.
    pub fn h_r(&self, u: Subset) -> Subset {
        (0..self.source.len())
            .filter(|&x| self.images[x].is_subset(u))
            .collect()
    }

    /// `h_R` on every member of a family over the target points.
    pub fn h_r_map(&self, family: &UpsetFamily) -> Vec<Subset> {
        family.members().iter().map(|&u| self.h_r(u)).collect()
    }

    /// `R⁻¹(U) = { x : R(x) ∩ U ≠ ∅ }`.
    pub fn inverse_image(&self, u: Subset) -> Subset {
        (0..self.source.len())
            .filter(|&x| !self.images[x].is_disjoint(u))
            .collect()
    }
}

/// `{ (P, Q) : f⁻¹(P) ⊆ Q }` between arbitrary families of filters of the
/// codomain (`source`) and of the domain (`target`).
pub fn preimage_relation(
    f: &Morphism,
    source: &FilterPoset,
    target: &FilterPoset,
) -> FilterRelation {
    let images = source
        .filters()
        .iter()
        .map(|&p| target.points_above(f.preimage(p)))
        .collect();
    FilterRelation::new(source.clone(), target.clone(), images)
}

/// `R_f ⊆ X(cod) × X(dom)`.
pub fn relation_of(f: &Morphism) -> FilterRelation {
    preimage_relation(
        f,
        &irreducible_filters(f.cod()),
        &irreducible_filters(f.dom()),
    )
}

/// Relational product: `(x, z)` whenever `(x, y) ∈ r` and `(y, z) ∈ s`.
pub fn compose(r: &FilterRelation, s: &FilterRelation) -> Result<FilterRelation, FamilyError> {
    if r.target.filters() != s.source.filters() || !r.target.base().same_structure(s.source.base())
    {
        return Err(FamilyError::NotComposable);
    }
    let images = r
        .images
        .iter()
        .map(|ys| {
            ys.iter()
                .fold(Subset::empty(), |acc, y| acc.union(s.images[y]))
        })
        .collect();
    Ok(FilterRelation::new(
        r.source.clone(),
        s.target.clone(),
        images,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalReport {
    /// `R⁻¹(U)` is a base member of the source for every base member `U` of
    /// the target.
    pub hr1: bool,
    /// Each `R(x)` is closed.
    pub hr2: bool,
    /// `(x, y) ∈ R` gives `z ∈ cl{x}` with `R(z) = cl{y}`.
    pub hf: bool,
}

impl FunctionalReport {
    pub fn passed(&self) -> bool {
        self.hr1 && self.hr2 && self.hf
    }
}

/// Checks the H-relation and H-functional conditions, with the base on each
/// side given by complements of `φ`-images over that side's points.
pub fn functional_check(r: &FilterRelation) -> FunctionalReport {
    let src = DualSpace::over(r.source.clone());
    let tgt = DualSpace::over(r.target.clone());
    let src_base = src.base();
    let src_top = src.topology();
    let tgt_top = tgt.topology();

    let hr1 = tgt
        .base()
        .iter()
        .all(|&u| src_base.binary_search(&r.inverse_image(u)).is_ok());
    let hr2 = r.images.iter().all(|&ys| tgt_top.is_closed(ys));
    let hf = r.pairs().into_iter().all(|(x, y)| {
        let target_closure = tgt_top.point_closure(y);
        src_top
            .point_closure(x)
            .iter()
            .any(|z| r.images[z] == target_closure)
    });
    FunctionalReport { hr1, hr2, hf }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, G_A, G_B, G_C, G_ONE, ONE, X, Y};

    fn set(items: &[usize]) -> Subset {
        items.iter().collect()
    }

    // point indices in X(H3): Px = {1,x} sorts before Py = {1,y}
    const PX: usize = 0;
    const PY: usize = 1;

    #[test]
    fn phi_on_h3() {
        let s = phi(&fixtures::h3());
        assert_eq!(s.points().get(PX), set(&[ONE, X]));
        assert_eq!(s.points().get(PY), set(&[ONE, Y]));
        assert_eq!(s.image(X), set(&[PX]));
        assert_eq!(s.image(Y), set(&[PY]));
        assert_eq!(s.image(ONE), set(&[PX, PY]));
        assert!(s.is_injective() && s.is_morphism());
    }

    #[test]
    fn phi_on_trivial_algebra() {
        let s = phi(&fixtures::one_element());
        assert!(s.points().is_empty());
        assert_eq!(s.image(0), Subset::empty());
        assert!(s.is_morphism());
    }

    fn g4_points() -> (DualSpace, usize, usize, usize) {
        let s = phi(&fixtures::g4());
        let p1 = s.points().index_of(set(&[G_ONE])).unwrap();
        let pa = s.points().index_of(set(&[G_ONE, G_C, G_A])).unwrap();
        let pb = s.points().index_of(set(&[G_ONE, G_C, G_B])).unwrap();
        (s, p1, pa, pb)
    }

    #[test]
    fn phi_on_g4() {
        let (s, p1, pa, pb) = g4_points();
        assert_eq!(s.image(G_C), set(&[pa, pb]));
        assert_eq!(s.image(G_A), set(&[pa]));
        assert_eq!(s.image(G_B), set(&[pb]));
        assert_eq!(s.image(G_ONE), set(&[p1, pa, pb]));
    }

    #[test]
    fn upset_algebra_of_h3() {
        let s = phi(&fixtures::h3());
        let up = upset_algebra(s.points());
        assert_eq!(up.len(), 4);
        assert_eq!(up.implication(set(&[PX]), set(&[PY])), set(&[PY]));
        for &u in up.members() {
            assert_eq!(up.implication(u, u), s.all_points());
        }
        assert!(up.residuation_holds());
        let alg = up.to_algebra("X(H3)+").unwrap();
        assert!(crate::algebra::validate(&alg, VarietyTag::Hey)
            .unwrap()
            .passed());
    }

    #[test]
    fn upset_algebra_of_g4_has_five_members() {
        let (s, _p1, pa, pb) = g4_points();
        let up = upset_algebra(s.points());
        // brute force: every subset of the three points that is up-closed
        let brute = Subset::all(3)
            .filter(|&u| s.points().order().is_upset(u))
            .count();
        assert_eq!(brute, 5);
        assert_eq!(up.len(), brute);
        assert_eq!(up.implication(set(&[pa]), Subset::empty()), set(&[pb]));
    }

    #[test]
    fn h_space_axioms_on_fixtures() {
        for alg in [
            fixtures::h3(),
            fixtures::g4(),
            fixtures::one_element(),
            fixtures::chain(4),
        ] {
            let r = h_space_check(&alg);
            assert!(r.passed(), "{}: {r:?}", alg.name());
        }
    }

    #[test]
    fn d_of_x_and_epsilon() {
        let d = d_of_x(&fixtures::h3());
        assert_eq!(d.len(), 3);
        let cert = epsilon(&fixtures::h3());
        assert!(cert.passed(), "{cert:?}");

        let cert = epsilon(&fixtures::g4());
        assert_eq!(d_of_x(&fixtures::g4()).len(), 4);
        assert!(cert.passed());

        let cert = epsilon(&fixtures::one_element());
        assert!(cert.passed());
        assert!(cert.map.is_empty());
    }

    #[test]
    fn relation_of_fixture_map() {
        let f = fixtures::h3_to_g4();
        let r = relation_of(&f);
        let (_, p1, pa, pb) = g4_points();
        let mut pairs = r.pairs();
        pairs.sort();
        let mut expect = vec![(p1, PX), (p1, PY), (pa, PX), (pb, PY)];
        expect.sort();
        assert_eq!(pairs, expect);
        assert!(functional_check(&r).passed());

        // f(a) ∈ P iff R_f(P) ⊆ φ(a)
        let h = phi(f.dom());
        for a in f.dom().elements() {
            for p in 0..r.source().len() {
                assert_eq!(
                    r.source().get(p).contains(f.apply(a)),
                    r.image(p).is_subset(h.image(a))
                );
            }
        }
    }

    #[test]
    fn identity_relation_is_inclusion() {
        let id = Morphism::identity(fixtures::g4(), VarietyTag::Hil);
        let r = relation_of(&id);
        let pts = r.source().clone();
        for p in 0..pts.len() {
            for q in 0..pts.len() {
                assert_eq!(r.contains(p, q), pts.order().leq(p, q));
            }
        }
        assert!(functional_check(&r).passed());
    }

    #[test]
    fn composition_of_relations() {
        let f = fixtures::h3_to_g4();
        let id = Morphism::identity(fixtures::g4(), VarietyTag::Hil);
        let composed = compose(&relation_of(&id), &relation_of(&f)).unwrap();
        assert_eq!(composed, relation_of(&id.after(&f).unwrap()));
        assert!(compose(&relation_of(&f), &relation_of(&f)).is_err());
    }

    #[test]
    fn non_base_detected() {
        // {0} and {1} cover {0,1}; {0,1} ∩ {1,2} = {1} fine; but {0,1},{1,2} alone fails
        let base = vec![set(&[0, 1]), set(&[1, 2])];
        assert!(!is_base(3, &base));
        assert!(is_base(3, &[set(&[0]), set(&[1]), set(&[2])]));
    }
}
