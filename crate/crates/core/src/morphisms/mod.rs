//! Morphisms between finite algebras, their enumeration, and the lifted
//! morphisms between extensions.

mod laws;
mod lift;

pub use laws::{
    verify_functor_laws, verify_universal_property, Counterexample, FunctorLawReport,
    UniversalPropertyReport,
};
pub use lift::{hat_g, hat_g_star, lift, lift_between, HatMap, LiftedMorphism};

use bitflags::bitflags;

use crate::algebra::{natural_order, FiniteAlgebra, VarietyTag};
use crate::error::MorphismError;
use crate::subset::Subset;

bitflags! {
    /// Operations a map is required to preserve.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub struct Preserves: u8 {
        const ONE = 1;
        const ARROW = 1 << 1;
        const JOIN = 1 << 2;
        const MEET = 1 << 3;
        const ZERO = 1 << 4;
    }
}

impl Preserves {
    /// Preservation contract of morphisms in the category of `tag`.
    ///
    /// Implicative-semilattice morphisms preserve `1`, `∧` and `→`.
    pub fn of(tag: VarietyTag) -> Self {
        match tag {
            VarietyTag::Hil => Preserves::ONE | Preserves::ARROW,
            VarietyTag::HilS => Preserves::ONE | Preserves::ARROW | Preserves::JOIN,
            VarietyTag::HilS0 => {
                Preserves::ONE | Preserves::ARROW | Preserves::JOIN | Preserves::ZERO
            }
            VarietyTag::IS => Preserves::ONE | Preserves::MEET | Preserves::ARROW,
            VarietyTag::GHey => {
                Preserves::ONE | Preserves::MEET | Preserves::JOIN | Preserves::ARROW
            }
            VarietyTag::Hey => Preserves::all(),
        }
    }
}

/// A total map between carriers, tagged with the category it claims to be a
/// morphism of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    dom: FiniteAlgebra,
    cod: FiniteAlgebra,
    map: Vec<usize>,
    tag: VarietyTag,
}

impl Morphism {
    pub fn new(
        dom: FiniteAlgebra,
        cod: FiniteAlgebra,
        map: Vec<usize>,
        tag: VarietyTag,
    ) -> Result<Self, MorphismError> {
        if map.len() != dom.size() {
            return Err(MorphismError::WrongLength {
                expected: dom.size(),
                found: map.len(),
            });
        }
        if let Some((from, &to)) = map.iter().enumerate().find(|(_, &v)| v >= cod.size()) {
            return Err(MorphismError::OutOfRange {
                from,
                to,
                size: cod.size(),
            });
        }
        Ok(Morphism { dom, cod, map, tag })
    }

    pub fn identity(alg: FiniteAlgebra, tag: VarietyTag) -> Self {
        let map = alg.elements().collect();
        Morphism {
            dom: alg.clone(),
            cod: alg,
            map,
            tag,
        }
    }

    pub fn dom(&self) -> &FiniteAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteAlgebra {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn tag(&self) -> VarietyTag {
        self.tag
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn with_tag(mut self, tag: VarietyTag) -> Self {
        self.tag = tag;
        self
    }

    /// `f⁻¹(S)`.
    pub fn preimage(&self, s: Subset) -> Subset {
        self.dom
            .elements()
            .filter(|&a| s.contains(self.map[a]))
            .collect()
    }

    /// `f(S)`.
    pub fn image(&self, s: Subset) -> Subset {
        s.iter().map(|a| self.map[a]).collect()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism, MorphismError> {
        if !first.cod.same_structure(&self.dom) {
            return Err(MorphismError::NotComposable);
        }
        Ok(Morphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&b| self.map[b]).collect(),
            tag: first.tag,
        })
    }

    /// First violated preservation equation under the morphism's tag.
    pub fn check(&self) -> Result<(), MorphismError> {
        check_preserves(&self.dom, &self.cod, &self.map, Preserves::of(self.tag))
    }

    pub fn is_injective(&self) -> bool {
        self.image(self.dom.carrier()).len() == self.dom.size()
    }
}

/// `true` iff `f` preserves every operation of its tag.
pub fn validate_morphism(f: &Morphism) -> bool {
    f.check().is_ok()
}

fn require_tables(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    ops: Preserves,
) -> Result<(), MorphismError> {
    use crate::error::AlgebraError;
    for alg in [dom, cod] {
        if ops.contains(Preserves::JOIN) && !alg.has_join() {
            return Err(AlgebraError::MissingTable {
                tag: VarietyTag::HilS,
                table: "join",
            }
            .into());
        }
        if ops.contains(Preserves::MEET) && !alg.has_meet() {
            return Err(AlgebraError::MissingTable {
                tag: VarietyTag::IS,
                table: "meet",
            }
            .into());
        }
        if ops.contains(Preserves::ZERO) && alg.zero().is_none() {
            return Err(AlgebraError::MissingTable {
                tag: VarietyTag::HilS0,
                table: "zero",
            }
            .into());
        }
    }
    Ok(())
}

/// Checks `map` against every equation in `ops`.
pub fn check_preserves(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    map: &[usize],
    ops: Preserves,
) -> Result<(), MorphismError> {
    require_tables(dom, cod, ops)?;
    if ops.contains(Preserves::ONE) && map[dom.one()] != cod.one() {
        return Err(MorphismError::NotPreserved {
            op: "1",
            witness: vec![],
        });
    }
    if ops.contains(Preserves::ZERO) && map[dom.zero().unwrap()] != cod.zero().unwrap() {
        return Err(MorphismError::NotPreserved {
            op: "0",
            witness: vec![],
        });
    }
    for a in dom.elements() {
        for b in dom.elements() {
            if let Some(op) = binary_violation(dom, cod, map, ops, a, b) {
                return Err(MorphismError::NotPreserved {
                    op,
                    witness: vec![a, b],
                });
            }
        }
    }
    Ok(())
}

fn binary_violation(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    map: &[usize],
    ops: Preserves,
    a: usize,
    b: usize,
) -> Option<&'static str> {
    let (fa, fb) = (map[a], map[b]);
    if ops.contains(Preserves::ARROW) && map[dom.arrow(a, b)] != cod.arrow(fa, fb) {
        return Some("→");
    }
    if ops.contains(Preserves::JOIN) && map[dom.join(a, b).unwrap()] != cod.join(fa, fb).unwrap() {
        return Some("∨");
    }
    if ops.contains(Preserves::MEET) && map[dom.meet(a, b).unwrap()] != cod.meet(fa, fb).unwrap() {
        return Some("∧");
    }
    None
}

/// Every map `dom → cod` preserving `ops`, in lexicographic order of the
/// value table.
///
/// Elements are assigned in decreasing height of the natural order, so that
/// results of `a → b` (which sit above `b`) tend to be fixed before the
/// equations mentioning them are checked.
pub fn enumerate_maps(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    ops: Preserves,
) -> Result<Vec<Vec<usize>>, MorphismError> {
    require_tables(dom, cod, ops)?;
    let n = dom.size();
    let heights = natural_order(dom).heights();
    let mut order: Vec<usize> = dom.elements().collect();
    order.sort_by(|&a, &b| heights[b].cmp(&heights[a]).then(a.cmp(&b)));

    let mut fixed: Vec<Option<usize>> = vec![None; n];
    if ops.contains(Preserves::ONE) {
        fixed[dom.one()] = Some(cod.one());
    }
    if ops.contains(Preserves::ZERO) {
        let z = dom.zero().unwrap();
        match fixed[z] {
            Some(v) if v != cod.zero().unwrap() => return Ok(vec![]),
            _ => fixed[z] = cod.zero(),
        }
    }

    struct Search<'a> {
        dom: &'a FiniteAlgebra,
        cod: &'a FiniteAlgebra,
        ops: Preserves,
        order: Vec<usize>,
        fixed: Vec<Option<usize>>,
        map: Vec<usize>,
        assigned: Subset,
        out: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn consistent(&self, e: usize) -> bool {
            let (dom, cod, map) = (self.dom, self.cod, &self.map);
            for a in self.assigned {
                for b in self.assigned {
                    let touches = a == e || b == e;
                    let check = |r: usize, v: usize| {
                        !self.assigned.contains(r) || !(touches || r == e) || map[r] == v
                    };
                    if self.ops.contains(Preserves::ARROW)
                        && !check(dom.arrow(a, b), cod.arrow(map[a], map[b]))
                    {
                        return false;
                    }
                    if self.ops.contains(Preserves::JOIN)
                        && !check(dom.join(a, b).unwrap(), cod.join(map[a], map[b]).unwrap())
                    {
                        return false;
                    }
                    if self.ops.contains(Preserves::MEET)
                        && !check(dom.meet(a, b).unwrap(), cod.meet(map[a], map[b]).unwrap())
                    {
                        return false;
                    }
                }
            }
            true
        }

        fn run(&mut self, k: usize) {
            if k == self.order.len() {
                self.out.push(self.map.clone());
                return;
            }
            let e = self.order[k];
            let candidates: Vec<usize> = match self.fixed[e] {
                Some(v) => vec![v],
                None => self.cod.elements().collect(),
            };
            for v in candidates {
                self.map[e] = v;
                self.assigned.insert(e);
                if self.consistent(e) {
                    self.run(k + 1);
                }
                self.assigned.remove(e);
            }
        }
    }

    let mut search = Search {
        dom,
        cod,
        ops,
        order,
        fixed,
        map: vec![0; n],
        assigned: Subset::empty(),
        out: Vec::new(),
    };
    search.run(0);
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// Every morphism `dom → cod` of the category of `tag`.
pub fn enumerate_morphisms(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    tag: VarietyTag,
) -> Result<Vec<Morphism>, MorphismError> {
    Ok(enumerate_maps(dom, cod, Preserves::of(tag))?
        .into_iter()
        .map(|map| Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
            tag,
        })
        .collect())
}

/// Every map `dom → cod` fixing `1` with `f(a → b) ≤ f(a) → f(b)`.
pub fn enumerate_subpreserving_maps(dom: &FiniteAlgebra, cod: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = dom.size();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    let total = cod.size().pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for slot in map.iter_mut() {
            *slot = c % cod.size();
            c /= cod.size();
        }
        if map[dom.one()] != cod.one() {
            continue;
        }
        let ok = dom.elements().all(|a| {
            dom.elements()
                .all(|b| cod.leq(map[dom.arrow(a, b)], cod.arrow(map[a], map[b])))
        });
        if ok {
            out.push(map.clone());
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, G_A, G_B, G_ONE, ONE, X, Y};

    #[test]
    fn fixture_map_is_a_hilbert_morphism() {
        let f = fixtures::h3_to_g4();
        assert!(validate_morphism(&f));
        assert_eq!(f.apply(X), G_A);
        assert_eq!(f.apply(Y), G_B);
    }

    #[test]
    fn constant_one_is_a_morphism() {
        for (dom, cod) in [
            (fixtures::h3(), fixtures::g4()),
            (fixtures::g4(), fixtures::h3()),
            (fixtures::chain(3), fixtures::one_element()),
        ] {
            let map = vec![cod.one(); dom.size()];
            let f = Morphism::new(dom, cod, map, VarietyTag::Hil).unwrap();
            assert!(validate_morphism(&f));
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let (h, g) = (fixtures::h3(), fixtures::g4());
        let found = enumerate_maps(&h, &g, Preserves::of(VarietyTag::Hil)).unwrap();
        // oracle: every one of the 4^3 maps, filtered by the preservation check
        let mut brute = Vec::new();
        for code in 0..64usize {
            let map = vec![code % 4, code / 4 % 4, code / 16];
            if check_preserves(&h, &g, &map, Preserves::of(VarietyTag::Hil)).is_ok() {
                brute.push(map);
            }
        }
        brute.sort();
        assert_eq!(found, brute);
        let mut fixture = vec![0; 3];
        fixture[ONE] = G_ONE;
        fixture[X] = G_A;
        fixture[Y] = G_B;
        assert!(found.contains(&fixture));
        assert_eq!(found.len(), 9);
    }

    #[test]
    fn composition_and_identity() {
        let f = fixtures::h3_to_g4();
        let id = Morphism::identity(fixtures::g4(), VarietyTag::Hil);
        assert_eq!(id.after(&f).unwrap().map(), f.map());
        assert!(f.after(&id).is_err());
    }

    #[test]
    fn out_of_range_map_rejected() {
        let err = Morphism::new(
            fixtures::h3(),
            fixtures::h3(),
            vec![0, 1, 5],
            VarietyTag::Hil,
        );
        assert_eq!(
            err,
            Err(MorphismError::OutOfRange {
                from: 2,
                to: 5,
                size: 3
            })
        );
        let err = Morphism::new(fixtures::h3(), fixtures::h3(), vec![0, 1], VarietyTag::Hil);
        assert!(matches!(err, Err(MorphismError::WrongLength { .. })));
    }

    #[test]
    fn meet_contract_needs_meet_tables() {
        let err = enumerate_maps(
            &fixtures::h3(),
            &fixtures::h3(),
            Preserves::of(VarietyTag::IS),
        );
        assert!(err.is_err());
    }
}
