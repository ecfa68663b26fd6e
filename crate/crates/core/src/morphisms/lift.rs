use crate::duality::{preimage_relation, relation_of, upset_algebra, FilterRelation, UpsetFamily};
use crate::error::{ExtensionError, MorphismError};
use crate::extensions::{extend, x_star, ExtensionKind, ExtensionResult};
use crate::subset::Subset;

use super::{check_preserves, Morphism, Preserves};

/// `U ↦ { x : R(x) ⊆ U }` between two upset families, stored on member
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatMap {
    relation: FilterRelation,
    dom: UpsetFamily,
    cod: UpsetFamily,
    map: Vec<usize>,
}

impl HatMap {
    /// Builds the map for `relation`, whose source points carry `cod` and
    /// whose target points carry `dom`. Fails if some image is not a member
    /// of `cod`.
    pub fn new(
        relation: FilterRelation,
        dom: UpsetFamily,
        cod: UpsetFamily,
    ) -> Result<Self, Subset> {
        let map = dom
            .members()
            .iter()
            .map(|&u| {
                let v = relation.h_r(u);
                cod.index_of(v).ok_or(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HatMap {
            relation,
            dom,
            cod,
            map,
        })
    }

    pub fn relation(&self) -> &FilterRelation {
        &self.relation
    }

    pub fn dom(&self) -> &UpsetFamily {
        &self.dom
    }

    pub fn cod(&self) -> &UpsetFamily {
        &self.cod
    }

    /// Member index to member index.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, u: Subset) -> Subset {
        self.relation.h_r(u)
    }

    /// First pair `(U, V)` on which `op` is not preserved. For `ONE` the pair
    /// is `(top, top)`.
    pub fn violation(&self, op: Preserves) -> Option<(Subset, Subset)> {
        let members = self.dom.members();
        let g = |u: Subset| self.apply(u);
        if op.contains(Preserves::ONE) {
            let top = self.dom.get(self.dom.top());
            if g(top) != self.cod.get(self.cod.top()) {
                return Some((top, top));
            }
        }
        for &u in members {
            for &v in members {
                let bad = (op.contains(Preserves::MEET)
                    && g(u.intersection(v)) != g(u).intersection(g(v)))
                    || (op.contains(Preserves::JOIN) && g(u.union(v)) != g(u).union(g(v)))
                    || (op.contains(Preserves::ARROW)
                        && g(self.dom.implication(u, v)) != self.cod.implication(g(u), g(v)));
                if bad {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn preserves(&self, ops: Preserves) -> bool {
        ops.iter().all(|op| self.violation(op).is_none())
    }
}

/// `ĝ : X(H)^+ → X(G)^+` for `f : H → G`.
pub fn hat_g(f: &Morphism) -> HatMap {
    let r = relation_of(f);
    let dom = upset_algebra(r.target());
    let cod = upset_algebra(r.source());
    HatMap::new(r, dom, cod).expect("full upset algebras contain every h_R image")
}

/// `g : (X*(H))^+ → (X*(G))^+` built from `R*_f`.
pub fn hat_g_star(f: &Morphism) -> HatMap {
    let r = preimage_relation(f, &x_star(f.cod()), &x_star(f.dom()));
    let dom = upset_algebra(r.target());
    let cod = upset_algebra(r.source());
    HatMap::new(r, dom, cod).expect("full upset algebras contain every h_R image")
}

/// `f` lifted to a morphism between the extensions of its domain and
/// codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedMorphism {
    base: Morphism,
    source: ExtensionResult,
    target: ExtensionResult,
    morphism: Morphism,
}

impl LiftedMorphism {
    pub fn base(&self) -> &Morphism {
        &self.base
    }

    pub fn source(&self) -> &ExtensionResult {
        &self.source
    }

    pub fn target(&self) -> &ExtensionResult {
        &self.target
    }

    pub fn kind(&self) -> ExtensionKind {
        self.source.kind()
    }

    /// The lift on presented algebras.
    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    /// Member index to member index.
    pub fn map(&self) -> &[usize] {
        self.morphism.map()
    }

    /// Whether `lift(f)(e(a)) = e(f(a))` for every `a`.
    pub fn intertwines(&self) -> bool {
        intertwining_failure(&self.base, &self.source, &self.target, self.map()).is_none()
    }
}

fn intertwining_failure(
    f: &Morphism,
    source: &ExtensionResult,
    target: &ExtensionResult,
    map: &[usize],
) -> Option<usize> {
    f.dom()
        .elements()
        .find(|&a| map[source.embedding()[a]] != target.embedding()[f.apply(a)])
}

/// Lifts `f` along the extension `kind`: `f^IS`, `f^GHey`, `f^Hey` or `f^†`.
///
/// `f` must preserve the operations of the kind's source variety. The result
/// is certified to land in the target extension, to be a morphism of the
/// target variety, and to intertwine the embeddings.
pub fn lift(f: &Morphism, kind: ExtensionKind) -> Result<LiftedMorphism, ExtensionError> {
    let source = extend(f.dom(), kind)?;
    let target = extend(f.cod(), kind)?;
    lift_between(f, source, target)
}

/// [`lift`] with both extensions already computed.
pub fn lift_between(
    f: &Morphism,
    source: ExtensionResult,
    target: ExtensionResult,
) -> Result<LiftedMorphism, ExtensionError> {
    let kind = source.kind();
    if target.kind() != kind
        || !source.source().same_structure(f.dom())
        || !target.source().same_structure(f.cod())
    {
        return Err(MorphismError::NotComposable.into());
    }
    check_preserves(f.dom(), f.cod(), f.map(), Preserves::of(kind.source_tag()))?;

    let relation = match kind {
        ExtensionKind::Dagger => preimage_relation(f, target.points(), source.points()),
        _ => relation_of(f),
    };
    let map = source
        .members()
        .iter()
        .map(|&u| {
            let v = relation.h_r(u);
            target.family().index_of(v).ok_or_else(|| {
                ExtensionError::Certificate(format!(
                    "image {v} of {u} is not in the target extension"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    if let Some(a) = intertwining_failure(f, &source, &target, &map) {
        return Err(ExtensionError::Certificate(format!(
            "lift does not intertwine the embeddings at {}",
            f.dom().label(a)
        )));
    }
    let morphism = Morphism::new(
        source.presented().clone(),
        target.presented().clone(),
        map,
        kind.target_tag(),
    )?;
    morphism.check().map_err(|e| {
        ExtensionError::Certificate(format!("lift is not a {} morphism: {e}", kind.target_tag()))
    })?;
    Ok(LiftedMorphism {
        base: f.clone(),
        source,
        target,
        morphism,
    })
}
