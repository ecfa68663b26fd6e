//! Free extensions of a finite Hilbert algebra inside upset algebras of its
//! filter posets.
//!
//! Every construction closes a set of generators under a chosen set of
//! operations by round-based saturation, then checks the identities that
//! pin the result down (`FC(H)`, the full upset algebra). A failed identity
//! is reported as [`ExtensionError::Certificate`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{is_valid, FiniteAlgebra, VarietyTag};
use crate::duality::{phi, upset_algebra, DualSpace, UpsetFamily};
use crate::error::ExtensionError;
use crate::filters::{irreducible_filters, FilterPoset};
use crate::morphisms::Morphism;
use crate::subset::Subset;

/// Which free construction produced an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionKind {
    IS,
    GHey,
    Hey,
    Dagger,
}

impl ExtensionKind {
    pub const ALL: [ExtensionKind; 4] = [
        ExtensionKind::IS,
        ExtensionKind::GHey,
        ExtensionKind::Hey,
        ExtensionKind::Dagger,
    ];

    /// Variety the presented extension lives in.
    pub fn target_tag(self) -> VarietyTag {
        match self {
            ExtensionKind::IS => VarietyTag::IS,
            ExtensionKind::GHey | ExtensionKind::Dagger => VarietyTag::GHey,
            ExtensionKind::Hey => VarietyTag::Hey,
        }
    }

    /// Variety the source algebra (and morphisms to lift) must belong to.
    pub fn source_tag(self) -> VarietyTag {
        match self {
            ExtensionKind::IS | ExtensionKind::Dagger => VarietyTag::Hil,
            ExtensionKind::GHey => VarietyTag::HilS,
            ExtensionKind::Hey => VarietyTag::HilS0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ExtensionKind::IS => "is",
            ExtensionKind::GHey => "ghey",
            ExtensionKind::Hey => "hey",
            ExtensionKind::Dagger => "dagger",
        }
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExtensionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "is" => Ok(ExtensionKind::IS),
            "ghey" => Ok(ExtensionKind::GHey),
            "hey" => Ok(ExtensionKind::Hey),
            "dagger" => Ok(ExtensionKind::Dagger),
            other => Err(format!(
                "unknown extension target `{other}` (expected is, ghey, hey or dagger)"
            )),
        }
    }
}

/// Operations a generated family is closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOps {
    pub meet: bool,
    pub join: bool,
    pub arrow: bool,
    pub bottom: bool,
}

impl ClosureOps {
    pub const MEET: ClosureOps = ClosureOps {
        meet: true,
        join: false,
        arrow: false,
        bottom: false,
    };
    pub const IS: ClosureOps = ClosureOps {
        meet: true,
        join: false,
        arrow: true,
        bottom: false,
    };
    pub const GHEY: ClosureOps = ClosureOps {
        meet: true,
        join: true,
        arrow: true,
        bottom: false,
    };
    pub const HEY: ClosureOps = ClosureOps {
        meet: true,
        join: true,
        arrow: true,
        bottom: true,
    };
}

/// Closes `generators` together with the full point set under `ops`.
pub fn closure(
    points: &FilterPoset,
    generators: impl IntoIterator<Item = Subset>,
    ops: ClosureOps,
) -> Vec<Subset> {
    let order = points.order();
    let mut family: BTreeSet<Subset> = generators.into_iter().collect();
    family.insert(Subset::full(points.len()));
    if ops.bottom {
        family.insert(Subset::empty());
    }
    loop {
        let current: Vec<Subset> = family.iter().copied().collect();
        let mut fresh = Vec::new();
        for (i, &u) in current.iter().enumerate() {
            for &v in &current[i..] {
                if ops.meet {
                    fresh.push(u.intersection(v));
                }
                if ops.join {
                    fresh.push(u.union(v));
                }
            }
            if ops.arrow {
                for &v in &current {
                    fresh.push(order.upset_implication(u, v));
                }
            }
        }
        let before = family.len();
        family.extend(fresh);
        if family.len() == before {
            return family.into_iter().collect();
        }
    }
}

/// `FC(H)`: all intersections of finitely many `φ`-images.
pub fn fc(alg: &FiniteAlgebra) -> Vec<Subset> {
    let space = phi(alg);
    closure(
        space.points(),
        space.images().iter().copied(),
        ClosureOps::MEET,
    )
}

/// `X*(H)`: intersections of nonempty finite families of irreducible filters.
pub fn x_star(alg: &FiniteAlgebra) -> FilterPoset {
    let irr = irreducible_filters(alg);
    let mut all: BTreeSet<Subset> = irr.filters().iter().copied().collect();
    loop {
        let current: Vec<Subset> = all.iter().copied().collect();
        let before = all.len();
        for &p in irr.filters() {
            for &f in &current {
                all.insert(p.intersection(f));
            }
        }
        if all.len() == before {
            break;
        }
    }
    FilterPoset::new(alg.clone(), all)
}

/// `Φ(a) = { F ∈ X*(H) : a ∈ F }`.
pub fn big_phi(alg: &FiniteAlgebra) -> DualSpace {
    DualSpace::over(x_star(alg))
}

/// A generated subalgebra of an upset algebra together with its embedding
/// and its presentation as an ordinary algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    kind: ExtensionKind,
    source: FiniteAlgebra,
    family: UpsetFamily,
    presented: FiniteAlgebra,
}

impl ExtensionResult {
    /// Wraps a family that already carries an embedding of `source`.
    /// The presented algebra must validate under the kind's target variety.
    pub fn assemble(
        kind: ExtensionKind,
        source: FiniteAlgebra,
        family: UpsetFamily,
    ) -> Result<Self, ExtensionError> {
        if family.embedding().map(<[usize]>::len) != Some(source.size()) {
            return Err(ExtensionError::Certificate(
                "family has no embedding of the source".into(),
            ));
        }
        let tag = kind.target_tag();
        let presented = family
            .to_algebra(format!("{}^{}", source.name(), kind))?
            .reduct(tag);
        if !is_valid(&presented, tag) {
            return Err(ExtensionError::Certificate(format!(
                "presented extension does not validate as {tag}"
            )));
        }
        Ok(ExtensionResult {
            kind,
            source,
            family,
            presented,
        })
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn points(&self) -> &FilterPoset {
        self.family.points()
    }

    pub fn family(&self) -> &UpsetFamily {
        &self.family
    }

    pub fn presented(&self) -> &FiniteAlgebra {
        &self.presented
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn members(&self) -> &[Subset] {
        self.family.members()
    }

    /// Member index of the image of `a`.
    pub fn embedding(&self) -> &[usize] {
        self.family.embedding().expect("checked in assemble")
    }

    /// The image of `a` as a set of points.
    pub fn embed(&self, a: usize) -> Subset {
        self.family.get(self.embedding()[a])
    }

    /// The embedding as a Hilbert-algebra morphism into the presented algebra.
    pub fn embedding_morphism(&self) -> Morphism {
        Morphism::new(
            self.source.clone(),
            self.presented.clone(),
            self.embedding().to_vec(),
            VarietyTag::Hil,
        )
        .expect("embedding indices are members")
    }
}

fn certify(cond: bool, what: impl FnOnce() -> String) -> Result<(), ExtensionError> {
    if cond {
        Ok(())
    } else {
        Err(ExtensionError::Certificate(what()))
    }
}

fn require(alg: &FiniteAlgebra, tag: VarietyTag) -> Result<(), ExtensionError> {
    if is_valid(alg, tag) {
        Ok(())
    } else {
        Err(ExtensionError::InvalidSource(tag))
    }
}

/// `alg` extended by the join table of its natural order, when every pair
/// has a join.
fn with_all_joins(alg: &FiniteAlgebra) -> Option<FiniteAlgebra> {
    if alg.has_join() {
        Some(alg.clone())
    } else {
        alg.clone().with_derived_join()
    }
}

fn build(
    kind: ExtensionKind,
    alg: &FiniteAlgebra,
    space: &DualSpace,
    members: Vec<Subset>,
) -> Result<ExtensionResult, ExtensionError> {
    let family =
        UpsetFamily::new(space.points().clone(), members)?.with_embedding(space.images())?;
    ExtensionResult::assemble(kind, alg.clone(), family)
}

/// The implicative semilattice generated by `φ[H]` in `X(H)^+`, certified
/// equal to `FC(H)`.
pub fn extend_is(alg: &FiniteAlgebra) -> Result<ExtensionResult, ExtensionError> {
    require(alg, VarietyTag::Hil)?;
    let space = phi(alg);
    let generated = closure(
        space.points(),
        space.images().iter().copied(),
        ClosureOps::IS,
    );
    let fc = closure(
        space.points(),
        space.images().iter().copied(),
        ClosureOps::MEET,
    );
    certify(generated == fc, || {
        format!(
            "IS closure has {} members but FC(H) has {}",
            generated.len(),
            fc.len()
        )
    })?;
    build(ExtensionKind::IS, alg, &space, generated)
}

/// The gH-algebra generated by `φ[H]` in `X(H)^+`. When `H` has all joins it
/// is certified equal to `X(H)^+`, and its members to `FC(H)`.
pub fn extend_ghey(alg: &FiniteAlgebra) -> Result<ExtensionResult, ExtensionError> {
    require(alg, VarietyTag::Hil)?;
    let space = phi(alg);
    let generated = closure(
        space.points(),
        space.images().iter().copied(),
        ClosureOps::GHEY,
    );
    if with_all_joins(alg).is_some_and(|a| is_valid(&a, VarietyTag::HilS)) {
        let full = upset_algebra(space.points());
        certify(generated == full.members(), || {
            format!(
                "gH closure has {} members but X(H)^+ has {}",
                generated.len(),
                full.len()
            )
        })?;
        let fc = closure(
            space.points(),
            space.images().iter().copied(),
            ClosureOps::MEET,
        );
        certify(generated == fc, || {
            format!(
                "gH closure has {} members but FC(H) has {}",
                generated.len(),
                fc.len()
            )
        })?;
    }
    build(ExtensionKind::GHey, alg, &space, generated)
}

/// The Heyting algebra generated by `φ[H]` in `X(H)^+`; `H` must be a
/// bounded Hilbert algebra with supremum.
pub fn extend_hey(alg: &FiniteAlgebra) -> Result<ExtensionResult, ExtensionError> {
    require(alg, VarietyTag::HilS0)?;
    let space = phi(alg);
    let generated = closure(
        space.points(),
        space.images().iter().copied(),
        ClosureOps::HEY,
    );
    let full = upset_algebra(space.points());
    certify(generated == full.members(), || {
        format!(
            "Heyting closure has {} members but X(H)^+ has {}",
            generated.len(),
            full.len()
        )
    })?;
    build(ExtensionKind::Hey, alg, &space, generated)
}

/// The gH-algebra generated by `Φ[H]` in `(X*(H))^+`, certified equal to the
/// whole of `(X*(H))^+`; `Φ` is certified injective and a Hilbert morphism.
pub fn extend_dagger(alg: &FiniteAlgebra) -> Result<ExtensionResult, ExtensionError> {
    require(alg, VarietyTag::Hil)?;
    let space = big_phi(alg);
    certify(space.is_injective(), || "Φ is not injective".into())?;
    certify(space.is_morphism(), || "Φ is not a Hilbert morphism".into())?;
    let generated = closure(
        space.points(),
        space.images().iter().copied(),
        ClosureOps::GHEY,
    );
    let full = upset_algebra(space.points());
    certify(generated == full.members(), || {
        format!(
            "closure of Φ[H] has {} members but (X*(H))^+ has {}",
            generated.len(),
            full.len()
        )
    })?;
    build(ExtensionKind::Dagger, alg, &space, generated)
}

pub fn extend(alg: &FiniteAlgebra, kind: ExtensionKind) -> Result<ExtensionResult, ExtensionError> {
    match kind {
        ExtensionKind::IS => extend_is(alg),
        ExtensionKind::GHey => extend_ghey(alg),
        ExtensionKind::Hey => extend_hey(alg),
        ExtensionKind::Dagger => extend_dagger(alg),
    }
}

/// Every member is the intersection of the embedding images containing it,
/// i.e. a finite meet of images.
pub fn is_envelope(ext: &ExtensionResult) -> bool {
    let images: Vec<Subset> = (0..ext.source().size()).map(|a| ext.embed(a)).collect();
    let all = Subset::full(ext.points().len());
    ext.members().iter().all(|&u| {
        images
            .iter()
            .filter(|img| u.is_subset(**img))
            .fold(all, |acc, &img| acc.intersection(img))
            == u
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;
    use crate::fixtures::{self, G_C, G_ONE, ONE, X, Y};

    fn set(items: &[usize]) -> Subset {
        items.iter().collect()
    }

    #[test]
    fn is_extension_of_h3() {
        let ext = extend_is(&fixtures::h3()).unwrap();
        assert_eq!(ext.len(), 4);
        // Px = 0, Py = 1
        assert_eq!(
            ext.members(),
            &[Subset::empty(), set(&[0]), set(&[1]), set(&[0, 1])]
        );
        assert_eq!(ext.embed(X), set(&[0]));
        assert_eq!(ext.embed(Y), set(&[1]));
        assert_eq!(ext.embed(ONE), set(&[0, 1]));
        assert!(is_envelope(&ext));
        assert!(ext.embedding_morphism().check().is_ok());
        assert_eq!(ext.members(), upset_algebra(ext.points()).members());
    }

    #[test]
    fn trivial_and_two_chain() {
        let ext = extend_is(&fixtures::one_element()).unwrap();
        assert_eq!(ext.len(), 1);
        assert!(is_envelope(&ext));

        let c2 = fixtures::chain(2);
        let ext = extend_is(&c2).unwrap();
        assert_eq!(ext.len(), 2);
        assert_eq!(ext.embed(0), Subset::empty());
        assert_eq!(ext.embed(1), set(&[0]));
        assert!(is_envelope(&ext));
    }

    #[test]
    fn ghey_extensions() {
        let ext = extend_ghey(&fixtures::h3()).unwrap();
        assert_eq!(ext.len(), 4);
        let g4 = extend_ghey(&fixtures::g4()).unwrap();
        assert_eq!(g4.len(), 5);
        assert_eq!(g4.members(), upset_algebra(g4.points()).members());
        assert!(validate(g4.presented(), VarietyTag::GHey).unwrap().passed());
    }

    #[test]
    fn hey_needs_a_bounded_source() {
        assert_eq!(
            extend_hey(&fixtures::g4_hils()).unwrap_err(),
            ExtensionError::InvalidSource(VarietyTag::HilS0)
        );
        let c2 = fixtures::chain_heyting(2).reduct(VarietyTag::HilS0);
        let ext = extend_hey(&c2).unwrap();
        assert_eq!(ext.len(), 2);
        assert!(validate(ext.presented(), VarietyTag::Hey).unwrap().passed());
    }

    #[test]
    fn x_star_of_fixtures() {
        let h = fixtures::h3();
        let xs = x_star(&h);
        assert_eq!(xs.filters(), &[set(&[ONE]), set(&[ONE, X]), set(&[ONE, Y])]);
        let ext = extend_dagger(&h).unwrap();
        assert_eq!(ext.len(), 5);
        // ∅ = Φ(x) ∩ Φ(y)
        assert_eq!(ext.embed(X).intersection(ext.embed(Y)), Subset::empty());

        let g = fixtures::g4();
        let xs = x_star(&g);
        assert_eq!(xs.len(), 4);
        assert!(xs.contains(set(&[G_ONE, G_C])));
        // {1} ⊂ {1,c} ⊂ Pa, Pb
        assert_eq!(xs.order().upsets().len(), 6);
        assert_eq!(extend_dagger(&g).unwrap().len(), 6);

        let xs = x_star(&fixtures::one_element());
        assert!(xs.is_empty());
        assert_eq!(extend_dagger(&fixtures::one_element()).unwrap().len(), 1);
    }

    #[test]
    fn meets_of_images_exhaust_the_antichain_dual() {
        // X(A3) is a three-point antichain and every upset is a meet of images
        let a3 = fixtures::antichain_under_top(3);
        let ext = extend_is(&a3).unwrap();
        assert_eq!(ext.len(), 8);
        assert!(is_envelope(&ext));
    }

    #[test]
    fn sparse_embedding_is_not_an_envelope() {
        let space = phi(&fixtures::h3());
        let c2 = fixtures::chain(2);
        let (top, bottom) = (space.all_points(), Subset::empty());
        let images: Vec<Subset> = c2
            .elements()
            .map(|a| if a == c2.one() { top } else { bottom })
            .collect();
        let full = upset_algebra(space.points())
            .with_embedding(&images)
            .unwrap();
        let ext = ExtensionResult::assemble(ExtensionKind::IS, c2, full).unwrap();
        assert_eq!(ext.len(), 4);
        assert!(!is_envelope(&ext));
    }

    #[test]
    fn kind_round_trips_through_text() {
        for kind in ExtensionKind::ALL {
            assert_eq!(kind.as_str().parse::<ExtensionKind>(), Ok(kind));
        }
        assert!("heyting".parse::<ExtensionKind>().is_err());
    }
}
