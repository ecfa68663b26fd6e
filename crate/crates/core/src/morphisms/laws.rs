use std::fmt;

use crate::algebra::{is_valid, FiniteAlgebra};
use crate::error::ExtensionError;
use crate::extensions::{extend, ExtensionKind, ExtensionResult};

use super::lift::{lift_between, LiftedMorphism};
use super::{check_preserves, enumerate_maps, enumerate_morphisms, Morphism, Preserves};

/// A failed check together with the objects needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub algebras: Vec<FiniteAlgebra>,
    pub morphisms: Vec<Morphism>,
}

impl Counterexample {
    pub fn new(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Counterexample {
            check: check.into(),
            detail: detail.into(),
            algebras: Vec::new(),
            morphisms: Vec::new(),
        }
    }

    pub fn with_algebra(mut self, alg: &FiniteAlgebra) -> Self {
        self.algebras.push(alg.clone());
        self
    }

    pub fn with_morphism(mut self, f: &Morphism) -> Self {
        self.morphisms.push(f.clone());
        self
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorLawReport {
    pub kind: ExtensionKind,
    pub algebras: usize,
    pub morphisms: usize,
    pub identities: usize,
    pub compositions: usize,
    pub failures: Vec<Counterexample>,
}

impl FunctorLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Id^K = Id` and `(g ∘ f)^K = g^K ∘ f^K` over every morphism of the
/// kind's source variety between members of `algebras`, and every composable
/// pair of them.
pub fn verify_functor_laws(algebras: &[FiniteAlgebra], kind: ExtensionKind) -> FunctorLawReport {
    let tag = kind.source_tag();
    let mut report = FunctorLawReport {
        kind,
        algebras: algebras.len(),
        morphisms: 0,
        identities: 0,
        compositions: 0,
        failures: Vec::new(),
    };

    let mut exts: Vec<Option<ExtensionResult>> = Vec::with_capacity(algebras.len());
    for alg in algebras {
        match extend(alg, kind) {
            Ok(e) => exts.push(Some(e)),
            Err(e) => {
                report
                    .failures
                    .push(Counterexample::new("extension", e.to_string()).with_algebra(alg));
                exts.push(None);
            }
        }
    }

    let n = algebras.len();
    // lifts[i][j]: every lifted morphism from algebra i to algebra j
    let mut lifts: Vec<Vec<Vec<LiftedMorphism>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (Some(src), Some(tgt)) = (&exts[i], &exts[j]) else {
                continue;
            };
            let morphisms = match enumerate_morphisms(&algebras[i], &algebras[j], tag) {
                Ok(m) => m,
                Err(e) => {
                    report.failures.push(
                        Counterexample::new("enumeration", e.to_string())
                            .with_algebra(&algebras[i])
                            .with_algebra(&algebras[j]),
                    );
                    continue;
                }
            };
            for f in morphisms {
                report.morphisms += 1;
                match lift_between(&f, src.clone(), tgt.clone()) {
                    Ok(l) => lifts[i][j].push(l),
                    Err(e) => report
                        .failures
                        .push(Counterexample::new("lift", e.to_string()).with_morphism(&f)),
                }
            }
        }
    }

    for (i, alg) in algebras.iter().enumerate() {
        let Some(ext) = &exts[i] else { continue };
        report.identities += 1;
        let id = Morphism::identity(alg.clone(), tag);
        match lift_between(&id, ext.clone(), ext.clone()) {
            Ok(l) if l.map().iter().enumerate().all(|(k, &v)| k == v) => {}
            Ok(_) => report.failures.push(
                Counterexample::new("identity", "lift of the identity is not the identity")
                    .with_morphism(&id),
            ),
            Err(e) => report
                .failures
                .push(Counterexample::new("identity", e.to_string()).with_morphism(&id)),
        }
    }

    for row in &lifts {
        for (j, from_i) in row.iter().enumerate() {
            for from_j in &lifts[j] {
                for lf in from_i {
                    for lg in from_j {
                        report.compositions += 1;
                        let (f, g) = (lf.base(), lg.base());
                        let gf = g.after(f).expect("codomain of f is domain of g");
                        let expected: Vec<usize> = lf.map().iter().map(|&u| lg.map()[u]).collect();
                        let ok = match lift_between(&gf, lf.source().clone(), lg.target().clone()) {
                            Ok(l) => l.map() == expected.as_slice(),
                            Err(_) => false,
                        };
                        if !ok {
                            report.failures.push(
                                Counterexample::new(
                                    "composition",
                                    format!("(g∘f)^{kind} differs from g^{kind}∘f^{kind}"),
                                )
                                .with_morphism(f)
                                .with_morphism(g),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPropertyReport {
    pub kind: ExtensionKind,
    /// Targets `G` examined.
    pub targets: usize,
    /// Morphisms `f : H → U(G)` factored.
    pub morphisms: usize,
    /// Candidate mediating maps examined for uniqueness.
    pub candidates: usize,
    /// Naturality squares `lift(f) ∘ e = e ∘ f` checked.
    pub naturality: usize,
    pub failures: Vec<Counterexample>,
}

impl UniversalPropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Operations a candidate mediating map must preserve in the uniqueness
/// count. Implicative-semilattice morphisms are only required to preserve
/// `1` and `∧` here.
fn uniqueness_contract(kind: ExtensionKind) -> Preserves {
    match kind {
        ExtensionKind::IS => Preserves::ONE | Preserves::MEET,
        other => Preserves::of(other.target_tag()),
    }
}

/// For each `G` in `targets` and every morphism `f : H → U(G)`, builds
/// `h = φ_G⁻¹ ∘ f^K`, checks `f = U(h) ∘ e_H`, and checks that `h` is the
/// only morphism `H^K → G` with that property.
pub fn verify_universal_property(
    h: &FiniteAlgebra,
    targets: &[FiniteAlgebra],
    kind: ExtensionKind,
) -> Result<UniversalPropertyReport, ExtensionError> {
    if kind == ExtensionKind::Dagger {
        return Err(ExtensionError::NoUniversalProperty(kind));
    }
    let (source_tag, target_tag) = (kind.source_tag(), kind.target_tag());
    if !is_valid(h, source_tag) {
        return Err(ExtensionError::InvalidSource(source_tag));
    }
    let ext_h = extend(h, kind)?;
    let mut report = UniversalPropertyReport {
        kind,
        targets: 0,
        morphisms: 0,
        candidates: 0,
        naturality: 0,
        failures: Vec::new(),
    };

    for g in targets {
        report.targets += 1;
        if !is_valid(g, target_tag) {
            report.failures.push(
                Counterexample::new("target", format!("does not validate as {target_tag}"))
                    .with_algebra(g),
            );
            continue;
        }
        let u_g = g.reduct(source_tag);
        let ext_g = extend(&u_g, kind)?;
        let emb = ext_g.embedding();
        let mut inverse = vec![usize::MAX; ext_g.len()];
        for (a, &m) in emb.iter().enumerate() {
            inverse[m] = a;
        }
        let iso = ext_g.len() == g.size()
            && inverse.iter().all(|&a| a != usize::MAX)
            && check_preserves(g, ext_g.presented(), emb, Preserves::of(target_tag)).is_ok();
        if !iso {
            report.failures.push(
                Counterexample::new("reflection", "φ_G is not an isomorphism onto G^K")
                    .with_algebra(g),
            );
            continue;
        }

        let candidates = enumerate_maps(ext_h.presented(), g, uniqueness_contract(kind))?;
        report.candidates += candidates.len();

        for f in enumerate_morphisms(h, &u_g, source_tag)? {
            report.morphisms += 1;
            let lifted = match lift_between(&f, ext_h.clone(), ext_g.clone()) {
                Ok(l) => l,
                Err(e) => {
                    report.failures.push(
                        Counterexample::new("naturality", e.to_string())
                            .with_morphism(&f)
                            .with_algebra(g),
                    );
                    continue;
                }
            };
            report.naturality += 1;
            let mediating: Vec<usize> = lifted.map().iter().map(|&m| inverse[m]).collect();
            let factors = |map: &[usize]| {
                h.elements()
                    .all(|a| map[ext_h.embedding()[a]] == f.apply(a))
            };
            if let Err(e) =
                check_preserves(ext_h.presented(), g, &mediating, Preserves::of(target_tag))
            {
                report.failures.push(
                    Counterexample::new("mediating morphism", e.to_string())
                        .with_morphism(&f)
                        .with_algebra(g),
                );
                continue;
            }
            if !factors(&mediating) {
                report.failures.push(
                    Counterexample::new("factorization", "f ≠ U(h) ∘ e")
                        .with_morphism(&f)
                        .with_algebra(g),
                );
                continue;
            }
            let solutions: Vec<&Vec<usize>> = candidates.iter().filter(|c| factors(c)).collect();
            if solutions.len() != 1 || solutions[0] != &mediating {
                report.failures.push(
                    Counterexample::new(
                        "uniqueness",
                        format!("{} maps factor f through e", solutions.len()),
                    )
                    .with_morphism(&f)
                    .with_algebra(g),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarietyTag;
    use crate::extensions::extend_is;
    use crate::fixtures;

    #[test]
    fn functor_laws_on_fixtures() {
        let algs = [fixtures::h3(), fixtures::g4(), fixtures::chain(2)];
        for kind in [ExtensionKind::IS, ExtensionKind::Dagger] {
            let r = verify_functor_laws(&algs, kind);
            assert!(r.passed(), "{:?}", r.failures);
            assert_eq!(r.identities, 3);
            assert!(r.compositions > 0);
        }
    }

    #[test]
    fn universal_property_against_own_extension() {
        let h = fixtures::h3();
        let g = extend_is(&h).unwrap().presented().clone();
        let r = verify_universal_property(&h, &[g], ExtensionKind::IS).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.morphisms >= 1);
    }

    #[test]
    fn universal_property_against_two_chain() {
        let c2 = fixtures::chain_heyting(2).reduct(VarietyTag::IS);
        let r = verify_universal_property(&fixtures::h3(), &[c2], ExtensionKind::IS).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        // x → y = y rules out sending both x and y to 0
        assert_eq!(r.morphisms, 3);
    }

    #[test]
    fn ghey_universal_property_for_g4() {
        let g4 = fixtures::g4_hils();
        let target = crate::extensions::extend_ghey(&g4)
            .unwrap()
            .presented()
            .clone();
        let r = verify_universal_property(&g4, &[target], ExtensionKind::GHey).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn dagger_has_no_universal_property() {
        assert!(verify_universal_property(&fixtures::h3(), &[], ExtensionKind::Dagger).is_err());
    }
}
