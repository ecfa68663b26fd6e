use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::{select, Index};

use hilbext::algebra::{is_valid, FiniteAlgebra, VarietyTag};
use hilbext::duality::{epsilon, phi, upset_algebra};
use hilbext::enumeration::{canonical_form, enumerate_algebras};
use hilbext::extensions::{extend, ExtensionKind};
use hilbext::filters::{generated_filter, irreducible_filters, is_implicative_filter};
use hilbext::io::{emit_algebra, parse_algebra};
use hilbext::subset::Subset;

fn hil5() -> &'static [FiniteAlgebra] {
    static CATALOG: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    CATALOG.get_or_init(|| enumerate_algebras(VarietyTag::Hil, 5).unwrap().members)
}

fn shuffle(n: usize, seed: &[Index]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, seed[i].index(i + 1));
    }
    perm
}

fn algebra_and_permutation() -> impl Strategy<Value = (FiniteAlgebra, Vec<usize>)> {
    (select(hil5()), prop::collection::vec(any::<Index>(), 5)).prop_map(|(alg, seed)| {
        let perm = shuffle(alg.size(), &seed);
        (alg, perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn relabeling_preserves_structure((alg, perm) in algebra_and_permutation()) {
        let moved = alg.permuted(&perm);
        prop_assert!(is_valid(&moved, VarietyTag::Hil));
        let (a, b) = (canonical_form(&moved), canonical_form(&alg));
        prop_assert_eq!(a.arrow_table(), b.arrow_table());
        prop_assert_eq!(irreducible_filters(&moved).len(), irreducible_filters(&alg).len());
        prop_assert_eq!(
            extend(&moved, ExtensionKind::IS).unwrap().len(),
            extend(&alg, ExtensionKind::IS).unwrap().len()
        );
        // dagger extensions of five-element algebras can outgrow the carrier limit
        let sizes = |a: &FiniteAlgebra| extend(a, ExtensionKind::Dagger).map(|e| e.len()).map_err(|e| e.to_string());
        prop_assert_eq!(sizes(&moved), sizes(&alg));
        prop_assert!(epsilon(&moved).passed());
    }

    #[test]
    fn generated_filters_are_least((alg, _) in algebra_and_permutation(), bits in any::<u8>()) {
        let x: Subset = (0..alg.size()).filter(|i| bits >> i & 1 == 1).collect();
        let f = generated_filter(&alg, x);
        prop_assert!(x.is_subset(f) && is_implicative_filter(&alg, f));
        for g in alg.carrier().subsets().filter(|&g| is_implicative_filter(&alg, g)) {
            if x.is_subset(g) {
                prop_assert!(f.is_subset(g));
            }
        }
    }

    #[test]
    fn upset_arrow_is_residual((alg, _) in algebra_and_permutation(), i in any::<Index>(), j in any::<Index>()) {
        let space = phi(&alg);
        let ups = upset_algebra(space.points());
        let (u, v) = (ups.get(i.index(ups.len())), ups.get(j.index(ups.len())));
        let w = ups.implication(u, v);
        for &c in ups.members() {
            prop_assert_eq!(c.intersection(u).is_subset(v), c.is_subset(w));
        }
    }

    #[test]
    fn documents_round_trip((alg, perm) in algebra_and_permutation()) {
        let moved = alg.permuted(&perm);
        let text = emit_algebra(&moved, VarietyTag::Hil);
        let (back, tag) = parse_algebra(&text, "prop").unwrap();
        prop_assert_eq!(tag, VarietyTag::Hil);
        prop_assert_eq!(&back, &moved);
        prop_assert_eq!(emit_algebra(&back, tag), text);
    }
}
