use std::path::PathBuf;

use hilbext::algebra::VarietyTag;
use hilbext::duality::{relation_of, upset_algebra};
use hilbext::extensions::{extend, ExtensionKind};
use hilbext::filters::irreducible_filters;
use hilbext::fixtures::{self, G_A, G_B, G_C, G_ONE, ONE, X, Y};
use hilbext::io::{read_algebra, read_morphism};
use hilbext::morphisms::{enumerate_morphisms, hat_g, lift, Morphism, Preserves};
use hilbext::subset::Subset;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn set(items: &[usize]) -> Subset {
    items.iter().collect()
}

#[test]
fn fixture_files_match_builtin_fixtures() {
    let (h3, tag) = read_algebra(&fixture("h3.json")).unwrap();
    assert_eq!(tag, VarietyTag::Hil);
    assert_eq!(h3, fixtures::h3());
    let (g4, _) = read_algebra(&fixture("g4.json")).unwrap();
    assert_eq!(g4, fixtures::g4());
    let f = read_morphism(&fixture("h3_to_g4.json")).unwrap();
    assert_eq!(f, fixtures::h3_to_g4());
    assert!(f.check().is_ok());
}

#[test]
fn dual_points_of_the_fixtures() {
    let xh = irreducible_filters(&fixtures::h3());
    assert_eq!(xh.filters(), &[set(&[ONE, X]), set(&[ONE, Y])]);
    let xg = irreducible_filters(&fixtures::g4());
    let mut expected = vec![
        set(&[G_ONE]),
        set(&[G_ONE, G_C, G_A]),
        set(&[G_ONE, G_C, G_B]),
    ];
    expected.sort();
    assert_eq!(xg.filters(), expected.as_slice());
}

#[test]
fn relation_of_the_fixture_morphism() {
    let f = fixtures::h3_to_g4();
    let r = relation_of(&f);
    let (xg, xh) = (r.source(), r.target());
    let p = |s: &[usize]| xg.index_of(set(s)).unwrap();
    let q = |s: &[usize]| xh.index_of(set(s)).unwrap();
    let mut expected = vec![
        (p(&[G_ONE]), q(&[ONE, X])),
        (p(&[G_ONE]), q(&[ONE, Y])),
        (p(&[G_ONE, G_C, G_A]), q(&[ONE, X])),
        (p(&[G_ONE, G_C, G_B]), q(&[ONE, Y])),
    ];
    expected.sort();
    let mut pairs = r.pairs();
    pairs.sort();
    assert_eq!(pairs, expected);
}

#[test]
fn lifted_map_breaks_a_join() {
    let f = fixtures::h3_to_g4();
    let g = hat_g(&f);
    let xg = g.cod().points();
    let pa = xg.index_of(set(&[G_ONE, G_C, G_A])).unwrap();
    let pb = xg.index_of(set(&[G_ONE, G_C, G_B])).unwrap();
    let (u, v) = (Subset::singleton(0), Subset::singleton(1));
    assert_eq!(g.apply(u).union(g.apply(v)), set(&[pa, pb]));
    assert_eq!(g.apply(u.union(v)), Subset::full(3));
    assert!(g.preserves(Preserves::ONE | Preserves::MEET | Preserves::ARROW));
}

#[test]
fn extension_sizes_of_the_fixtures() {
    let sizes = |alg: &hilbext::FiniteAlgebra, kind| extend(alg, kind).unwrap().len();
    assert_eq!(sizes(&fixtures::h3(), ExtensionKind::IS), 4);
    assert_eq!(sizes(&fixtures::h3(), ExtensionKind::Dagger), 5);
    assert_eq!(sizes(&fixtures::g4(), ExtensionKind::IS), 5);
    assert_eq!(sizes(&fixtures::g4_hils(), ExtensionKind::GHey), 5);
    assert_eq!(sizes(&fixtures::g4(), ExtensionKind::Dagger), 6);
    assert_eq!(
        upset_algebra(&irreducible_filters(&fixtures::g4())).len(),
        5
    );
}

#[test]
fn morphisms_between_the_fixtures() {
    let ms = enumerate_morphisms(&fixtures::h3(), &fixtures::g4(), VarietyTag::Hil).unwrap();
    assert_eq!(ms.len(), 9);
    assert!(ms.contains(&fixtures::h3_to_g4()));
}

#[test]
fn fixture_lifts() {
    let f = fixtures::h3_to_g4();
    for kind in [ExtensionKind::IS, ExtensionKind::Dagger] {
        let l = lift(&f, kind).unwrap();
        assert!(l.intertwines());
        assert!(l.morphism().check().is_ok());
    }
    // with join tables attached, f(x ∨ y) = 1 but f(x) ∨ f(y) = c
    let h3 = fixtures::h3().with_derived_join().unwrap();
    let joined =
        Morphism::new(h3, fixtures::g4_hils(), f.map().to_vec(), VarietyTag::HilS).unwrap();
    assert!(joined.check().is_err());
    assert!(lift(&joined, ExtensionKind::GHey).is_err());
}

#[test]
fn written_documents_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g4.json");
    hilbext::io::write_algebra(&path, &fixtures::g4_hils(), VarietyTag::HilS).unwrap();
    let (back, tag) = read_algebra(&path).unwrap();
    assert_eq!((back, tag), (fixtures::g4_hils(), VarietyTag::HilS));
    let missing = read_algebra(&dir.path().join("nope.json")).unwrap_err();
    assert!(missing.to_string().contains("nope.json"), "{missing}");
}
