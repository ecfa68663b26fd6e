mod common;

use hilbext::algebra::{is_valid, VarietyTag};
use hilbext::enumeration::{are_isomorphic, canonical_form, enumerate_algebras};
use hilbext::morphisms::{check_preserves, enumerate_morphisms, Preserves};

#[test]
fn naive_table_counts_for_tiny_sizes() {
    assert_eq!(common::naive_hilbert_tables(1).len(), 1);
    assert_eq!(common::naive_hilbert_tables(2).len(), 1);
    // both labelings of the 3-chain and the single H3 table
    assert_eq!(common::naive_hilbert_tables(3).len(), 3);
}

#[test]
fn catalogs_match_naive_oracle_up_to_four() {
    for tag in VarietyTag::ALL {
        let catalog = enumerate_algebras(tag, 4).unwrap();
        for n in 1..=4 {
            let oracle = common::naive_classes(tag, n);
            let found: Vec<_> = catalog.of_size(n).collect();
            assert_eq!(found.len(), oracle.len(), "{tag} size {n}");
            for o in &oracle {
                let matches = found
                    .iter()
                    .filter(|a| common::naive_isomorphic(a, o))
                    .count();
                assert_eq!(matches, 1, "{tag} size {n}: {:?}", o.arrow_table());
            }
        }
    }
}

#[test]
fn catalog_members_are_valid_and_distinct() {
    for tag in VarietyTag::ALL {
        let catalog = enumerate_algebras(tag, 5).unwrap();
        for (i, a) in catalog.members.iter().enumerate() {
            assert!(is_valid(a, tag), "{}", a.name());
            assert_eq!(canonical_form(a).arrow_table(), a.arrow_table());
            for b in &catalog.members[i + 1..] {
                assert!(!are_isomorphic(a, b), "{} ~ {}", a.name(), b.name());
            }
        }
    }
}

#[test]
fn fast_isomorphism_test_agrees_with_brute_force() {
    let members = enumerate_algebras(VarietyTag::Hil, 4).unwrap().members;
    for a in &members {
        for p in common::permutations(a.size()) {
            let b = a.permuted(&p);
            assert!(are_isomorphic(a, &b));
            assert!(common::naive_isomorphic(a, &b));
        }
    }
}

#[test]
fn morphism_enumeration_matches_all_maps() {
    for (tag, max) in [
        (VarietyTag::Hil, 4),
        (VarietyTag::HilS, 3),
        (VarietyTag::IS, 4),
    ] {
        let algs = enumerate_algebras(tag, max).unwrap().members;
        for h in &algs {
            for g in &algs {
                let mut brute: Vec<Vec<usize>> = common::all_maps(h.size(), g.size())
                    .into_iter()
                    .filter(|m| check_preserves(h, g, m, Preserves::of(tag)).is_ok())
                    .collect();
                brute.sort();
                let fast: Vec<Vec<usize>> = enumerate_morphisms(h, g, tag)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.map().to_vec())
                    .collect();
                assert_eq!(fast, brute, "{tag}: {} → {}", h.name(), g.name());
            }
        }
    }
}
