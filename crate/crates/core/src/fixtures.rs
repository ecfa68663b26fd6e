//! Small named algebras used throughout the tests and the CLI examples.

use crate::algebra::{FiniteAlgebra, VarietyTag};
use crate::morphisms::Morphism;
use crate::poset::Poset;

/// Element indices of [`h3`].
pub const ONE: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;

/// Element indices of [`g4`].
pub const G_ONE: usize = 0;
pub const G_C: usize = 1;
pub const G_A: usize = 2;
pub const G_B: usize = 3;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `{1, x, y}` with `x`, `y` incomparable below `1`, order-induced arrow.
pub fn h3() -> FiniteAlgebra {
    let order = Poset::from_fn(3, |a, b| a == b || b == ONE);
    FiniteAlgebra::from_order("H3", &order)
        .and_then(|a| a.with_labels(labels(&["1", "x", "y"])))
        .expect("H3 is well-formed")
}

/// `{1, c, a, b}` with `a`, `b` < `c` < `1`, order-induced arrow.
pub fn g4() -> FiniteAlgebra {
    let order = Poset::from_fn(4, |a, b| {
        a == b || b == G_ONE || (b == G_C && (a == G_A || a == G_B))
    });
    FiniteAlgebra::from_order("G4", &order)
        .and_then(|a| a.with_labels(labels(&["1", "c", "a", "b"])))
        .expect("G4 is well-formed")
}

/// [`g4`] with its join table; a Hilbert algebra with supremum.
pub fn g4_hils() -> FiniteAlgebra {
    g4().with_derived_join().expect("G4 has all binary joins")
}

/// The one-element algebra.
pub fn one_element() -> FiniteAlgebra {
    FiniteAlgebra::new("1", 1, vec![0], 0).expect("trivial algebra")
}

/// Chain `0 < 1 < .. < n-1` with order-induced (Gödel) implication and no
/// lattice tables.
pub fn chain(n: usize) -> FiniteAlgebra {
    let order = Poset::from_fn(n, |a, b| a <= b);
    FiniteAlgebra::from_order(format!("C{n}"), &order).expect("chains have a top")
}

/// Chain of length `n` as a Heyting algebra (meet, join, zero attached).
pub fn chain_heyting(n: usize) -> FiniteAlgebra {
    let order = Poset::from_fn(n, |a, b| a <= b);
    FiniteAlgebra::residuated_from_order(format!("C{n}"), &order).expect("chains are Heyting")
}

/// `k` pairwise incomparable atoms below a top `0`, order-induced arrow.
pub fn antichain_under_top(k: usize) -> FiniteAlgebra {
    let order = Poset::from_fn(k + 1, |a, b| a == b || b == 0);
    FiniteAlgebra::from_order(format!("A{k}"), &order).expect("has a top")
}

/// `f : H3 → G4` with `x ↦ a`, `y ↦ b`, `1 ↦ 1`.
pub fn h3_to_g4() -> Morphism {
    let mut map = vec![0; 3];
    map[ONE] = G_ONE;
    map[X] = G_A;
    map[Y] = G_B;
    Morphism::new(h3(), g4(), map, VarietyTag::Hil).expect("well-formed map")
}
