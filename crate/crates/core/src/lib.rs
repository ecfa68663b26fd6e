//! Finite Hilbert algebras, their Priestley-style duals, and the free
//! implicative-semilattice, generalized Heyting, Heyting and dagger
//! extensions built from them.
//!
//! Everything is finite and exhaustive: subsets are bitsets over at most 128
//! points, and properties are checked by enumerating every instance.

pub mod algebra;
pub mod duality;
pub mod enumeration;
pub mod error;
pub mod extensions;
pub mod filters;
pub mod fixtures;
pub mod io;
pub mod morphisms;
pub mod poset;
pub mod subset;
pub mod suites;

pub use algebra::{is_valid, validate, FiniteAlgebra, VarietyTag};
pub use duality::{phi, upset_algebra, DualSpace, FilterRelation, UpsetFamily};
pub use enumeration::{enumerate_algebras, AlgebraCatalog};
pub use error::{
    AlgebraError, EnumerationError, ExtensionError, FamilyError, FilterError, IoError,
    MorphismError,
};
pub use extensions::{extend, ExtensionKind, ExtensionResult};
pub use filters::{irreducible_filters, FilterPoset};
pub use morphisms::{lift, Morphism, Preserves};
pub use poset::Poset;
pub use subset::Subset;
pub use suites::{run_suite, Suite, SuiteReport};
