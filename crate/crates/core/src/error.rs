use thiserror::Error;

use crate::algebra::VarietyTag;
use crate::subset::Subset;

/// Structural problems with operation tables, distinct from axiom failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("carrier of size {0} exceeds the supported maximum of {max}", max = crate::algebra::MAX_CARRIER)]
    TooLarge(usize),
    #[error("{table} table has {found} entries, expected {expected}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table}[{row}][{col}] = {value} is outside the carrier of size {size}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("constant {name} = {value} is outside the carrier of size {size}")]
    ConstantOutOfRange {
        name: &'static str,
        value: usize,
        size: usize,
    },
    #[error("variety {tag} requires the {table} table")]
    MissingTable {
        tag: VarietyTag,
        table: &'static str,
    },
    #[error("order has no {0}")]
    MissingBound(&'static str),
    #[error("pair ({0}, {1}) has no {2} in this order")]
    MissingOperation(usize, usize, &'static str),
    #[error("{0} labels given for a carrier of size {1}")]
    LabelCount(usize, usize),
}

/// Violated preconditions of the filter-theoretic constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("{0} is not an implicative filter")]
    NotAFilter(Subset),
    #[error("{0} is not an irreducible filter")]
    NotIrreducible(Subset),
    #[error("{0} is not an order-ideal")]
    NotAnOrderIdeal(Subset),
    #[error("filter {filter} meets ideal {ideal}")]
    NotDisjoint { filter: Subset, ideal: Subset },
    #[error("preimage {preimage} of {filter} is not contained in {target}")]
    PreimageNotContained {
        filter: Subset,
        preimage: Subset,
        target: Subset,
    },
    #[error("{0} is not an intersection of irreducible filters")]
    NotInXStar(Subset),
    #[error("no irreducible filter separates {filter} from {ideal}")]
    NoWitness { filter: Subset, ideal: Subset },
    #[error("the algebra has no join table")]
    NoJoin,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map has {found} entries, domain has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error("map sends {from} to {to}, outside the codomain of size {size}")]
    OutOfRange { from: usize, to: usize, size: usize },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{side} does not validate as {tag}")]
    InvalidAlgebra { side: &'static str, tag: VarietyTag },
    #[error("map does not preserve {op} at {witness:?}")]
    NotPreserved {
        op: &'static str,
        witness: Vec<usize>,
    },
    #[error("cannot compose: codomain of the first map is not the domain of the second")]
    NotComposable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("source does not validate as {0}")]
    InvalidSource(VarietyTag),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("the {0} construction has no universal property to verify")]
    NoUniversalProperty(crate::extensions::ExtensionKind),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0} is not an upset of the point poset")]
    NotAnUpset(Subset),
    #[error("family does not contain the full point set")]
    MissingTop,
    #[error("family is not closed under ⇒ ({0} ⇒ {1} is missing)")]
    NotArrowClosed(Subset, Subset),
    #[error("embedding image {0} is not a member of the family")]
    ImageNotMember(Subset),
    #[error("relations do not compose: target of the first is not the source of the second")]
    NotComposable,
    #[error("family has {0} members, more than an algebra can carry")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("size {requested} exceeds the enumeration cap of {cap} for {tag}")]
    CapExceeded {
        tag: VarietyTag,
        requested: usize,
        cap: usize,
    },
}

/// Problems reading or writing algebra and morphism documents. `location`
/// names the file (or `<inline>`) and the offending field.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{location}: malformed document at line {line}, column {column}: {message}")]
    Syntax {
        location: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {source}")]
    Algebra {
        location: String,
        #[source]
        source: AlgebraError,
    },
    #[error("{location}: unknown variety `{value}`")]
    UnknownVariety { location: String, value: String },
    #[error("{location}: algebra does not validate as {variety}: {report}")]
    VarietyMismatch {
        location: String,
        variety: VarietyTag,
        report: String,
    },
    #[error("{location}: {source}")]
    Morphism {
        location: String,
        #[source]
        source: MorphismError,
    },
}
