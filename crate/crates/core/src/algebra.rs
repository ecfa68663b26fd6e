//! Finite algebras given by operation tables.
//!
//! One [`FiniteAlgebra`] type covers Hilbert algebras, Hilbert algebras with
//! supremum (and minimum), implicative semilattices, generalized Heyting
//! algebras and Heyting algebras. Which tables must be present, and which
//! axioms [`validate`] checks, is decided by a [`VarietyTag`].

use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;
use crate::poset::Poset;
use crate::subset::Subset;

/// Largest carrier representable with [`Subset`]-valued filters.
pub const MAX_CARRIER: usize = Subset::CAPACITY;

/// Default number of failures collected by [`validate`].
pub const DEFAULT_FAILURE_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyTag {
    /// Hilbert algebras `(H, →, 1)`.
    Hil,
    /// Hilbert algebras with supremum `(H, ∨, →, 1)`.
    HilS,
    /// Hilbert algebras with supremum and minimum `(H, ∨, →, 0, 1)`.
    HilS0,
    /// Implicative semilattices `(H, ∧, →, 1)`.
    IS,
    /// Generalized Heyting algebras `(H, ∧, ∨, →, 1)`.
    GHey,
    /// Heyting algebras `(H, ∧, ∨, →, 0, 1)`.
    Hey,
}

impl VarietyTag {
    pub const ALL: [VarietyTag; 6] = [
        VarietyTag::Hil,
        VarietyTag::HilS,
        VarietyTag::HilS0,
        VarietyTag::IS,
        VarietyTag::GHey,
        VarietyTag::Hey,
    ];

    pub fn needs_join(self) -> bool {
        matches!(
            self,
            VarietyTag::HilS | VarietyTag::HilS0 | VarietyTag::GHey | VarietyTag::Hey
        )
    }

    pub fn needs_meet(self) -> bool {
        matches!(self, VarietyTag::IS | VarietyTag::GHey | VarietyTag::Hey)
    }

    pub fn needs_zero(self) -> bool {
        matches!(self, VarietyTag::HilS0 | VarietyTag::Hey)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VarietyTag::Hil => "hil",
            VarietyTag::HilS => "hils",
            VarietyTag::HilS0 => "hils0",
            VarietyTag::IS => "is",
            VarietyTag::GHey => "ghey",
            VarietyTag::Hey => "hey",
        }
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VarietyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hil" => Ok(VarietyTag::Hil),
            "hils" => Ok(VarietyTag::HilS),
            "hils0" => Ok(VarietyTag::HilS0),
            "is" => Ok(VarietyTag::IS),
            "ghey" => Ok(VarietyTag::GHey),
            "hey" => Ok(VarietyTag::Hey),
            other => Err(format!(
                "unknown variety `{other}` (expected hil, hils, hils0, is, ghey or hey)"
            )),
        }
    }
}

/// A finite algebra on the carrier `{0, .., size - 1}`.
///
/// Binary tables are stored row-major: `arrow[a * size + b] = a → b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    arrow: Vec<usize>,
    one: usize,
    join: Option<Vec<usize>>,
    meet: Option<Vec<usize>>,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
}

fn check_table(table: &'static str, t: &[usize], size: usize) -> Result<(), AlgebraError> {
    if t.len() != size * size {
        return Err(AlgebraError::TableShape {
            table,
            expected: size * size,
            found: t.len(),
        });
    }
    if let Some((i, &value)) = t.iter().enumerate().find(|(_, &v)| v >= size) {
        return Err(AlgebraError::EntryOutOfRange {
            table,
            row: i / size,
            col: i % size,
            value,
            size,
        });
    }
    Ok(())
}

fn check_constant(name: &'static str, value: usize, size: usize) -> Result<(), AlgebraError> {
    if value >= size {
        Err(AlgebraError::ConstantOutOfRange { name, value, size })
    } else {
        Ok(())
    }
}

impl FiniteAlgebra {
    /// Algebra with a flat row-major implication table.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        arrow: Vec<usize>,
        one: usize,
    ) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if size > MAX_CARRIER {
            return Err(AlgebraError::TooLarge(size));
        }
        check_table("arrow", &arrow, size)?;
        check_constant("one", one, size)?;
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            arrow,
            one,
            join: None,
            meet: None,
            zero: None,
            labels: None,
        })
    }

    /// Algebra from implication table rows.
    pub fn from_rows(
        name: impl Into<String>,
        rows: &[Vec<usize>],
        one: usize,
    ) -> Result<Self, AlgebraError> {
        let size = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != size) {
            return Err(AlgebraError::TableShape {
                table: "arrow",
                expected: size,
                found: r.len(),
            });
        }
        Self::new(name, size, rows.concat(), one)
    }

    /// Order-induced Hilbert algebra on a poset with a top element:
    /// `a → b = 1` if `a ≤ b`, and `b` otherwise.
    pub fn from_order(name: impl Into<String>, order: &Poset) -> Result<Self, AlgebraError> {
        let one = order.top().ok_or(AlgebraError::MissingBound("top"))?;
        let n = order.len();
        let arrow = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                if order.leq(a, b) {
                    one
                } else {
                    b
                }
            })
            .collect();
        Self::new(name, n, arrow, one)
    }

    /// The residuated structure of a finite poset: meets and relative
    /// pseudo-complements must exist; joins and the bottom are attached when
    /// they exist.
    pub fn residuated_from_order(
        name: impl Into<String>,
        order: &Poset,
    ) -> Result<Self, AlgebraError> {
        let one = order.top().ok_or(AlgebraError::MissingBound("top"))?;
        let n = order.len();
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = order
                    .meet(a, b)
                    .ok_or(AlgebraError::MissingOperation(a, b, "meet"))?;
            }
        }
        let mut arrow = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let below: Subset = (0..n).filter(|&c| order.leq(meet[a * n + c], b)).collect();
                arrow[a * n + b] = below
                    .iter()
                    .find(|&c| below.is_subset(order.principal_down(c)))
                    .ok_or(AlgebraError::MissingOperation(
                        a,
                        b,
                        "relative pseudo-complement",
                    ))?;
            }
        }
        let mut alg = Self::new(name, n, arrow, one)?;
        alg.meet = Some(meet);
        if let Some(with_join) = alg.clone().with_derived_join() {
            alg = with_join;
        }
        alg.zero = order.bottom();
        Ok(alg)
    }

    pub fn with_join(mut self, join: Vec<usize>) -> Result<Self, AlgebraError> {
        check_table("join", &join, self.size)?;
        self.join = Some(join);
        Ok(self)
    }

    pub fn with_meet(mut self, meet: Vec<usize>) -> Result<Self, AlgebraError> {
        check_table("meet", &meet, self.size)?;
        self.meet = Some(meet);
        Ok(self)
    }

    pub fn with_zero(mut self, zero: usize) -> Result<Self, AlgebraError> {
        check_constant("zero", zero, self.size)?;
        self.zero = Some(zero);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.size {
            return Err(AlgebraError::LabelCount(labels.len(), self.size));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attaches the join table computed from the natural order, if every
    /// pair has a least upper bound.
    pub fn with_derived_join(mut self) -> Option<Self> {
        let order = natural_order(&self);
        let n = self.size;
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = order.join(a, b)?;
            }
        }
        self.join = Some(join);
        Some(self)
    }

    /// Attaches the meet table computed from the natural order, if every
    /// pair has a greatest lower bound. Whether `→` residuates it is left to
    /// validation.
    pub fn with_derived_meet(mut self) -> Option<Self> {
        let order = natural_order(&self);
        let n = self.size;
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = order.meet(a, b)?;
            }
        }
        self.meet = Some(meet);
        Some(self)
    }

    /// Derives whichever of join, meet and zero `tag` needs and the algebra
    /// lacks, then takes the reduct. `None` if the order lacks one of them.
    pub fn completed(&self, tag: VarietyTag) -> Option<Self> {
        let mut alg = self.clone();
        if tag.needs_join() && !alg.has_join() {
            alg = alg.with_derived_join()?;
        }
        if tag.needs_meet() && !alg.has_meet() {
            alg = alg.with_derived_meet()?;
        }
        if tag.needs_zero() && alg.zero.is_none() {
            alg = alg.with_derived_zero()?;
        }
        Some(alg.reduct(tag))
    }

    /// Attaches the bottom of the natural order as `zero`, if there is one.
    pub fn with_derived_zero(mut self) -> Option<Self> {
        self.zero = Some(natural_order(&self).bottom()?);
        Some(self)
    }

    /// Drops every table outside the signature of `tag`. The result may be
    /// missing tables that `tag` needs; this never adds structure.
    pub fn reduct(&self, tag: VarietyTag) -> Self {
        let mut r = self.clone();
        if !tag.needs_join() {
            r.join = None;
        }
        if !tag.needs_meet() {
            r.meet = None;
        }
        if !tag.needs_zero() {
            r.zero = None;
        }
        r
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.size)
    }

    #[inline]
    pub fn arrow(&self, a: usize, b: usize) -> usize {
        self.arrow[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join.as_ref().map(|t| t[a * self.size + b])
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet.as_ref().map(|t| t[a * self.size + b])
    }

    /// Natural order: `a ≤ b` iff `a → b = 1`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.arrow(a, b) == self.one
    }

    pub fn arrow_table(&self) -> &[usize] {
        &self.arrow
    }

    pub fn join_table(&self) -> Option<&[usize]> {
        self.join.as_deref()
    }

    pub fn meet_table(&self) -> Option<&[usize]> {
        self.meet.as_deref()
    }

    pub fn has_join(&self) -> bool {
        self.join.is_some()
    }

    pub fn has_meet(&self) -> bool {
        self.meet.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label, or its index.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn format_subset(&self, s: Subset) -> String {
        let parts: Vec<String> = s.iter().map(|a| self.label(a)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Relabels the carrier: element `a` becomes `perm[a]`. Labels follow
    /// their elements.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.size;
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let permute_table = |t: &Vec<usize>| {
            (0..n * n)
                .map(|i| perm[t[inv[i / n] * n + inv[i % n]]])
                .collect::<Vec<_>>()
        };
        FiniteAlgebra {
            name: self.name.clone(),
            size: n,
            arrow: permute_table(&self.arrow),
            one: perm[self.one],
            join: self.join.as_ref().map(permute_table),
            meet: self.meet.as_ref().map(permute_table),
            zero: self.zero.map(|z| perm[z]),
            labels: self
                .labels
                .as_ref()
                .map(|l| (0..n).map(|i| l[inv[i]].clone()).collect()),
        }
    }

    /// Copy with labels and name cleared, for structural comparisons.
    pub fn unlabeled(&self) -> Self {
        let mut a = self.clone();
        a.labels = None;
        a.name.clear();
        a
    }

    /// Same tables, ignoring name and labels.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.size == other.size
            && self.one == other.one
            && self.zero == other.zero
            && self.arrow == other.arrow
            && self.join == other.join
            && self.meet == other.meet
    }
}

/// Natural order of a Hilbert algebra: `a ≤ b` iff `a → b = 1`.
pub fn natural_order(alg: &FiniteAlgebra) -> Poset {
    Poset::from_fn(alg.size, |a, b| alg.leq(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `a → (b → a) = 1`
    HilbertK,
    /// `(a → (b → c)) → ((a → b) → (a → c)) = 1`
    HilbertS,
    /// `a → b = b → a = 1` implies `a = b`
    Antisymmetry,
    JoinIdempotent,
    JoinCommutative,
    JoinAssociative,
    /// `a ∨ 1 = 1`
    JoinTop,
    /// `a → b = 1` iff `a ∨ b = b`
    JoinOrder,
    MeetIdempotent,
    MeetCommutative,
    MeetAssociative,
    /// `a ∧ 1 = a`
    MeetTop,
    /// `a ∧ b ≤ c` iff `a ≤ b → c`
    Residuation,
    /// `a → b = max { c : a ∧ c ≤ b }`
    ResidualMaximum,
    /// `a ∧ (a ∨ b) = a` and `a ∨ (a ∧ b) = a`
    Absorption,
    /// `0 ≤ a`
    ZeroBottom,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::HilbertK => "a→(b→a)=1",
            Axiom::HilbertS => "(a→(b→c))→((a→b)→(a→c))=1",
            Axiom::Antisymmetry => "a→b=b→a=1 implies a=b",
            Axiom::JoinIdempotent => "a∨a=a",
            Axiom::JoinCommutative => "a∨b=b∨a",
            Axiom::JoinAssociative => "a∨(b∨c)=(a∨b)∨c",
            Axiom::JoinTop => "a∨1=1",
            Axiom::JoinOrder => "a→b=1 iff a∨b=b",
            Axiom::MeetIdempotent => "a∧a=a",
            Axiom::MeetCommutative => "a∧b=b∧a",
            Axiom::MeetAssociative => "a∧(b∧c)=(a∧b)∧c",
            Axiom::MeetTop => "a∧1=a",
            Axiom::Residuation => "a∧b≤c iff a≤b→c",
            Axiom::ResidualMaximum => "a→b=max{c : a∧c≤b}",
            Axiom::Absorption => "a∧(a∨b)=a and a∨(a∧b)=a",
            Axiom::ZeroBottom => "0≤a",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

/// Outcome of [`validate`]: empty `failures` means pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
    /// More failures existed than the cap allowed to record.
    pub truncated: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        writeln!(f, "fail")?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        if self.truncated {
            writeln!(f, "  (further failures omitted)")?;
        }
        Ok(())
    }
}

struct Collector {
    cap: usize,
    report: ValidationReport,
}

impl Collector {
    fn new(cap: usize) -> Self {
        Collector {
            cap,
            report: ValidationReport::default(),
        }
    }

    fn check(&mut self, ok: bool, axiom: Axiom, witness: &[usize]) {
        if ok {
            return;
        }
        if self.report.failures.len() < self.cap {
            self.report.failures.push(AxiomFailure {
                axiom,
                witness: witness.to_vec(),
            });
        } else {
            self.report.truncated = true;
        }
    }
}

/// Checks every axiom instance of `tag`, recording up to
/// [`DEFAULT_FAILURE_CAP`] failures.
pub fn validate(alg: &FiniteAlgebra, tag: VarietyTag) -> Result<ValidationReport, AlgebraError> {
    validate_with_cap(alg, tag, DEFAULT_FAILURE_CAP)
}

pub fn is_valid(alg: &FiniteAlgebra, tag: VarietyTag) -> bool {
    validate_with_cap(alg, tag, 1).is_ok_and(|r| r.passed())
}

pub fn validate_with_cap(
    alg: &FiniteAlgebra,
    tag: VarietyTag,
    cap: usize,
) -> Result<ValidationReport, AlgebraError> {
    if tag.needs_join() && alg.join.is_none() {
        return Err(AlgebraError::MissingTable { tag, table: "join" });
    }
    if tag.needs_meet() && alg.meet.is_none() {
        return Err(AlgebraError::MissingTable { tag, table: "meet" });
    }
    if tag.needs_zero() && alg.zero.is_none() {
        return Err(AlgebraError::MissingTable { tag, table: "zero" });
    }
    let n = alg.size;
    let one = alg.one;
    let imp = |a, b| alg.arrow(a, b);
    let mut c = Collector::new(cap);

    for a in 0..n {
        for b in 0..n {
            c.check(imp(a, imp(b, a)) == one, Axiom::HilbertK, &[a, b]);
            c.check(
                a == b || imp(a, b) != one || imp(b, a) != one,
                Axiom::Antisymmetry,
                &[a, b],
            );
            for x in 0..n {
                let lhs = imp(a, imp(b, x));
                let rhs = imp(imp(a, b), imp(a, x));
                c.check(imp(lhs, rhs) == one, Axiom::HilbertS, &[a, b, x]);
            }
        }
    }

    if tag.needs_join() {
        let j = |a, b| alg.join(a, b).unwrap();
        for a in 0..n {
            c.check(j(a, a) == a, Axiom::JoinIdempotent, &[a]);
            c.check(j(a, one) == one, Axiom::JoinTop, &[a]);
            for b in 0..n {
                c.check(j(a, b) == j(b, a), Axiom::JoinCommutative, &[a, b]);
                c.check(
                    (imp(a, b) == one) == (j(a, b) == b),
                    Axiom::JoinOrder,
                    &[a, b],
                );
                for x in 0..n {
                    c.check(
                        j(a, j(b, x)) == j(j(a, b), x),
                        Axiom::JoinAssociative,
                        &[a, b, x],
                    );
                }
            }
        }
    }

    if tag.needs_meet() {
        let m = |a, b| alg.meet(a, b).unwrap();
        // order of the meet semilattice
        let le = |a, b| m(a, b) == a;
        for a in 0..n {
            c.check(m(a, a) == a, Axiom::MeetIdempotent, &[a]);
            c.check(m(a, one) == a, Axiom::MeetTop, &[a]);
            for b in 0..n {
                c.check(m(a, b) == m(b, a), Axiom::MeetCommutative, &[a, b]);
                for x in 0..n {
                    c.check(
                        m(a, m(b, x)) == m(m(a, b), x),
                        Axiom::MeetAssociative,
                        &[a, b, x],
                    );
                    c.check(
                        le(m(a, b), x) == le(a, imp(b, x)),
                        Axiom::Residuation,
                        &[a, b, x],
                    );
                }
                // cross-check against the residual computed from the meet table
                let below: Vec<usize> = (0..n).filter(|&x| le(m(a, x), b)).collect();
                let max = below
                    .iter()
                    .copied()
                    .find(|&x| below.iter().all(|&y| le(y, x)));
                c.check(max == Some(imp(a, b)), Axiom::ResidualMaximum, &[a, b]);
            }
        }
        if tag.needs_join() {
            let j = |a, b| alg.join(a, b).unwrap();
            for a in 0..n {
                for b in 0..n {
                    c.check(
                        m(a, j(a, b)) == a && j(a, m(a, b)) == a,
                        Axiom::Absorption,
                        &[a, b],
                    );
                }
            }
        }
    }

    if tag.needs_zero() {
        let z = alg.zero.unwrap();
        for a in 0..n {
            c.check(imp(z, a) == one, Axiom::ZeroBottom, &[a]);
        }
    }

    Ok(c.report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedLaw {
    /// `a → a = 1`
    SelfImplication,
    /// `1 → a = a`
    UnitLeft,
    /// `a → (b → c) = b → (a → c)`
    Exchange,
    /// `a → (b → c) = (a → b) → (a → c)`
    SelfDistributivity,
    /// `a ≤ b` implies `c → a ≤ c → b` and `b → c ≤ a → c`
    Monotonicity,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivedLawReport {
    pub failures: Vec<(DerivedLaw, Vec<usize>)>,
}

impl DerivedLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively checks the elementary consequences of the Hilbert axioms.
pub fn derived_law_suite(alg: &FiniteAlgebra) -> DerivedLawReport {
    let n = alg.size;
    let one = alg.one;
    let imp = |a, b| alg.arrow(a, b);
    let le = |a, b| alg.leq(a, b);
    let mut report = DerivedLawReport::default();
    let mut check = |ok: bool, law, w: &[usize]| {
        if !ok {
            report.failures.push((law, w.to_vec()));
        }
    };
    for a in 0..n {
        check(imp(a, a) == one, DerivedLaw::SelfImplication, &[a]);
        check(imp(one, a) == a, DerivedLaw::UnitLeft, &[a]);
        for b in 0..n {
            for c in 0..n {
                check(
                    imp(a, imp(b, c)) == imp(b, imp(a, c)),
                    DerivedLaw::Exchange,
                    &[a, b, c],
                );
                check(
                    imp(a, imp(b, c)) == imp(imp(a, b), imp(a, c)),
                    DerivedLaw::SelfDistributivity,
                    &[a, b, c],
                );
                if le(a, b) {
                    check(
                        le(imp(c, a), imp(c, b)) && le(imp(b, c), imp(a, c)),
                        DerivedLaw::Monotonicity,
                        &[a, b, c],
                    );
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_validate() {
        assert!(validate(&fixtures::h3(), VarietyTag::Hil).unwrap().passed());
        assert!(validate(&fixtures::g4(), VarietyTag::Hil).unwrap().passed());
        assert!(validate(&fixtures::one_element(), VarietyTag::Hil)
            .unwrap()
            .passed());
        assert!(validate(&fixtures::g4_hils(), VarietyTag::HilS)
            .unwrap()
            .passed());
        assert!(validate(&fixtures::chain_heyting(2), VarietyTag::Hey)
            .unwrap()
            .passed());
        assert!(validate(&fixtures::chain_heyting(4), VarietyTag::Hey)
            .unwrap()
            .passed());
    }

    #[test]
    fn corrupted_h3_fails_with_named_instance() {
        let h3 = fixtures::h3();
        let mut arrow = h3.arrow_table().to_vec();
        arrow[fixtures::X * 3 + fixtures::X] = fixtures::Y;
        let bad = FiniteAlgebra::new("bad", 3, arrow, fixtures::ONE).unwrap();
        let report = validate(&bad, VarietyTag::Hil).unwrap();
        assert!(!report.passed());
        // (1 → (1 → x)) → ((1 → 1) → (1 → x)) = x → x = y
        let first = &report.failures[0];
        assert_eq!(first.axiom, Axiom::HilbertS);
        assert_eq!(
            first.witness,
            vec![fixtures::ONE, fixtures::ONE, fixtures::X]
        );
        assert!(report
            .failures
            .iter()
            .all(|f| f.witness.iter().all(|&w| w < 3)));
    }

    #[test]
    fn out_of_range_entry_is_structural() {
        let err = FiniteAlgebra::new("bad", 2, vec![0, 1, 2, 0], 0).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::EntryOutOfRange {
                value: 2,
                row: 1,
                col: 0,
                ..
            }
        ));
        let err = FiniteAlgebra::new("bad", 2, vec![0, 0, 0], 0).unwrap_err();
        assert!(matches!(err, AlgebraError::TableShape { .. }));
        assert_eq!(
            FiniteAlgebra::new("bad", 1, vec![0], 3).unwrap_err(),
            AlgebraError::ConstantOutOfRange {
                name: "one",
                value: 3,
                size: 1
            }
        );
    }

    #[test]
    fn missing_table_is_structural() {
        let err = validate(&fixtures::h3(), VarietyTag::HilS).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::MissingTable { table: "join", .. }
        ));
    }

    #[test]
    fn natural_order_of_fixtures() {
        let o = natural_order(&fixtures::h3());
        let pairs: Vec<(usize, usize)> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && o.leq(a, b))
            .collect();
        assert_eq!(
            pairs,
            vec![(fixtures::X, fixtures::ONE), (fixtures::Y, fixtures::ONE)]
        );

        let o1 = natural_order(&fixtures::one_element());
        assert!(o1.leq(0, 0));
        assert_eq!(o1.len(), 1);

        let g = natural_order(&fixtures::g4());
        use fixtures::{G_A, G_B, G_C, G_ONE};
        let strict: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| g.lt(a, b))
            .collect();
        let mut expect = vec![
            (G_A, G_C),
            (G_B, G_C),
            (G_A, G_ONE),
            (G_B, G_ONE),
            (G_C, G_ONE),
        ];
        expect.sort();
        let mut strict = strict;
        strict.sort();
        assert_eq!(strict, expect);
        assert!(g.is_partial_order());
    }

    #[test]
    fn derived_laws_hold_on_fixtures() {
        assert!(derived_law_suite(&fixtures::h3()).passed());
        assert!(derived_law_suite(&fixtures::g4()).passed());
        assert!(derived_law_suite(&fixtures::chain(5)).passed());
    }

    #[test]
    fn residuated_structure_matches_stored_arrow() {
        let four = fixtures::chain_heyting(4);
        let report = validate(&four, VarietyTag::IS).unwrap();
        assert!(report.passed(), "{report}");
        // the 4-element chain's order-induced implication is its Heyting implication
        assert_eq!(four.arrow_table(), fixtures::chain(4).arrow_table());
    }

    #[test]
    fn g4_has_all_joins_but_no_bottom() {
        let g = fixtures::g4_hils();
        assert_eq!(g.join(fixtures::G_A, fixtures::G_B), Some(fixtures::G_C));
        assert!(fixtures::g4().with_derived_zero().is_none());
        assert!(fixtures::h3().with_derived_join().is_some());
        // a, b < c, d < 1: a and b have two minimal upper bounds
        let order = Poset::from_fn(5, |x, y| x == y || y == 0 || (x >= 3 && y <= 2));
        let n5 = FiniteAlgebra::from_order("N", &order).unwrap();
        assert!(n5.with_derived_join().is_none());
    }

    #[test]
    fn completion_derives_missing_tables() {
        let g = fixtures::g4().completed(VarietyTag::HilS).unwrap();
        assert_eq!(g, fixtures::g4_hils());
        assert!(fixtures::g4().completed(VarietyTag::HilS0).is_none());
        let c = fixtures::chain(3).completed(VarietyTag::Hey).unwrap();
        assert!(validate(&c, VarietyTag::Hey).unwrap().passed());
        assert_eq!(
            fixtures::h3().completed(VarietyTag::Hil).unwrap(),
            fixtures::h3()
        );
    }

    #[test]
    fn tag_parsing() {
        for t in VarietyTag::ALL {
            assert_eq!(t.as_str().parse::<VarietyTag>().unwrap(), t);
        }
        assert!("lattice".parse::<VarietyTag>().is_err());
    }
}
