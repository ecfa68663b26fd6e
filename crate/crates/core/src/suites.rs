//! Exhaustive verification runs over enumerated algebras.
//!
//! Each check quantifies one property over a catalog bounded by its own size
//! cap and by the caller's `max_size`. Failures are collected as
//! [`Counterexample`]s that carry the algebras and morphisms involved.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::algebra::{
    derived_law_suite, is_valid, natural_order, validate, FiniteAlgebra, VarietyTag,
};
use crate::duality::{
    compose, epsilon, functional_check, h_space_check, phi, preimage_relation, upset_algebra,
    FilterRelation,
};
use crate::enumeration::{enumerate_algebras, size_cap};
use crate::extensions::{
    big_phi, closure, extend, extend_dagger, extend_ghey, extend_hey, extend_is, fc, is_envelope,
    x_star, ClosureOps, ExtensionKind,
};
use crate::filters::{
    all_filters, arrow_witness, extend_along, extend_along_star, generated_filter,
    generated_filter_by_formula, irreducible_filters, irreducible_filters_by_definition,
    is_implicative_filter, is_order_ideal, prime_filters, separate, separate_elements,
    separate_from_element, FilterPoset,
};
use crate::fixtures;
use crate::morphisms::{
    enumerate_morphisms, enumerate_subpreserving_maps, hat_g, lift, verify_functor_laws,
    verify_universal_property, Counterexample, Morphism, Preserves,
};
use crate::subset::Subset;

/// Counterexamples kept per check; further failures are only counted.
pub const COUNTEREXAMPLE_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Duality,
    AdjunctionIs,
    AdjunctionGhey,
    Dagger,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::AdjunctionIs => "adjunction-is",
            Suite::AdjunctionGhey => "adjunction-ghey",
            Suite::Dagger => "dagger",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "duality" => Ok(Suite::Duality),
            "adjunction-is" => Ok(Suite::AdjunctionIs),
            "adjunction-ghey" => Ok(Suite::AdjunctionGhey),
            "dagger" => Ok(Suite::Dagger),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}` (expected duality, adjunction-is, adjunction-ghey, dagger or all)"
            )),
        }
    }
}

/// Enumerated catalogs, computed once per tag and size.
#[derive(Default)]
pub struct Catalogs {
    cache: RefCell<BTreeMap<(VarietyTag, usize), Vec<FiniteAlgebra>>>,
}

impl Catalogs {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every algebra of `tag` up to size `n` (clamped to the enumeration cap).
    pub fn get(&self, tag: VarietyTag, n: usize) -> Vec<FiniteAlgebra> {
        let n = n.min(size_cap(tag));
        if let Some(found) = self.cache.borrow().get(&(tag, n)) {
            return found.clone();
        }
        let members = enumerate_algebras(tag, n).expect("size is clamped").members;
        self.cache.borrow_mut().insert((tag, n), members.clone());
        members
    }
}

/// Result of one quantified check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub suite: Suite,
    /// Effective size bound used.
    pub size: usize,
    pub instances: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Informational finding that is reported but not asserted.
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<24} size<={} instances={} failed={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.size,
            self.instances,
            self.failed
        )?;
        if let Some(note) = &self.note {
            write!(f, "\n     note: {note}")?;
        }
        for c in &self.counterexamples {
            write!(f, "\n     {c}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failed: usize,
    counterexamples: Vec<Counterexample>,
    note: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, example: impl FnOnce() -> Counterexample) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
                self.counterexamples.push(example());
            }
        }
    }

    fn fail(&mut self, example: Counterexample) {
        self.check(false, || example);
    }
}

type CheckFn = fn(&Catalogs, usize, &mut Tally);

/// A named check with its own size cap.
#[derive(Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    pub cap: usize,
    run: CheckFn,
}

impl Check {
    pub fn run(&self, catalogs: &Catalogs, max_size: usize) -> CheckResult {
        let size = max_size.min(self.cap);
        let start = Instant::now();
        let mut tally = Tally::default();
        (self.run)(catalogs, size, &mut tally);
        CheckResult {
            name: self.name,
            suite: self.suite,
            size,
            instances: tally.instances,
            failed: tally.failed,
            counterexamples: tally.counterexamples,
            note: tally.note,
            elapsed: start.elapsed(),
        }
    }
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check")
            .field("name", &self.name)
            .field("suite", &self.suite)
            .field("cap", &self.cap)
            .finish()
    }
}

const fn check(name: &'static str, suite: Suite, cap: usize, run: CheckFn) -> Check {
    Check {
        name,
        suite,
        cap,
        run,
    }
}

/// Every check, grouped by suite.
pub fn all_checks() -> Vec<Check> {
    use Suite::*;
    vec![
        check("axioms", Duality, 5, check_axioms),
        check("generated-filter", Duality, 5, check_generated_filter),
        check("irreducible-filters", Duality, 5, check_irreducible_filters),
        check("prime-filters", Duality, 5, check_prime_filters),
        check("separation", Duality, 4, check_separation),
        check("phi-embedding", Duality, 5, check_phi_embedding),
        check("upset-residuation", Duality, 5, check_upset_residuation),
        check("h-space", Duality, 5, check_h_space),
        check("round-trip", Duality, 5, check_round_trip),
        check("dual-relations", Duality, 4, check_dual_relations),
        check(
            "hom-characterization",
            Duality,
            3,
            check_hom_characterization,
        ),
        check(
            "join-counterexample",
            AdjunctionIs,
            4,
            check_join_counterexample,
        ),
        check("hat-map", AdjunctionIs, 4, check_hat_map),
        check("is-extension", AdjunctionIs, 5, check_is_extension),
        check("embedding-joins", AdjunctionIs, 5, check_embedding_joins),
        check("subalgebra-image", AdjunctionIs, 4, check_subalgebra_image),
        check("is-functor", AdjunctionIs, 3, check_is_functor),
        check("is-universal", AdjunctionIs, 4, check_is_universal),
        check("prime-preimage", AdjunctionGhey, 4, check_prime_preimage),
        check("prime-split", AdjunctionGhey, 4, check_prime_split),
        check("hat-map-joins", AdjunctionGhey, 4, check_hat_map_joins),
        check("ghey-extension", AdjunctionGhey, 5, check_ghey_extension),
        check("hey-extension", AdjunctionGhey, 5, check_hey_extension),
        check("ghey-functor", AdjunctionGhey, 3, check_ghey_functor),
        check("hey-functor", AdjunctionGhey, 3, check_hey_functor),
        check("ghey-universal", AdjunctionGhey, 4, check_ghey_universal),
        check("hey-universal", AdjunctionGhey, 4, check_hey_universal),
        check("star-points", Dagger, 4, check_star_points),
        check("dagger-extension", Dagger, 4, check_dagger_extension),
        check("filter-extension", Dagger, 4, check_filter_extension),
        check(
            "star-filter-extension",
            Dagger,
            4,
            check_star_filter_extension,
        ),
        check("star-embedding", Dagger, 4, check_star_embedding),
        check("star-relation", Dagger, 4, check_star_relation),
        check("star-lift-joins", Dagger, 4, check_star_lift_joins),
        check(
            "star-lift-intertwines",
            Dagger,
            4,
            check_star_lift_intertwines,
        ),
        check("dagger-functor", Dagger, 3, check_dagger_functor),
    ]
}

pub fn checks_of(suite: Suite) -> Vec<Check> {
    all_checks()
        .into_iter()
        .filter(|c| suite == Suite::All || c.suite == suite)
        .collect()
}

pub fn find_check(name: &str) -> Option<Check> {
    all_checks().into_iter().find(|c| c.name == name)
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_size: usize,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }
}

pub fn run_suite(suite: Suite, max_size: usize) -> SuiteReport {
    let catalogs = Catalogs::new();
    let results = checks_of(suite)
        .iter()
        .map(|c| c.run(&catalogs, max_size))
        .collect();
    SuiteReport {
        suite,
        max_size,
        results,
    }
}

/// Runs the named check alone.
pub fn run_check(name: &str, max_size: usize) -> Option<CheckResult> {
    find_check(name).map(|c| c.run(&Catalogs::new(), max_size))
}

// ---------------------------------------------------------------------------
// helpers

fn cx(check: &str, detail: impl Into<String>) -> Counterexample {
    Counterexample::new(check, detail)
}

/// Every morphism of `tag` between members of `algs`, with the indices of
/// its domain and codomain.
fn morphisms_among(algs: &[FiniteAlgebra], tag: VarietyTag) -> Vec<(usize, usize, Morphism)> {
    let mut out = Vec::new();
    for (i, a) in algs.iter().enumerate() {
        for (j, b) in algs.iter().enumerate() {
            for f in enumerate_morphisms(a, b, tag).expect("catalog carries the tables") {
                out.push((i, j, f));
            }
        }
    }
    out
}

fn pairs_of_upsets(points: &FilterPoset) -> Vec<(Subset, Subset)> {
    let ups = points.order().upsets();
    ups.iter()
        .flat_map(|&u| ups.iter().map(move |&v| (u, v)))
        .collect()
}

// ---------------------------------------------------------------------------
// duality

fn check_axioms(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let report = validate(&alg, VarietyTag::Hil).expect("no extra tables needed");
        let derived = derived_law_suite(&alg);
        t.check(report.passed() && derived.passed(), || {
            cx(
                "axioms",
                format!("{report}; derived: {:?}", derived.failures),
            )
            .with_algebra(&alg)
        });
        let order = natural_order(&alg);
        t.check(
            order.is_partial_order() && order.top() == Some(alg.one()),
            || cx("axioms", "natural order is not a partial order with top 1").with_algebra(&alg),
        );
    }
}

fn check_generated_filter(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let subsets: Vec<Subset> = alg.carrier().subsets().collect();
        let gen: Vec<Subset> = subsets.iter().map(|&x| generated_filter(&alg, x)).collect();
        for (i, &x) in subsets.iter().enumerate() {
            let fx = gen[i];
            t.check(
                x.is_subset(fx)
                    && is_implicative_filter(&alg, fx)
                    && generated_filter(&alg, fx) == fx,
                || {
                    cx(
                        "generated-filter",
                        format!("F({x}) = {fx} is not extensive/idempotent"),
                    )
                    .with_algebra(&alg)
                },
            );
            for (j, &y) in subsets.iter().enumerate() {
                if x.is_subset(y) && !fx.is_subset(gen[j]) {
                    t.fail(
                        cx("generated-filter", format!("F not monotone on {x} ⊆ {y}"))
                            .with_algebra(&alg),
                    );
                }
            }
            if alg.size() <= 4 {
                let by_formula = generated_filter_by_formula(&alg, x);
                t.check(by_formula == fx, || {
                    cx(
                        "generated-filter",
                        format!("formula gives {by_formula}, fixpoint {fx}"),
                    )
                    .with_algebra(&alg)
                });
            }
            // a filter is an upset
            if is_implicative_filter(&alg, x) {
                let up = natural_order(&alg).is_upset(x);
                t.check(up, || {
                    cx("generated-filter", format!("filter {x} is not an upset")).with_algebra(&alg)
                });
            }
        }
    }
}

fn check_irreducible_filters(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let irr = irreducible_filters(&alg);
        let by_def = irreducible_filters_by_definition(&alg);
        t.check(irr == by_def, || {
            cx(
                "irreducible-filters",
                "cover test disagrees with the definition",
            )
            .with_algebra(&alg)
        });
        for &f in all_filters(&alg).filters() {
            if f == alg.carrier() {
                continue;
            }
            let meet = irr.intersection_of(irr.points_above(f));
            t.check(meet == f, || {
                cx(
                    "irreducible-filters",
                    format!("{f} is not the meet of the irreducibles above it"),
                )
                .with_algebra(&alg)
            });
        }
    }
}

fn check_prime_filters(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::HilS, n) {
        let primes = prime_filters(&alg).expect("join table present");
        t.check(primes == irreducible_filters(&alg), || {
            cx(
                "prime-filters",
                "prime filters differ from irreducible filters",
            )
            .with_algebra(&alg)
        });
    }
}

fn check_separation(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let filters = all_filters(&alg);
        let ideals: Vec<Subset> = alg
            .carrier()
            .subsets()
            .filter(|&i| is_order_ideal(&alg, i))
            .collect();
        for &f in filters.filters() {
            for &i in &ideals {
                if !f.is_disjoint(i) {
                    continue;
                }
                let ok = separate(&alg, f, i).is_ok_and(|p| f.is_subset(p) && p.is_disjoint(i));
                t.check(ok, || {
                    cx("separation", format!("no witness for F = {f}, I = {i}")).with_algebra(&alg)
                });
            }
            for a in alg.elements() {
                if !f.contains(a) {
                    let ok = separate_from_element(&alg, f, a)
                        .is_ok_and(|p| f.is_subset(p) && !p.contains(a));
                    t.check(ok, || {
                        cx("separation", format!("no witness for {a} ∉ {f}")).with_algebra(&alg)
                    });
                }
                for b in alg.elements() {
                    let w = arrow_witness(&alg, f, a, b);
                    let expected = !f.contains(alg.arrow(a, b));
                    let ok = match w {
                        Ok(Some(p)) => {
                            expected && f.is_subset(p) && p.contains(a) && !p.contains(b)
                        }
                        Ok(None) => !expected,
                        Err(_) => false,
                    };
                    t.check(ok, || {
                        cx(
                            "separation",
                            format!("arrow witness wrong for {a} → {b} over {f}"),
                        )
                        .with_algebra(&alg)
                    });
                }
            }
        }
        for a in alg.elements() {
            for b in alg.elements() {
                if !alg.leq(a, b) {
                    let ok = separate_elements(&alg, a, b)
                        .is_ok_and(|p| p.contains(a) && !p.contains(b));
                    t.check(ok, || {
                        cx("separation", format!("no witness for {a} ≰ {b}")).with_algebra(&alg)
                    });
                }
            }
        }
    }
}

fn check_phi_embedding(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let space = phi(&alg);
        t.check(space.is_injective() && space.is_morphism(), || {
            cx("phi-embedding", "φ is not an injective morphism").with_algebra(&alg)
        });
    }
    for alg in cat.get(VarietyTag::HilS, n) {
        let space = phi(&alg);
        for a in alg.elements() {
            for b in alg.elements() {
                let j = alg.join(a, b).expect("join table");
                t.check(
                    space.image(j) == space.image(a).union(space.image(b)),
                    || {
                        cx("phi-embedding", format!("φ({a} ∨ {b}) ≠ φ({a}) ∪ φ({b})"))
                            .with_algebra(&alg)
                    },
                );
            }
        }
    }
}

fn check_upset_residuation(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let up = upset_algebra(phi(&alg).points());
        t.check(up.residuation_holds(), || {
            cx("upset-residuation", "residuation fails in X(H)^+").with_algebra(&alg)
        });
        let presented = up.to_algebra("X(H)^+").expect("closed under ⇒");
        t.check(is_valid(&presented, VarietyTag::Hey), || {
            cx("upset-residuation", "X(H)^+ is not a Heyting algebra").with_algebra(&alg)
        });
    }
}

fn check_h_space(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let r = h_space_check(&alg);
        t.check(r.passed(), || {
            cx("h-space", format!("{r:?}")).with_algebra(&alg)
        });
    }
}

fn check_round_trip(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let cert = epsilon(&alg);
        t.check(cert.passed(), || {
            cx(
                "round-trip",
                format!(
                    "bijective={} order={} phi={}",
                    cert.bijective, cert.order_isomorphism, cert.phi_isomorphism
                ),
            )
            .with_algebra(&alg)
        });
    }
}

fn check_dual_relations(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let xs: Vec<FilterPoset> = algs.iter().map(irreducible_filters).collect();
    let phis: Vec<Vec<Subset>> = algs.iter().map(|a| phi(a).images().to_vec()).collect();
    let morphisms = morphisms_among(&algs, VarietyTag::Hil);
    let relation = |i: usize, j: usize, f: &Morphism| preimage_relation(f, &xs[j], &xs[i]);

    let mut by_pair: BTreeMap<(usize, usize), Vec<(Morphism, FilterRelation)>> = BTreeMap::new();
    for (i, j, f) in &morphisms {
        let r = relation(*i, *j, f);
        let report = functional_check(&r);
        t.check(report.passed(), || {
            cx("dual-relations", format!("{report:?}")).with_morphism(f)
        });
        // f(a) ∈ P iff R_f(P) ⊆ φ(a)
        for a in f.dom().elements() {
            for p in 0..xs[*j].len() {
                t.check(
                    xs[*j].get(p).contains(f.apply(a)) == r.image(p).is_subset(phis[*i][a]),
                    || {
                        cx(
                            "dual-relations",
                            format!("membership identity fails at {a}"),
                        )
                        .with_morphism(f)
                    },
                );
            }
        }
        by_pair.entry((*i, *j)).or_default().push((f.clone(), r));
    }

    for ((i, j), fs) in &by_pair {
        for k in 0..algs.len() {
            let Some(gs) = by_pair.get(&(*j, k)) else {
                continue;
            };
            for (f, rf) in fs {
                for (g, rg) in gs {
                    let gf = g.after(f).expect("composable");
                    let ok = compose(rg, rf).is_ok_and(|c| c == relation(*i, k, &gf));
                    t.check(ok, || {
                        cx(
                            "dual-relations",
                            "R of a composite is not the composite of the Rs",
                        )
                        .with_morphism(f)
                        .with_morphism(g)
                    });
                }
            }
        }
    }
}

fn check_hom_characterization(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let xs: Vec<FilterPoset> = algs.iter().map(irreducible_filters).collect();
    for (i, h) in algs.iter().enumerate() {
        for (j, g) in algs.iter().enumerate() {
            for map in enumerate_subpreserving_maps(h, g) {
                let f =
                    Morphism::new(h.clone(), g.clone(), map, VarietyTag::Hil).expect("in range");
                let is_hom = f.check().is_ok();
                let r = preimage_relation(&f, &xs[j], &xs[i]);
                let extends = r.pairs().into_iter().all(|(p, q)| {
                    xs[j]
                        .filters()
                        .iter()
                        .any(|&w| xs[j].get(p).is_subset(w) && f.preimage(w) == xs[i].get(q))
                });
                t.check(is_hom == extends, || {
                    cx(
                        "hom-characterization",
                        format!("morphism = {is_hom} but extension condition = {extends}"),
                    )
                    .with_morphism(&f)
                });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// implicative semilattices

fn check_join_counterexample(_cat: &Catalogs, _n: usize, t: &mut Tally) {
    let f = fixtures::h3_to_g4();
    t.check(f.check().is_ok(), || {
        cx("join-counterexample", "f is not a Hilbert morphism").with_morphism(&f)
    });
    let g = hat_g(&f);
    let witness = pairs_of_upsets(g.dom().points())
        .into_iter()
        .find(|&(u, v)| g.apply(u.union(v)) != g.apply(u).union(g.apply(v)));
    match witness {
        Some((u, v)) => {
            t.note = Some(format!(
                "ĝ({u} ∪ {v}) = {} but ĝ({u}) ∪ ĝ({v}) = {}",
                g.apply(u.union(v)),
                g.apply(u).union(g.apply(v))
            ));
            t.check(true, || unreachable!());
        }
        None => t.fail(cx("join-counterexample", "ĝ preserves every join").with_morphism(&f)),
    }
}

fn check_hat_map(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    for (_, _, f) in morphisms_among(&algs, VarietyTag::Hil) {
        let g = hat_g(&f);
        for op in [Preserves::ONE, Preserves::MEET, Preserves::ARROW] {
            let bad = g.violation(op);
            t.check(bad.is_none(), || {
                cx("hat-map", format!("{op:?} fails at {bad:?}")).with_morphism(&f)
            });
        }
    }
}

fn check_is_extension(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        match extend_is(&alg) {
            Ok(ext) => {
                t.check(ext.members() == fc(&alg).as_slice(), || {
                    cx("is-extension", "closure differs from FC(H)").with_algebra(&alg)
                });
                t.check(is_envelope(&ext), || {
                    cx("is-extension", "not an envelope").with_algebra(&alg)
                });
                let e = ext.embedding_morphism();
                t.check(e.is_injective() && e.check().is_ok(), || {
                    cx("is-extension", "embedding is not an injective morphism").with_algebra(&alg)
                });
            }
            Err(e) => t.fail(cx("is-extension", e.to_string()).with_algebra(&alg)),
        }
    }
}

fn check_embedding_joins(cat: &Catalogs, n: usize, t: &mut Tally) {
    let mut meet_failure = None;
    for alg in cat.get(VarietyTag::Hil, n) {
        let order = natural_order(&alg);
        let space = phi(&alg);
        for a in alg.elements() {
            for b in alg.elements() {
                if let Some(j) = order.join(a, b) {
                    t.check(
                        space.image(j) == space.image(a).union(space.image(b)),
                        || {
                            cx("embedding-joins", format!("φ({a} ∨ {b}) ≠ φ({a}) ∪ φ({b})"))
                                .with_algebra(&alg)
                        },
                    );
                }
                if meet_failure.is_none() {
                    if let Some(m) = order.meet(a, b) {
                        if space.image(m) != space.image(a).intersection(space.image(b)) {
                            meet_failure = Some(format!(
                                "existing meets are not preserved: in {} (arrow {:?}) φ({a} ∧ {b}) ≠ φ({a}) ∩ φ({b})",
                                alg.name(),
                                alg.arrow_table()
                            ));
                        }
                    }
                }
            }
        }
    }
    t.note = Some(
        meet_failure.unwrap_or_else(|| "every existing meet is preserved at this size".into()),
    );
}

fn check_subalgebra_image(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let exts: Vec<_> = algs
        .iter()
        .map(|a| extend_is(a).expect("valid source"))
        .collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::Hil) {
        let g = hat_g(&f);
        let mut image: Vec<Subset> = exts[i].members().iter().map(|&u| g.apply(u)).collect();
        image.sort();
        image.dedup();
        let target = phi(&algs[j]);
        let gens = f.dom().elements().map(|a| target.image(f.apply(a)));
        let generated = closure(target.points(), gens, ClosureOps::IS);
        t.check(image == generated, || {
            cx(
                "subalgebra-image",
                "image of the extension is not the subalgebra generated by the image",
            )
            .with_morphism(&f)
        });
        t.check(
            generated
                .iter()
                .all(|u| exts[j].family().index_of(*u).is_some()),
            || cx("subalgebra-image", "image leaves the target extension").with_morphism(&f),
        );
    }
}

fn absorb_functor(t: &mut Tally, algs: &[FiniteAlgebra], kind: ExtensionKind) {
    let r = verify_functor_laws(algs, kind);
    t.instances += r.identities + r.compositions;
    t.failed += r.failures.len();
    t.counterexamples
        .extend(r.failures.into_iter().take(COUNTEREXAMPLE_CAP));
    t.note = Some(format!(
        "{} morphisms, {} identities, {} composable pairs",
        r.morphisms, r.identities, r.compositions
    ));
}

fn check_is_functor(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_functor(t, &cat.get(VarietyTag::Hil, n), ExtensionKind::IS);
}

fn absorb_universal(
    t: &mut Tally,
    sources: &[FiniteAlgebra],
    targets: &[FiniteAlgebra],
    kind: ExtensionKind,
) {
    let (mut morphisms, mut candidates) = (0, 0);
    for h in sources {
        match verify_universal_property(h, targets, kind) {
            Ok(r) => {
                t.instances += r.morphisms;
                t.failed += r.failures.len();
                morphisms += r.morphisms;
                candidates += r.candidates;
                let room = COUNTEREXAMPLE_CAP.saturating_sub(t.counterexamples.len());
                t.counterexamples
                    .extend(r.failures.into_iter().take(room).map(|c| c.with_algebra(h)));
            }
            Err(e) => t.fail(cx("universal", e.to_string()).with_algebra(h)),
        }
    }
    t.note = Some(format!(
        "{} sources, {} targets, {morphisms} morphisms factored, {candidates} candidate maps",
        sources.len(),
        targets.len()
    ));
}

fn check_is_universal(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_universal(
        t,
        &cat.get(VarietyTag::Hil, n.min(3)),
        &cat.get(VarietyTag::IS, n),
        ExtensionKind::IS,
    );
}

// ---------------------------------------------------------------------------
// generalized Heyting algebras

fn check_prime_preimage(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::HilS, n);
    let xs: Vec<FilterPoset> = algs.iter().map(irreducible_filters).collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::HilS) {
        for &p in xs[j].filters() {
            let pre = f.preimage(p);
            t.check(xs[i].contains(pre) || pre == algs[i].carrier(), || {
                cx(
                    "prime-preimage",
                    format!("f⁻¹({p}) = {pre} is neither irreducible nor everything"),
                )
                .with_morphism(&f)
            });
        }
    }
}

fn check_prime_split(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::HilS, n);
    let xs: Vec<FilterPoset> = algs.iter().map(irreducible_filters).collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::HilS) {
        let r = preimage_relation(&f, &xs[j], &xs[i]);
        let pairs = pairs_of_upsets(&xs[i]);
        for p in 0..xs[j].len() {
            let rp = r.image(p);
            for &(u, v) in &pairs {
                if rp.is_subset(u.union(v)) {
                    t.check(rp.is_subset(u) || rp.is_subset(v), || {
                        cx("prime-split", format!("R(P) ⊆ {u} ∪ {v} but in neither"))
                            .with_morphism(&f)
                    });
                }
            }
        }
    }
}

fn check_hat_map_joins(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::HilS, n);
    for (_, _, f) in morphisms_among(&algs, VarietyTag::HilS) {
        let bad = hat_g(&f).violation(Preserves::JOIN);
        t.check(bad.is_none(), || {
            cx("hat-map-joins", format!("∪ fails at {bad:?}")).with_morphism(&f)
        });
    }
}

fn check_ghey_extension(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::HilS, n) {
        match extend_ghey(&alg) {
            Ok(ext) => {
                let full = upset_algebra(ext.points());
                t.check(ext.members() == full.members(), || {
                    cx("ghey-extension", "gH closure is not X(H)^+").with_algebra(&alg)
                });
                t.check(ext.members() == fc(&alg).as_slice(), || {
                    cx("ghey-extension", "gH closure is not FC(H)").with_algebra(&alg)
                });
                let is_ext = extend_is(&alg).expect("valid source");
                t.check(is_ext.members() == ext.members(), || {
                    cx("ghey-extension", "IS reduct differs from the IS extension")
                        .with_algebra(&alg)
                });
            }
            Err(e) => t.fail(cx("ghey-extension", e.to_string()).with_algebra(&alg)),
        }
    }
}

fn check_hey_extension(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::HilS0, n) {
        match extend_hey(&alg) {
            Ok(ext) => {
                let zero = alg.zero().expect("bounded");
                t.check(
                    ext.embed(zero).is_empty() && is_valid(ext.presented(), VarietyTag::Hey),
                    || cx("hey-extension", "φ(0) ≠ ∅ or not a Heyting algebra").with_algebra(&alg),
                );
            }
            Err(e) => t.fail(cx("hey-extension", e.to_string()).with_algebra(&alg)),
        }
    }
}

fn check_ghey_functor(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_functor(t, &cat.get(VarietyTag::HilS, n), ExtensionKind::GHey);
}

fn check_hey_functor(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_functor(t, &cat.get(VarietyTag::HilS0, n), ExtensionKind::Hey);
}

fn check_ghey_universal(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_universal(
        t,
        &cat.get(VarietyTag::HilS, n.min(3)),
        &cat.get(VarietyTag::GHey, n),
        ExtensionKind::GHey,
    );
}

fn check_hey_universal(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_universal(
        t,
        &cat.get(VarietyTag::HilS0, n.min(3)),
        &cat.get(VarietyTag::Hey, n),
        ExtensionKind::Hey,
    );
}

// ---------------------------------------------------------------------------
// the X* construction

fn check_star_points(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let proper: Vec<Subset> = all_filters(&alg)
            .filters()
            .iter()
            .copied()
            .filter(|&f| f != alg.carrier())
            .collect();
        let xs = x_star(&alg);
        t.check(xs.filters() == proper.as_slice(), || {
            cx("star-points", "X*(H) differs from the proper filters").with_algebra(&alg)
        });
    }
}

fn check_dagger_extension(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        match extend_dagger(&alg) {
            Ok(ext) => {
                let full = upset_algebra(ext.points());
                t.check(ext.members() == full.members(), || {
                    cx("dagger-extension", "closure of Φ[H] is not (X*)^+").with_algebra(&alg)
                });
            }
            Err(e) => t.fail(cx("dagger-extension", e.to_string()).with_algebra(&alg)),
        }
    }
}

fn check_filter_extension(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let fils: Vec<FilterPoset> = algs.iter().map(all_filters).collect();
    let xs: Vec<FilterPoset> = algs.iter().map(irreducible_filters).collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::Hil) {
        for &filter in fils[j].filters() {
            for &q in xs[i].filters() {
                if !f.preimage(filter).is_subset(q) {
                    continue;
                }
                let ok = extend_along(&f, filter, q)
                    .is_ok_and(|k| xs[j].contains(k) && filter.is_subset(k) && f.preimage(k) == q);
                t.check(ok, || {
                    cx(
                        "filter-extension",
                        format!("no irreducible K ⊇ {filter} with f⁻¹(K) = {q}"),
                    )
                    .with_morphism(&f)
                });
            }
        }
    }
}

fn check_star_filter_extension(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let fils: Vec<FilterPoset> = algs.iter().map(all_filters).collect();
    let stars: Vec<FilterPoset> = algs.iter().map(x_star).collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::Hil) {
        for &filter in fils[j].filters() {
            for &q in stars[i].filters() {
                if !f.preimage(filter).is_subset(q) {
                    continue;
                }
                let ok = extend_along_star(&f, filter, q).is_ok_and(|k| {
                    stars[j].contains(k) && filter.is_subset(k) && f.preimage(k) == q
                });
                t.check(ok, || {
                    cx(
                        "star-filter-extension",
                        format!("no K in X* with K ⊇ {filter}, f⁻¹(K) = {q}"),
                    )
                    .with_morphism(&f)
                });
            }
        }
    }
}

fn check_star_embedding(cat: &Catalogs, n: usize, t: &mut Tally) {
    for alg in cat.get(VarietyTag::Hil, n) {
        let space = big_phi(&alg);
        t.check(space.is_injective() && space.is_morphism(), || {
            cx("star-embedding", "Φ is not an injective morphism").with_algebra(&alg)
        });
    }
}

fn check_star_relation(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let spaces: Vec<_> = algs.iter().map(big_phi).collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::Hil) {
        let r = preimage_relation(&f, spaces[j].points(), spaces[i].points());
        for a in f.dom().elements() {
            let lhs = spaces[j].image(f.apply(a));
            let rhs = r.h_r(spaces[i].image(a));
            t.check(lhs == rhs, || {
                cx(
                    "star-relation",
                    format!("Φ(f({a})) = {lhs} but h_R(Φ({a})) = {rhs}"),
                )
                .with_morphism(&f)
            });
        }
    }
}

fn check_star_lift_joins(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    for (_, _, f) in morphisms_among(&algs, VarietyTag::Hil) {
        let g = crate::morphisms::hat_g_star(&f);
        for op in [
            Preserves::ONE,
            Preserves::MEET,
            Preserves::JOIN,
            Preserves::ARROW,
        ] {
            let bad = g.violation(op);
            t.check(bad.is_none(), || {
                cx("star-lift-joins", format!("{op:?} fails at {bad:?}")).with_morphism(&f)
            });
        }
    }
}

fn check_star_lift_intertwines(cat: &Catalogs, n: usize, t: &mut Tally) {
    let algs = cat.get(VarietyTag::Hil, n);
    let spaces: Vec<_> = algs.iter().map(big_phi).collect();
    for (i, j, f) in morphisms_among(&algs, VarietyTag::Hil) {
        let g = crate::morphisms::hat_g_star(&f);
        let ok = f
            .dom()
            .elements()
            .all(|a| g.apply(spaces[i].image(a)) == spaces[j].image(f.apply(a)));
        t.check(ok, || {
            cx("star-lift-intertwines", "g(Φ(a)) ≠ Φ(f(a))").with_morphism(&f)
        });
        let lifted = lift(&f, ExtensionKind::Dagger);
        t.check(lifted.is_ok(), || {
            cx("star-lift-intertwines", lifted.unwrap_err().to_string()).with_morphism(&f)
        });
    }
}

fn check_dagger_functor(cat: &Catalogs, n: usize, t: &mut Tally) {
    absorb_functor(t, &cat.get(VarietyTag::Hil, n), ExtensionKind::Dagger);
}

/// Extension of every kind that applies to `alg`, for reporting.
pub fn applicable_extensions(alg: &FiniteAlgebra) -> Vec<ExtensionKind> {
    ExtensionKind::ALL
        .into_iter()
        .filter(|k| extend(alg, *k).is_ok())
        .collect()
}
