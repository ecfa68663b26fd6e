//! Naive reference implementations used to certify the fast paths.

#![allow(dead_code)]

use hilbext::algebra::{FiniteAlgebra, VarietyTag};

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn k_and_s(n: usize, t: &[usize], one: usize) -> bool {
    let imp = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            if imp(a, imp(b, a)) != one {
                return false;
            }
            if imp(a, b) == one && imp(b, a) == one && a != b {
                return false;
            }
            for c in 0..n {
                let lhs = imp(a, imp(b, c));
                let rhs = imp(imp(a, b), imp(a, c));
                if imp(lhs, rhs) != one {
                    return false;
                }
            }
        }
    }
    true
}

/// Every arrow table on `0..n` with unit `0` satisfying K, S and
/// antisymmetry.
///
/// The cells `1 → a`, `a → 1` and `a → a` are pinned to `a`, `1`, `1`;
/// all three identities follow from the axioms, so nothing is lost.
pub fn naive_hilbert_tables(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let free: Vec<(usize, usize)> = (1..n)
        .flat_map(|a| (1..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut base = vec![0; n * n];
    for a in 0..n {
        base[a] = a;
        base[a * n] = 0;
        base[a * n + a] = 0;
    }
    let total = n.pow(free.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut t = base.clone();
        let mut c = code;
        for &(a, b) in &free {
            t[a * n + b] = c % n;
            c /= n;
        }
        if k_and_s(n, &t, 0) {
            out.push(t);
        }
    }
    out
}

fn leq(n: usize, t: &[usize], a: usize, b: usize) -> bool {
    t[a * n + b] == 0
}

/// Least upper bound in the natural order, by scanning.
pub fn naive_join(n: usize, t: &[usize], a: usize, b: usize) -> Option<usize> {
    let ubs: Vec<usize> = (0..n)
        .filter(|&u| leq(n, t, a, u) && leq(n, t, b, u))
        .collect();
    ubs.iter()
        .copied()
        .find(|&u| ubs.iter().all(|&v| leq(n, t, u, v)))
}

pub fn naive_meet(n: usize, t: &[usize], a: usize, b: usize) -> Option<usize> {
    let lbs: Vec<usize> = (0..n)
        .filter(|&l| leq(n, t, l, a) && leq(n, t, l, b))
        .collect();
    lbs.iter()
        .copied()
        .find(|&l| lbs.iter().all(|&v| leq(n, t, v, l)))
}

/// Builds the algebra a naive table denotes under `tag`, or `None` when the
/// table does not carry that structure.
pub fn naive_algebra(n: usize, t: &[usize], tag: VarietyTag) -> Option<FiniteAlgebra> {
    let mut alg = FiniteAlgebra::new("oracle", n, t.to_vec(), 0).ok()?;
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    if tag.needs_join() {
        let join: Option<Vec<usize>> = pairs().map(|(a, b)| naive_join(n, t, a, b)).collect();
        alg = alg.with_join(join?).ok()?;
    }
    if tag.needs_meet() {
        let meet: Vec<usize> = pairs()
            .map(|(a, b)| naive_meet(n, t, a, b))
            .collect::<Option<_>>()?;
        // residuation: c ∧ a ≤ b iff c ≤ a → b
        for (a, b) in pairs() {
            for c in 0..n {
                if leq(n, t, meet[c * n + a], b) != leq(n, t, c, t[a * n + b]) {
                    return None;
                }
            }
        }
        alg = alg.with_meet(meet).ok()?;
    }
    if tag.needs_zero() {
        let bottom = (0..n).find(|&z| (0..n).all(|a| leq(n, t, z, a)))?;
        alg = alg.with_zero(bottom).ok()?;
    }
    Some(alg.reduct(tag))
}

/// Isomorphism by trying every permutation.
pub fn naive_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let n = a.size();
    permutations(n).into_iter().any(|p| {
        let ok = |x: Option<usize>, y: Option<usize>| match (x, y) {
            (Some(x), Some(y)) => p[x] == y,
            (None, None) => true,
            _ => false,
        };
        p[a.one()] == b.one()
            && ok(a.zero(), b.zero())
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    p[a.arrow(x, y)] == b.arrow(p[x], p[y])
                        && ok(a.join(x, y), b.join(p[x], p[y]))
                        && ok(a.meet(x, y), b.meet(p[x], p[y]))
                })
            })
    })
}

/// Isomorphism classes of `tag` algebras of size exactly `n`, by brute
/// force over all tables.
pub fn naive_classes(tag: VarietyTag, n: usize) -> Vec<FiniteAlgebra> {
    let mut classes: Vec<FiniteAlgebra> = Vec::new();
    for t in naive_hilbert_tables(n) {
        let Some(alg) = naive_algebra(n, &t, tag) else {
            continue;
        };
        if !classes.iter().any(|c| naive_isomorphic(c, &alg)) {
            classes.push(alg);
        }
    }
    classes
}

/// Every map `0..n → 0..m`.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        out.push(
            (0..n)
                .map(|_| {
                    let v = c % m;
                    c /= m;
                    v
                })
                .collect(),
        );
    }
    out
}
