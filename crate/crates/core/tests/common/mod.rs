//! Fixtures, generators and brute-force oracles shared by the integration
//! tests. Oracles deliberately work on `Vec<bool>` membership vectors so they
//! share no code with the bitmask implementation under test.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::Rng;
use roughmeasure::approximations::{parse_fixture, profile, ApproximationOperator, ProfileScope};
use roughmeasure::measures::{amalg, finv, nabla};
use roughmeasure::rough_core::{
    all_subsets, Closure, GranularSpace, Granulation, ObjectSet, Relation, SpaceOptions, Universe,
};

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// The four-object tolerance example with its printed table.
pub struct Appendix {
    pub space: GranularSpace,
    pub u: Arc<Universe>,
    pub l: ApproximationOperator,
    pub up: ApproximationOperator,
    pub ub: ApproximationOperator,
    pub l1: ApproximationOperator,
    pub u1: ApproximationOperator,
    /// A1..A16 in printed order.
    pub rows: Vec<ObjectSet>,
    /// Printed table: header plus one row per subset.
    pub table: Vec<Vec<String>>,
}

pub fn appendix() -> Appendix {
    let space = GranularSpace::from_json(&read("appendix/relation.json"), SpaceOptions::default()).unwrap();
    let u = space.universe().clone();
    let g = space.granulation().clone();
    let rows = read("appendix/subsets.txt")
        .lines()
        .map(|s| ObjectSet::parse(&u, s).unwrap())
        .collect();
    let table = read("appendix/table1.tsv")
        .lines()
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect();
    Appendix {
        l: ApproximationOperator::lower(&g).renamed("l"),
        up: ApproximationOperator::upper(&g).renamed("u"),
        ub: ApproximationOperator::bited_upper(&g).renamed("ub"),
        l1: parse_fixture("l1", &read("appendix/l1.json"), &u).unwrap(),
        u1: parse_fixture("u1", &read("appendix/u1.json"), &u).unwrap(),
        u,
        space,
        rows,
        table,
    }
}

impl Appendix {
    /// Every operator the example offers: granular, graded, fixtures, identity.
    pub fn pool(&self) -> Vec<ApproximationOperator> {
        let mut p = vec![self.l.clone(), self.up.clone(), self.ub.clone(), self.l1.clone(), self.u1.clone()];
        p.extend(granular_pool(&self.space));
        p.retain({
            let mut seen = Vec::new();
            move |op: &ApproximationOperator| {
                let keep = !seen.contains(&op.name().to_string());
                seen.push(op.name().to_string());
                keep
            }
        });
        p
    }
}

/// `l`, `u`, `ub`, `id` and the graded operators for k = 0..=2.
pub fn granular_pool(space: &GranularSpace) -> Vec<ApproximationOperator> {
    let g = space.granulation();
    let nb = space.neighborhoods();
    let mut p = vec![
        ApproximationOperator::lower(g).renamed("l"),
        ApproximationOperator::upper(g).renamed("u"),
        ApproximationOperator::bited_upper(g).renamed("ub"),
        ApproximationOperator::identity(space.universe()),
    ];
    for k in 0..=2 {
        p.push(ApproximationOperator::graded_lower(nb, k));
        p.push(ApproximationOperator::graded_upper(nb, k));
    }
    p
}

pub fn universe(n: usize) -> Arc<Universe> {
    Universe::new((1..=n).map(|i| format!("o{i}"))).unwrap()
}

/// A random reflexive, symmetric relation on `n` objects.
pub fn random_tolerance_space(rng: &mut StdRng, n: usize) -> GranularSpace {
    let u = universe(n);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                pairs.push((u.id(i).to_string(), u.id(j).to_string()));
            }
        }
    }
    let rel = Relation::from_pairs(&u, &pairs, Closure::ReflexiveSymmetric).unwrap();
    GranularSpace::from_relation(rel, SpaceOptions::default()).unwrap()
}

/// A random partition of `n` objects as block masks.
pub fn random_partition(rng: &mut StdRng, n: usize) -> Vec<u64> {
    let mut label = Vec::with_capacity(n);
    let mut next = 0usize;
    for _ in 0..n {
        let l = rng.gen_range(0..=next);
        if l == next {
            next += 1;
        }
        label.push(l);
    }
    (0..next)
        .map(|b| (0..n).filter(|&i| label[i] == b).fold(0u64, |m, i| m | 1 << i))
        .collect()
}

pub fn partition_space(u: &Arc<Universe>, blocks: Vec<u64>) -> Granulation {
    Granulation::partition(u, blocks).unwrap()
}

// ---------------------------------------------------------------- oracles

pub fn members(n: usize, bits: u64) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

pub fn to_bits(v: &[bool]) -> u64 {
    v.iter().enumerate().filter(|(_, &b)| b).fold(0, |m, (i, _)| m | 1 << i)
}

/// `{z : #(n(z) ∩ A) > k}`, counted element by element.
pub fn oracle_graded_upper(nb: &[Vec<bool>], a: &[bool], k: usize) -> Vec<bool> {
    nb.iter()
        .map(|n| n.iter().zip(a).filter(|(&inn, &ina)| inn && ina).count() > k)
        .collect()
}

/// `{z : #(n(z) \ A) ≤ k}`, counted element by element.
pub fn oracle_graded_lower(nb: &[Vec<bool>], a: &[bool], k: usize) -> Vec<bool> {
    nb.iter()
        .map(|n| n.iter().zip(a).filter(|(&inn, &ina)| inn && !ina).count() <= k)
        .collect()
}

pub fn diff(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && !y).collect()
}

pub fn union(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x || y).collect()
}

pub fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

// ------------------------------------------------- measure property suite

/// What an operator is known to satisfy on the whole powerset.
pub struct Profiled {
    pub op: ApproximationOperator,
    pub monotone: bool,
    pub fixes_bottom: bool,
    pub fixes_top: bool,
}

pub fn profiled(pool: &[ApproximationOperator]) -> Vec<Profiled> {
    pool.iter()
        .map(|op| {
            let p = profile(op, ProfileScope::Exhaustive).unwrap();
            Profiled {
                op: op.clone(),
                monotone: p.monotone.is_true(),
                fixes_bottom: p.fixes_bottom.is_true(),
                fixes_top: p.fixes_top.is_true(),
            }
        })
        .collect()
}

/// Checks every measure law over `domain` and every assignment of `pool` to
/// the operator slots; `finv_pool` bounds the four-slot sweep. Returns the
/// violations (empty when all laws hold) and the number of law instances
/// that were checked.
pub fn measure_law_violations(
    pool: &[ApproximationOperator],
    finv_pool: usize,
    domain: &[ObjectSet],
) -> (Vec<String>, usize) {
    let ops = profiled(pool);
    let u = domain[0].universe().clone();
    let n = u.len();
    let empty = ObjectSet::empty(&u);
    let full = ObjectSet::full(&u);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    let mut fail = |law: &str, detail: String| bad.push(format!("{law}: {detail}"));
    let m = |s: &ObjectSet| members(n, s.bits());

    for x in domain {
        let images: Vec<ObjectSet> = ops.iter().map(|p| p.op.apply(x).unwrap()).collect();
        for (ia, a) in ops.iter().enumerate() {
            for (ib, b) in ops.iter().enumerate() {
                for (ic, c) in ops.iter().enumerate() {
                    let tag = || format!("x={x} a={} b={} c={}", a.op.name(), b.op.name(), c.op.name());
                    let v = nabla(x, &a.op, &b.op, &c.op).unwrap();

                    // independent evaluation of both measures
                    let (xa, xb) = (m(&images[ia]), m(&images[ib]));
                    let ca = m(&c.op.apply(&ObjectSet::from_bits(&u, to_bits(&diff(&xa, &xb))).unwrap()).unwrap());
                    let cb = m(&c.op.apply(&ObjectSet::from_bits(&u, to_bits(&diff(&xb, &xa))).unwrap()).unwrap());
                    checked += 2;
                    if m(&v) != union(&ca, &cb) {
                        fail("nabla-oracle", tag());
                    }
                    if m(&amalg(x, &a.op, &b.op, &c.op).unwrap()) != cb {
                        fail("amalg-oracle", tag());
                    }

                    checked += 1;
                    if v != nabla(x, &b.op, &a.op, &c.op).unwrap() {
                        fail("na1", tag());
                    }

                    checked += 1;
                    let aa = nabla(x, &a.op, &a.op, &c.op).unwrap();
                    if aa != nabla(x, &b.op, &b.op, &c.op).unwrap() {
                        fail("na2", tag());
                    }
                    if c.op.apply(&empty).unwrap().is_empty() && !aa.is_empty() {
                        fail("na2-empty", tag());
                    }

                    // x^a ⊆ x^b ⊆ x and a monotone upper operator
                    if c.monotone && images[ia].is_subset(&images[ib]).unwrap() && images[ib].is_subset(x).unwrap() {
                        checked += 1;
                        let d = images[ib].difference(&images[ia]).unwrap();
                        let dc = c.op.apply(&d).unwrap();
                        if v != dc || !dc.is_subset(&images[ic]).unwrap() {
                            fail("na3+", format!("{}: {v} vs {dc}", tag()));
                        }
                        if x.is_subset(&images[ic]).unwrap() {
                            checked += 1;
                            let am = amalg(x, &a.op, &b.op, &c.op).unwrap();
                            if !am.is_subset(&images[ic]).unwrap() {
                                fail("amalg-bound", format!("{}: {am}", tag()));
                            }
                        }
                    }

                    if x.is_empty() && a.fixes_bottom && b.fixes_bottom && c.fixes_bottom {
                        checked += 1;
                        if !v.is_empty() {
                            fail("na4+", tag());
                        }
                    }
                    if *x == full && a.fixes_top && b.fixes_top && c.fixes_bottom {
                        checked += 1;
                        if !v.is_empty() {
                            fail("na4+", tag());
                        }
                    }
                }
            }
        }

        let f = &ops[..finv_pool.min(ops.len())];
        for l1 in f {
            for ls in f {
                for u1 in f {
                    for us in f {
                        checked += 1;
                        let lhs = finv(x, &l1.op, &ls.op, &u1.op, &us.op).unwrap();
                        let rhs = finv(x, &ls.op, &l1.op, &us.op, &u1.op).unwrap();
                        if lhs != rhs {
                            fail(
                                "na5",
                                format!("x={x} {} {} {} {}", l1.op.name(), ls.op.name(), u1.op.name(), us.op.name()),
                            );
                        }
                    }
                }
            }
        }
    }

    for a in domain {
        checked += 1;
        if !a.difference(a).unwrap().is_empty() {
            fail("omi1", format!("{a}"));
        }
        for b in domain {
            let ab = a.is_subset(b).unwrap();
            if ab {
                checked += 1;
                if !a.difference(b).unwrap().is_empty() {
                    fail("omi2", format!("{a} {b}"));
                }
            }
            for c in domain {
                if ab {
                    checked += 1;
                    if !a.difference(c).unwrap().is_subset(&b.difference(c).unwrap()).unwrap() {
                        fail("omi3", format!("{a} {b} {c}"));
                    }
                }
            }
        }
    }
    (bad, checked)
}

pub fn powerset(u: &Arc<Universe>) -> Vec<ObjectSet> {
    all_subsets(u, 20).unwrap()
}
