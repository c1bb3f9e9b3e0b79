use serde_json::{json, Map, Value};

use super::measure::MeasureSpec;
use crate::approximations::{profile, ApproximationOperator, ProfileScope};
use crate::error::{Error, Result};
use crate::partial_algebra::rank_function;
use crate::rough_core::ObjectSet;

/// Whether every range element is fixed by a chosen operator pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub lower: String,
    pub upper: String,
    pub all_definite: bool,
    /// Elements `A` with `A^l ≠ A` or `A^u ≠ A`.
    pub witnesses: Vec<String>,
}

/// The distinct results of a measure over a domain, ordered by inclusion,
/// with union and intersection kept only where they stay inside the range.
#[derive(Clone, Debug)]
pub struct RangeStructure {
    pub label: String,
    /// Distinct results in ascending subset encoding.
    pub elements: Vec<ObjectSet>,
    join: Vec<Option<usize>>,
    meet: Vec<Option<usize>>,
    /// Every pair has a least upper and greatest lower bound in the range.
    pub lattice: bool,
    /// Index of the least element, when there is one.
    pub bottom: Option<usize>,
    /// Rank of each element when the order is graded.
    pub ranks: Option<Vec<usize>>,
    /// Failures of idempotence, weak associativity, weak commutativity and
    /// weak absorption of the partial join/meet (`=ω` reading).
    pub weak_partial_lattice_violations: Vec<String>,
    pub definiteness: Option<Definiteness>,
}

impl RangeStructure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.elements[a].bits() & !self.elements[b].bits() == 0
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a * self.len() + b]
    }

    pub fn index_of(&self, x: &ObjectSet) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    pub fn is_lower_bounded(&self) -> bool {
        self.bottom.is_some()
    }

    pub fn is_graded(&self) -> bool {
        self.ranks.is_some()
    }

    pub fn is_weak_partial_lattice(&self) -> bool {
        self.weak_partial_lattice_violations.is_empty()
    }

    pub fn rank_of(&self, x: &ObjectSet) -> Option<usize> {
        let i = self.index_of(x)?;
        self.ranks.as_ref().map(|r| r[i])
    }

    pub fn to_json(&self) -> Value {
        let name = |i: usize| self.elements[i].to_string();
        let n = self.len();
        let mut order = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le(a, b) {
                    order.push(json!([name(a), name(b)]));
                }
            }
        }
        let table = |t: &dyn Fn(usize, usize) -> Option<usize>| {
            let mut m = Map::new();
            for a in 0..n {
                for b in 0..n {
                    if let Some(c) = t(a, b) {
                        m.insert(format!("{}|{}", name(a), name(b)), Value::String(name(c)));
                    }
                }
            }
            Value::Object(m)
        };
        let ranks = match &self.ranks {
            Some(r) => Value::Object((0..n).map(|i| (name(i), json!(r[i]))).collect()),
            None => Value::Null,
        };
        let definite = match &self.definiteness {
            Some(d) => json!({
                "pair": [d.lower, d.upper],
                "all": d.all_definite,
                "witnesses": d.witnesses,
            }),
            None => Value::Null,
        };
        json!({
            "measure": self.label,
            "elements": (0..n).map(name).collect::<Vec<_>>(),
            "order-pairs": order,
            "join": table(&|a, b| self.join(a, b)),
            "meet": table(&|a, b| self.meet(a, b)),
            "lattice": self.lattice,
            "lower-bounded": self.is_lower_bounded(),
            "bottom": self.bottom.map(name),
            "weak-partial-lattice": self.is_weak_partial_lattice(),
            "weak-partial-lattice-violations": self.weak_partial_lattice_violations,
            "graded": self.is_graded(),
            "ranks": ranks,
            "definite": definite,
        })
    }
}

/// The pair used for the definiteness report when none is given: the
/// measure's standard pair if it is contractive/expansive on its domain,
/// otherwise `fallback`.
pub fn default_definiteness_pair<'a>(
    spec: &'a MeasureSpec,
    fallback: (&'a ApproximationOperator, &'a ApproximationOperator),
) -> (&'a ApproximationOperator, &'a ApproximationOperator) {
    let (l, u) = spec.standard_pair();
    let ok = profile(l, ProfileScope::Exhaustive).map(|p| p.contractive.is_true()).unwrap_or(false)
        && profile(u, ProfileScope::Exhaustive).map(|p| p.expansive.is_true()).unwrap_or(false);
    if ok {
        (l, u)
    } else {
        fallback
    }
}

/// Builds `ℛ` for `spec` over `h`, optionally reporting definiteness against
/// the given operator pair.
pub fn measure_range(
    h: &[ObjectSet],
    spec: &MeasureSpec,
    definiteness: Option<(&ApproximationOperator, &ApproximationOperator)>,
) -> Result<RangeStructure> {
    if h.is_empty() {
        return Err(Error::precondition("measure range needs a nonempty domain"));
    }
    let mut elements = h.iter().map(|x| spec.evaluate(x)).collect::<Result<Vec<_>>>()?;
    elements.sort();
    elements.dedup();
    let n = elements.len();
    let bits: Vec<u64> = elements.iter().map(|e| e.bits()).collect();
    let find = |m: u64| bits.iter().position(|&b| b == m);
    let le = |a: usize, b: usize| bits[a] & !bits[b] == 0;

    let mut join = vec![None; n * n];
    let mut meet = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            join[a * n + b] = find(bits[a] | bits[b]);
            meet[a * n + b] = find(bits[a] & bits[b]);
        }
    }

    let least_upper = |a: usize, b: usize| {
        (0..n).find(|&c| le(a, c) && le(b, c) && (0..n).all(|d| !(le(a, d) && le(b, d)) || le(c, d)))
    };
    let greatest_lower = |a: usize, b: usize| {
        (0..n).find(|&c| le(c, a) && le(c, b) && (0..n).all(|d| !(le(d, a) && le(d, b)) || le(d, c)))
    };
    let lattice = (0..n).all(|a| (0..n).all(|b| least_upper(a, b).is_some() && greatest_lower(a, b).is_some()));
    let bottom = (0..n).find(|&c| (0..n).all(|d| le(c, d)));
    let ranks = rank_function(n, le).ok();

    let weak_partial_lattice_violations = wpl_violations(&elements, &join, &meet);

    let definiteness = match definiteness {
        Some((l, u)) => {
            let mut witnesses = Vec::new();
            for e in &elements {
                if l.apply(e)? != *e || u.apply(e)? != *e {
                    witnesses.push(e.to_string());
                }
            }
            Some(Definiteness {
                lower: l.name().to_string(),
                upper: u.name().to_string(),
                all_definite: witnesses.is_empty(),
                witnesses,
            })
        }
        None => None,
    };

    Ok(RangeStructure {
        label: spec.label(),
        elements,
        join,
        meet,
        lattice,
        bottom,
        ranks,
        weak_partial_lattice_violations,
        definiteness,
    })
}

fn wpl_violations(elements: &[ObjectSet], join: &[Option<usize>], meet: &[Option<usize>]) -> Vec<String> {
    let n = elements.len();
    let name = |i: usize| elements[i].to_string();
    let ap = |t: &[Option<usize>], a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(a), Some(b)) => t[a * n + b],
        _ => None,
    };
    // =ω: equal whenever both sides are defined
    let omega = |l: Option<usize>, r: Option<usize>| match (l, r) {
        (Some(l), Some(r)) => l == r,
        _ => true,
    };
    let mut out = Vec::new();
    for a in 0..n {
        let sa = Some(a);
        if ap(join, sa, sa) != sa {
            out.push(format!("idempotent join fails at a={}", name(a)));
        }
        if ap(meet, sa, sa) != sa {
            out.push(format!("idempotent meet fails at a={}", name(a)));
        }
        for b in 0..n {
            let sb = Some(b);
            for (t, sym) in [(join, "∨"), (meet, "∧")] {
                if !omega(ap(t, sa, sb), ap(t, sb, sa)) {
                    out.push(format!("a{sym}b =ω b{sym}a fails at a={}, b={}", name(a), name(b)));
                }
            }
            if !omega(ap(join, sa, ap(meet, sa, sb)), sa) {
                out.push(format!("a∨(a∧b) =ω a fails at a={}, b={}", name(a), name(b)));
            }
            if !omega(ap(meet, sa, ap(join, sa, sb)), sa) {
                out.push(format!("a∧(a∨b) =ω a fails at a={}, b={}", name(a), name(b)));
            }
            for c in 0..n {
                let sc = Some(c);
                for (t, sym) in [(join, "∨"), (meet, "∧")] {
                    if !omega(ap(t, sa, ap(t, sb, sc)), ap(t, ap(t, sa, sb), sc)) {
                        out.push(format!(
                            "a{sym}(b{sym}c) =ω (a{sym}b){sym}c fails at a={}, b={}, c={}",
                            name(a),
                            name(b),
                            name(c)
                        ));
                    }
                }
            }
        }
    }
    out
}
