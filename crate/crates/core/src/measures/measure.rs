use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::approximations::ApproximationOperator;
use crate::error::{Error, Result};
use crate::rough_core::{ensure_same, ObjectSet, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    /// `(x^b \ x^a)^c`
    Amalg,
    /// `(x^a \ x^b)^c ∪ (x^b \ x^a)^c`
    Nabla,
    /// `∇(x, l1, ls, us) ∪ ∇(x, ls, l1, u1)`
    Finv,
}

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Amalg => "amalg",
            MeasureKind::Nabla => "nabla",
            MeasureKind::Finv => "finv",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            MeasureKind::Amalg | MeasureKind::Nabla => 3,
            MeasureKind::Finv => 4,
        }
    }
}

impl FromStr for MeasureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "amalg" => Ok(MeasureKind::Amalg),
            "nabla" => Ok(MeasureKind::Nabla),
            "finv" => Ok(MeasureKind::Finv),
            _ => Err(Error::input(format!("unknown measure `{s}` (expected amalg|nabla|finv)"))),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn amalg_bits(x: u64, a: &ApproximationOperator, b: &ApproximationOperator, c: &ApproximationOperator) -> Result<u64> {
    let xa = a.apply_bits(x)?;
    let xb = b.apply_bits(x)?;
    c.apply_bits(xb & !xa)
}

fn nabla_bits(x: u64, a: &ApproximationOperator, b: &ApproximationOperator, c: &ApproximationOperator) -> Result<u64> {
    let xa = a.apply_bits(x)?;
    let xb = b.apply_bits(x)?;
    Ok(c.apply_bits(xa & !xb)? | c.apply_bits(xb & !xa)?)
}

fn finv_bits(
    x: u64,
    l1: &ApproximationOperator,
    ls: &ApproximationOperator,
    u1: &ApproximationOperator,
    us: &ApproximationOperator,
) -> Result<u64> {
    Ok(nabla_bits(x, l1, ls, us)? | nabla_bits(x, ls, l1, u1)?)
}

fn check_universe(x: &ObjectSet, ops: &[&ApproximationOperator]) -> Result<()> {
    for op in ops {
        ensure_same(x.universe(), op.universe(), &format!("operator `{}`", op.name()))?;
    }
    Ok(())
}

/// `∐(x, a, b, c) = (x^b \ x^a)^c`.
pub fn amalg(
    x: &ObjectSet,
    a: &ApproximationOperator,
    b: &ApproximationOperator,
    c: &ApproximationOperator,
) -> Result<ObjectSet> {
    check_universe(x, &[a, b, c])?;
    ObjectSet::from_bits(x.universe(), amalg_bits(x.bits(), a, b, c)?)
}

/// `∇(x, a, b, c) = (x^a \ x^b)^c ∪ (x^b \ x^a)^c`.
pub fn nabla(
    x: &ObjectSet,
    a: &ApproximationOperator,
    b: &ApproximationOperator,
    c: &ApproximationOperator,
) -> Result<ObjectSet> {
    check_universe(x, &[a, b, c])?;
    ObjectSet::from_bits(x.universe(), nabla_bits(x.bits(), a, b, c)?)
}

/// `Ⅎ(x, l1, ls, u1, us) = ∇(x, l1, ls, us) ∪ ∇(x, ls, l1, u1)`.
pub fn finv(
    x: &ObjectSet,
    l1: &ApproximationOperator,
    ls: &ApproximationOperator,
    u1: &ApproximationOperator,
    us: &ApproximationOperator,
) -> Result<ObjectSet> {
    check_universe(x, &[l1, ls, u1, us])?;
    ObjectSet::from_bits(x.universe(), finv_bits(x.bits(), l1, ls, u1, us)?)
}

/// A measure together with its operator slots.
#[derive(Clone, Debug)]
pub struct MeasureSpec {
    kind: MeasureKind,
    ops: Vec<ApproximationOperator>,
}

impl MeasureSpec {
    pub fn new(kind: MeasureKind, ops: Vec<ApproximationOperator>) -> Result<Self> {
        if ops.len() != kind.arity() {
            return Err(Error::input(format!(
                "`{kind}` takes {} operators, got {}",
                kind.arity(),
                ops.len()
            )));
        }
        for op in &ops[1..] {
            ensure_same(ops[0].universe(), op.universe(), &format!("operator `{}`", op.name()))?;
        }
        Ok(MeasureSpec { kind, ops })
    }

    pub fn amalg(a: ApproximationOperator, b: ApproximationOperator, c: ApproximationOperator) -> Result<Self> {
        Self::new(MeasureKind::Amalg, vec![a, b, c])
    }

    pub fn nabla(a: ApproximationOperator, b: ApproximationOperator, c: ApproximationOperator) -> Result<Self> {
        Self::new(MeasureKind::Nabla, vec![a, b, c])
    }

    pub fn finv(
        l1: ApproximationOperator,
        ls: ApproximationOperator,
        u1: ApproximationOperator,
        us: ApproximationOperator,
    ) -> Result<Self> {
        Self::new(MeasureKind::Finv, vec![l1, ls, u1, us])
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn ops(&self) -> &[ApproximationOperator] {
        &self.ops
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.ops[0].universe()
    }

    /// The standard pair the measure is judged against: `(b, c)` for
    /// amalg/nabla and `(ls, us)` for finv.
    pub fn standard_pair(&self) -> (&ApproximationOperator, &ApproximationOperator) {
        match self.kind {
            MeasureKind::Amalg | MeasureKind::Nabla => (&self.ops[1], &self.ops[2]),
            MeasureKind::Finv => (&self.ops[1], &self.ops[3]),
        }
    }

    /// e.g. `nabla(x, l1, l, ub)`.
    pub fn label(&self) -> String {
        let names: Vec<&str> = self.ops.iter().map(|o| o.name()).collect();
        format!("{}(x, {})", self.kind, names.join(", "))
    }

    pub fn evaluate_bits(&self, x: u64) -> Result<u64> {
        let o = &self.ops;
        match self.kind {
            MeasureKind::Amalg => amalg_bits(x, &o[0], &o[1], &o[2]),
            MeasureKind::Nabla => nabla_bits(x, &o[0], &o[1], &o[2]),
            MeasureKind::Finv => finv_bits(x, &o[0], &o[1], &o[2], &o[3]),
        }
    }

    pub fn evaluate(&self, x: &ObjectSet) -> Result<ObjectSet> {
        ensure_same(x.universe(), self.universe(), "measure argument")?;
        ObjectSet::from_bits(x.universe(), self.evaluate_bits(x.bits())?)
    }
}

/// Measure results over a domain, in ascending subset encoding.
#[derive(Clone, Debug)]
pub struct MeasureTable {
    pub label: String,
    pub rows: Vec<(ObjectSet, ObjectSet)>,
}

impl MeasureTable {
    pub fn evaluate(h: &[ObjectSet], spec: &MeasureSpec) -> Result<Self> {
        let mut domain: Vec<&ObjectSet> = h.iter().collect();
        domain.sort();
        domain.dedup();
        let rows = domain
            .into_iter()
            .map(|x| Ok((x.clone(), spec.evaluate(x)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasureTable { label: spec.label(), rows })
    }

    pub fn get(&self, x: &ObjectSet) -> Option<&ObjectSet> {
        self.rows.iter().find(|(k, _)| k == x).map(|(_, v)| v)
    }
}

/// The `reference` field of a [`Discrepancy`] for rows the reference lacks.
pub const ABSENT: &str = "(absent)";

/// A row where a computed value disagrees with a reference value.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Discrepancy {
    pub subset: String,
    pub computed: String,
    pub reference: String,
    pub note: String,
}

/// Compares a table against reference values; rows absent from the
/// reference are reported as such.
pub fn compare_reference(table: &MeasureTable, reference: &[(ObjectSet, ObjectSet)], source: &str) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for (x, v) in &table.rows {
        match reference.iter().find(|(k, _)| k == x) {
            Some((_, r)) if r != v => out.push(Discrepancy {
                subset: x.to_string(),
                computed: v.to_string(),
                reference: r.to_string(),
                note: format!("{source} differs"),
            }),
            Some(_) => {}
            None => out.push(Discrepancy {
                subset: x.to_string(),
                computed: v.to_string(),
                reference: ABSENT.into(),
                note: format!("{source} has no entry"),
            }),
        }
    }
    out
}

/// Subsets where `x^{ls} ⊆ ∐(x, l1, ls, ls)` fails.
pub fn amalg_standard_inclusion_failures(
    h: &[ObjectSet],
    l1: &ApproximationOperator,
    ls: &ApproximationOperator,
) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for x in h {
        let xl = ls.apply(x)?;
        let m = amalg(x, l1, ls, ls)?;
        if !xl.is_subset(&m)? {
            out.push(Discrepancy {
                subset: x.to_string(),
                computed: m.to_string(),
                reference: xl.to_string(),
                note: format!("x^{} is not contained in amalg(x, {}, {}, {})", ls.name(), l1.name(), ls.name(), ls.name()),
            });
        }
    }
    Ok(out)
}
