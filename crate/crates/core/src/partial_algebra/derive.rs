use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::structure::{BinaryOp, FiniteStructure, UnaryOp};
use crate::error::{Error, Result};

/// Operations definable from the approximation and lattice tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivableOp {
    Dot,
    Otimes,
    Neg,
    Sim,
    Ominus,
    Oplus,
}

impl DerivableOp {
    pub const ALL: [DerivableOp; 6] = [
        DerivableOp::Dot,
        DerivableOp::Otimes,
        DerivableOp::Neg,
        DerivableOp::Sim,
        DerivableOp::Ominus,
        DerivableOp::Oplus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivableOp::Dot => "dot",
            DerivableOp::Otimes => "otimes",
            DerivableOp::Neg => "neg",
            DerivableOp::Sim => "sim",
            DerivableOp::Ominus => "ominus",
            DerivableOp::Oplus => "oplus",
        }
    }
}

impl fmt::Display for DerivableOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DerivableOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DerivableOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

/// How `inf`/`sup` of a candidate set are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundMode {
    /// The least/greatest member of the set itself.
    #[default]
    Attained,
    /// The greatest lower / least upper bound taken over the whole carrier.
    Lattice,
}

impl FromStr for BoundMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "attained" => Ok(BoundMode::Attained),
            "lattice" => Ok(BoundMode::Lattice),
            _ => Err(Error::input(format!("unknown bound mode `{s}` (expected attained|lattice)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedTable {
    Unary(UnaryOp, Vec<Option<usize>>),
    Binary(BinaryOp, Vec<Option<usize>>),
}

/// A derived table plus notes on undefined entries and representative choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub op: DerivableOp,
    pub table: DerivedTable,
    pub notes: Vec<String>,
}

impl Derivation {
    pub fn is_total(&self) -> bool {
        match &self.table {
            DerivedTable::Unary(_, t) | DerivedTable::Binary(_, t) => t.iter().all(Option::is_some),
        }
    }

    /// Installs the table into `s`, replacing any table in the same slot.
    pub fn install(&self, s: &mut FiniteStructure) -> Result<()> {
        match &self.table {
            DerivedTable::Unary(op, t) => s.set_unary(*op, t.clone()),
            DerivedTable::Binary(op, t) => s.set_binary(*op, t.clone()),
        }
    }

    pub fn to_json(&self, s: &FiniteStructure) -> serde_json::Value {
        let n = s.len();
        let mut entries = serde_json::Map::new();
        match &self.table {
            DerivedTable::Unary(_, t) => {
                for (a, v) in t.iter().enumerate() {
                    if let Some(v) = v {
                        entries.insert(s.name(a).to_string(), s.name(*v).into());
                    }
                }
            }
            DerivedTable::Binary(_, t) => {
                for a in 0..n {
                    for b in 0..n {
                        if let Some(v) = t[a * n + b] {
                            entries.insert(format!("{}|{}", s.name(a), s.name(b)), s.name(v).into());
                        }
                    }
                }
            }
        }
        #[derive(Serialize)]
        struct Out<'a> {
            op: &'a str,
            total: bool,
            table: serde_json::Map<String, serde_json::Value>,
            notes: &'a [String],
        }
        serde_json::to_value(Out { op: self.op.name(), total: self.is_total(), table: entries, notes: &self.notes })
            .expect("derivation serializes")
    }
}

enum Bound {
    Undefined(&'static str),
    Found { rep: usize, class: Vec<usize> },
}

fn greatest(s: &FiniteStructure, set: &[usize], mode: BoundMode) -> Bound {
    let pool: Vec<usize> = match mode {
        BoundMode::Attained => set.to_vec(),
        BoundMode::Lattice => (0..s.len()).filter(|&y| set.iter().all(|&x| s.le(x, y))).collect(),
    };
    let cands: Vec<usize> = match mode {
        BoundMode::Attained => pool.iter().copied().filter(|&g| pool.iter().all(|&x| s.le(x, g))).collect(),
        BoundMode::Lattice => pool.iter().copied().filter(|&g| pool.iter().all(|&y| s.le(g, y))).collect(),
    };
    match cands.first() {
        None => Bound::Undefined(match mode {
            BoundMode::Attained => "candidate set has no greatest element",
            BoundMode::Lattice => "candidate set has no least upper bound",
        }),
        Some(&rep) => Bound::Found { rep, class: cands },
    }
}

fn least(s: &FiniteStructure, set: &[usize], mode: BoundMode) -> Bound {
    let pool: Vec<usize> = match mode {
        BoundMode::Attained => set.to_vec(),
        BoundMode::Lattice => (0..s.len()).filter(|&y| set.iter().all(|&x| s.le(y, x))).collect(),
    };
    let cands: Vec<usize> = match mode {
        BoundMode::Attained => pool.iter().copied().filter(|&g| pool.iter().all(|&x| s.le(g, x))).collect(),
        BoundMode::Lattice => pool.iter().copied().filter(|&g| pool.iter().all(|&y| s.le(y, g))).collect(),
    };
    match cands.first() {
        None => Bound::Undefined(match mode {
            BoundMode::Attained => "candidate set has no least element",
            BoundMode::Lattice => "candidate set has no greatest lower bound",
        }),
        Some(&rep) => Bound::Found { rep, class: cands },
    }
}

fn require_unary(s: &FiniteStructure, op: UnaryOp, for_op: DerivableOp) -> Result<&[Option<usize>]> {
    s.unary_table(op)
        .ok_or_else(|| Error::precondition(format!("deriving `{for_op}` needs the `{op}` table")))
}

fn require_binary(s: &FiniteStructure, op: BinaryOp, for_op: DerivableOp) -> Result<&[Option<usize>]> {
    s.binary_table(op)
        .ok_or_else(|| Error::precondition(format!("deriving `{for_op}` needs the `{op}` table")))
}

/// Binary table of `s` at `op`, or its derivation when absent.
fn ingredient(
    s: &FiniteStructure,
    op: BinaryOp,
    which: DerivableOp,
    mode: BoundMode,
    notes: &mut Vec<String>,
) -> Result<Vec<Option<usize>>> {
    if let Some(t) = s.binary_table(op) {
        return Ok(t.to_vec());
    }
    let src = match op {
        BinaryOp::Dot => DerivableOp::Dot,
        BinaryOp::Otimes => DerivableOp::Otimes,
        BinaryOp::Ominus => DerivableOp::Ominus,
        _ => return Err(Error::precondition(format!("deriving `{which}` needs the `{op}` table"))),
    };
    let d = derive_operation(s, src, mode)?;
    notes.push(format!("`{op}` table absent; derived it first"));
    match d.table {
        DerivedTable::Binary(_, t) => Ok(t),
        DerivedTable::Unary(..) => unreachable!("binary derivation"),
    }
}

fn unary_ingredient(
    s: &FiniteStructure,
    op: UnaryOp,
    which: DerivableOp,
    mode: BoundMode,
    notes: &mut Vec<String>,
) -> Result<Vec<Option<usize>>> {
    if let Some(t) = s.unary_table(op) {
        return Ok(t.to_vec());
    }
    if op != UnaryOp::Sim {
        return Err(Error::precondition(format!("deriving `{which}` needs the `{op}` table")));
    }
    let d = derive_operation(s, DerivableOp::Sim, mode)?;
    notes.push("`sim` table absent; derived it first".to_string());
    match d.table {
        DerivedTable::Unary(_, t) => Ok(t),
        DerivedTable::Binary(..) => unreachable!("unary derivation"),
    }
}

/// Derives one of the defined operations:
/// `a·b = ls(a) ∧ ls(b)`, `a⊗b = us(a) ∨ us(b)`, `¬a = inf{z : a⊗z = ⊤}`,
/// `∼a = sup{z : a·z = ⊥}`, `a⊖b = ls(a) ∧ ls(∼b)`, and `a⊕c = b ⟺ b⊖a = c`.
pub fn derive_operation(s: &FiniteStructure, which: DerivableOp, mode: BoundMode) -> Result<Derivation> {
    let n = s.len();
    let mut notes = Vec::new();
    let name = |i: usize| s.name(i).to_string();
    let table = match which {
        DerivableOp::Dot | DerivableOp::Otimes => {
            let (approx, lattice, target) = if which == DerivableOp::Dot {
                (UnaryOp::Ls, BinaryOp::Wedge, BinaryOp::Dot)
            } else {
                (UnaryOp::Us, BinaryOp::Vee, BinaryOp::Otimes)
            };
            let ap = require_unary(s, approx, which)?;
            let lt = require_binary(s, lattice, which)?;
            let mut t = vec![None; n * n];
            for a in 0..n {
                for b in 0..n {
                    if let (Some(x), Some(y)) = (ap[a], ap[b]) {
                        t[a * n + b] = lt[x * n + y];
                    }
                }
            }
            let undefined = t.iter().filter(|v| v.is_none()).count();
            if undefined > 0 {
                notes.push(format!("{undefined} entries undefined where `{lattice}` is undefined"));
            }
            DerivedTable::Binary(target, t)
        }
        DerivableOp::Neg | DerivableOp::Sim => {
            let (agg, goal) = if which == DerivableOp::Neg {
                (ingredient(s, BinaryOp::Otimes, which, mode, &mut notes)?, s.top())
            } else {
                (ingredient(s, BinaryOp::Dot, which, mode, &mut notes)?, s.bot())
            };
            let mut t = vec![None; n];
            for a in 0..n {
                let set: Vec<usize> = (0..n).filter(|&z| agg[a * n + z] == Some(goal)).collect();
                let bound = if which == DerivableOp::Neg {
                    least(s, &set, mode)
                } else {
                    greatest(s, &set, mode)
                };
                match bound {
                    Bound::Undefined(why) => notes.push(format!("{which}({}) undefined: {why}", name(a))),
                    Bound::Found { rep, class } => {
                        if class.len() > 1 {
                            let ids: Vec<String> = class.iter().map(|&c| name(c)).collect();
                            notes.push(format!(
                                "{which}({}): order-equivalent bounds {{{}}}; picked `{}`",
                                name(a),
                                ids.join(","),
                                name(rep)
                            ));
                        }
                        t[a] = Some(rep);
                    }
                }
            }
            let target = if which == DerivableOp::Neg { UnaryOp::Neg } else { UnaryOp::Sim };
            DerivedTable::Unary(target, t)
        }
        DerivableOp::Ominus => {
            let ls = require_unary(s, UnaryOp::Ls, which)?.to_vec();
            let wedge = require_binary(s, BinaryOp::Wedge, which)?;
            let sim = unary_ingredient(s, UnaryOp::Sim, which, mode, &mut notes)?;
            let mut t = vec![None; n * n];
            for a in 0..n {
                for b in 0..n {
                    let x = ls[a];
                    let y = sim[b].and_then(|z| ls[z]);
                    if let (Some(x), Some(y)) = (x, y) {
                        t[a * n + b] = wedge[x * n + y];
                    }
                }
            }
            DerivedTable::Binary(BinaryOp::Ominus, t)
        }
        DerivableOp::Oplus => {
            let om = ingredient(s, BinaryOp::Ominus, which, mode, &mut notes)?;
            if let Some((a, b, c)) = cancellation_failure(s, &om) {
                return Err(Error::precondition(format!(
                    "deriving `oplus` needs a cancellative difference; {a}⊖{c} = {b}⊖{c} with {a} ≠ {b}",
                    a = name(a),
                    b = name(b),
                    c = name(c)
                )));
            }
            let mut t = vec![None; n * n];
            for a in 0..n {
                for c in 0..n {
                    let bs: Vec<usize> = (0..n).filter(|&b| om[b * n + a] == Some(c)).collect();
                    match bs.as_slice() {
                        [] => {}
                        [b] => t[a * n + c] = Some(*b),
                        many => notes.push(format!(
                            "{}⊕{} undefined: {} candidates",
                            name(a),
                            name(c),
                            many.len()
                        )),
                    }
                }
            }
            DerivedTable::Binary(BinaryOp::Oplus, t)
        }
    };
    Ok(Derivation { op: which, table, notes })
}

/// First `(a, b, c)` with `a⊖c = b⊖c` defined and `a ≠ b`.
pub(crate) fn cancellation_failure(s: &FiniteStructure, om: &[Option<usize>]) -> Option<(usize, usize, usize)> {
    let n = s.len();
    for c in 0..n {
        for a in 0..n {
            for b in 0..n {
                if a != b && om[a * n + c].is_some() && om[a * n + c] == om[b * n + c] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}
