use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::measure::{finv, nabla};
use crate::approximations::ApproximationOperator;
use crate::error::{Error, Result};
use crate::rough_core::{ensure_same, ObjectSet};

/// The collection of "less important" sets a measure must land in.
#[derive(Clone, Debug)]
pub enum ImportanceClass {
    Explicit(Vec<ObjectSet>),
    /// Sets `A` with `A^lower = ∅` and `A^upper = k`.
    Rule {
        lower: ApproximationOperator,
        upper: ApproximationOperator,
        k: ObjectSet,
    },
}

impl ImportanceClass {
    pub fn explicit(mut sets: Vec<ObjectSet>) -> Result<Self> {
        if let Some(first) = sets.first() {
            for s in &sets[1..] {
                ensure_same(first.universe(), s.universe(), "importance class")?;
            }
        }
        sets.sort();
        sets.dedup();
        Ok(ImportanceClass::Explicit(sets))
    }

    pub fn rule(lower: ApproximationOperator, upper: ApproximationOperator, k: ObjectSet) -> Result<Self> {
        ensure_same(k.universe(), lower.universe(), "importance rule lower operator")?;
        ensure_same(k.universe(), upper.universe(), "importance rule upper operator")?;
        Ok(ImportanceClass::Rule { lower, upper, k })
    }

    pub fn contains(&self, x: &ObjectSet) -> Result<bool> {
        match self {
            ImportanceClass::Explicit(sets) => {
                if let Some(first) = sets.first() {
                    ensure_same(first.universe(), x.universe(), "importance class member")?;
                }
                Ok(sets.contains(x))
            }
            ImportanceClass::Rule { lower, upper, k } => {
                ensure_same(k.universe(), x.universe(), "importance class member")?;
                Ok(lower.apply(x)?.is_empty() && upper.apply(x)? == *k)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ImportanceClass::Explicit(sets) => {
                let items: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
                format!("{{{}}}", items.join(", "))
            }
            ImportanceClass::Rule { lower, upper, k } => {
                format!("{{A : A^{} = {{}}, A^{} = {k}}}", lower.name(), upper.name())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    /// `∇(x, l1, ls, us)` and `∇(x, l2, ls, us)` both in `S_o`; operators
    /// `(l1, l2, ls, us)`.
    Prec1,
    /// `Ⅎ(x, l1, ls, u1, us)` in `S_o`; operators `(l1, ls, u1, us)`.
    Prec2,
    /// `∇(x, l1, ls, us)` in `S_o`; operators `(l1, ls, us)`.
    Acc5,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::Prec1 => "prec1",
            VerdictKind::Prec2 => "prec2",
            VerdictKind::Acc5 => "acc5",
        }
    }

    pub fn slots(self) -> &'static [&'static str] {
        match self {
            VerdictKind::Prec1 => &["l1", "l2", "ls", "us"],
            VerdictKind::Prec2 => &["l1", "ls", "u1", "us"],
            VerdictKind::Acc5 => &["l1", "ls", "us"],
        }
    }
}

impl FromStr for VerdictKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "prec1" => Ok(VerdictKind::Prec1),
            "prec2" => Ok(VerdictKind::Prec2),
            "acc5" => Ok(VerdictKind::Acc5),
            _ => Err(Error::input(format!("unknown verdict `{s}` (expected prec1|prec2|acc5)"))),
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A domain element whose measure falls outside the importance class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subset: String,
    pub measure: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub kind: String,
    pub pass: bool,
    pub checked: usize,
    pub importance: String,
    pub witnesses: Vec<Witness>,
}

type Term<'a> = Box<dyn Fn(&ObjectSet) -> Result<ObjectSet> + 'a>;

/// Evaluates the verdict's measures on every element of `h`; passes iff
/// all land in `so`. `ops` follow [`VerdictKind::slots`].
pub fn verdict(kind: VerdictKind, h: &[ObjectSet], ops: &[ApproximationOperator], so: &ImportanceClass) -> Result<Verdict> {
    let slots = kind.slots();
    if ops.len() != slots.len() {
        return Err(Error::input(format!(
            "{kind} takes operators ({}), got {}",
            slots.join(", "),
            ops.len()
        )));
    }
    let label = |name: &str, parts: &[&ApproximationOperator]| {
        let names: Vec<&str> = parts.iter().map(|o| o.name()).collect();
        format!("{name}(x, {})", names.join(", "))
    };
    let mut terms: Vec<(String, Term<'_>)> = Vec::new();
    match kind {
        VerdictKind::Prec1 => {
            let (l1, l2, ls, us) = (&ops[0], &ops[1], &ops[2], &ops[3]);
            terms.push((label("nabla", &[l1, ls, us]), Box::new(move |x| nabla(x, l1, ls, us))));
            terms.push((label("nabla", &[l2, ls, us]), Box::new(move |x| nabla(x, l2, ls, us))));
        }
        VerdictKind::Prec2 => {
            let (l1, ls, u1, us) = (&ops[0], &ops[1], &ops[2], &ops[3]);
            terms.push((label("finv", &[l1, ls, u1, us]), Box::new(move |x| finv(x, l1, ls, u1, us))));
        }
        VerdictKind::Acc5 => {
            let (l1, ls, us) = (&ops[0], &ops[1], &ops[2]);
            terms.push((label("nabla", &[l1, ls, us]), Box::new(move |x| nabla(x, l1, ls, us))));
        }
    }
    let mut witnesses = Vec::new();
    for x in h {
        for (name, f) in &terms {
            let v = f(x)?;
            if !so.contains(&v)? {
                witnesses.push(Witness { subset: x.to_string(), measure: name.clone(), value: v.to_string() });
            }
        }
    }
    Ok(Verdict {
        kind: kind.name().to_string(),
        pass: witnesses.is_empty(),
        checked: h.len(),
        importance: so.describe(),
        witnesses,
    })
}
