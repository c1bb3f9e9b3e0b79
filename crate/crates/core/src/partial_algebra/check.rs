use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::graded::{is_cover, rank_function};
use super::groups;
use super::structure::{BinaryOp, FiniteStructure, UnaryOp};
use crate::error::{Error, Result};
use crate::limits::{CARRIER_CAP_3, CARRIER_CAP_4};

/// How an equation or inequation treats undefined sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityMode {
    /// Plain `=`: both sides must be defined and related.
    Strict,
    /// `=ω`: if both sides are defined they are related.
    Omega,
    /// `=ω*`: if either side is defined, so is the other, and they are related.
    OmegaStar,
}

impl EqualityMode {
    /// `Some(true)` holds, `Some(false)` violated, `None` vacuous.
    pub fn compare(self, l: Option<usize>, r: Option<usize>, rel: impl Fn(usize, usize) -> bool) -> Option<bool> {
        match (self, l, r) {
            (_, Some(x), Some(y)) => Some(rel(x, y)),
            (EqualityMode::Strict, _, _) => Some(false),
            (EqualityMode::Omega, _, _) => None,
            (EqualityMode::OmegaStar, None, None) => None,
            (EqualityMode::OmegaStar, _, _) => Some(false),
        }
    }
}

/// Global override for the equality reading of conclusions. Hypotheses are
/// always read as "defined and equal".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EqualityOverride {
    #[default]
    AsPrinted,
    Omega,
    OmegaStar,
}

impl EqualityOverride {
    pub fn name(self) -> &'static str {
        match self {
            EqualityOverride::AsPrinted => "as-printed",
            EqualityOverride::Omega => "omega",
            EqualityOverride::OmegaStar => "omega-star",
        }
    }
}

impl FromStr for EqualityOverride {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(EqualityOverride::AsPrinted),
            "omega" => Ok(EqualityOverride::Omega),
            "omega-star" => Ok(EqualityOverride::OmegaStar),
            _ => Err(Error::input(format!(
                "unknown equality mode `{s}` (expected as-printed|omega|omega-star)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub equality: EqualityOverride,
    /// Implication table for the `implication` group; defaults to `imp_neg`
    /// when present, else `imp_sim`.
    pub implication: Option<BinaryOp>,
    /// Subset of FPA, SPM, BC1, BC2, BC3, OP, IBL, IP; `None` checks all.
    pub implication_properties: Option<Vec<String>>,
    /// Counterexamples kept per axiom (violations are always counted).
    pub max_counterexamples: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            equality: EqualityOverride::AsPrinted,
            implication: None,
            implication_properties: None,
            max_counterexamples: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomGroup {
    Quasiorder,
    WeakPartialLattice,
    Prcqo,
    Classification,
    Negation,
    WeakNegation,
    Omm,
    Implication,
    Prclai,
    DifferencePoset,
    EffectAlgebra,
    Orthoalgebra,
    Graded,
}

impl AxiomGroup {
    pub const ALL: [AxiomGroup; 13] = [
        AxiomGroup::Quasiorder,
        AxiomGroup::WeakPartialLattice,
        AxiomGroup::Prcqo,
        AxiomGroup::Classification,
        AxiomGroup::Negation,
        AxiomGroup::WeakNegation,
        AxiomGroup::Omm,
        AxiomGroup::Implication,
        AxiomGroup::Prclai,
        AxiomGroup::DifferencePoset,
        AxiomGroup::EffectAlgebra,
        AxiomGroup::Orthoalgebra,
        AxiomGroup::Graded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomGroup::Quasiorder => "quasiorder",
            AxiomGroup::WeakPartialLattice => "weak-partial-lattice",
            AxiomGroup::Prcqo => "prcqo",
            AxiomGroup::Classification => "classification",
            AxiomGroup::Negation => "negation",
            AxiomGroup::WeakNegation => "weak-negation",
            AxiomGroup::Omm => "omm",
            AxiomGroup::Implication => "implication",
            AxiomGroup::Prclai => "prclai",
            AxiomGroup::DifferencePoset => "difference-poset",
            AxiomGroup::EffectAlgebra => "effect-algebra",
            AxiomGroup::Orthoalgebra => "orthoalgebra",
            AxiomGroup::Graded => "graded",
        }
    }
}

impl fmt::Display for AxiomGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AxiomGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::input(format!("unknown axiom group `{s}`")))
    }
}

/// Result of evaluating one axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eval {
    Holds,
    /// Hypothesis false, or every conclusion vacuous under its equality mode.
    Vacuous,
    Violated(String),
}

impl Eval {
    pub fn is_violated(&self) -> bool {
        matches!(self, Eval::Violated(_))
    }
}

/// One conjunct of an axiom's conclusion.
pub(crate) enum Atom {
    True,
    Vacuous,
    False(String),
}

pub(crate) fn conclude(atoms: impl IntoIterator<Item = Atom>) -> Eval {
    let mut any_true = false;
    for a in atoms {
        match a {
            Atom::False(d) => return Eval::Violated(d),
            Atom::True => any_true = true,
            Atom::Vacuous => {}
        }
    }
    if any_true {
        Eval::Holds
    } else {
        Eval::Vacuous
    }
}

/// Evaluation context handed to axiom bodies.
pub struct Ctx<'a> {
    pub s: &'a FiniteStructure,
    ov: EqualityOverride,
}

impl<'a> Ctx<'a> {
    fn mode(&self, printed: EqualityMode) -> EqualityMode {
        match self.ov {
            EqualityOverride::AsPrinted => printed,
            EqualityOverride::Omega => EqualityMode::Omega,
            EqualityOverride::OmegaStar => EqualityMode::OmegaStar,
        }
    }

    pub(crate) fn show(&self, v: Option<usize>) -> String {
        v.map_or_else(|| "undefined".to_string(), |i| self.s.name(i).to_string())
    }

    pub(crate) fn un(&self, op: UnaryOp, a: Option<usize>) -> Option<usize> {
        self.s.un(op, a)
    }

    pub(crate) fn bin(&self, op: BinaryOp, a: Option<usize>, b: Option<usize>) -> Option<usize> {
        self.s.bin(op, a, b)
    }

    pub(crate) fn le_b(&self, a: usize, b: usize) -> bool {
        self.s.le(a, b)
    }

    /// Hypothesis reading: defined and equal.
    pub(crate) fn is(&self, l: Option<usize>, r: Option<usize>) -> bool {
        matches!((l, r), (Some(x), Some(y)) if x == y)
    }

    pub(crate) fn eq(&self, printed: EqualityMode, label: &str, l: Option<usize>, r: Option<usize>) -> Atom {
        match self.mode(printed).compare(l, r, |x, y| x == y) {
            Some(true) => Atom::True,
            None => Atom::Vacuous,
            Some(false) => Atom::False(format!("{label}: lhs {}, rhs {}", self.show(l), self.show(r))),
        }
    }

    pub(crate) fn le(&self, printed: EqualityMode, label: &str, l: Option<usize>, r: Option<usize>) -> Atom {
        match self.mode(printed).compare(l, r, |x, y| self.s.le(x, y)) {
            Some(true) => Atom::True,
            None => Atom::Vacuous,
            Some(false) => Atom::False(format!("{label}: lhs {}, rhs {}", self.show(l), self.show(r))),
        }
    }

    /// A definedness requirement under the given reading.
    pub(crate) fn defined(&self, printed: EqualityMode, label: &str, v: Option<usize>) -> Atom {
        match (v, self.mode(printed)) {
            (Some(_), _) => Atom::True,
            (None, EqualityMode::Strict) => Atom::False(format!("{label}: undefined")),
            (None, _) => Atom::Vacuous,
        }
    }

    /// A plain truth value; never vacuous.
    pub(crate) fn fact(&self, ok: bool, detail: impl FnOnce() -> String) -> Atom {
        if ok {
            Atom::True
        } else {
            Atom::False(detail())
        }
    }
}

type EvalFn = dyn Fn(&Ctx<'_>, &[usize]) -> Eval + Send + Sync;

/// A universally quantified axiom over its variables.
pub struct Axiom {
    pub id: String,
    pub vars: Vec<&'static str>,
    pub note: Option<String>,
    structure: Arc<FiniteStructure>,
    eval: Box<EvalFn>,
}

impl Axiom {
    pub(crate) fn new(
        structure: &Arc<FiniteStructure>,
        id: impl Into<String>,
        vars: &[&'static str],
        eval: impl Fn(&Ctx<'_>, &[usize]) -> Eval + Send + Sync + 'static,
    ) -> Self {
        Axiom {
            id: id.into(),
            vars: vars.to_vec(),
            note: None,
            structure: Arc::clone(structure),
            eval: Box::new(eval),
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// The structure the axiom quantifies over (may carry derived tables).
    pub fn structure(&self) -> &FiniteStructure {
        &self.structure
    }

    pub fn evaluate(&self, assignment: &[usize], equality: EqualityOverride) -> Result<Eval> {
        if assignment.len() != self.vars.len() {
            return Err(Error::input(format!(
                "axiom `{}` takes {} variables, got {}",
                self.id,
                self.vars.len(),
                assignment.len()
            )));
        }
        if assignment.iter().any(|&a| a >= self.structure.len()) {
            return Err(Error::input("assignment outside the carrier"));
        }
        let ctx = Ctx { s: &self.structure, ov: equality };
        Ok((self.eval)(&ctx, assignment))
    }
}

pub(crate) enum PlanEntry {
    Axiom(Axiom),
    Inapplicable { id: String, reason: String },
    /// Passes iff every entry of the named group passes.
    Composite { id: String, group: AxiomGroup },
    /// Existence of a rank function.
    Graded,
}

impl PlanEntry {
    pub(crate) fn inapplicable(id: impl Into<String>, reason: impl Into<String>) -> Self {
        PlanEntry::Inapplicable { id: id.into(), reason: reason.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Variable name and carrier element, in quantifier order.
    #[serde(serialize_with = "ordered_map")]
    pub assignment: Vec<(String, String)>,
    pub detail: String,
    /// For composite entries, the underlying axiom that failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via: Option<String>,
    #[serde(skip)]
    pub indices: Vec<usize>,
}

fn ordered_map<S: Serializer>(pairs: &[(String, String)], ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = ser.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        m.serialize_entry(k, v)?;
    }
    m.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomEntry {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<String>,
    /// Assignments where the axiom was not vacuous.
    pub checked: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub group: String,
    pub equality: String,
    /// Order pairs added by closing `leq` reflexively and transitively.
    pub closure_added: usize,
    pub entries: Vec<AxiomEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<serde_json::Map<String, serde_json::Value>>,
}

impl AxiomReport {
    /// No entry failed (inapplicable entries do not count as failures).
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn entry(&self, id: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failing(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn status(&self) -> Status {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            Status::Fail
        } else if self.entries.iter().all(|e| e.status == Status::Inapplicable) {
            Status::Inapplicable
        } else {
            Status::Pass
        }
    }
}

fn carrier_cap(n: usize, vars: usize, id: &str) -> Result<()> {
    let cap = if vars >= 4 { CARRIER_CAP_4 } else { CARRIER_CAP_3 };
    if n > cap {
        return Err(Error::CapExceeded { what: format!("carrier for `{id}` ({vars} variables)"), size: n, cap });
    }
    Ok(())
}

fn run_axiom(ax: &Axiom, options: &CheckOptions) -> Result<AxiomEntry> {
    let s = &*ax.structure;
    let n = s.len();
    let k = ax.vars.len();
    carrier_cap(n, k, &ax.id)?;
    let ctx = Ctx { s, ov: options.equality };
    let mut idx = vec![0usize; k];
    let mut checked = 0;
    let mut violations = 0;
    let mut counterexamples = Vec::new();
    loop {
        match (ax.eval)(&ctx, &idx) {
            Eval::Holds => checked += 1,
            Eval::Vacuous => {}
            Eval::Violated(detail) => {
                checked += 1;
                violations += 1;
                if counterexamples.len() < options.max_counterexamples {
                    counterexamples.push(Counterexample {
                        assignment: ax
                            .vars
                            .iter()
                            .zip(&idx)
                            .map(|(v, &i)| (v.to_string(), s.name(i).to_string()))
                            .collect(),
                        detail,
                        via: None,
                        indices: idx.clone(),
                    });
                }
            }
        }
        // odometer, first variable most significant
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(AxiomEntry {
                    id: ax.id.clone(),
                    status: if violations == 0 { Status::Pass } else { Status::Fail },
                    variables: ax.vars.iter().map(|v| v.to_string()).collect(),
                    checked,
                    violations,
                    counterexamples,
                    note: ax.note.clone(),
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn graded_entry(s: &FiniteStructure) -> (AxiomEntry, Option<serde_json::Map<String, serde_json::Value>>) {
    let n = s.len();
    match rank_function(n, |a, b| s.le(a, b)) {
        Ok(ranks) => {
            let map = ranks
                .iter()
                .enumerate()
                .map(|(i, &r)| (s.name(i).to_string(), serde_json::Value::from(r)))
                .collect();
            let entry = AxiomEntry {
                id: "rank-function".into(),
                status: Status::Pass,
                variables: Vec::new(),
                checked: 1,
                violations: 0,
                counterexamples: Vec::new(),
                note: Some("cover steps add exactly one; order-equivalent elements share a rank".into()),
            };
            (entry, Some(map))
        }
        Err((a, b)) => {
            let entry = AxiomEntry {
                id: "rank-function".into(),
                status: Status::Fail,
                variables: vec!["a".into(), "b".into()],
                checked: 1,
                violations: 1,
                counterexamples: vec![Counterexample {
                    assignment: vec![("a".into(), s.name(a).into()), ("b".into(), s.name(b).into())],
                    detail: format!(
                        "{} covers {}, but another chain forces a different rank difference",
                        s.name(b),
                        s.name(a)
                    ),
                    via: None,
                    indices: vec![a, b],
                }],
                note: None,
            };
            (entry, None)
        }
    }
}

/// Exhaustively checks one axiom group on `s`.
pub fn check_axioms(s: &FiniteStructure, group: AxiomGroup, options: &CheckOptions) -> Result<AxiomReport> {
    let shared = Arc::new(s.clone());
    let (plan, mut notes) = groups::plan(&shared, group, options)?;
    let mut entries = Vec::with_capacity(plan.len());
    let mut ranks = None;
    for item in plan {
        match item {
            PlanEntry::Axiom(ax) => entries.push(run_axiom(&ax, options)?),
            PlanEntry::Inapplicable { id, reason } => entries.push(AxiomEntry {
                id,
                status: Status::Inapplicable,
                variables: Vec::new(),
                checked: 0,
                violations: 0,
                counterexamples: Vec::new(),
                note: Some(reason),
            }),
            PlanEntry::Composite { id, group: sub } => {
                let report = check_axioms(s, sub, options)?;
                let failing: Vec<&AxiomEntry> = report.failing().collect();
                let counterexamples = failing
                    .iter()
                    .filter_map(|e| {
                        e.counterexamples.first().map(|c| Counterexample { via: Some(e.id.clone()), ..c.clone() })
                    })
                    .take(options.max_counterexamples)
                    .collect();
                entries.push(AxiomEntry {
                    id,
                    status: match report.status() {
                        Status::Fail => Status::Fail,
                        Status::Inapplicable => Status::Inapplicable,
                        Status::Pass => Status::Pass,
                    },
                    variables: Vec::new(),
                    checked: report.entries.iter().map(|e| e.checked).sum(),
                    violations: failing.iter().map(|e| e.violations).sum(),
                    counterexamples,
                    note: Some(format!("every `{sub}` axiom")),
                });
            }
            PlanEntry::Graded => {
                let (entry, r) = graded_entry(s);
                ranks = r;
                entries.push(entry);
            }
        }
    }
    let classification = (group == AxiomGroup::Classification).then(|| {
        let pass = |id: &str| entries.iter().any(|e| e.id == id && e.status == Status::Pass);
        if !pass("prcqo") {
            "none".to_string()
        } else if pass("antisymmetry") && pass("lattice-order") {
            "PRCL".to_string()
        } else if pass("antisymmetry") {
            "PRCPO".to_string()
        } else {
            "PRCQO".to_string()
        }
    });
    if group == AxiomGroup::Negation {
        for op in [UnaryOp::Neg, UnaryOp::Sim] {
            let pass = |id: String| entries.iter().any(|e| e.id == id && e.status == Status::Pass);
            if pass(format!("N1[{op}]")) && pass(format!("N2[{op}]")) {
                if pass(format!("N3[{op}]")) && pass(format!("N4[{op}]")) {
                    notes.push(format!("`{op}` is a strong negation"));
                } else {
                    notes.push(format!("`{op}` is a negation"));
                }
            }
        }
    }
    Ok(AxiomReport {
        group: group.name().to_string(),
        equality: options.equality.name().to_string(),
        closure_added: s.closure_added(),
        entries,
        notes,
        classification,
        ranks,
    })
}

/// Runs several groups in order.
pub fn check_groups(s: &FiniteStructure, groups: &[AxiomGroup], options: &CheckOptions) -> Result<Vec<AxiomReport>> {
    groups.iter().map(|&g| check_axioms(s, g, options)).collect()
}

/// Re-evaluates a reported counterexample independently of the sweep that
/// produced it. Composite entries are re-evaluated against the underlying axiom.
pub fn recheck(
    s: &FiniteStructure,
    group: AxiomGroup,
    options: &CheckOptions,
    entry_id: &str,
    counterexample: &Counterexample,
) -> Result<Eval> {
    let shared = Arc::new(s.clone());
    let (plan, _) = groups::plan(&shared, group, options)?;
    for item in plan {
        match item {
            PlanEntry::Axiom(ax) if ax.id == entry_id => {
                let idx = counterexample
                    .assignment
                    .iter()
                    .map(|(_, v)| ax.structure().index_of(v))
                    .collect::<Result<Vec<_>>>()?;
                return ax.evaluate(&idx, options.equality);
            }
            PlanEntry::Composite { id, group: sub } if id == entry_id => {
                let via = counterexample
                    .via
                    .as_deref()
                    .ok_or_else(|| Error::input("composite counterexample lacks its underlying axiom"))?;
                return recheck(s, sub, options, via, counterexample);
            }
            PlanEntry::Graded if entry_id == "rank-function" => {
                let [(_, a), (_, b)] = counterexample.assignment.as_slice() else {
                    return Err(Error::input("rank counterexample must name a cover pair"));
                };
                let (a, b) = (s.index_of(a)?, s.index_of(b)?);
                let n = s.len();
                if !is_cover(n, |x, y| s.le(x, y), a, b) {
                    return Ok(Eval::Vacuous);
                }
                return Ok(match rank_function(n, |x, y| s.le(x, y)) {
                    Ok(_) => Eval::Holds,
                    Err(_) => Eval::Violated("no rank function exists".into()),
                });
            }
            _ => {}
        }
    }
    Err(Error::input(format!("no axiom `{entry_id}` in group `{group}`")))
}
