//! Axiom groups. Each group expands into a plan of quantified axioms over a
//! shared structure; printed equalities carry their own reading.

use std::sync::Arc;

use super::check::{conclude, Axiom, AxiomGroup, CheckOptions, Ctx, EqualityMode, Eval, PlanEntry};
use super::derive::cancellation_failure;
use super::structure::{BinaryOp, FiniteStructure, UnaryOp};
use crate::error::Result;

const ST: EqualityMode = EqualityMode::Strict;
const OM: EqualityMode = EqualityMode::Omega;
const OS: EqualityMode = EqualityMode::OmegaStar;

type Plan = (Vec<PlanEntry>, Vec<String>);

pub(crate) fn plan(s: &Arc<FiniteStructure>, group: AxiomGroup, options: &CheckOptions) -> Result<Plan> {
    Ok(match group {
        AxiomGroup::Quasiorder => (quasiorder(s), Vec::new()),
        AxiomGroup::WeakPartialLattice => weak_partial_lattice(s),
        AxiomGroup::Prcqo => (prcqo(s), Vec::new()),
        AxiomGroup::Classification => classification(s),
        AxiomGroup::Negation => (negation(s), Vec::new()),
        AxiomGroup::WeakNegation => (weak_negation(s), Vec::new()),
        AxiomGroup::Omm => (omm(s), Vec::new()),
        AxiomGroup::Implication => implication(s, options),
        AxiomGroup::Prclai => (prclai(s), Vec::new()),
        AxiomGroup::DifferencePoset => difference_poset(s)?,
        AxiomGroup::EffectAlgebra => sum_group(s, AxiomGroup::EffectAlgebra)?,
        AxiomGroup::Orthoalgebra => sum_group(s, AxiomGroup::Orthoalgebra)?,
        AxiomGroup::Graded => (vec![PlanEntry::Graded], Vec::new()),
    })
}

fn ax(
    s: &Arc<FiniteStructure>,
    id: impl Into<String>,
    vars: &[&'static str],
    f: impl Fn(&Ctx<'_>, &[usize]) -> Eval + Send + Sync + 'static,
) -> PlanEntry {
    PlanEntry::Axiom(Axiom::new(s, id, vars, f))
}

fn ax_note(
    s: &Arc<FiniteStructure>,
    id: impl Into<String>,
    vars: &[&'static str],
    note: &str,
    f: impl Fn(&Ctx<'_>, &[usize]) -> Eval + Send + Sync + 'static,
) -> PlanEntry {
    PlanEntry::Axiom(Axiom::new(s, id, vars, f).with_note(note))
}

fn quasiorder(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    vec![
        ax(s, "reflexive", &["a"], |c, v| conclude([c.fact(c.le_b(v[0], v[0]), || "a ≰ a".into())])),
        ax(s, "transitive", &["a", "b", "c"], |c, v| {
            if !(c.le_b(v[0], v[1]) && c.le_b(v[1], v[2])) {
                return Eval::Vacuous;
            }
            conclude([c.fact(c.le_b(v[0], v[2]), || "a ≤ b ≤ c but a ≰ c".into())])
        }),
        ax(s, "bounds", &["a"], |c, v| {
            let (b, t) = (c.s.bot(), c.s.top());
            conclude([
                c.fact(c.le_b(b, v[0]), || "bot ≰ a".into()),
                c.fact(c.le_b(v[0], t), || "a ≰ top".into()),
            ])
        }),
    ]
}

fn weak_partial_lattice(s: &Arc<FiniteStructure>) -> Plan {
    use BinaryOp::{Vee, Wedge};
    let ids = [
        "wpl1-idempotent",
        "wpl1-associative",
        "wpl2",
        "wpl3-absorption",
        "wpl3-meet-commutative",
        "wpl3-join-commutative",
        "wl12",
        "wl34",
    ];
    if !(s.has_binary(Vee) && s.has_binary(Wedge)) {
        let e = ids
            .iter()
            .map(|id| PlanEntry::inapplicable(*id, "needs `vee` and `wedge` tables"))
            .collect();
        return (e, Vec::new());
    }
    let mut notes = Vec::new();
    for op in [Vee, Wedge] {
        notes.push(format!("`{op}` is {}", if s.is_total(op) { "total" } else { "partial" }));
    }
    let entries = vec![
        ax(s, "wpl1-idempotent", &["a"], |c, v| {
            let a = Some(v[0]);
            conclude([
                c.eq(ST, "a∧a = a", c.bin(Wedge, a, a), a),
                c.eq(ST, "a∨a = a", c.bin(Vee, a, a), a),
            ])
        }),
        ax(s, "wpl1-associative", &["a", "b", "c"], |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            let l = c.bin(Wedge, c.bin(Wedge, a, b), d);
            let r = c.bin(Wedge, a, c.bin(Wedge, b, d));
            conclude([c.eq(OM, "(a∧b)∧c =ω a∧(b∧c)", l, r)])
        }),
        ax(s, "wpl2", &["a", "b", "c"], |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            let l = c.bin(Vee, c.bin(Vee, a, b), d);
            let r = c.bin(Vee, a, c.bin(Vee, b, d));
            conclude([c.eq(OM, "(a∨b)∨c =ω a∨(b∨c)", l, r)])
        }),
        ax(s, "wpl3-absorption", &["a", "b"], |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            conclude([c.eq(OM, "(a∧b)∨a =ω a", c.bin(Vee, c.bin(Wedge, a, b), a), a)])
        }),
        ax(s, "wpl3-meet-commutative", &["a", "b"], |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            conclude([c.eq(OM, "a∧b =ω b∧a", c.bin(Wedge, a, b), c.bin(Wedge, b, a))])
        }),
        ax(s, "wpl3-join-commutative", &["a", "b"], |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            conclude([c.eq(OM, "a∨b =ω b∨a", c.bin(Vee, a, b), c.bin(Vee, b, a))])
        }),
        ax(s, "wl12", &["a", "b"], |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            if !(c.is(c.bin(Vee, a, b), b) || c.is(c.bin(Wedge, a, b), a)) {
                return Eval::Vacuous;
            }
            conclude([c.fact(c.le_b(v[0], v[1]), || "a∨b = b or a∧b = a, but a ≰ b".into())])
        }),
        ax(s, "wl34", &["a", "b", "c"], |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            if !(c.is(c.bin(Vee, a, b), d) || c.is(c.bin(Wedge, d, b), a)) {
                return Eval::Vacuous;
            }
            conclude([c.fact(c.le_b(v[0], v[2]), || "a∨b = c or c∧b = a, but a ≰ c".into())])
        }),
    ];
    (entries, notes)
}

const LOWERS: [UnaryOp; 3] = [UnaryOp::L1, UnaryOp::L2, UnaryOp::Ls];
const UPPERS: [UnaryOp; 3] = [UnaryOp::U1, UnaryOp::U2, UnaryOp::Us];

fn prcqo(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    let lowers: Vec<UnaryOp> = LOWERS.into_iter().filter(|&op| s.has_unary(op)).collect();
    let uppers: Vec<UnaryOp> = UPPERS.into_iter().filter(|&op| s.has_unary(op)).collect();
    if lowers.is_empty() && uppers.is_empty() {
        return ["qlu1", "qlu-mo", "qlu23", "topbot"]
            .into_iter()
            .map(|id| PlanEntry::inapplicable(id, "no approximation tables"))
            .collect();
    }
    let mut out = Vec::new();
    for l in lowers {
        out.push(ax(s, format!("qlu1[{l}]"), &["x"], move |c, v| {
            let x = Some(v[0]);
            let xl = c.un(l, x);
            conclude([c.eq(ST, "x^ll = x^l", c.un(l, xl), xl), c.le(ST, "x^l ≤ x", xl, x)])
        }));
        out.push(ax(s, format!("qlu-mo[{l}]"), &["a", "b"], move |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            conclude([c.le(ST, "a ≤ b → a^l ≤ b^l", c.un(l, Some(v[0])), c.un(l, Some(v[1])))])
        }));
        if s.has_binary(BinaryOp::Wedge) {
            out.push(ax(s, format!("qlu23[{l}]"), &["a", "b"], move |c, v| {
                let (a, b) = (Some(v[0]), Some(v[1]));
                let lhs = c.un(l, c.bin(BinaryOp::Wedge, a, b));
                let rhs = c.bin(BinaryOp::Wedge, c.un(l, a), c.un(l, b));
                conclude([c.eq(OM, "(a∧b)^l =ω a^l ∧ b^l", lhs, rhs)])
            }));
        } else {
            out.push(PlanEntry::inapplicable(format!("qlu23[{l}]"), "needs a `wedge` table"));
        }
        out.push(ax(s, format!("topbot[{l}]"), &[], move |c, _| {
            let b = Some(c.s.bot());
            conclude([c.eq(ST, "bot^l = bot", c.un(l, b), b)])
        }));
    }
    for u in uppers {
        out.push(ax(s, format!("qlu1[{u}]"), &["x"], move |c, v| {
            let x = Some(v[0]);
            let xu = c.un(u, x);
            conclude([c.le(ST, "x ≤ x^u", x, xu), c.le(ST, "x^u ≤ x^uu", xu, c.un(u, xu))])
        }));
        out.push(ax(s, format!("qlu-mo[{u}]"), &["a", "b"], move |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            conclude([c.le(ST, "a ≤ b → a^u ≤ b^u", c.un(u, Some(v[0])), c.un(u, Some(v[1])))])
        }));
        if s.has_binary(BinaryOp::Vee) {
            out.push(ax(s, format!("qlu23[{u}]"), &["a", "b"], move |c, v| {
                let (a, b) = (Some(v[0]), Some(v[1]));
                let lhs = c.bin(BinaryOp::Vee, c.un(u, a), c.un(u, b));
                let rhs = c.un(u, c.bin(BinaryOp::Vee, a, b));
                conclude([c.eq(OM, "a^u ∨ b^u =ω (a∨b)^u", lhs, rhs)])
            }));
        } else {
            out.push(PlanEntry::inapplicable(format!("qlu23[{u}]"), "needs a `vee` table"));
        }
        out.push(ax(s, format!("topbot[{u}]"), &[], move |c, _| {
            let (b, t) = (Some(c.s.bot()), Some(c.s.top()));
            conclude([c.eq(ST, "top^u = top", c.un(u, t), t), c.eq(ST, "bot^u = bot", c.un(u, b), b)])
        }));
    }
    out
}

fn classification(s: &Arc<FiniteStructure>) -> Plan {
    let entries = vec![
        PlanEntry::Composite { id: "prcqo".into(), group: AxiomGroup::Prcqo },
        ax(s, "antisymmetry", &["a", "b"], |c, v| {
            if !(c.le_b(v[0], v[1]) && c.le_b(v[1], v[0])) {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[0] == v[1], || "a ≤ b ≤ a with a ≠ b".into())])
        }),
        ax(s, "lattice-order", &["a", "b"], |c, v| {
            let join = c.s.order_join(v[0], v[1]);
            let meet = c.s.order_meet(v[0], v[1]);
            conclude([
                c.fact(join.is_some(), || "no least upper bound".into()),
                c.fact(meet.is_some(), || "no greatest lower bound".into()),
            ])
        }),
    ];
    let mut notes = Vec::new();
    for op in [BinaryOp::Vee, BinaryOp::Wedge] {
        if s.has_binary(op) {
            notes.push(format!("`{op}` is {}", if s.is_total(op) { "total" } else { "partial" }));
        }
    }
    (entries, notes)
}

fn negation(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    let mut out = Vec::new();
    for n in [UnaryOp::Neg, UnaryOp::Sim] {
        if !s.has_unary(n) {
            for k in 1..=4 {
                out.push(PlanEntry::inapplicable(format!("N{k}[{n}]"), format!("needs a `{n}` table")));
            }
            continue;
        }
        out.push(ax(s, format!("N1[{n}]"), &[], move |c, _| {
            let (b, t) = (Some(c.s.bot()), Some(c.s.top()));
            conclude([c.eq(ST, "n(bot) = top", c.un(n, b), t), c.eq(ST, "n(top) = bot", c.un(n, t), b)])
        }));
        out.push(ax(s, format!("N2[{n}]"), &["a", "b"], move |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            conclude([c.le(ST, "a ≤ b → n(b) ≤ n(a)", c.un(n, Some(v[1])), c.un(n, Some(v[0])))])
        }));
        out.push(ax(s, format!("N3[{n}]"), &["a"], move |c, v| {
            let a = Some(v[0]);
            conclude([c.eq(ST, "n(n(a)) = a", c.un(n, c.un(n, a)), a)])
        }));
        out.push(ax(s, format!("N4[{n}]"), &["a"], move |c, v| {
            let na = c.un(n, Some(v[0]));
            let Some(x) = na else {
                return conclude([c.defined(ST, "n(a)", na)]);
            };
            let extreme = |i: usize| i == c.s.bot() || i == c.s.top();
            conclude([c.fact(extreme(x) == extreme(v[0]), || {
                format!("n(a) = {} while a is{} a bound", c.show(na), if extreme(v[0]) { "" } else { " not" })
            })])
        }));
    }
    out
}

fn weak_negation(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    use UnaryOp::{Ls, Neg, Sim, Us};
    let mut out = Vec::new();
    if s.has_unary(Neg) && s.has_unary(Us) {
        out.push(ax(s, "WN1-N", &[], |c, _| {
            let (b, t) = (Some(c.s.bot()), Some(c.s.top()));
            conclude([c.le(ST, "¬bot ≤ top", c.un(Neg, b), t), c.eq(ST, "¬top = bot", c.un(Neg, t), b)])
        }));
        out.push(ax(s, "WN2-N", &["a", "b"], |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            let nb = c.un(Neg, Some(v[1]));
            let nbu = c.un(Us, nb);
            let nau = c.un(Us, c.un(Neg, Some(v[0])));
            conclude([c.le(ST, "¬b ≤ (¬b)^us", nb, nbu), c.le(ST, "(¬b)^us ≤ (¬a)^us", nbu, nau)])
        }));
        out.push(ax(s, "WN3-N", &["a"], |c, v| {
            let a = Some(v[0]);
            conclude([c.le(ST, "¬¬a ≤ a^us", c.un(Neg, c.un(Neg, a)), c.un(Us, a))])
        }));
    } else {
        for id in ["WN1-N", "WN2-N", "WN3-N"] {
            out.push(PlanEntry::inapplicable(id, "needs `neg` and `us` tables"));
        }
    }
    if s.has_unary(Sim) && s.has_unary(Ls) {
        out.push(ax(s, "WN2-S", &["a", "b"], |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            let sa = c.un(Sim, Some(v[0]));
            let sbl = c.un(Ls, c.un(Sim, Some(v[1])));
            let sal = c.un(Ls, sa);
            conclude([c.le(ST, "(∼b)^ls ≤ (∼a)^ls", sbl, sal), c.le(ST, "(∼a)^ls ≤ ∼a", sal, sa)])
        }));
        out.push(ax(s, "WN3-S", &[], |c, _| {
            let (b, t) = (Some(c.s.bot()), Some(c.s.top()));
            conclude([c.le(ST, "bot ≤ ∼top", b, c.un(Sim, t)), c.eq(ST, "top = ∼bot", t, c.un(Sim, b))])
        }));
    } else {
        for id in ["WN2-S", "WN3-S"] {
            out.push(PlanEntry::inapplicable(id, "needs `sim` and `ls` tables"));
        }
    }
    out
}

fn omm(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    use BinaryOp::Ominus;
    if !s.has_binary(Ominus) {
        return ["omi1", "omi2", "omi3"]
            .into_iter()
            .map(|id| PlanEntry::inapplicable(id, "needs an `ominus` table"))
            .collect();
    }
    vec![
        ax(s, "omi1", &["a"], |c, v| {
            let a = Some(v[0]);
            conclude([c.eq(ST, "a⊖a = bot", c.bin(Ominus, a, a), Some(c.s.bot()))])
        }),
        ax(s, "omi2", &["a", "b"], |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            conclude([c.eq(ST, "a ≤ b → a⊖b = bot", c.bin(Ominus, Some(v[0]), Some(v[1])), Some(c.s.bot()))])
        }),
        ax(s, "omi3", &["a", "b", "c"], |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            let l = c.bin(Ominus, Some(v[0]), Some(v[2]));
            let r = c.bin(Ominus, Some(v[1]), Some(v[2]));
            conclude([c.le(ST, "a ≤ b → a⊖c ≤ b⊖c", l, r)])
        }),
    ]
}

/// Names of the implication properties in checking order.
pub const IMPLICATION_PROPERTIES: [&str; 8] = ["FPA", "SPM", "BC1", "BC2", "BC3", "OP", "IBL", "IP"];

fn implication_axiom(s: &Arc<FiniteStructure>, prop: &str, id: String, i: BinaryOp) -> PlanEntry {
    match prop {
        "FPA" => ax(s, id, &["a", "b", "c"], move |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            let l = c.bin(i, Some(v[1]), Some(v[2]));
            let r = c.bin(i, Some(v[0]), Some(v[2]));
            conclude([c.le(ST, "a ≤ b → I(b,c) ≤ I(a,c)", l, r)])
        }),
        "SPM" => ax(s, id, &["a", "b", "c"], move |c, v| {
            if !c.le_b(v[1], v[2]) {
                return Eval::Vacuous;
            }
            let l = c.bin(i, Some(v[0]), Some(v[1]));
            let r = c.bin(i, Some(v[0]), Some(v[2]));
            conclude([c.le(ST, "b ≤ c → I(a,b) ≤ I(a,c)", l, r)])
        }),
        "BC1" => ax(s, id, &[], move |c, _| {
            let (b, t) = (Some(c.s.bot()), Some(c.s.top()));
            conclude([c.eq(ST, "I(bot,bot) = top", c.bin(i, b, b), t)])
        }),
        "BC2" => ax(s, id, &[], move |c, _| {
            let t = Some(c.s.top());
            conclude([c.eq(ST, "I(top,top) = top", c.bin(i, t, t), t)])
        }),
        "BC3" => ax(s, id, &[], move |c, _| {
            let (b, t) = (Some(c.s.bot()), Some(c.s.top()));
            conclude([c.eq(ST, "I(top,bot) = bot", c.bin(i, t, b), b)])
        }),
        "OP" => ax(s, id, &["a", "b"], move |c, v| {
            let r = c.bin(i, Some(v[0]), Some(v[1]));
            let Some(x) = r else {
                return conclude([c.defined(ST, "I(a,b)", r)]);
            };
            let is_top = x == c.s.top();
            conclude([c.fact(is_top == c.le_b(v[0], v[1]), || {
                format!("I(a,b) = {} but a {} b", c.show(r), if c.le_b(v[0], v[1]) { "≤" } else { "≰" })
            })])
        }),
        "IBL" => ax(s, id, &["a", "b"], move |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            let ab = c.bin(i, a, b);
            conclude([c.eq(ST, "I(a,I(a,b)) = I(a,b)", c.bin(i, a, ab), ab)])
        }),
        "IP" => ax(s, id, &["a"], move |c, v| {
            let a = Some(v[0]);
            conclude([c.eq(ST, "I(a,a) = top", c.bin(i, a, a), Some(c.s.top()))])
        }),
        _ => unreachable!("validated property name"),
    }
}

fn implication(s: &Arc<FiniteStructure>, options: &CheckOptions) -> Plan {
    let selected: Vec<&str> = match &options.implication_properties {
        None => IMPLICATION_PROPERTIES.to_vec(),
        Some(list) => IMPLICATION_PROPERTIES
            .into_iter()
            .filter(|p| list.iter().any(|q| q.eq_ignore_ascii_case(p)))
            .collect(),
    };
    let table = options.implication.or_else(|| {
        [BinaryOp::ImpNeg, BinaryOp::ImpSim].into_iter().find(|&op| s.has_binary(op))
    });
    let mut notes = Vec::new();
    if let Some(list) = &options.implication_properties {
        for q in list {
            if !IMPLICATION_PROPERTIES.iter().any(|p| p.eq_ignore_ascii_case(q)) {
                notes.push(format!("ignored unknown implication property `{q}`"));
            }
        }
    }
    let entries = match table {
        Some(i) if s.has_binary(i) => {
            selected.iter().map(|p| implication_axiom(s, p, format!("{p}[{i}]"), i)).collect()
        }
        _ => {
            let reason = match table {
                Some(i) => format!("needs an `{i}` table"),
                None => "needs an `imp_neg` or `imp_sim` table".to_string(),
            };
            selected.iter().map(|p| PlanEntry::inapplicable(*p, reason.clone())).collect()
        }
    };
    (entries, notes)
}

fn prclai(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    use BinaryOp::{Dot, ImpNeg, ImpSim, Otimes, Vee};
    let mut out = vec![PlanEntry::Composite { id: "rcl".into(), group: AxiomGroup::Prcqo }];

    if s.has_binary(Otimes) {
        for u in UPPERS.into_iter().filter(|&u| s.has_unary(u)) {
            out.push(ax(s, format!("wAasso1[{u}]"), &["a", "b", "e"], move |c, v| {
                let fixed = |x: usize| c.is(c.un(u, c.un(u, Some(x))), c.un(u, Some(x)));
                if !(fixed(v[0]) && fixed(v[1]) && fixed(v[2])) {
                    return Eval::Vacuous;
                }
                let (a, b, e) = (Some(v[0]), Some(v[1]), Some(v[2]));
                let l = c.bin(Otimes, a, c.bin(Otimes, b, e));
                let r = c.bin(Otimes, c.bin(Otimes, a, b), e);
                conclude([c.eq(ST, "a⊗(b⊗e) = (a⊗b)⊗e", l, r)])
            }));
        }
    } else {
        out.push(PlanEntry::inapplicable("wAasso1", "needs an `otimes` table"));
    }

    if s.has_binary(Otimes) && s.has_binary(Vee) {
        out.push(ax_note(s, "wAsso2", &["a", "b", "e", "c"], "as printed: a, b, e, c independent", |c, v| {
            let (a, b, e, d) = (Some(v[0]), Some(v[1]), Some(v[2]), Some(v[3]));
            let l = c.bin(Otimes, a, c.bin(Otimes, c.bin(Vee, b, e), a));
            let r = c.bin(Otimes, c.bin(Otimes, c.bin(Vee, a, b), d), d);
            conclude([c.eq(OM, "a⊗((b∨e)⊗a) =ω ((a∨b)⊗c)⊗c", l, r)])
        }));
        out.push(ax_note(s, "wAsso2[e=c]", &["a", "b", "c"], "variant with e = c", |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            let l = c.bin(Otimes, a, c.bin(Otimes, c.bin(Vee, b, d), a));
            let r = c.bin(Otimes, c.bin(Otimes, c.bin(Vee, a, b), d), d);
            conclude([c.eq(OM, "a⊗((b∨c)⊗a) =ω ((a∨b)⊗c)⊗c", l, r)])
        }));
    } else {
        out.push(PlanEntry::inapplicable("wAsso2", "needs `otimes` and `vee` tables"));
        out.push(PlanEntry::inapplicable("wAsso2[e=c]", "needs `otimes` and `vee` tables"));
    }

    for (bundle, table, props) in [
        ("imsc", ImpSim, &["FPA", "SPM", "BC3", "IBL"][..]),
        ("inegc", ImpNeg, &["FPA", "IP", "SPM", "BC1", "BC2", "BC3"][..]),
    ] {
        for p in props {
            let id = format!("{bundle}:{p}");
            if s.has_binary(table) {
                out.push(implication_axiom(s, p, id, table));
            } else {
                out.push(PlanEntry::inapplicable(id, format!("needs an `{table}` table")));
            }
        }
    }

    let isotone_note = "order-compatible read as isotone in each argument, where defined";
    for (op, unit, unit_name) in [(Dot, false, "bot"), (Otimes, true, "top")] {
        let name = op.name();
        if !s.has_binary(op) {
            for law in ["commutative", "identity", "isotone"] {
                out.push(PlanEntry::inapplicable(format!("{name}-{law}"), format!("needs a `{name}` table")));
            }
            if op == Dot {
                out.push(PlanEntry::inapplicable("dot-associative", "needs a `dot` table"));
            }
            continue;
        }
        out.push(ax(s, format!("{name}-commutative"), &["a", "b"], move |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            conclude([c.eq(OM, "a∘b =ω b∘a", c.bin(op, a, b), c.bin(op, b, a))])
        }));
        if op == Dot {
            out.push(ax(s, "dot-associative", &["a", "b", "c"], |c, v| {
                let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
                let l = c.bin(Dot, c.bin(Dot, a, b), d);
                let r = c.bin(Dot, a, c.bin(Dot, b, d));
                conclude([c.eq(OM, "(a·b)·c =ω a·(b·c)", l, r)])
            }));
        }
        out.push(ax_note(s, format!("{name}-identity"), &["a"], &format!("identity {unit_name}"), move |c, v| {
            let a = Some(v[0]);
            let e = Some(if unit { c.s.top() } else { c.s.bot() });
            conclude([c.eq(ST, "a∘e = a", c.bin(op, a, e), a), c.eq(ST, "e∘a = a", c.bin(op, e, a), a)])
        }));
        out.push(ax_note(s, format!("{name}-isotone"), &["a", "b", "c"], isotone_note, move |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            conclude([
                c.le(OM, "a ≤ b → a∘c ≤ b∘c", c.bin(op, a, d), c.bin(op, b, d)),
                c.le(OM, "a ≤ b → c∘a ≤ c∘b", c.bin(op, d, a), c.bin(op, d, b)),
            ])
        }));
    }
    out
}

const DP_CLAUSES: [&str; 5] = ["poset", "dp1", "dp2", "dp3", "cancellative"];
const SUM_LAWS: [&str; 5] = ["sum-commutative", "sum-associative", "sum-cancellative", "sum-neutral", "sum-idempotent"];

fn difference_clauses(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    use BinaryOp::Ominus;
    let clause_note = "definedness is governed by dp1; equalities read where defined";
    vec![
        ax(s, "poset", &["a", "b"], |c, v| {
            if !(c.le_b(v[0], v[1]) && c.le_b(v[1], v[0])) {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[0] == v[1], || "a ≤ b ≤ a with a ≠ b".into())])
        }),
        ax(s, "dp1", &["a", "b"], |c, v| {
            let d = c.bin(Ominus, Some(v[1]), Some(v[0]));
            let le = c.le_b(v[0], v[1]);
            conclude([c.fact(le == d.is_some(), || {
                if le {
                    "a ≤ b but b⊖a is undefined".into()
                } else {
                    format!("a ≰ b but b⊖a = {}", c.show(d))
                }
            })])
        }),
        ax_note(s, "dp2", &["a", "b"], clause_note, |c, v| {
            if !c.le_b(v[0], v[1]) {
                return Eval::Vacuous;
            }
            let (a, b) = (Some(v[0]), Some(v[1]));
            let ba = c.bin(Ominus, b, a);
            conclude([c.eq(OM, "b⊖(b⊖a) = a", c.bin(Ominus, b, ba), a), c.le(OM, "b⊖a ≤ b", ba, b)])
        }),
        ax_note(s, "dp3", &["a", "b", "c"], clause_note, |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            let cb = c.bin(Ominus, d, b);
            let ca = c.bin(Ominus, d, a);
            let lhs = c.bin(Ominus, ca, cb);
            let ba = c.bin(Ominus, b, a);
            let chain = c.le_b(v[0], v[1]) && c.le_b(v[1], v[2]);
            if chain {
                return conclude([
                    c.le(OM, "c⊖b ≤ c⊖a", cb, ca),
                    c.eq(OM, "(c⊖a)⊖(c⊖b) = b⊖a", lhs, ba),
                ]);
            }
            // converse: the right side holding (all terms defined) forces the chain
            let rhs = matches!((cb, ca), (Some(x), Some(y)) if c.le_b(x, y)) && c.is(lhs, ba);
            if rhs {
                Eval::Violated("c⊖b ≤ c⊖a and (c⊖a)⊖(c⊖b) = b⊖a, but not a ≤ b ≤ c".into())
            } else {
                Eval::Vacuous
            }
        }),
        ax(s, "cancellative", &["a", "b", "c"], |c, v| {
            if !(c.le_b(v[2], v[0]) && c.le_b(v[2], v[1])) {
                return Eval::Vacuous;
            }
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            if !c.is(c.bin(Ominus, a, d), c.bin(Ominus, b, d)) {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[0] == v[1], || "a⊖c = b⊖c with a ≠ b".into())])
        }),
    ]
}

/// The structure with an `oplus` table: the given one, or derived from a
/// cancellative `ominus` via `b⊖a = c ⟺ a⊕c = b`.
fn with_sum(s: &Arc<FiniteStructure>, notes: &mut Vec<String>) -> std::result::Result<Arc<FiniteStructure>, String> {
    if s.has_binary(BinaryOp::Oplus) {
        return Ok(Arc::clone(s));
    }
    let Some(om) = s.binary_table(BinaryOp::Ominus) else {
        return Err("needs an `oplus` or `ominus` table".into());
    };
    if let Some((a, b, c)) = cancellation_failure(s, om) {
        return Err(format!(
            "⊕ needs a cancellative difference: {}⊖{} = {}⊖{}",
            s.name(a),
            s.name(c),
            s.name(b),
            s.name(c)
        ));
    }
    let n = s.len();
    let mut t = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = om[b * n + a] {
                t[a * n + c] = Some(b);
            }
        }
    }
    let mut derived = (**s).clone();
    derived.set_binary(BinaryOp::Oplus, t).map_err(|e| e.to_string())?;
    notes.push("`oplus` derived from `ominus` via b⊖a = c ⟺ a⊕c = b".into());
    Ok(Arc::new(derived))
}

fn sum_laws(s: &Arc<FiniteStructure>) -> Vec<PlanEntry> {
    use BinaryOp::Oplus;
    vec![
        ax(s, "sum-commutative", &["a", "b"], |c, v| {
            let (a, b) = (Some(v[0]), Some(v[1]));
            conclude([c.eq(OS, "a⊕b =ω* b⊕a", c.bin(Oplus, a, b), c.bin(Oplus, b, a))])
        }),
        ax(s, "sum-associative", &["a", "b", "c"], |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            let l = c.bin(Oplus, c.bin(Oplus, a, b), d);
            let r = c.bin(Oplus, a, c.bin(Oplus, b, d));
            conclude([c.eq(OS, "(a⊕b)⊕c =ω* a⊕(b⊕c)", l, r)])
        }),
        ax_note(s, "sum-cancellative", &["a", "b", "c"], "a⊕b = a⊕c → b = c", |c, v| {
            let (a, b, d) = (Some(v[0]), Some(v[1]), Some(v[2]));
            if !c.is(c.bin(Oplus, a, b), c.bin(Oplus, a, d)) {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[1] == v[2], || "a⊕b = a⊕c with b ≠ c".into())])
        }),
        ax(s, "sum-neutral", &["a"], |c, v| {
            let n = c.s.len();
            let a = Some(v[0]);
            conclude([c.fact((0..n).any(|b| c.is(c.bin(Oplus, a, Some(b)), a)), || "no b with a⊕b = a".into())])
        }),
        ax_note(s, "sum-idempotent", &["a"], "a⊕a = a → ∃b (a⊕a)⊕b = a", |c, v| {
            let a = Some(v[0]);
            let aa = c.bin(Oplus, a, a);
            if !c.is(aa, a) {
                return Eval::Vacuous;
            }
            let n = c.s.len();
            conclude([c.fact((0..n).any(|b| c.is(c.bin(Oplus, aa, Some(b)), a)), || {
                "a⊕a = a but no b with (a⊕a)⊕b = a".into()
            })])
        }),
    ]
}

fn difference_poset(s: &Arc<FiniteStructure>) -> Result<Plan> {
    let mut notes = Vec::new();
    if !s.has_binary(BinaryOp::Ominus) {
        let e = DP_CLAUSES
            .iter()
            .chain(SUM_LAWS.iter())
            .map(|id| PlanEntry::inapplicable(*id, "needs an `ominus` table"))
            .collect();
        return Ok((e, notes));
    }
    let mut entries = difference_clauses(s);
    // the sum is only meaningful on a poset with cancellative difference
    let options = CheckOptions { max_counterexamples: 0, ..CheckOptions::default() };
    let clauses_pass = entries.iter().all(|e| match e {
        PlanEntry::Axiom(ax) => quick_pass(ax, &options),
        _ => true,
    });
    if !clauses_pass {
        entries.extend(
            SUM_LAWS
                .iter()
                .map(|id| PlanEntry::inapplicable(*id, "⊕ is defined only on a poset with cancellative difference")),
        );
        return Ok((entries, notes));
    }
    match with_sum(s, &mut notes) {
        Ok(summed) => entries.extend(sum_laws(&summed)),
        Err(reason) => entries.extend(SUM_LAWS.iter().map(|id| PlanEntry::inapplicable(*id, reason.clone()))),
    }
    Ok((entries, notes))
}

fn quick_pass(ax: &Axiom, options: &CheckOptions) -> bool {
    let n = ax.structure().len();
    let k = ax.vars.len();
    let mut idx = vec![0usize; k];
    loop {
        if matches!(ax.evaluate(&idx, options.equality), Ok(Eval::Violated(_)) | Err(_)) {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
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

fn sum_group(s: &Arc<FiniteStructure>, group: AxiomGroup) -> Result<Plan> {
    use BinaryOp::Oplus;
    let ids: &[&str] = if group == AxiomGroup::EffectAlgebra {
        &["sum-commutative", "sum-associative", "orthocomplement", "unity", "zero-sum"]
    } else {
        &["orthocomplement", "self-sum"]
    };
    let mut notes = Vec::new();
    let summed = match with_sum(s, &mut notes) {
        Ok(x) => x,
        Err(reason) => {
            let e = ids.iter().map(|id| PlanEntry::inapplicable(*id, reason.clone())).collect();
            return Ok((e, notes));
        }
    };
    let s = &summed;
    let mut entries = Vec::new();
    if group == AxiomGroup::EffectAlgebra {
        entries.extend(sum_laws(s).into_iter().take(2));
    }
    entries.push(ax_note(s, "orthocomplement", &["a"], "∀a ∃! a′, a⊕a′ = top", |c, v| {
        let n = c.s.len();
        let t = Some(c.s.top());
        let comps: Vec<usize> = (0..n).filter(|&b| c.is(c.bin(Oplus, Some(v[0]), Some(b)), t)).collect();
        conclude([c.fact(comps.len() == 1, || {
            format!("{} elements a′ with a⊕a′ = top", comps.len())
        })])
    }));
    if group == AxiomGroup::EffectAlgebra {
        entries.push(ax_note(s, "unity", &["a"], "a⊕top defined → a = bot", |c, v| {
            if c.bin(Oplus, Some(v[0]), Some(c.s.top())).is_none() {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[0] == c.s.bot(), || "a⊕top is defined with a ≠ bot".into())])
        }));
        entries.push(ax_note(s, "zero-sum", &["a", "b"], "a⊕b = bot → a = b = bot", |c, v| {
            let bot = c.s.bot();
            if !c.is(c.bin(Oplus, Some(v[0]), Some(v[1])), Some(bot)) {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[0] == bot && v[1] == bot, || "a⊕b = bot with a or b ≠ bot".into())])
        }));
    } else {
        entries.push(ax_note(s, "self-sum", &["a"], "a⊕a defined → a = bot", |c, v| {
            if c.bin(Oplus, Some(v[0]), Some(v[0])).is_none() {
                return Eval::Vacuous;
            }
            conclude([c.fact(v[0] == c.s.bot(), || "a⊕a is defined with a ≠ bot".into())])
        }));
    }
    Ok((entries, notes))
}
