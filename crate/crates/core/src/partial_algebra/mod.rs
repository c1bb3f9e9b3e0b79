//! Finite bounded quasi-ordered structures with partial operation tables,
//! derivation of the defined operations, and exhaustive axiom checking.

mod check;
mod derive;
mod graded;
mod groups;
mod structure;
mod term;

use std::sync::Arc;

pub use check::{
    check_axioms, check_groups, recheck, Axiom, AxiomEntry, AxiomGroup, AxiomReport, CheckOptions,
    Counterexample, EqualityMode, EqualityOverride, Eval, Status,
};
pub use derive::{derive_operation, BoundMode, DerivableOp, Derivation, DerivedTable};
pub use graded::{is_cover, rank_function};
pub use groups::IMPLICATION_PROPERTIES;
pub use structure::{BinaryOp, FiniteStructure, UnaryOp};
pub use term::{evaluate_term, Term};

use crate::approximations::ApproximationOperator;
use crate::error::{Error, Result};
use crate::limits::CARRIER_CAP_3;
use crate::rough_core::{ensure_same, Universe};

/// The powerset of `universe` ordered by inclusion, with total union and
/// intersection and the given operators in their unary slots. Elements are
/// named by their rendered subsets, in ascending mask order.
pub fn rough_powerset_structure(
    universe: &Arc<Universe>,
    slots: &[(UnaryOp, &ApproximationOperator)],
) -> Result<FiniteStructure> {
    let size = 1usize.checked_shl(universe.len() as u32).unwrap_or(usize::MAX);
    if size > CARRIER_CAP_3 {
        return Err(Error::CapExceeded {
            what: "powerset carrier".into(),
            size,
            cap: CARRIER_CAP_3,
        });
    }
    let carrier: Vec<String> = (0..size as u64).map(|m| universe.render(m)).collect();
    let mut pairs = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a != b && a & !b == 0 {
                pairs.push((a, b));
            }
        }
    }
    let mut s = FiniteStructure::new(carrier, &pairs, 0, size - 1)?;
    let mut vee = Vec::with_capacity(size * size);
    let mut wedge = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            vee.push(Some(a | b));
            wedge.push(Some(a & b));
        }
    }
    s.set_binary(BinaryOp::Vee, vee)?;
    s.set_binary(BinaryOp::Wedge, wedge)?;
    for (slot, op) in slots {
        ensure_same(universe, op.universe(), &format!("operator `{}` in slot `{slot}`", op.name()))?;
        let table = (0..size as u64)
            .map(|m| op.apply_bits(m).map(|r| Some(r as usize)))
            .collect::<Result<Vec<_>>>()?;
        s.set_unary(*slot, table)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rough_core::{tolerance_blocks, Closure, Granulation, Relation};

    fn pawlak() -> (Arc<Universe>, ApproximationOperator, ApproximationOperator) {
        let u = Universe::new(["1", "2", "3", "4"]).unwrap();
        let g = Granulation::partition(&u, vec![0b0011, 0b1100]).unwrap();
        (u, ApproximationOperator::lower(&g), ApproximationOperator::upper(&g))
    }

    fn all_slots<'a>(l: &'a ApproximationOperator, u: &'a ApproximationOperator) -> Vec<(UnaryOp, &'a ApproximationOperator)> {
        vec![
            (UnaryOp::L1, l),
            (UnaryOp::L2, l),
            (UnaryOp::Ls, l),
            (UnaryOp::U1, u),
            (UnaryOp::U2, u),
            (UnaryOp::Us, u),
        ]
    }

    #[test]
    fn pawlak_powerset_is_a_prcl() {
        let (univ, l, u) = pawlak();
        let s = rough_powerset_structure(&univ, &all_slots(&l, &u)).unwrap();
        let opts = CheckOptions::default();
        for g in [AxiomGroup::Quasiorder, AxiomGroup::WeakPartialLattice, AxiomGroup::Prcqo, AxiomGroup::Graded] {
            let r = check_axioms(&s, g, &opts).unwrap();
            assert!(r.all_pass(), "{g}: {:?}", r.failing().collect::<Vec<_>>());
        }
        let c = check_axioms(&s, AxiomGroup::Classification, &opts).unwrap();
        assert_eq!(c.classification.as_deref(), Some("PRCL"));
    }

    #[test]
    fn tolerance_powerset_fails_qlu23() {
        let univ = Universe::new(["x1", "x2", "x3", "x4"]).unwrap();
        let rel = Relation::from_pairs(&univ, &[("x1", "x2"), ("x2", "x3")], Closure::ReflexiveSymmetric).unwrap();
        let b = tolerance_blocks(&rel).unwrap();
        let (l, u) = (ApproximationOperator::lower(&b), ApproximationOperator::upper(&b));
        let s = rough_powerset_structure(&univ, &all_slots(&l, &u)).unwrap();
        let opts = CheckOptions::default();
        let r = check_axioms(&s, AxiomGroup::Prcqo, &opts).unwrap();
        let e = r.entry("qlu23[ls]").unwrap();
        assert_eq!(e.status, Status::Fail);
        let ce = &e.counterexamples[0];
        assert_eq!(
            ce.assignment,
            vec![("a".to_string(), "{x1,x2}".to_string()), ("b".to_string(), "{x2,x3}".to_string())]
        );
        assert_eq!(ce.detail, "(a∧b)^l =ω a^l ∧ b^l: lhs {}, rhs {x2}");
        assert!(recheck(&s, AxiomGroup::Prcqo, &opts, "qlu23[ls]", ce).unwrap().is_violated());
        assert_eq!(r.entry("qlu23[us]").unwrap().status, Status::Pass);
    }

    #[test]
    fn single_object_universe_is_a_chain() {
        let u = Universe::new(["o"]).unwrap();
        let id = ApproximationOperator::identity(&u);
        let s = rough_powerset_structure(&u, &[(UnaryOp::Ls, &id), (UnaryOp::Us, &id)]).unwrap();
        assert_eq!(s.carrier(), &["{}".to_string(), "{o}".to_string()]);
        assert!(s.le(0, 1) && !s.le(1, 0));
    }

    #[test]
    fn powerset_cap() {
        let u = Universe::new((0..7).map(|i| format!("o{i}"))).unwrap();
        assert!(matches!(rough_powerset_structure(&u, &[]), Err(Error::CapExceeded { .. })));
    }
}
