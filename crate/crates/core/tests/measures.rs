mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use roughmeasure::measures::{
    amalg_standard_inclusion_failures, measure_range, nabla, verdict, ImportanceClass, MeasureSpec, VerdictKind,
};
use roughmeasure::partial_algebra::rank_function;
use roughmeasure::rough_core::ObjectSet;

use common::*;

#[test]
fn measure_laws_on_appendix_subsets() {
    let a = appendix();
    let (bad, checked) = measure_law_violations(&a.pool(), usize::MAX, &a.rows);
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(checked > 100_000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn measure_laws_on_random_tolerance_spaces(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let space = random_tolerance_space(&mut rng, n);
        let (bad, _) = measure_law_violations(&granular_pool(&space), 4, &powerset(space.universe()));
        prop_assert!(bad.is_empty(), "{:#?}", bad);
    }

    #[test]
    fn range_is_ordered_by_inclusion(seed in any::<u64>(), n in 1usize..=5, pick in 0usize..1000) {
        let mut rng = StdRng::seed_from_u64(seed);
        let space = random_tolerance_space(&mut rng, n);
        let pool = granular_pool(&space);
        let k = pool.len();
        let spec = MeasureSpec::nabla(
            pool[pick % k].clone(),
            pool[pick / k % k].clone(),
            pool[pick / (k * k) % k].clone(),
        ).unwrap();
        let h = powerset(space.universe());
        let r = measure_range(&h, &spec, None).unwrap();

        // every value is in the range and every element is attained
        let values: Vec<ObjectSet> = h.iter().map(|x| spec.evaluate(x).unwrap()).collect();
        prop_assert!(values.iter().all(|v| r.index_of(v).is_some()));
        prop_assert!(r.elements.iter().all(|e| values.contains(e)));
        for i in 0..r.len() {
            for j in 0..r.len() {
                let (a, b) = (&r.elements[i], &r.elements[j]);
                prop_assert_eq!(r.le(i, j), a.is_subset(b).unwrap());
                let union = a.union(b).unwrap();
                prop_assert_eq!(r.join(i, j).map(|x| r.elements[x].clone()), r.index_of(&union).map(|_| union));
            }
        }
        // graded iff a rank function exists, checked against the generic search
        prop_assert_eq!(r.is_graded(), rank_function(r.len(), |i, j| r.le(i, j)).is_ok());
    }
}

#[test]
fn acc5_fails_when_the_measure_escapes_the_importance_class() {
    let a = appendix();
    let so = ImportanceClass::explicit(vec![ObjectSet::empty(&a.u)]).unwrap();
    let v = verdict(VerdictKind::Acc5, &a.rows, &[a.l1.clone(), a.l.clone(), a.ub.clone()], &so).unwrap();
    assert!(!v.pass);
    // exactly the subsets containing x4
    assert_eq!(v.witnesses.len(), 8);
    assert!(v.witnesses.iter().all(|w| w.value == "{x4}"));
}

#[test]
fn prec1_needs_both_measures_in_the_class() {
    let a = appendix();
    let so = ImportanceClass::explicit(vec![ObjectSet::empty(&a.u), ObjectSet::parse(&a.u, "x4").unwrap()]).unwrap();
    let ops = [a.l1.clone(), a.l.clone(), a.l.clone(), a.ub.clone()];
    let v = verdict(VerdictKind::Prec1, &a.rows, &ops, &so).unwrap();
    let direct = a.rows.iter().all(|x| {
        let m1 = nabla(x, &a.l1, &a.l, &a.ub).unwrap();
        let m2 = nabla(x, &a.l, &a.l, &a.ub).unwrap();
        so.contains(&m1).unwrap() && so.contains(&m2).unwrap()
    });
    assert_eq!(v.pass, direct);
}

#[test]
fn second_amalg_inequality_is_reported_not_asserted() {
    let a = appendix();
    let failures = amalg_standard_inclusion_failures(&a.rows, &a.l1, &a.l).unwrap();
    for d in &failures {
        let x = ObjectSet::parse(&a.u, &d.subset).unwrap();
        assert!(!a.l.apply(&x).unwrap().is_empty());
    }
    assert!(!failures.is_empty());
}
