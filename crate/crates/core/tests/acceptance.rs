//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so every line is printed. A criterion
//! that is known to be unattainable as stated prints FAIL; the process only
//! exits nonzero when a failure differs from the documented one.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use roughmeasure::approximations::ApproximationOperator;
use roughmeasure::baseline_metrics::{
    curves, divergence_report, imbalance_precision, rank_statistic, ConfusionCounts, Rational,
};
use roughmeasure::measures::{
    finv, measure_range, nabla, verdict, ImportanceClass, MeasureSpec, VerdictKind,
};
use roughmeasure::partial_algebra::{
    check_axioms, derive_operation, recheck, rough_powerset_structure, AxiomGroup, BinaryOp, BoundMode,
    CheckOptions, DerivableOp, EqualityOverride, FiniteStructure, Status, UnaryOp,
};
use roughmeasure::rough_core::{Granulation, ObjectSet};

use common::*;

type Outcome = Result<String, String>;

/// Failures whose exact detail is documented as unattainable.
const DOCUMENTED: &[(u32, &str)] = &[(
    1,
    "45/48 cells match; u differs at A3 ({x3}: computed {x2,x3}, printed {x1,x2,x3}), \
     A7 ({x1,x4}: computed {x1,x2,x4}, printed {x1,x2,x3,x4}), \
     A10 ({x3,x4}: computed {x2,x3,x4}, printed {x1,x2,x3,x4})",
)];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn set(a: &Appendix, s: &str) -> ObjectSet {
    ObjectSet::parse(&a.u, s).unwrap()
}

fn approximation_columns() -> Outcome {
    let start = Instant::now();
    let a = appendix();
    let header = &a.table[0];
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for (i, x) in a.rows.iter().enumerate() {
        let printed = &a.table[i + 1];
        ensure(ObjectSet::parse(&a.u, &printed[1]).unwrap() == *x, || format!("row {} out of order", printed[0]))?;
        for (op, name) in [(&a.l, "l"), (&a.up, "u"), (&a.ub, "ub")] {
            let col = header.iter().position(|h| h == name).unwrap();
            cells += 1;
            let want = ObjectSet::parse(&a.u, &printed[col]).unwrap();
            let got = op.apply(x).unwrap();
            if got != want {
                mismatches.push(format!("{} ({x}: computed {got}, printed {want})", printed[0]));
            }
        }
    }
    within(start, Duration::from_secs(1), "table")?;
    if mismatches.is_empty() {
        Ok(format!("{cells}/{cells} cells match"))
    } else {
        Err(format!(
            "{}/{cells} cells match; u differs at {}",
            cells - mismatches.len(),
            mismatches.join(", ")
        ))
    }
}

fn third_sequence() -> Outcome {
    let a = appendix();
    let a11 = a.rows[10].clone();
    let e = ObjectSet::empty(&a.u);
    let printed = [&a11, &e, &a11, &e, &e, &e, &a11, &e, &e, &a11, &e, &e, &e, &e, &e, &e];
    for (i, x) in a.rows.iter().enumerate() {
        let got = nabla(x, &a.up, &a.ub, &a.ub).unwrap();
        ensure(got == *printed[i], || format!("A{}: computed {got}, printed {}", i + 1, printed[i]))?;
    }
    Ok("16/16 entries match".into())
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_roughmeasure"))
        .args(args)
        .current_dir(data("appendix"))
        .output()
        .expect("binary runs")
}

fn first_sequence_and_acc5() -> Outcome {
    let a = appendix();
    let reference = roughmeasure::approximations::parse_fixture(
        "printed",
        &read("appendix/nabla_l1_l_ub.json"),
        &a.u,
    )
    .unwrap();
    for (i, x) in a.rows.iter().enumerate() {
        let got = nabla(x, &a.l1, &a.l, &a.ub).unwrap();
        let want = match i {
            14 => continue,
            15 => ObjectSet::empty(&a.u),
            _ => reference.apply(x).unwrap(),
        };
        ensure(got == want, || format!("A{}: computed {got}, printed {want}", i + 1))?;
    }
    let spec = MeasureSpec::nabla(a.l1.clone(), a.l.clone(), a.ub.clone()).unwrap();
    let range = measure_range(&a.rows, &spec, None).unwrap();
    let want = vec![ObjectSet::empty(&a.u), set(&a, "x4")];
    ensure(range.elements == want, || format!("range {:?}", range.elements))?;
    let so = ImportanceClass::explicit(want).unwrap();
    let v = verdict(VerdictKind::Acc5, &a.rows, &[a.l1.clone(), a.l.clone(), a.ub.clone()], &so).unwrap();
    ensure(v.pass, || format!("Acc5 failed at {} subsets", v.witnesses.len()))?;

    let out = cli(&[
        "nabla",
        "--space",
        "relation.json",
        "--subsets",
        "subsets.txt",
        "--ops",
        "l1=fix:l1.json,l,ub",
        "--reference",
        "nabla_l1_l_ub.json",
    ]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    let footnote = "discrepancy at {x1,x2,x3,x4}: computed {x4}, reference {}";
    ensure(out.status.code() == Some(0) && stderr.contains(footnote), || format!("footnote missing: {stderr}"))?;
    Ok("15/15 listed entries match; range {}, {x4}; Acc5 PASS; A15 footnote emitted".into())
}

fn second_sequence_and_prec2() -> Outcome {
    let a = appendix();
    for (i, x) in a.rows.iter().enumerate() {
        let got = nabla(x, &a.l1, &a.l, &a.u1).unwrap();
        ensure(got.is_empty(), || format!("A{}: {got}", i + 1))?;
        let f = finv(x, &a.l1, &a.l, &a.u1, &a.ub).unwrap();
        ensure(f == nabla(x, &a.l1, &a.l, &a.ub).unwrap(), || format!("finv differs at A{}", i + 1))?;
    }
    let n = measure_range(&a.rows, &MeasureSpec::nabla(a.l1.clone(), a.l.clone(), a.ub.clone()).unwrap(), None)
        .unwrap();
    let f = measure_range(
        &a.rows,
        &MeasureSpec::finv(a.l1.clone(), a.l.clone(), a.u1.clone(), a.ub.clone()).unwrap(),
        None,
    )
    .unwrap();
    ensure(n.elements == f.elements, || "finv and nabla ranges differ".into())?;
    let so = ImportanceClass::explicit(n.elements.clone()).unwrap();
    let v = verdict(
        VerdictKind::Prec2,
        &a.rows,
        &[a.l1.clone(), a.l.clone(), a.u1.clone(), a.ub.clone()],
        &so,
    )
    .unwrap();
    ensure(v.pass, || "Prec2 failed".into())?;
    Ok("16/16 empty; finv and nabla ranges agree; Prec2 PASS".into())
}

fn graded_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for i in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let u = universe(n);
        let map: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << n)).collect();
        let g = Granulation::neighborhood_map(&u, map.clone()).unwrap();
        let a = rng.gen_range(0..1u64 << n);
        let k = rng.gen_range(0..=3u32);
        let nb: Vec<Vec<bool>> = map.iter().map(|&m| members(n, m)).collect();
        let am = members(n, a);
        let lo = ApproximationOperator::graded_lower(&g, k);
        let up = ApproximationOperator::graded_upper(&g, k);
        let x = ObjectSet::from_bits(&u, a).unwrap();
        let (l, h) = (lo.apply(&x).unwrap(), up.apply(&x).unwrap());
        ensure(members(n, l.bits()) == oracle_graded_lower(&nb, &am, k as usize), || {
            format!("instance {i}: lower mismatch")
        })?;
        ensure(members(n, h.bits()) == oracle_graded_upper(&nb, &am, k as usize), || {
            format!("instance {i}: upper mismatch")
        })?;
        let dual = up.apply(&x.complement()).unwrap().complement();
        ensure(l == dual, || format!("instance {i}: duality fails"))?;
    }
    let t = within(start, Duration::from_secs(5), "10,000 instances")?;
    Ok(format!("10000 instances agree with the oracle, duality exact ({} ms)", t.as_millis()))
}

fn measure_suite() -> Outcome {
    let a = appendix();
    let (bad, mut checked) = measure_law_violations(&a.pool(), usize::MAX, &a.rows);
    ensure(bad.is_empty(), || format!("appendix: {} violations, first {}", bad.len(), bad[0]))?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for s in 0..100 {
        let n = rng.gen_range(1..=6);
        let space = random_tolerance_space(&mut rng, n);
        let pool = granular_pool(&space);
        let (bad, c) = measure_law_violations(&pool, 5, &powerset(space.universe()));
        checked += c;
        ensure(bad.is_empty(), || format!("space {s}: {} violations, first {}", bad.len(), bad[0]))?;
    }
    Ok(format!("0 violations in {checked} law instances"))
}

fn range_structure() -> Outcome {
    let a = appendix();
    let spec = MeasureSpec::nabla(a.l1.clone(), a.l.clone(), a.ub.clone()).unwrap();
    let r = measure_range(&a.rows, &spec, Some((&a.l, &a.ub))).unwrap();
    let (e, x4) = (ObjectSet::empty(&a.u), set(&a, "x4"));
    ensure(r.is_lower_bounded() && r.is_weak_partial_lattice(), || "not a lower-bounded wpl".into())?;
    ensure(r.bottom.map(|b| &r.elements[b]) == Some(&e), || "bottom is not {}".into())?;
    ensure(r.definiteness.as_ref().is_some_and(|d| d.all_definite), || "not all definite".into())?;
    ensure(r.is_graded() && r.rank_of(&e) == Some(0) && r.rank_of(&x4) == Some(1), || "ranks".into())?;
    Ok("lower-bounded wpl, bottom {}, definite for (l, ub), ranks {} -> 0, {x4} -> 1".into())
}

fn six_slots(l: &ApproximationOperator, u: &ApproximationOperator) -> [(UnaryOp, ApproximationOperator); 6] {
    [
        (UnaryOp::L1, l.clone()),
        (UnaryOp::L2, l.clone()),
        (UnaryOp::Ls, l.clone()),
        (UnaryOp::U1, u.clone()),
        (UnaryOp::U2, u.clone()),
        (UnaryOp::Us, u.clone()),
    ]
}

fn powerset_structure(g: &Granulation) -> FiniteStructure {
    let (l, u) = (ApproximationOperator::lower(g), ApproximationOperator::upper(g));
    let slots = six_slots(&l, &u);
    let refs: Vec<(UnaryOp, &ApproximationOperator)> = slots.iter().map(|(s, o)| (*s, o)).collect();
    rough_powerset_structure(g.universe(), &refs).unwrap()
}

fn axiom_calibration() -> Outcome {
    let opts = CheckOptions::default();
    let u4 = universe(4);
    let pawlak = powerset_structure(&Granulation::partition(&u4, vec![0b0011, 0b1100]).unwrap());
    for g in [AxiomGroup::Quasiorder, AxiomGroup::WeakPartialLattice, AxiomGroup::Prcqo] {
        let r = check_axioms(&pawlak, g, &opts).unwrap();
        ensure(r.all_pass(), || format!("Pawlak powerset fails {g}"))?;
    }
    let class = check_axioms(&pawlak, AxiomGroup::Classification, &opts).unwrap().classification;
    ensure(class.as_deref() == Some("PRCL"), || format!("classified as {class:?}"))?;

    let a = appendix();
    let tol = powerset_structure(a.space.granulation());
    let r = check_axioms(&tol, AxiomGroup::Prcqo, &opts).unwrap();
    let e = r.entry("qlu23[ls]").ok_or("no qlu23 entry")?;
    ensure(e.status == Status::Fail, || "qlu23 passes on the tolerance powerset".into())?;
    let ce = &e.counterexamples[0];
    let want = [("a", "{x1,x2}"), ("b", "{x2,x3}")];
    ensure(
        ce.assignment.iter().map(|(k, v)| (k.as_str(), v.as_str())).eq(want),
        || format!("counterexample {:?}", ce.assignment),
    )?;
    ensure(recheck(&tol, AxiomGroup::Prcqo, &opts, &e.id, ce).unwrap().is_violated(), || "recheck".into())?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut derived = 0;
    for i in 0..50 {
        let n = rng.gen_range(1..=4);
        let u = universe(n);
        let mut s = powerset_structure(&partition_space(&u, random_partition(&mut rng, n)));
        ensure(check_axioms(&s, AxiomGroup::Prcqo, &opts).unwrap().all_pass(), || format!("structure {i}: prcqo"))?;
        let mut groups = vec![AxiomGroup::Omm];
        let om = derive_operation(&s, DerivableOp::Ominus, BoundMode::Attained).unwrap();
        om.install(&mut s).unwrap();
        // a partial ⊖ is only asked to obey the laws where it is defined
        let equality = if om.is_total() { EqualityOverride::AsPrinted } else { EqualityOverride::Omega };
        let negations: Vec<_> = [DerivableOp::Neg, DerivableOp::Sim]
            .into_iter()
            .map(|op| derive_operation(&s, op, BoundMode::Attained).unwrap())
            .collect();
        if negations.iter().all(|d| d.is_total()) {
            for d in &negations {
                d.install(&mut s).unwrap();
            }
            groups.push(AxiomGroup::WeakNegation);
            derived += 1;
        }
        for g in groups {
            let opts = CheckOptions { equality, ..CheckOptions::default() };
            let r = check_axioms(&s, g, &opts).unwrap();
            ensure(r.all_pass() && r.status() == Status::Pass, || {
                format!("structure {i}: {g} fails {:?}", r.failing().map(|e| &e.id).collect::<Vec<_>>())
            })?;
        }
    }
    ensure(derived > 0, || "no structure derived neg and sim totally".into())?;
    Ok(format!("Pawlak PRCL; qlu23 fails at a={{x1,x2}}, b={{x2,x3}}; ⊖ laws hold on 50/50 partitions, weak negation on the {derived} with total ¬/∼"))
}

fn difference_posets() -> Outcome {
    let opts = CheckOptions::default();
    let chain = FiniteStructure::from_json(&read("structures/chain5_difference.json")).unwrap();
    let r = check_axioms(&chain, AxiomGroup::DifferencePoset, &opts).unwrap();
    ensure(r.entries.iter().all(|e| e.status == Status::Pass), || {
        format!("chain: {:?}", r.entries.iter().filter(|e| e.status != Status::Pass).map(|e| &e.id).collect::<Vec<_>>())
    })?;
    let laws = r.entries.len();
    let p3 = FiniteStructure::from_json(&read("structures/powerset3_difference.json")).unwrap();
    ensure(check_axioms(&p3, AxiomGroup::DifferencePoset, &opts).unwrap().all_pass(), || "powerset3".into())?;

    let mut broken = chain.clone();
    let (four, one) = (chain.index_of("4").unwrap(), chain.index_of("1").unwrap());
    broken.clear_binary_entry(BinaryOp::Ominus, four, one).unwrap();
    let r = check_axioms(&broken, AxiomGroup::DifferencePoset, &opts).unwrap();
    let failing: Vec<_> = r.failing().collect();
    ensure(failing.len() == 1, || format!("{} failing clauses", failing.len()))?;
    let ce = failing[0].counterexamples.first().ok_or("no counterexample")?;
    Ok(format!(
        "chain passes {laws} laws; powerset3 passes; deleting 4⊖1 fails only {} at {}",
        failing[0].id,
        ce.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
    ))
}

fn metrics() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut n = 0;
    while n < 10_000 {
        let c = ConfusionCounts::new(
            rng.gen_range(0..500),
            rng.gen_range(0..500),
            rng.gen_range(0..500),
            rng.gen_range(0..500),
        );
        if c.top() == 0 || c.ton() == 0 || c.tp + c.fp == 0 {
            continue;
        }
        n += 1;
        let direct = Rational::new(c.tp as i128, (c.tp + c.fp) as i128);
        ensure(imbalance_precision(c) == Some(direct), || format!("identity fails at {c:?}"))?;
    }
    for i in 0..1_000 {
        let len = rng.gen_range(2..40);
        // both classes present
        let truth: Vec<bool> = (0..len).map(|j| j == 0 || (j > 1 && rng.gen_bool(0.5))).collect();
        let scores: Vec<f64> = (0..len).map(|_| f64::from(rng.gen_range(0..10u8)) / 10.0).collect();
        let c = curves(&scores, &truth).unwrap();
        let r = rank_statistic(&scores, &truth).unwrap();
        ensure(c.auc_roc == r, || format!("score set {i}: auc {} vs rank {r}", c.auc_roc))?;
    }
    let report = divergence_report(ConfusionCounts::new(40, 10, 30, 20));
    ensure(report.len() == 10, || "divergence report incomplete".into())?;
    let differing = report.iter().filter(|d| d.differs).count();
    Ok(format!("identity exact on 10000 counts; AUC = rank statistic on 1000 sets; report lists {differing}/10 diverging"))
}

fn cli_contract() -> Outcome {
    let runs = [
        vec!["approx", "--space", "relation.json", "--subsets", "subsets.txt", "--ops", "l,u,ub,l1=fix:l1.json"],
        vec!["nabla", "--space", "relation.json", "--ops", "u,ub,ub"],
        vec!["range", "--space", "relation.json", "--ops", "l1=fix:l1.json,l,ub", "--definite", "l,ub"],
        vec!["verdict", "--space", "relation.json", "--kind", "acc5", "--l1", "fix:l1.json", "--ls", "l", "--us", "ub", "--so", "{}", "--so", "{x4}"],
        vec!["check", "--space", "relation.json", "--axioms", "quasiorder,prcqo"],
    ];
    for args in &runs {
        let first = cli(args);
        for _ in 0..2 {
            let again = cli(args);
            ensure(again.stdout == first.stdout && again.stderr == first.stderr, || {
                format!("`{}` output differs between runs", args[0])
            })?;
        }
    }
    let battery: &[(&[&str], i32)] = &[
        (&["approx", "--space", "relation.json"], 0),
        (&["verdict", "--space", "relation.json", "--kind", "acc5", "--l1", "u", "--ls", "ub", "--us", "ub", "--so", "{}"], 1),
        (&["check", "--space", "relation.json", "--axioms", "prcqo"], 1),
        (&["approx", "--space", "missing.json"], 2),
        (&["approx", "--space", "subsets.txt"], 2),
        (&["approx", "--space", "relation.json", "--ops", "q"], 2),
        (&["approx", "--space", "relation.json", "--subset", "{x9}"], 2),
        (&["nabla", "--space", "relation.json", "--ops", "l,u"], 2),
        (&["verdict", "--space", "relation.json", "--kind", "prec9"], 2),
        (&["metrics", "--counts", "1,2,3"], 2),
        (&["metrics", "--predictions", "relation.json"], 2),
        (&["frobnicate"], 2),
        (&["--format", "xml", "approx"], 2),
    ];
    for (args, want) in battery {
        let got = cli(args).status.code();
        ensure(got == Some(*want), || format!("`{}` exited {got:?}, expected {want}", args.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical across 3 runs; {} exit codes as specified", runs.len(), battery.len()))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "approximation columns", approximation_columns),
        (2, "third nabla sequence", third_sequence),
        (3, "first nabla sequence and Acc5", first_sequence_and_acc5),
        (4, "second nabla sequence and Prec2", second_sequence_and_prec2),
        (5, "graded operators against oracle", graded_oracle),
        (6, "measure property suite", measure_suite),
        (7, "range structure", range_structure),
        (8, "axiom checker calibration", axiom_calibration),
        (9, "difference posets", difference_posets),
        (10, "metrics", metrics),
        (11, "CLI determinism and exit codes", cli_contract),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                let documented = DOCUMENTED.iter().any(|&(d, text)| d == id && text == detail);
                if !documented {
                    unexpected += 1;
                }
                let tag = if documented { " (documented)" } else { "" };
                println!("criterion {id:>2} FAIL{tag}  {name}: {detail}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
