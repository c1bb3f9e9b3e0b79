use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::render::{emit, Format, Report, Table};
use super::{
    ApproxArgs, CheckArgs, Cli, Command, DeriveArgs, DomainArgs, MeasureArgs, MetricsArgs, RangeArgs, SpaceArgs,
    VerdictArgs, EXIT_FAIL, EXIT_OK,
};
use crate::approximations::{load_fixture, ApproximationOperator, OperatorSpec};
use crate::baseline_metrics::{
    confusion, curves, decimal, divergence_report, kappa_mcc, rank_statistic, rates, ConfusionCounts, MetricMode,
    MetricValue, PredictionColumn, Predictions, Rational,
};
use crate::error::{Error, Result};
use crate::limits::powerset_cap;
use crate::measures::{
    amalg_standard_inclusion_failures, compare_reference, ABSENT, default_definiteness_pair, measure_range, verdict,
    ImportanceClass, MeasureKind, MeasureSpec, MeasureTable, VerdictKind,
};
use crate::partial_algebra::{
    check_groups, derive_operation, rough_powerset_structure, AxiomGroup, BinaryOp, BoundMode, CheckOptions,
    DerivableOp, DerivedTable, FiniteStructure, Status, UnaryOp,
};
use crate::rough_core::{
    all_subsets, Comparator, GranularSpace, InformationTable, NeighborhoodMode, ObjectSet, Quantifier,
    SpaceOptions, Universe,
};

pub(super) fn dispatch(cli: &Cli) -> Result<Report> {
    let format: Format = cli.format.parse()?;
    let quiet = cli.quiet_discrepancies;
    match &cli.command {
        Command::Approx(a) => cmd_approx(a, format, quiet),
        Command::Nabla(a) => cmd_measure(MeasureKind::Nabla, a, format, quiet),
        Command::Amalg(a) => cmd_measure(MeasureKind::Amalg, a, format, quiet),
        Command::Finv(a) => cmd_measure(MeasureKind::Finv, a, format, quiet),
        Command::Range(a) => cmd_range(a, format),
        Command::Verdict(a) => cmd_verdict(a, format),
        Command::Check(a) => cmd_check(a, format),
        Command::Derive(a) => cmd_derive(a, format),
        Command::Metrics(a) => cmd_metrics(a, format),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read `{}`: {e}", path.display())))
}

fn load_space(args: &SpaceArgs) -> Result<GranularSpace> {
    let opts = SpaceOptions {
        empty_singletons: args.empty_singletons,
        neighborhood_mode: match args.neighborhoods.as_str() {
            "successor" => NeighborhoodMode::Successor,
            _ => NeighborhoodMode::Predecessor,
        },
    };
    match (&args.space, &args.table) {
        (Some(p), None) => GranularSpace::from_json(&read(p)?, opts),
        (None, Some(p)) => {
            let table = InformationTable::from_csv(read(p)?.as_bytes())?;
            let comparator: Comparator = args.comparator.parse()?;
            let quantifier: Quantifier = args.quantifier.parse()?;
            let attrs: Vec<String> =
                if args.attrs.is_empty() { table.attributes().to_vec() } else { args.attrs.clone() };
            GranularSpace::from_table(&table, comparator, quantifier, &attrs, opts)
        }
        _ => Err(Error::input("give exactly one of --space or --table")),
    }
}

fn parse_subset_lines(universe: &Arc<Universe>, text: &str) -> Result<Vec<ObjectSet>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| ObjectSet::parse(universe, l))
        .collect()
}

fn load_domain(universe: &Arc<Universe>, args: &DomainArgs) -> Result<Vec<ObjectSet>> {
    let mut out = Vec::new();
    if let Some(p) = &args.subsets {
        out.extend(parse_subset_lines(universe, &read(p)?)?);
    }
    for s in &args.subset {
        out.push(ObjectSet::parse(universe, s)?);
    }
    if args.subsets.is_none() && args.subset.is_empty() {
        return all_subsets(universe, powerset_cap());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Splits `NAME=SPEC`; a bare spec names itself.
fn split_named(text: &str) -> (String, String) {
    let t = text.trim();
    match t.split_once('=') {
        Some((name, spec)) if !name.is_empty() && !name.contains(':') => (name.trim().into(), spec.trim().into()),
        _ => (t.into(), t.into()),
    }
}

fn resolve(space: &GranularSpace, text: &str) -> Result<ApproximationOperator> {
    let (name, spec) = split_named(text);
    spec.parse::<OperatorSpec>()?.resolve(space, &name)
}

fn resolve_all(space: &GranularSpace, texts: &[String]) -> Result<Vec<ApproximationOperator>> {
    texts.iter().map(|t| resolve(space, t)).collect()
}

fn fixture_pairs(op: &ApproximationOperator) -> Result<Vec<(ObjectSet, ObjectSet)>> {
    let u = op.universe();
    op.fixture_domain()
        .unwrap_or_default()
        .into_iter()
        .map(|b| {
            let x = ObjectSet::from_bits(u, b)?;
            let v = op.apply(&x)?;
            Ok((x, v))
        })
        .collect()
}

fn cmd_approx(a: &ApproxArgs, format: Format, quiet: bool) -> Result<Report> {
    let space = load_space(&a.space)?;
    let u = space.universe();
    let ops = resolve_all(&space, &a.ops)?;
    let domain = load_domain(u, &a.domain)?;
    let mut comparisons = Vec::new();
    for c in &a.compare_fixture {
        let (name, file) = c
            .split_once('=')
            .ok_or_else(|| Error::input(format!("--compare-fixture expects NAME=FILE, got `{c}`")))?;
        let col = ops
            .iter()
            .position(|o| o.name() == name.trim())
            .ok_or_else(|| Error::input(format!("--compare-fixture names unknown column `{name}`")))?;
        comparisons.push((col, load_fixture(Path::new(file.trim()), u)?));
    }

    let mut table = Table::new(std::iter::once("subset".to_string()).chain(ops.iter().map(|o| o.name().to_string())));
    let mut json_rows = Vec::new();
    let mut notes = Vec::new();
    for x in &domain {
        let values = ops.iter().map(|o| o.apply(x)).collect::<Result<Vec<_>>>()?;
        for (col, fix) in &comparisons {
            if fix.defined_on(x.bits()) {
                let expected = fix.apply(x)?;
                if expected != values[*col] {
                    notes.push(format!(
                        "discrepancy in `{}` at {x}: computed {}, fixture {expected}",
                        ops[*col].name(),
                        values[*col]
                    ));
                }
            }
        }
        let mut row = vec![x.to_string()];
        row.extend(values.iter().map(|v| v.to_string()));
        let mut obj = serde_json::Map::new();
        obj.insert("subset".into(), x.to_string().into());
        for (o, v) in ops.iter().zip(&values) {
            obj.insert(o.name().into(), v.to_string().into());
        }
        json_rows.push(Value::Object(obj));
        table.push(row);
    }
    if quiet {
        notes.clear();
    }
    let json = json!({ "operators": ops.iter().map(|o| o.name()).collect::<Vec<_>>(), "rows": json_rows });
    Ok(emit(format, &[table], json, &notes, EXIT_OK))
}

fn measure_spec(kind: MeasureKind, ops: Vec<ApproximationOperator>) -> Result<MeasureSpec> {
    MeasureSpec::new(kind, ops)
}

fn cmd_measure(kind: MeasureKind, a: &MeasureArgs, format: Format, quiet: bool) -> Result<Report> {
    let space = load_space(&a.space)?;
    let u = space.universe();
    let spec = measure_spec(kind, resolve_all(&space, &a.ops)?)?;
    let domain = load_domain(u, &a.domain)?;
    let table = MeasureTable::evaluate(&domain, &spec)?;
    let mut notes = Vec::new();
    if let Some(p) = &a.reference {
        let reference = load_fixture(p, u)?;
        for d in compare_reference(&table, &fixture_pairs(&reference)?, "reference") {
            if d.reference == ABSENT {
                notes.push(format!("no reference value at {}: computed {}", d.subset, d.computed));
            } else {
                notes.push(format!(
                    "discrepancy at {}: computed {}, reference {}",
                    d.subset, d.computed, d.reference
                ));
            }
        }
    }
    if kind == MeasureKind::Amalg {
        let ops = spec.ops();
        for d in amalg_standard_inclusion_failures(&domain, &ops[0], &ops[1])? {
            notes.push(format!("at {}: {} ({} vs {})", d.subset, d.note, d.reference, d.computed));
        }
    }
    if quiet {
        notes.clear();
    }
    let mut t = Table::new(["subset", "result"]);
    for (x, v) in &table.rows {
        t.push([x.to_string(), v.to_string()]);
    }
    let json = json!({
        "measure": table.label,
        "rows": table.rows.iter().map(|(x, v)| json!({"subset": x.to_string(), "result": v.to_string()})).collect::<Vec<_>>(),
    });
    Ok(emit(format, &[t], json, &notes, EXIT_OK))
}

fn cmd_range(a: &RangeArgs, format: Format) -> Result<Report> {
    let space = load_space(&a.space)?;
    let u = space.universe();
    let kind: MeasureKind = a.measure.parse()?;
    let spec = measure_spec(kind, resolve_all(&space, &a.ops)?)?;
    let domain = load_domain(u, &a.domain)?;
    let pair = match a.definite.as_slice() {
        [] => None,
        [l, up] => Some((resolve(&space, l)?, resolve(&space, up)?)),
        _ => return Err(Error::input("--definite takes LOWER,UPPER")),
    };
    let (fl, fu) = (resolve(&space, "l")?, resolve(&space, "u")?);
    let chosen = match &pair {
        Some((l, up)) => (l, up),
        None => default_definiteness_pair(&spec, (&fl, &fu)),
    };
    let r = measure_range(&domain, &spec, Some(chosen))?;

    let mut summary = Table::new(["property", "value"]);
    let elements: Vec<String> = r.elements.iter().map(|e| e.to_string()).collect();
    summary.push(["measure".to_string(), r.label.clone()]);
    summary.push(["elements".to_string(), elements.join(" ")]);
    summary.push(["lattice".to_string(), r.lattice.to_string()]);
    summary.push(["lower-bounded".to_string(), r.is_lower_bounded().to_string()]);
    summary.push(["bottom".to_string(), r.bottom.map(|b| elements[b].clone()).unwrap_or_else(|| "none".into())]);
    summary.push(["weak-partial-lattice".to_string(), r.is_weak_partial_lattice().to_string()]);
    summary.push(["graded".to_string(), r.is_graded().to_string()]);
    if let Some(d) = &r.definiteness {
        summary.push([format!("definite({},{})", d.lower, d.upper), d.all_definite.to_string()]);
    }
    let mut ranks = Table::new(["element", "rank"]);
    if let Some(rk) = &r.ranks {
        for (e, k) in elements.iter().zip(rk) {
            ranks.push([e.clone(), k.to_string()]);
        }
    }
    let notes: Vec<String> = r
        .weak_partial_lattice_violations
        .iter()
        .cloned()
        .chain(r.definiteness.iter().flat_map(|d| d.witnesses.iter().map(|w| format!("{w} is not definite"))))
        .collect();
    let tables = if r.ranks.is_some() { vec![summary, ranks] } else { vec![summary] };
    Ok(emit(format, &tables, r.to_json(), &notes, EXIT_OK))
}

fn importance_class(a: &VerdictArgs, space: &GranularSpace) -> Result<ImportanceClass> {
    let u = space.universe();
    let sources = [!a.so.is_empty(), a.so_file.is_some(), a.so_rule.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(Error::input("give the importance class with exactly one of --so, --so-file, --so-rule"));
    }
    if let Some(k) = &a.so_rule {
        let [l, up] = a.so_rule_ops.as_slice() else {
            return Err(Error::input("--so-rule-ops takes LOWER,UPPER"));
        };
        return ImportanceClass::rule(resolve(space, l)?, resolve(space, up)?, ObjectSet::parse(u, k)?);
    }
    let sets = match &a.so_file {
        Some(p) => parse_subset_lines(u, &read(p)?)?,
        None => a.so.iter().map(|s| ObjectSet::parse(u, s)).collect::<Result<Vec<_>>>()?,
    };
    ImportanceClass::explicit(sets)
}

fn cmd_verdict(a: &VerdictArgs, format: Format) -> Result<Report> {
    let space = load_space(&a.space)?;
    let kind: VerdictKind = a.kind.parse()?;
    let mut ops = Vec::new();
    for slot in kind.slots() {
        let text = match *slot {
            "l1" => &a.l1,
            "l2" => &a.l2,
            "ls" => &a.ls,
            "u1" => &a.u1,
            _ => &a.us,
        };
        let text = text.as_ref().ok_or_else(|| Error::input(format!("{kind} needs --{slot}")))?;
        ops.push(resolve(&space, text)?);
    }
    let so = importance_class(a, &space)?;
    let domain = load_domain(space.universe(), &a.domain)?;
    let v = verdict(kind, &domain, &ops, &so)?;
    let mut head = Table::new(["verdict"]);
    head.push([if v.pass { "PASS" } else { "FAIL" }]);
    let mut tables = vec![head];
    if !v.witnesses.is_empty() {
        let mut w = Table::new(["subset", "measure", "value"]);
        for x in &v.witnesses {
            w.push([x.subset.clone(), x.measure.clone(), x.value.clone()]);
        }
        tables.push(w);
    }
    let code = if v.pass { EXIT_OK } else { EXIT_FAIL };
    let json = serde_json::to_value(&v)?;
    Ok(emit(format, &tables, json, &[], code))
}

fn load_structure(a: &CheckArgs) -> Result<FiniteStructure> {
    match (&a.structure, a.space.space.is_some() || a.space.table.is_some()) {
        (Some(p), false) => FiniteStructure::from_json(&read(p)?),
        (None, true) => {
            let space = load_space(&a.space)?;
            let mut slots = Vec::new();
            for s in &a.slots {
                let (slot, spec) = s
                    .split_once('=')
                    .ok_or_else(|| Error::input(format!("--slots expects SLOT=SPEC, got `{s}`")))?;
                let slot: UnaryOp = slot.trim().parse()?;
                slots.push((slot, spec.trim().parse::<OperatorSpec>()?.resolve(&space, spec.trim())?));
            }
            let refs: Vec<(UnaryOp, &ApproximationOperator)> = slots.iter().map(|(s, o)| (*s, o)).collect();
            rough_powerset_structure(space.universe(), &refs)
        }
        _ => Err(Error::input("give exactly one of --structure or --space/--table")),
    }
}

fn cmd_check(a: &CheckArgs, format: Format) -> Result<Report> {
    let s = load_structure(a)?;
    let groups: Vec<AxiomGroup> = if a.axioms.iter().any(|g| g == "all") {
        AxiomGroup::ALL.to_vec()
    } else {
        a.axioms.iter().map(|g| g.trim().parse()).collect::<Result<_>>()?
    };
    let opts = CheckOptions {
        equality: a.equality.parse()?,
        implication: a.implication.as_deref().map(str::parse::<BinaryOp>).transpose()?,
        implication_properties: if a.properties.is_empty() { None } else { Some(a.properties.clone()) },
        max_counterexamples: a.max_counterexamples,
    };
    let reports = check_groups(&s, &groups, &opts)?;

    let mut entries = Table::new(["group", "axiom", "status", "checked", "violations", "note"]);
    let mut ces = Table::new(["group", "axiom", "assignment", "detail"]);
    let mut summary = Table::new(["group", "status", "summary"]);
    let mut notes = Vec::new();
    for r in &reports {
        for e in &r.entries {
            entries.push([
                r.group.clone(),
                e.id.clone(),
                e.status.to_string(),
                e.checked.to_string(),
                e.violations.to_string(),
                e.note.clone().unwrap_or_default(),
            ]);
            for c in &e.counterexamples {
                let assignment: Vec<String> = c.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let detail = match &c.via {
                    Some(via) => format!("{} (via {via})", c.detail),
                    None => c.detail.clone(),
                };
                ces.push([r.group.clone(), e.id.clone(), assignment.join(", "), detail]);
            }
        }
        let mut extra = Vec::new();
        if let Some(c) = &r.classification {
            extra.push(format!("classification {c}"));
        }
        if let Some(rk) = &r.ranks {
            let parts: Vec<String> = rk.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            extra.push(format!("ranks {}", parts.join(" ")));
        }
        summary.push([r.group.clone(), r.status().to_string(), extra.join("; ")]);
        notes.extend(r.notes.iter().map(|n| format!("{}: {n}", r.group)));
        if r.closure_added > 0 {
            notes.push(format!("{}: order closure added {} pairs", r.group, r.closure_added));
        }
    }
    let failed = reports.iter().any(|r| r.status() == Status::Fail);
    let mut tables = vec![summary, entries];
    if !ces.rows.is_empty() {
        tables.push(ces);
    }
    let json = json!({ "pass": !failed, "reports": reports });
    notes.dedup();
    Ok(emit(format, &tables, json, &notes, if failed { EXIT_FAIL } else { EXIT_OK }))
}

fn cmd_derive(a: &DeriveArgs, format: Format) -> Result<Report> {
    let s = FiniteStructure::from_json(&read(&a.structure)?)?;
    let op: DerivableOp = a.op.parse()?;
    let mode: BoundMode = a.bound.parse()?;
    let d = derive_operation(&s, op, mode)?;
    let show = |v: &Option<usize>| v.map(|i| s.name(i).to_string()).unwrap_or_else(|| "undefined".into());
    let table = match &d.table {
        DerivedTable::Unary(slot, t) => {
            let mut tb = Table::new(["a".to_string(), format!("{slot}(a)")]);
            for (i, v) in t.iter().enumerate() {
                tb.push([s.name(i).to_string(), show(v)]);
            }
            tb
        }
        DerivedTable::Binary(slot, t) => {
            let n = s.len();
            let mut tb = Table::new(["a".to_string(), "b".to_string(), format!("{slot}(a,b)")]);
            for i in 0..n {
                for j in 0..n {
                    tb.push([s.name(i).to_string(), s.name(j).to_string(), show(&t[i * n + j])]);
                }
            }
            tb
        }
    };
    Ok(emit(format, &[table], d.to_json(&s), &d.notes, EXIT_OK))
}

fn metric_json(v: &MetricValue) -> Value {
    serde_json::to_value(v).expect("metric values serialize")
}

fn cmd_metrics(a: &MetricsArgs, format: Format) -> Result<Report> {
    let mut scores: Option<(Vec<f64>, Vec<bool>)> = None;
    let counts = match (&a.predictions, a.counts.as_slice()) {
        (Some(p), []) => {
            let preds = Predictions::from_csv(read(p)?.as_bytes())?;
            let truth = preds.truth_flags(&a.positive)?;
            match preds.column(&a.positive)? {
                PredictionColumn::Labels(labels) => confusion(&labels, &preds.truth, &a.positive)?,
                PredictionColumn::Scores(sc) => {
                    if !a.threshold.is_finite() {
                        return Err(Error::input("--threshold must be finite"));
                    }
                    let mut c = ConfusionCounts::default();
                    for (s, &t) in sc.iter().zip(&truth) {
                        match (*s >= a.threshold, t) {
                            (true, true) => c.tp += 1,
                            (true, false) => c.fp += 1,
                            (false, false) => c.tn += 1,
                            (false, true) => c.fn_ += 1,
                        }
                    }
                    scores = Some((sc, truth));
                    c
                }
            }
        }
        (None, [tp, fp, tn, fn_]) => ConfusionCounts::new(*tp, *fp, *tn, *fn_),
        (None, []) => return Err(Error::input("give --predictions FILE or --counts TP,FP,TN,FN")),
        (None, _) => return Err(Error::input("--counts takes exactly four numbers TP,FP,TN,FN")),
        (Some(_), _) => return Err(Error::input("--predictions and --counts are exclusive")),
    };

    let mut tables = Vec::new();
    let mut count_table = Table::new(["count", "value"]);
    for (k, v) in [("tp", counts.tp), ("fp", counts.fp), ("tn", counts.tn), ("fn", counts.fn_)] {
        count_table.push([k.to_string(), v.to_string()]);
    }
    tables.push(count_table);

    let paper_q = kappa_mcc(counts, MetricMode::Paper);
    let q_rows = [("q1", paper_q.q1.clone()), ("q2", paper_q.q2.clone())];
    let mut json = serde_json::Map::new();
    json.insert("counts".into(), serde_json::to_value(counts)?);
    match a.mode.as_str() {
        "both" => {
            let report = divergence_report(counts);
            let mut t = Table::new(["metric", "paper", "conventional", "differs"]);
            for d in &report {
                t.push([d.metric.to_string(), d.paper.to_string(), d.conventional.to_string(), d.differs.to_string()]);
            }
            for (k, v) in &q_rows {
                if let Some(v) = v {
                    t.push([k.to_string(), v.to_string(), "-".into(), "-".into()]);
                }
            }
            tables.push(t);
            json.insert("paper".into(), serde_json::to_value(rates(counts, MetricMode::Paper))?);
            json.insert("conventional".into(), serde_json::to_value(rates(counts, MetricMode::Conventional))?);
            json.insert("paper_q".into(), serde_json::to_value(&paper_q)?);
            json.insert("divergence".into(), serde_json::to_value(&report)?);
        }
        m => {
            let mode: MetricMode = m.parse()?;
            let r = rates(counts, mode);
            let mut t = Table::new(["metric".to_string(), mode.to_string()]);
            for (k, v) in r.entries() {
                t.push([k.to_string(), v.to_string()]);
            }
            if mode == MetricMode::Paper {
                for (k, v) in &q_rows {
                    if let Some(v) = v {
                        t.push([k.to_string(), v.to_string()]);
                    }
                }
            }
            tables.push(t);
            json.insert(mode.to_string(), serde_json::to_value(&r)?);
        }
    }

    if let Some((sc, truth)) = &scores {
        let c = curves(sc, truth)?;
        let rs = rank_statistic(sc, truth)?;
        let as_f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        let mut t = Table::new(["curve", "value"]);
        t.push(["auc_roc".to_string(), decimal(as_f(c.auc_roc))]);
        t.push(["rank_statistic".to_string(), decimal(as_f(rs))]);
        t.push(["auc_pr".to_string(), decimal(c.auc_pr)]);
        tables.push(t);
        let thr = |x: f64| if x.is_infinite() { "inf".to_string() } else { decimal(x) };
        let mut roc = Table::new(["threshold", "fpr", "tpr"]);
        for p in &c.roc {
            roc.push([thr(p.threshold), decimal(p.fpr), decimal(p.tpr)]);
        }
        let mut pr = Table::new(["threshold", "recall", "precision"]);
        for p in &c.pr {
            pr.push([thr(p.threshold), decimal(p.recall), decimal(p.precision)]);
        }
        tables.push(roc);
        tables.push(pr);
        json.insert(
            "curves".into(),
            json!({
                "auc_roc": metric_json(&MetricValue::Exact(c.auc_roc)),
                "rank_statistic": metric_json(&MetricValue::Exact(rs)),
                "auc_pr": c.auc_pr,
                "roc": c.roc.iter().map(|p| json!([thr(p.threshold), p.fpr, p.tpr])).collect::<Vec<_>>(),
                "pr": c.pr.iter().map(|p| json!([thr(p.threshold), p.recall, p.precision])).collect::<Vec<_>>(),
            }),
        );
    }
    Ok(emit(format, &tables, Value::Object(json), &[], EXIT_OK))
}
