use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::value::{sqrt_value, MetricValue, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        ConfusionCounts { tp, fp, tn, fn_ }
    }

    /// Items classified positive.
    pub fn top(&self) -> u64 {
        self.tp + self.fp
    }

    /// Items classified negative.
    pub fn ton(&self) -> u64 {
        self.tn + self.fn_
    }

    pub fn total(&self) -> u64 {
        self.top() + self.ton()
    }

    /// The counts seen from the other class's side.
    pub fn swapped(&self) -> Self {
        ConfusionCounts { tp: self.tn, fp: self.fn_, tn: self.tp, fn_: self.fp }
    }
}

/// Counts the four outcomes; `positive` names the positive class and every
/// other label must be one shared negative token.
pub fn confusion<S: AsRef<str>>(predicted: &[S], truth: &[S], positive: &str) -> Result<ConfusionCounts> {
    if predicted.len() != truth.len() {
        return Err(Error::input(format!(
            "{} predictions but {} truth labels",
            predicted.len(),
            truth.len()
        )));
    }
    let mut negative: Option<String> = None;
    let mut is_positive = |label: &str| -> Result<bool> {
        let label = label.trim();
        if label == positive {
            return Ok(true);
        }
        match negative.as_deref() {
            None => {
                negative = Some(label.to_string());
                Ok(false)
            }
            Some(n) if n == label => Ok(false),
            Some(n) => Err(Error::input(format!(
                "label `{label}` is neither positive `{positive}` nor negative `{n}`"
            ))),
        }
    };
    let mut c = ConfusionCounts::default();
    for (p, t) in predicted.iter().zip(truth) {
        match (is_positive(p.as_ref())?, is_positive(t.as_ref())?) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, false) => c.tn += 1,
            (false, true) => c.fn_ += 1,
        }
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricMode {
    /// Rates over classified totals: `TPR = TP/ToP`, `FPR = FP/ToN`, ...
    Paper,
    /// Rates over actual class totals: `TPR = TP/(TP+FN)`, ...
    Conventional,
}

impl MetricMode {
    pub fn name(self) -> &'static str {
        match self {
            MetricMode::Paper => "paper",
            MetricMode::Conventional => "conventional",
        }
    }
}

impl fmt::Display for MetricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(MetricMode::Paper),
            "conventional" => Ok(MetricMode::Conventional),
            _ => Err(Error::input(format!("unknown mode `{s}` (expected paper|conventional)"))),
        }
    }
}

impl Serialize for MetricMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaMcc {
    pub kappa: MetricValue,
    pub mcc: MetricValue,
    /// `(TP·TN − FP·FN)/(ToP·(FP+TN))`, paper mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1: Option<MetricValue>,
    /// `(TP·TN − FP·FN)/(ToN·(TP+FN))`, paper mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q2: Option<MetricValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateSet {
    pub mode: MetricMode,
    pub tpr: MetricValue,
    pub fpr: MetricValue,
    pub tnr: MetricValue,
    pub fnr: MetricValue,
    pub precision: MetricValue,
    pub recall: MetricValue,
    pub f_measure: MetricValue,
    pub accuracy: MetricValue,
    pub kappa: MetricValue,
    pub mcc: MetricValue,
}

impl RateSet {
    /// `(name, value)` pairs in report order.
    pub fn entries(&self) -> [(&'static str, &MetricValue); 10] {
        [
            ("tpr", &self.tpr),
            ("fpr", &self.fpr),
            ("tnr", &self.tnr),
            ("fnr", &self.fnr),
            ("precision", &self.precision),
            ("recall", &self.recall),
            ("f_measure", &self.f_measure),
            ("accuracy", &self.accuracy),
            ("kappa", &self.kappa),
            ("mcc", &self.mcc),
        ]
    }
}

fn harmonic(a: &MetricValue, b: &MetricValue) -> MetricValue {
    match (a.exact(), b.exact()) {
        (Some(a), Some(b)) if a + b == Rational::from_integer(0) => MetricValue::Undefined("precision + recall = 0".into()),
        (Some(a), Some(b)) => MetricValue::Exact(Rational::from_integer(2) * a * b / (a + b)),
        _ => MetricValue::Undefined("precision or recall undefined".into()),
    }
}

pub fn rates(c: ConfusionCounts, mode: MetricMode) -> RateSet {
    let (tp, fp, tn, fn_) = (c.tp as i128, c.fp as i128, c.tn as i128, c.fn_ as i128);
    let (top, ton) = (tp + fp, tn + fn_);
    let (tpr, fpr, tnr, fnr) = match mode {
        MetricMode::Paper => (
            MetricValue::ratio(tp, top, "ToP"),
            MetricValue::ratio(fp, ton, "ToN"),
            MetricValue::ratio(tn, ton, "ToN"),
            MetricValue::ratio(fn_, top, "ToP"),
        ),
        MetricMode::Conventional => (
            MetricValue::ratio(tp, tp + fn_, "TP+FN"),
            MetricValue::ratio(fp, fp + tn, "FP+TN"),
            MetricValue::ratio(tn, tn + fp, "TN+FP"),
            MetricValue::ratio(fn_, fn_ + tp, "FN+TP"),
        ),
    };
    let precision = MetricValue::ratio(tp, top, "ToP");
    let recall = MetricValue::ratio(tp, tp + fn_, "TP+FN");
    let f_measure = harmonic(&precision, &recall);
    let accuracy = MetricValue::ratio(tp + tn, top + ton, "ToP+ToN");
    let KappaMcc { kappa, mcc, .. } = kappa_mcc(c, mode);
    RateSet { mode, tpr, fpr, tnr, fnr, precision, recall, f_measure, accuracy, kappa, mcc }
}

pub fn kappa_mcc(c: ConfusionCounts, mode: MetricMode) -> KappaMcc {
    let (tp, fp, tn, fn_) = (c.tp as i128, c.fp as i128, c.tn as i128, c.fn_ as i128);
    let det = tp * tn - fp * fn_;
    let zero = Rational::from_integer(0);
    match mode {
        MetricMode::Paper => {
            let q1 = MetricValue::ratio(det, (tp + fp) * (fp + tn), "ToP·(FP+TN)");
            let q2 = MetricValue::ratio(det, (tn + fn_) * (tp + fn_), "ToN·(TP+FN)");
            let (kappa, mcc) = match (q1.exact(), q2.exact()) {
                (Some(a), Some(b)) => {
                    let kappa = if (a > zero && b < zero) || (a < zero && b > zero) {
                        MetricValue::Undefined("Q1 and Q2 differ in sign".into())
                    } else {
                        match sqrt_value(a * b) {
                            MetricValue::Exact(r) if a < zero || b < zero => MetricValue::Exact(-r),
                            MetricValue::Real(x) if a < zero || b < zero => MetricValue::Real(-x),
                            v => v,
                        }
                    };
                    let mcc = if a + b == zero {
                        MetricValue::Undefined("Q1 + Q2 = 0".into())
                    } else {
                        MetricValue::Exact(Rational::from_integer(2) * a * b / (a + b))
                    };
                    (kappa, mcc)
                }
                _ => {
                    let reason = "Q1 or Q2 undefined".to_string();
                    (MetricValue::Undefined(reason.clone()), MetricValue::Undefined(reason))
                }
            };
            KappaMcc { kappa, mcc, q1: Some(q1), q2: Some(q2) }
        }
        MetricMode::Conventional => {
            let n = tp + fp + tn + fn_;
            let kappa = if n == 0 {
                MetricValue::Undefined("no items".into())
            } else {
                let po = Rational::new(tp + tn, n);
                let pe = Rational::new((tp + fp) * (tp + fn_) + (fn_ + tn) * (fp + tn), n * n);
                let one = Rational::from_integer(1);
                if pe == one {
                    MetricValue::Undefined("chance agreement = 1".into())
                } else {
                    MetricValue::Exact((po - pe) / (one - pe))
                }
            };
            let prod = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
            let mcc = if prod == 0 {
                MetricValue::Undefined("a marginal total is 0".into())
            } else {
                let r = Rational::new(det * det, prod);
                match sqrt_value(r) {
                    MetricValue::Exact(x) if det < 0 => MetricValue::Exact(-x),
                    MetricValue::Real(x) if det < 0 => MetricValue::Real(-x),
                    v => v,
                }
            };
            KappaMcc { kappa, mcc, q1: None, q2: None }
        }
    }
}

/// One metric in both modes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Divergence {
    pub metric: &'static str,
    pub paper: MetricValue,
    pub conventional: MetricValue,
    pub differs: bool,
}

/// Side-by-side values for every metric; informational only.
pub fn divergence_report(c: ConfusionCounts) -> Vec<Divergence> {
    let p = rates(c, MetricMode::Paper);
    let q = rates(c, MetricMode::Conventional);
    p.entries()
        .into_iter()
        .zip(q.entries())
        .map(|((name, a), (_, b))| Divergence {
            metric: name,
            paper: a.clone(),
            conventional: b.clone(),
            differs: !a.agrees_with(b),
        })
        .collect()
}

/// `TP/ToP` rewritten through the class-imbalance ratio `r = ToP/ToN`:
/// `TPR/(TPR + FPR/r)` with paper-mode rates. `None` when a denominator
/// vanishes.
pub fn imbalance_precision(c: ConfusionCounts) -> Option<Rational> {
    let p = rates(c, MetricMode::Paper);
    let (tpr, fpr) = (p.tpr.exact()?, p.fpr.exact()?);
    let (top, ton) = (c.top() as i128, c.ton() as i128);
    if top == 0 || ton == 0 {
        return None;
    }
    let r = Rational::new(top, ton);
    let den = tpr + fpr / r;
    if den == Rational::from_integer(0) {
        return None;
    }
    Some(tpr / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> MetricValue {
        MetricValue::Exact(Rational::new(n, d))
    }

    #[test]
    fn counts_by_hand() {
        let c = confusion(&["+", "+", "-", "-"], &["+", "-", "-", "+"], "+").unwrap();
        assert_eq!(c, ConfusionCounts::new(1, 1, 1, 1));
        let all = confusion(&["y"; 5], &["y"; 5], "y").unwrap();
        assert_eq!(all, ConfusionCounts::new(5, 0, 0, 0));
        let inv = confusion(&["1", "1", "0", "0"], &["0", "0", "1", "1"], "1").unwrap();
        assert_eq!(inv, ConfusionCounts::new(0, 2, 0, 2));
        assert!(confusion(&["a", "b"], &["a"], "a").is_err());
        assert!(confusion(&["a", "b", "c"], &["a", "a", "a"], "a").is_err());
    }

    #[test]
    fn paper_rates() {
        let r = rates(ConfusionCounts::new(25, 25, 25, 25), MetricMode::Paper);
        assert_eq!(r.tpr, q(1, 2));
        assert_eq!(r.fpr, q(1, 2));
        assert_eq!(r.f_measure, q(1, 2));
        let perfect = rates(ConfusionCounts::new(7, 0, 0, 0), MetricMode::Paper);
        for v in [&perfect.precision, &perfect.recall, &perfect.f_measure, &perfect.accuracy] {
            assert_eq!(*v, q(1, 1));
        }
        assert!(!perfect.fpr.is_defined());
        let c = ConfusionCounts::new(40, 10, 40, 10);
        assert_eq!(rates(c, MetricMode::Paper).precision, q(4, 5));
        assert_eq!(imbalance_precision(c), Some(Rational::new(4, 5)));
    }

    #[test]
    fn paper_kappa_mcc() {
        let k = kappa_mcc(ConfusionCounts::new(1, 0, 1, 0), MetricMode::Paper);
        assert_eq!((k.kappa, k.mcc), (q(1, 1), q(1, 1)));
        let k = kappa_mcc(ConfusionCounts::new(25, 25, 25, 25), MetricMode::Paper);
        assert_eq!(k.kappa, q(0, 1));
        assert!(!k.mcc.is_defined());
        let k = kappa_mcc(ConfusionCounts::new(30, 20, 40, 10), MetricMode::Paper);
        assert_eq!(k.q1, Some(q(1, 3)));
        assert_eq!(k.q2, Some(q(1, 2)));
        assert_eq!(k.mcc, q(2, 5));
        assert!((k.kappa.to_f64().unwrap() - (1.0f64 / 6.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn conventional_kappa_mcc() {
        let k = kappa_mcc(ConfusionCounts::new(30, 20, 40, 10), MetricMode::Conventional);
        // po = 0.7, pe = (50·40 + 50·60)/100² = 0.5
        assert_eq!(k.kappa, q(2, 5));
        let mcc = 1000.0 / (50.0f64 * 40.0 * 60.0 * 50.0).sqrt();
        assert!((k.mcc.to_f64().unwrap() - mcc).abs() < 1e-15);
        let report = divergence_report(ConfusionCounts::new(30, 20, 40, 10));
        assert!(report.iter().any(|d| d.metric == "tpr" && d.differs));
        assert!(report.iter().any(|d| d.metric == "precision" && !d.differs));
    }
}
