use serde::Serialize;

use super::value::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RocPoint {
    pub threshold: f64,
    pub fpr: f64,
    pub tpr: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrPoint {
    pub threshold: f64,
    pub recall: f64,
    pub precision: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curves {
    /// From `(0, 0)` through one point per distinct score, descending.
    pub roc: Vec<RocPoint>,
    /// One point per distinct score, descending.
    pub pr: Vec<PrPoint>,
    #[serde(serialize_with = "as_f64")]
    pub auc_roc: Rational,
    pub auc_pr: f64,
}

fn as_f64<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

fn validate(scores: &[f64], truth: &[bool]) -> Result<(i128, i128)> {
    if scores.len() != truth.len() {
        return Err(Error::input(format!("{} scores but {} truth labels", scores.len(), truth.len())));
    }
    if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
        return Err(Error::input(format!("score {} at row {} is not finite", scores[i], i + 1)));
    }
    let pos = truth.iter().filter(|&&t| t).count() as i128;
    let neg = truth.len() as i128 - pos;
    if pos == 0 {
        return Err(Error::input("no positive items: ROC/PR need both classes"));
    }
    if neg == 0 {
        return Err(Error::input("no negative items: ROC/PR need both classes"));
    }
    Ok((pos, neg))
}

/// Threshold sweep over distinct scores (items scoring at or above the
/// threshold are predicted positive). Tied scores move together. The ROC
/// area is the exact trapezoid sum.
pub fn curves(scores: &[f64], truth: &[bool]) -> Result<Curves> {
    let (pos, neg) = validate(scores, truth)?;
    let mut items: Vec<(f64, bool)> = scores.iter().copied().zip(truth.iter().copied()).collect();
    items.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut roc = vec![RocPoint { threshold: f64::INFINITY, fpr: 0.0, tpr: 0.0 }];
    let mut pr = Vec::new();
    let (mut tp, mut fp) = (0i128, 0i128);
    // twice the trapezoid area, in units of 1/(pos·neg)
    let mut area2 = 0i128;
    let mut i = 0;
    while i < items.len() {
        let t = items[i].0;
        let (tp0, fp0) = (tp, fp);
        while i < items.len() && items[i].0 == t {
            if items[i].1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        area2 += (fp - fp0) * (tp + tp0);
        roc.push(RocPoint { threshold: t, fpr: fp as f64 / neg as f64, tpr: tp as f64 / pos as f64 });
        pr.push(PrPoint {
            threshold: t,
            recall: tp as f64 / pos as f64,
            precision: tp as f64 / (tp + fp) as f64,
        });
    }
    let auc_roc = Rational::new(area2, 2 * pos * neg);

    // trapezoids between successive PR points, the first anchored at
    // recall 0 with the first point's precision
    let mut auc_pr = 0.0;
    let (mut r0, mut p0) = (0.0, pr[0].precision);
    for p in &pr {
        auc_pr += (p.recall - r0) * (p.precision + p0) / 2.0;
        r0 = p.recall;
        p0 = p.precision;
    }
    Ok(Curves { roc, pr, auc_roc, auc_pr })
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half, by direct pair counting.
pub fn rank_statistic(scores: &[f64], truth: &[bool]) -> Result<Rational> {
    let (pos, neg) = validate(scores, truth)?;
    let mut twice_wins = 0i128;
    for (i, &si) in scores.iter().enumerate() {
        if !truth[i] {
            continue;
        }
        for (j, &sj) in scores.iter().enumerate() {
            if truth[j] {
                continue;
            }
            twice_wins += if si > sj {
                2
            } else if si == sj {
                1
            } else {
                0
            };
        }
    }
    Ok(Rational::new(twice_wins, 2 * pos * neg))
}
