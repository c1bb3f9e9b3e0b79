use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::operator::ApproximationOperator;
use crate::error::{Error, Result};
use crate::limits::powerset_cap;

/// Outcome of probing one property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Flag {
    True,
    /// Falsified; the witness lists the subsets (rendered) that break it.
    False { witness: Vec<String> },
    Unknown,
}

impl Flag {
    pub fn is_true(&self) -> bool {
        matches!(self, Flag::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Flag::False { .. })
    }
}

/// Which of the lower/upper operator laws a concrete operator satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorProfile {
    pub monotone: Flag,
    pub contractive: Flag,
    pub expansive: Flag,
    pub idempotent: Flag,
    pub fixes_bottom: Flag,
    pub fixes_top: Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileScope {
    /// Every subset in the operator's domain; requires the powerset cap.
    Exhaustive,
    /// Random subsets; unfalsified flags stay `Unknown`.
    Sample { count: usize, seed: u64 },
}

struct Probe {
    flag: Option<Vec<u64>>,
    unknown: bool,
}

impl Probe {
    fn new() -> Self {
        Probe { flag: None, unknown: false }
    }

    fn fail(&mut self, witness: Vec<u64>) {
        if self.flag.is_none() {
            self.flag = Some(witness);
        }
    }

    fn finish(self, op: &ApproximationOperator, exhaustive: bool) -> Flag {
        match self.flag {
            Some(w) => Flag::False {
                witness: w.into_iter().map(|b| op.universe().render(b)).collect(),
            },
            None if exhaustive && !self.unknown => Flag::True,
            None => Flag::Unknown,
        }
    }
}

pub fn profile(op: &ApproximationOperator, scope: ProfileScope) -> Result<OperatorProfile> {
    let u = op.universe();
    let full = u.full_mask();
    let exhaustive = matches!(scope, ProfileScope::Exhaustive);

    let domain: Vec<u64> = match scope {
        ProfileScope::Exhaustive => {
            let cap = powerset_cap();
            if u.len() > cap {
                return Err(Error::CapExceeded {
                    what: format!("universe of operator `{}`", op.name()),
                    size: u.len(),
                    cap,
                });
            }
            match op.fixture_domain() {
                Some(d) => d,
                None => (0..=full).collect(),
            }
        }
        ProfileScope::Sample { count, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let fixture = op.fixture_domain();
            (0..count)
                .map(|_| match &fixture {
                    Some(d) => d[rng.gen_range(0..d.len())],
                    None => rng.gen::<u64>() & full,
                })
                .collect()
        }
    };

    let mut monotone = Probe::new();
    let mut contractive = Probe::new();
    let mut expansive = Probe::new();
    let mut idempotent = Probe::new();
    let mut bottom = Probe::new();
    let mut top = Probe::new();

    let image = |a: u64| op.apply_bits(a);

    for &a in &domain {
        let x = image(a)?;
        if x & !a != 0 {
            contractive.fail(vec![a]);
        }
        if a & !x != 0 {
            expansive.fail(vec![a]);
        }
        if op.defined_on(x) {
            if image(x)? != x {
                idempotent.fail(vec![a]);
            }
        } else {
            idempotent.unknown = true;
        }
    }

    for (probe, target) in [(&mut bottom, 0u64), (&mut top, full)] {
        if op.defined_on(target) {
            if image(target)? != target {
                probe.fail(vec![target]);
            }
        } else {
            probe.unknown = true;
        }
    }

    match (scope, op.fixture_domain()) {
        (ProfileScope::Exhaustive, None) => {
            // monotone on a total operator iff monotone along every one-element step
            'outer: for a in 0..=full {
                let x = image(a)?;
                let mut missing = full & !a;
                while missing != 0 {
                    let bit = missing & missing.wrapping_neg();
                    missing &= missing - 1;
                    if x & !image(a | bit)? != 0 {
                        monotone.fail(vec![a, a | bit]);
                        break 'outer;
                    }
                }
            }
        }
        (ProfileScope::Exhaustive, Some(d)) => {
            'pairs: for &a in &d {
                for &b in &d {
                    if a & !b == 0 && image(a)? & !image(b)? != 0 {
                        monotone.fail(vec![a, b]);
                        break 'pairs;
                    }
                }
            }
        }
        (ProfileScope::Sample { seed, .. }, fixture) => {
            let mut rng = StdRng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
            for &a in &domain {
                let b = match &fixture {
                    Some(d) => d[rng.gen_range(0..d.len())],
                    None => a | (rng.gen::<u64>() & full),
                };
                if a & !b == 0 && image(a)? & !image(b)? != 0 {
                    monotone.fail(vec![a, b]);
                    break;
                }
            }
        }
    }

    Ok(OperatorProfile {
        monotone: monotone.finish(op, exhaustive),
        contractive: contractive.finish(op, exhaustive),
        expansive: expansive.finish(op, exhaustive),
        idempotent: idempotent.finish(op, exhaustive),
        fixes_bottom: bottom.finish(op, true),
        fixes_top: top.finish(op, true),
    })
}
