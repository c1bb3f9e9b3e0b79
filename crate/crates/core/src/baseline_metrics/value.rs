use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i128>;

/// A metric value: exact where the arithmetic allows, real where a square
/// root is irrational, or explicitly undefined with a reason.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricValue {
    Exact(Rational),
    Real(f64),
    Undefined(String),
}

impl MetricValue {
    pub fn ratio(num: i128, den: i128, what: &str) -> Self {
        if den == 0 {
            MetricValue::Undefined(format!("{what} = 0"))
        } else {
            MetricValue::Exact(Rational::new(num, den))
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            MetricValue::Exact(r) => Some(*r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            MetricValue::Exact(r) => Some(*r.numer() as f64 / *r.denom() as f64),
            MetricValue::Real(x) => Some(*x),
            MetricValue::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        !matches!(self, MetricValue::Undefined(_))
    }

    /// Whether two values agree: exact values compare exactly, otherwise
    /// within `1e-12`; two undefined values agree.
    pub fn agrees_with(&self, other: &MetricValue) -> bool {
        match (self, other) {
            (MetricValue::Exact(a), MetricValue::Exact(b)) => a == b,
            (MetricValue::Undefined(_), MetricValue::Undefined(_)) => true,
            (a, b) => match (a.to_f64(), b.to_f64()) {
                (Some(x), Some(y)) => (x - y).abs() <= 1e-12,
                _ => false,
            },
        }
    }
}

/// Decimal with up to six places, trailing zeros trimmed.
pub fn decimal(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricValue::Undefined(_) => f.write_str("undefined"),
            v => f.write_str(&decimal(v.to_f64().expect("defined"))),
        }
    }
}

impl Serialize for MetricValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(None)?;
        match self {
            MetricValue::Exact(r) => {
                m.serialize_entry("value", &self.to_f64())?;
                m.serialize_entry("exact", &format!("{}/{}", r.numer(), r.denom()))?;
            }
            MetricValue::Real(x) => m.serialize_entry("value", x)?,
            MetricValue::Undefined(reason) => {
                m.serialize_entry("value", &Option::<f64>::None)?;
                m.serialize_entry("undefined", reason)?;
            }
        }
        m.end()
    }
}

pub(crate) fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Square root of a nonnegative rational: exact when both parts are
/// perfect squares.
pub(crate) fn sqrt_value(r: Rational) -> MetricValue {
    match (isqrt(*r.numer()), isqrt(*r.denom())) {
        (Some(a), Some(b)) => MetricValue::Exact(Rational::new(a, b)),
        _ => MetricValue::Real((*r.numer() as f64 / *r.denom() as f64).sqrt()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(MetricValue::Exact(Rational::new(4, 5)).to_string(), "0.8");
        assert_eq!(MetricValue::Exact(Rational::new(1, 3)).to_string(), "0.333333");
        assert_eq!(MetricValue::Exact(Rational::new(1, 1)).to_string(), "1");
        assert_eq!(MetricValue::Undefined("x".into()).to_string(), "undefined");
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_value(Rational::new(1, 4)), MetricValue::Exact(Rational::new(1, 2)));
        assert!(matches!(sqrt_value(Rational::new(1, 6)), MetricValue::Real(_)));
        assert_eq!(isqrt(99), None);
        assert_eq!(isqrt(100), Some(10));
    }
}
