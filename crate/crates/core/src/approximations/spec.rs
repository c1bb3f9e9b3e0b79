use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use super::operator::ApproximationOperator;
use crate::error::{Error, Result};
use crate::rough_core::{GranularSpace, ObjectSet, Universe};

/// Parsed operator specification string: `l`, `u`, `ub`, `lk:K`, `uk:K`,
/// `id` or `fix:FILE`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSpec {
    Lower,
    Upper,
    BitedUpper,
    GradedLower(u32),
    GradedUpper(u32),
    Identity,
    Fixture(PathBuf),
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let grade = |k: &str| {
            k.parse::<u32>()
                .map_err(|_| Error::input(format!("grade in `{s}` must be a nonnegative integer")))
        };
        match s {
            "l" => Ok(OperatorSpec::Lower),
            "u" => Ok(OperatorSpec::Upper),
            "ub" => Ok(OperatorSpec::BitedUpper),
            "id" => Ok(OperatorSpec::Identity),
            _ => {
                if let Some(k) = s.strip_prefix("lk:") {
                    Ok(OperatorSpec::GradedLower(grade(k)?))
                } else if let Some(k) = s.strip_prefix("uk:") {
                    Ok(OperatorSpec::GradedUpper(grade(k)?))
                } else if let Some(p) = s.strip_prefix("fix:") {
                    if p.is_empty() {
                        return Err(Error::input("`fix:` needs a file path"));
                    }
                    Ok(OperatorSpec::Fixture(PathBuf::from(p)))
                } else {
                    Err(Error::input(format!("unknown operator specification `{s}`")))
                }
            }
        }
    }
}

impl OperatorSpec {
    /// Builds the operator over `space`; the result is named by the spec string.
    pub fn resolve(&self, space: &GranularSpace, name: &str) -> Result<ApproximationOperator> {
        let g = space.granulation();
        let op = match self {
            OperatorSpec::Lower => ApproximationOperator::lower(g),
            OperatorSpec::Upper => ApproximationOperator::upper(g),
            OperatorSpec::BitedUpper => ApproximationOperator::bited_upper(g),
            OperatorSpec::GradedLower(k) => ApproximationOperator::graded_lower(space.neighborhoods(), *k),
            OperatorSpec::GradedUpper(k) => ApproximationOperator::graded_upper(space.neighborhoods(), *k),
            OperatorSpec::Identity => ApproximationOperator::identity(space.universe()),
            OperatorSpec::Fixture(path) => load_fixture(path, space.universe())?,
        };
        Ok(op.renamed(name))
    }
}

/// Parses and resolves a spec string in one step.
pub fn resolve_operator(spec: &str, space: &GranularSpace) -> Result<ApproximationOperator> {
    spec.parse::<OperatorSpec>()?.resolve(space, spec.trim())
}

/// Reads a fixture document `{"x1,x2": "x1,x2,x3", "": "", ...}`; values may
/// also be JSON lists of ids.
pub fn parse_fixture(name: &str, text: &str, universe: &Arc<Universe>) -> Result<ApproximationOperator> {
    let doc: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text)?;
    let mut table = Vec::with_capacity(doc.len());
    for (key, value) in doc {
        let a = ObjectSet::parse(universe, &key)?;
        let b = match value {
            serde_json::Value::String(s) => ObjectSet::parse(universe, &s)?,
            serde_json::Value::Array(items) => {
                let ids = items
                    .into_iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => Ok(s),
                        _ => Err(Error::input(format!("fixture value for `{key}` must list ids"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                ObjectSet::from_ids(universe, ids)?
            }
            _ => return Err(Error::input(format!("fixture value for `{key}` must be a string or list"))),
        };
        table.push((a, b));
    }
    ApproximationOperator::fixture(name, &table)
}

pub fn load_fixture(path: &Path, universe: &Arc<Universe>) -> Result<ApproximationOperator> {
    let text = std::fs::read_to_string(path)?;
    parse_fixture(&format!("fix:{}", path.display()), &text, universe)
}

/// Renders an operator's table over `domain` in the fixture layout.
pub fn fixture_json(op: &ApproximationOperator, domain: &[ObjectSet]) -> Result<String> {
    let mut map = serde_json::Map::new();
    for a in domain {
        let image = op.apply(a)?;
        map.insert(a.ids().join(","), serde_json::Value::String(image.ids().join(",")));
    }
    Ok(serde_json::to_string_pretty(&serde_json::Value::Object(map))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximations::OperatorKind;
    use crate::rough_core::SpaceOptions;

    #[test]
    fn parse_specs() {
        assert_eq!("l".parse::<OperatorSpec>().unwrap(), OperatorSpec::Lower);
        assert_eq!("uk:3".parse::<OperatorSpec>().unwrap(), OperatorSpec::GradedUpper(3));
        assert_eq!(
            "fix:a/b.json".parse::<OperatorSpec>().unwrap(),
            OperatorSpec::Fixture("a/b.json".into())
        );
        assert!("lk:-1".parse::<OperatorSpec>().is_err());
        assert!("lk:".parse::<OperatorSpec>().is_err());
        assert!("fix:".parse::<OperatorSpec>().is_err());
        assert!("q".parse::<OperatorSpec>().is_err());
    }

    #[test]
    fn resolve_on_partition_gives_classical() {
        let s = GranularSpace::from_json(r#"{"blocks": [["1","2"],["3"]]}"#, SpaceOptions::default())
            .unwrap();
        let l = resolve_operator("l", &s).unwrap();
        assert_eq!(l.kind(), OperatorKind::ClassicalLower);
        assert_eq!(l.name(), "l");
    }

    #[test]
    fn fixture_document() {
        let u = Universe::new(["x1", "x2"]).unwrap();
        let op = parse_fixture("f", r#"{"": "", "x2,x1": ["x1"], "x1": "∅"}"#, &u).unwrap();
        assert_eq!(op.apply_bits(0b11).unwrap(), 0b01);
        assert_eq!(op.apply_bits(0b01).unwrap(), 0);
        assert!(op.apply_bits(0b10).is_err());
        assert!(parse_fixture("f", r#"{"x3": ""}"#, &u).is_err());
        assert!(parse_fixture("f", r#"{"x1": 3}"#, &u).is_err());
        let domain: Vec<_> = (0..4).map(|b| ObjectSet::from_bits(&u, b).unwrap()).collect();
        let id = ApproximationOperator::identity(&u);
        let text = fixture_json(&id, &domain).unwrap();
        let back = parse_fixture("id", &text, &u).unwrap();
        for b in 0..4 {
            assert_eq!(back.apply_bits(b).unwrap(), b);
        }
    }
}
