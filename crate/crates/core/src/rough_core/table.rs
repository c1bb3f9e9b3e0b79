use std::collections::BTreeSet;
use std::io::Read;
use std::str::FromStr;
use std::sync::Arc;

use super::granulation::{equivalence_classes, Granulation};
use super::relation::Relation;
use super::universe::Universe;
use crate::error::{Error, Result};

/// A set of opaque value tokens.
pub type ValueSet = BTreeSet<String>;

/// Objects × attributes with set-valued cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformationTable {
    universe: Arc<Universe>,
    attributes: Vec<String>,
    // values[attribute][object]
    values: Vec<Vec<ValueSet>>,
}

/// How two valuations are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparator {
    Equal,
    Overlap,
    Subset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    ForAll,
    Exists,
}

impl FromStr for Comparator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(Comparator::Equal),
            "overlap" => Ok(Comparator::Overlap),
            "subset" => Ok(Comparator::Subset),
            other => Err(Error::input(format!("unknown comparator `{other}`"))),
        }
    }
}

impl FromStr for Quantifier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forall" => Ok(Quantifier::ForAll),
            "exists" => Ok(Quantifier::Exists),
            other => Err(Error::input(format!("unknown quantifier `{other}`"))),
        }
    }
}

impl Comparator {
    fn holds(self, a: &ValueSet, b: &ValueSet) -> bool {
        match self {
            Comparator::Equal => a == b,
            Comparator::Overlap => !a.is_disjoint(b),
            Comparator::Subset => a.is_subset(b),
        }
    }
}

impl InformationTable {
    /// `values[a][x]` is the valuation of object `x` under attribute `a`.
    pub fn new(
        universe: &Arc<Universe>,
        attributes: Vec<String>,
        values: Vec<Vec<ValueSet>>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in &attributes {
            if !seen.insert(a) {
                return Err(Error::input(format!("duplicate attribute `{a}`")));
            }
        }
        if values.len() != attributes.len()
            || values.iter().any(|col| col.len() != universe.len())
        {
            return Err(Error::input("valuation must be total over attributes × objects"));
        }
        Ok(InformationTable { universe: universe.clone(), attributes, values })
    }

    /// Reads the CSV layout: header `object,<attr>...`, cells hold
    /// `|`-separated tokens, an empty cell is the empty set.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.get(0) != Some("object") {
            return Err(Error::input("information table CSV must start with an `object` column"));
        }
        let attributes: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut objects = Vec::new();
        let mut values: Vec<Vec<ValueSet>> = vec![Vec::new(); attributes.len()];
        for record in rdr.records() {
            let record = record?;
            if record.len() != headers.len() {
                return Err(Error::input(format!(
                    "row for `{}` has {} cells, expected {}",
                    record.get(0).unwrap_or(""),
                    record.len(),
                    headers.len()
                )));
            }
            objects.push(record[0].to_string());
            for (a, cell) in record.iter().skip(1).enumerate() {
                let set: ValueSet = cell
                    .split('|')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect();
                values[a].push(set);
            }
        }
        let universe = Universe::new(objects)?;
        InformationTable::new(&universe, attributes, values)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn value(&self, attribute: usize, object: usize) -> &ValueSet {
        &self.values[attribute][object]
    }

    fn attribute_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.attributes
                    .iter()
                    .position(|a| a == n.as_ref())
                    .ok_or_else(|| Error::UnknownAttribute(n.as_ref().to_string()))
            })
            .collect()
    }

    /// Partition of IND(K). An empty `K` gives the single block holding
    /// every object.
    pub fn ind_partition<S: AsRef<str>>(&self, k: &[S]) -> Result<Granulation> {
        let rel = self.derive_relation(Comparator::Equal, Quantifier::ForAll, k)?;
        equivalence_classes(&rel)
    }

    /// `(x, w)` is related iff the quantified comparison
    /// `cmp(ν(a, x), ν(a, w))` holds over the attributes `a` in `K`.
    pub fn derive_relation<S: AsRef<str>>(
        &self,
        comparator: Comparator,
        quantifier: Quantifier,
        k: &[S],
    ) -> Result<Relation> {
        let attrs = self.attribute_indices(k)?;
        if attrs.is_empty() && comparator != Comparator::Equal {
            return Err(Error::precondition(
                "the attribute set may only be empty for the `equal` comparator",
            ));
        }
        let n = self.universe.len();
        let mut rows = vec![0u64; n];
        for (x, row) in rows.iter_mut().enumerate() {
            for w in 0..n {
                let mut cmp = attrs.iter().map(|&a| {
                    comparator.holds(&self.values[a][x], &self.values[a][w])
                });
                let related = match quantifier {
                    Quantifier::ForAll => cmp.all(|b| b),
                    Quantifier::Exists => cmp.any(|b| b),
                };
                if related {
                    *row |= 1 << w;
                }
            }
        }
        Relation::from_rows(&self.universe, rows)
    }
}
