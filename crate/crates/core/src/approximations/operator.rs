use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rough_core::{ensure_same, Granulation, GranulationKind, ObjectSet, Universe};

/// The concrete operator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    ClassicalLower,
    ClassicalUpper,
    TolLower,
    TolUpper,
    BitedUpper,
    GradedLower(u32),
    GradedUpper(u32),
    Identity,
    Fixture,
}

#[derive(Clone)]
enum Source {
    Granules(Arc<[u64]>),
    Neighborhoods(Arc<[u64]>),
    Table(Arc<HashMap<u64, u64>>),
    None,
}

/// A named, total (fixtures: domain-restricted) map on subsets of a universe.
#[derive(Clone)]
pub struct ApproximationOperator {
    name: String,
    kind: OperatorKind,
    universe: Arc<Universe>,
    source: Source,
}

impl fmt::Debug for ApproximationOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ApproximationOperator")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish()
    }
}

pub(crate) fn lower_bits(granules: &[u64], a: u64) -> u64 {
    granules.iter().filter(|&&g| g & !a == 0).fold(0, |acc, g| acc | g)
}

pub(crate) fn upper_bits(granules: &[u64], a: u64) -> u64 {
    granules.iter().filter(|&&g| g & a != 0).fold(0, |acc, g| acc | g)
}

pub(crate) fn bited_bits(granules: &[u64], a: u64, full: u64) -> u64 {
    upper_bits(granules, a) & !lower_bits(granules, !a & full)
}

pub(crate) fn graded_upper_bits(nb: &[u64], a: u64, k: u32) -> u64 {
    nb.iter()
        .enumerate()
        .filter(|(_, &n)| (n & a).count_ones() > k)
        .fold(0, |acc, (z, _)| acc | 1 << z)
}

pub(crate) fn graded_lower_bits(nb: &[u64], a: u64, k: u32) -> u64 {
    nb.iter()
        .enumerate()
        .filter(|(_, &n)| (n & !a).count_ones() <= k)
        .fold(0, |acc, (z, _)| acc | 1 << z)
}

fn granules_of(g: &Granulation) -> Arc<[u64]> {
    g.granule_masks().into()
}

impl ApproximationOperator {
    fn new(name: &str, kind: OperatorKind, universe: &Arc<Universe>, source: Source) -> Self {
        ApproximationOperator { name: name.to_string(), kind, universe: universe.clone(), source }
    }

    /// Pawlak lower approximation over a partition.
    pub fn classical_lower(g: &Granulation) -> Result<Self> {
        require_partition(g)?;
        Ok(Self::new("l", OperatorKind::ClassicalLower, g.universe(), Source::Granules(granules_of(g))))
    }

    pub fn classical_upper(g: &Granulation) -> Result<Self> {
        require_partition(g)?;
        Ok(Self::new("u", OperatorKind::ClassicalUpper, g.universe(), Source::Granules(granules_of(g))))
    }

    /// Lower approximation: union of the granules inside the set. Accepts
    /// block families, partitions, and the neighborhood images of a map.
    pub fn tol_lower(g: &Granulation) -> Self {
        Self::new("l", OperatorKind::TolLower, g.universe(), Source::Granules(granules_of(g)))
    }

    pub fn tol_upper(g: &Granulation) -> Self {
        Self::new("u", OperatorKind::TolUpper, g.universe(), Source::Granules(granules_of(g)))
    }

    /// Upper approximation with the lower approximation of the complement removed.
    pub fn bited_upper(g: &Granulation) -> Self {
        Self::new("ub", OperatorKind::BitedUpper, g.universe(), Source::Granules(granules_of(g)))
    }

    /// Pawlak operators for partitions, granular ones otherwise.
    pub fn lower(g: &Granulation) -> Self {
        if g.kind() == GranulationKind::Partition {
            Self::classical_lower(g).expect("checked partition")
        } else {
            Self::tol_lower(g)
        }
    }

    pub fn upper(g: &Granulation) -> Self {
        if g.kind() == GranulationKind::Partition {
            Self::classical_upper(g).expect("checked partition")
        } else {
            Self::tol_upper(g)
        }
    }

    /// `{z : #(n(z) \ A) ≤ k}`.
    pub fn graded_lower(g: &Granulation, k: u32) -> Self {
        Self::new(
            &format!("lk:{k}"),
            OperatorKind::GradedLower(k),
            g.universe(),
            Source::Neighborhoods(g.neighborhoods().into()),
        )
    }

    /// `{z : #(n(z) ∩ A) > k}`.
    pub fn graded_upper(g: &Granulation, k: u32) -> Self {
        Self::new(
            &format!("uk:{k}"),
            OperatorKind::GradedUpper(k),
            g.universe(),
            Source::Neighborhoods(g.neighborhoods().into()),
        )
    }

    pub fn identity(universe: &Arc<Universe>) -> Self {
        Self::new("id", OperatorKind::Identity, universe, Source::None)
    }

    /// An operator that applies a stored table verbatim.
    pub fn fixture(name: &str, table: &[(ObjectSet, ObjectSet)]) -> Result<Self> {
        let (first, _) = table
            .first()
            .ok_or_else(|| Error::input(format!("fixture `{name}` is empty")))?;
        let universe = first.universe().clone();
        let mut map = HashMap::with_capacity(table.len());
        for (a, b) in table {
            ensure_same(&universe, a.universe(), "fixture domain")?;
            ensure_same(&universe, b.universe(), "fixture range")?;
            if let Some(prev) = map.insert(a.bits(), b.bits()) {
                if prev != b.bits() {
                    return Err(Error::input(format!(
                        "fixture `{name}` maps {a} to two different sets"
                    )));
                }
            }
        }
        Ok(Self::new(name, OperatorKind::Fixture, &universe, Source::Table(Arc::new(map))))
    }

    /// Same operator, different display name.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Whether the operator is defined on `bits`.
    pub fn defined_on(&self, bits: u64) -> bool {
        match &self.source {
            Source::Table(t) => t.contains_key(&bits),
            _ => bits & !self.universe.full_mask() == 0,
        }
    }

    /// The fixture domain, ascending; `None` for total operators.
    pub fn fixture_domain(&self) -> Option<Vec<u64>> {
        match &self.source {
            Source::Table(t) => {
                let mut d: Vec<u64> = t.keys().copied().collect();
                d.sort_unstable();
                Some(d)
            }
            _ => None,
        }
    }

    pub fn apply_bits(&self, a: u64) -> Result<u64> {
        let full = self.universe.full_mask();
        if a & !full != 0 {
            return Err(Error::UniverseMismatch(format!(
                "mask {a:#x} is outside the universe of `{}`",
                self.name
            )));
        }
        Ok(match (&self.kind, &self.source) {
            (OperatorKind::ClassicalLower | OperatorKind::TolLower, Source::Granules(g)) => {
                lower_bits(g, a)
            }
            (OperatorKind::ClassicalUpper | OperatorKind::TolUpper, Source::Granules(g)) => {
                upper_bits(g, a)
            }
            (OperatorKind::BitedUpper, Source::Granules(g)) => bited_bits(g, a, full),
            (OperatorKind::GradedLower(k), Source::Neighborhoods(n)) => graded_lower_bits(n, a, *k),
            (OperatorKind::GradedUpper(k), Source::Neighborhoods(n)) => graded_upper_bits(n, a, *k),
            (OperatorKind::Identity, _) => a,
            (OperatorKind::Fixture, Source::Table(t)) => {
                *t.get(&a).ok_or_else(|| Error::OutsideFixtureDomain {
                    name: self.name.clone(),
                    subset: self.universe.render(a),
                })?
            }
            _ => unreachable!("operator kind and source are paired at construction"),
        })
    }

    pub fn apply(&self, a: &ObjectSet) -> Result<ObjectSet> {
        ensure_same(&self.universe, a.universe(), &format!("operator `{}`", self.name))?;
        let bits = self.apply_bits(a.bits())?;
        Ok(ObjectSet::from_bits_unchecked(&self.universe, bits))
    }
}

fn require_partition(g: &Granulation) -> Result<()> {
    if g.kind() == GranulationKind::Partition {
        Ok(())
    } else {
        Err(Error::precondition("classical approximations need a partition"))
    }
}

fn same_universe(a: &ObjectSet, g: &Granulation) -> Result<()> {
    ensure_same(a.universe(), g.universe(), "set vs granulation")
}

/// Union of the partition blocks contained in `a`.
pub fn classical_lower(a: &ObjectSet, g: &Granulation) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::classical_lower(g)?.apply(a)
}

/// Union of the partition blocks meeting `a`.
pub fn classical_upper(a: &ObjectSet, g: &Granulation) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::classical_upper(g)?.apply(a)
}

pub fn tol_lower(a: &ObjectSet, g: &Granulation) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::tol_lower(g).apply(a)
}

pub fn tol_upper(a: &ObjectSet, g: &Granulation) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::tol_upper(g).apply(a)
}

pub fn bited_upper(a: &ObjectSet, g: &Granulation) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::bited_upper(g).apply(a)
}

pub fn graded_lower(a: &ObjectSet, g: &Granulation, k: u32) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::graded_lower(g, k).apply(a)
}

pub fn graded_upper(a: &ObjectSet, g: &Granulation, k: u32) -> Result<ObjectSet> {
    same_universe(a, g)?;
    ApproximationOperator::graded_upper(g, k).apply(a)
}

/// Largest neighborhood size; graded operators saturate at this grade.
pub fn max_neighborhood(g: &Granulation) -> u32 {
    g.neighborhoods().iter().map(|n| n.count_ones()).max().unwrap_or(0)
}
