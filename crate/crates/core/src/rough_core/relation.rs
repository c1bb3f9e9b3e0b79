use std::sync::Arc;

use super::universe::{iter_bits, Universe};
use crate::error::{Error, Result};

/// A binary relation on a universe, stored as one successor mask per object.
///
/// The reflexive/symmetric/transitive flags are computed from the matrix at
/// construction and therefore always describe it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    universe: Arc<Universe>,
    rows: Vec<u64>,
    reflexive: bool,
    symmetric: bool,
    transitive: bool,
}

/// Closure applied to generator pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    None,
    ReflexiveSymmetric,
}

impl Relation {
    /// Builds a relation from successor masks (`rows[x]` holds every `w` with `(x, w)`).
    pub fn from_rows(universe: &Arc<Universe>, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != universe.len() {
            return Err(Error::input(format!(
                "relation has {} rows for {} objects",
                rows.len(),
                universe.len()
            )));
        }
        let full = universe.full_mask();
        if rows.iter().any(|r| r & !full != 0) {
            return Err(Error::input("relation row references an object outside the universe"));
        }
        let n = rows.len();
        let reflexive = (0..n).all(|x| rows[x] & (1 << x) != 0);
        let symmetric = (0..n).all(|x| iter_bits(rows[x]).all(|w| rows[w] & (1 << x) != 0));
        let transitive = (0..n).all(|x| {
            iter_bits(rows[x]).all(|w| rows[w] & !rows[x] == 0)
        });
        Ok(Relation { universe: universe.clone(), rows, reflexive, symmetric, transitive })
    }

    pub fn from_pairs<S: AsRef<str>>(
        universe: &Arc<Universe>,
        pairs: &[(S, S)],
        closure: Closure,
    ) -> Result<Self> {
        let mut rows = vec![0u64; universe.len()];
        for (a, b) in pairs {
            let i = universe.index_of(a.as_ref())?;
            let j = universe.index_of(b.as_ref())?;
            rows[i] |= 1 << j;
            if closure == Closure::ReflexiveSymmetric {
                rows[j] |= 1 << i;
            }
        }
        if closure == Closure::ReflexiveSymmetric {
            for (i, r) in rows.iter_mut().enumerate() {
                *r |= 1 << i;
            }
        }
        Relation::from_rows(universe, rows)
    }

    pub fn identity(universe: &Arc<Universe>) -> Self {
        let rows = (0..universe.len()).map(|i| 1u64 << i).collect();
        Relation::from_rows(universe, rows).expect("identity is well formed")
    }

    pub fn universal(universe: &Arc<Universe>) -> Self {
        let rows = vec![universe.full_mask(); universe.len()];
        Relation::from_rows(universe, rows).expect("universal relation is well formed")
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn contains(&self, x: usize, w: usize) -> bool {
        self.rows[x] & (1 << w) != 0
    }

    /// Successor mask of `x`.
    pub fn successors(&self, x: usize) -> u64 {
        self.rows[x]
    }

    /// Predecessor mask of `z`.
    pub fn predecessors(&self, z: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| *r & (1 << z) != 0)
            .fold(0, |acc, (w, _)| acc | (1 << w))
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn is_tolerance(&self) -> bool {
        self.reflexive && self.symmetric
    }

    pub fn is_equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }

    /// All related pairs as index pairs, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| iter_bits(*r).map(move |w| (x, w)))
            .collect()
    }
}
