use std::sync::Arc;

use serde::Deserialize;

use super::granulation::{
    equivalence_classes, neighborhood_map, tolerance_blocks, Granulation, NeighborhoodMode,
};
use super::relation::{Closure, Relation};
use super::table::{Comparator, InformationTable, Quantifier};
use super::universe::Universe;
use crate::error::{Error, Result};

/// Options that shape how a space is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpaceOptions {
    /// Read isolated neighborhoods `n(z) = {z}` as empty.
    pub empty_singletons: bool,
    pub neighborhood_mode: NeighborhoodMode,
}

/// Everything the operator zoo needs: the granules for `l`/`u`/`ub` and the
/// neighborhood map for the graded operators.
#[derive(Clone, Debug)]
pub struct GranularSpace {
    universe: Arc<Universe>,
    relation: Option<Relation>,
    granulation: Arc<Granulation>,
    neighborhoods: Arc<Granulation>,
}

impl GranularSpace {
    pub fn from_relation(rel: Relation, opts: SpaceOptions) -> Result<Self> {
        let granulation = if rel.is_equivalence() {
            equivalence_classes(&rel)?
        } else if rel.is_tolerance() {
            tolerance_blocks(&rel)?
        } else {
            neighborhood_map(&rel, opts.neighborhood_mode)
        };
        let mut nb = neighborhood_map(&rel, opts.neighborhood_mode);
        if opts.empty_singletons {
            nb = nb.with_empty_singletons();
        }
        Ok(GranularSpace {
            universe: rel.universe().clone(),
            relation: Some(rel),
            granulation: Arc::new(granulation),
            neighborhoods: Arc::new(nb),
        })
    }

    pub fn from_granulation(g: Granulation, opts: SpaceOptions) -> Self {
        let nb = Granulation::neighborhood_map(g.universe(), g.neighborhoods())
            .expect("neighborhoods of a valid granulation");
        let nb = if opts.empty_singletons { nb.with_empty_singletons() } else { nb };
        GranularSpace {
            universe: g.universe().clone(),
            relation: None,
            granulation: Arc::new(g),
            neighborhoods: Arc::new(nb),
        }
    }

    pub fn from_table<S: AsRef<str>>(
        table: &InformationTable,
        comparator: Comparator,
        quantifier: Quantifier,
        k: &[S],
        opts: SpaceOptions,
    ) -> Result<Self> {
        let rel = table.derive_relation(comparator, quantifier, k)?;
        GranularSpace::from_relation(rel, opts)
    }

    /// Parses the relation/granulation JSON document.
    pub fn from_json(text: &str, opts: SpaceOptions) -> Result<Self> {
        let doc: GranulationDoc = serde_json::from_str(text)?;
        doc.build(opts)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn relation(&self) -> Option<&Relation> {
        self.relation.as_ref()
    }

    pub fn granulation(&self) -> &Arc<Granulation> {
        &self.granulation
    }

    pub fn neighborhoods(&self) -> &Arc<Granulation> {
        &self.neighborhoods
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GranulationDoc {
    #[serde(default)]
    universe: Option<Vec<String>>,
    #[serde(default)]
    neighborhoods: Option<serde_json::Map<String, serde_json::Value>>,
    #[serde(default)]
    blocks: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pairs: Option<Vec<(String, String)>>,
    #[serde(default)]
    closure: Option<String>,
}

fn push_unique(order: &mut Vec<String>, id: &str) {
    if !order.iter().any(|o| o == id) {
        order.push(id.to_string());
    }
}

impl GranulationDoc {
    fn build(self, opts: SpaceOptions) -> Result<GranularSpace> {
        let forms = [self.neighborhoods.is_some(), self.blocks.is_some(), self.pairs.is_some()];
        if forms.iter().filter(|&&f| f).count() != 1 {
            return Err(Error::input(
                "granulation JSON needs exactly one of `neighborhoods`, `blocks`, `pairs`",
            ));
        }
        if self.closure.is_some() && self.pairs.is_none() {
            return Err(Error::input("`closure` only applies to the `pairs` form"));
        }
        let mut order: Vec<String> = self.universe.clone().unwrap_or_default();
        let declared = self.universe.is_some();
        let mut mention = |id: &str| -> Result<()> {
            if declared {
                if order.iter().any(|o| o == id) {
                    Ok(())
                } else {
                    Err(Error::UnknownObject(id.to_string()))
                }
            } else {
                push_unique(&mut order, id);
                Ok(())
            }
        };

        if let Some(map) = self.neighborhoods {
            let mut parsed = Vec::with_capacity(map.len());
            for (key, v) in map {
                mention(&key)?;
                let members: Vec<String> = serde_json::from_value(v).map_err(|_| {
                    Error::input(format!("neighborhood of `{key}` must be a list of ids"))
                })?;
                for m in &members {
                    mention(m)?;
                }
                parsed.push((key, members));
            }
            let universe = Universe::new(order)?;
            let mut map = vec![None; universe.len()];
            for (key, members) in parsed {
                let i = universe.index_of(&key)?;
                let mut bits = 0u64;
                for m in &members {
                    bits |= 1 << universe.index_of(m)?;
                }
                map[i] = Some(bits);
            }
            let map = map
                .into_iter()
                .enumerate()
                .map(|(i, m)| {
                    m.ok_or_else(|| {
                        Error::input(format!("no neighborhood given for `{}`", universe.id(i)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let g = Granulation::neighborhood_map(&universe, map)?;
            return Ok(GranularSpace::from_granulation(g, opts));
        }

        if let Some(blocks) = self.blocks {
            for b in &blocks {
                for id in b {
                    mention(id)?;
                }
            }
            let universe = Universe::new(order)?;
            let masks = blocks
                .iter()
                .map(|b| b.iter().try_fold(0u64, |acc, id| Ok(acc | 1 << universe.index_of(id)?)))
                .collect::<Result<Vec<u64>>>()?;
            let g = Granulation::block_family(&universe, masks)?;
            return Ok(GranularSpace::from_granulation(g, opts));
        }

        let pairs = self.pairs.unwrap_or_default();
        for (a, b) in &pairs {
            mention(a)?;
            mention(b)?;
        }
        let closure = match self.closure.as_deref() {
            None | Some("none") => Closure::None,
            Some("reflexive-symmetric") => Closure::ReflexiveSymmetric,
            Some(other) => return Err(Error::input(format!("unknown closure `{other}`"))),
        };
        let universe = Universe::new(order)?;
        let rel = Relation::from_pairs(&universe, &pairs, closure)?;
        GranularSpace::from_relation(rel, opts)
    }
}
