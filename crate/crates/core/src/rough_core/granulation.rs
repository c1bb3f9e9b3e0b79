use std::sync::Arc;

use super::relation::Relation;
use super::universe::{iter_bits, ObjectSet, Universe};
use crate::error::{Error, Result};

/// Which family of granules a [`Granulation`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GranulationKind {
    Partition,
    BlockFamily,
    NeighborhoodMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Granules {
    Blocks(Vec<u64>),
    Neighborhoods(Vec<u64>),
}

/// Partition, tolerance block family, or neighborhood map over a universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Granulation {
    universe: Arc<Universe>,
    kind: GranulationKind,
    granules: Granules,
}

/// Direction used when reading neighborhoods off a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NeighborhoodMode {
    #[default]
    Predecessor,
    Successor,
}

impl Granulation {
    /// A partition: nonempty, pairwise disjoint blocks covering the universe.
    pub fn partition(universe: &Arc<Universe>, mut blocks: Vec<u64>) -> Result<Self> {
        let mut seen = 0u64;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::input("partition blocks must be nonempty"));
            }
            if b & !universe.full_mask() != 0 {
                return Err(Error::input("partition block outside the universe"));
            }
            if seen & b != 0 {
                return Err(Error::input(format!(
                    "partition blocks overlap on {}",
                    universe.render(seen & b)
                )));
            }
            seen |= b;
        }
        if seen != universe.full_mask() {
            return Err(Error::input(format!(
                "partition does not cover {}",
                universe.render(universe.full_mask() & !seen)
            )));
        }
        blocks.sort_unstable();
        Ok(Granulation {
            universe: universe.clone(),
            kind: GranulationKind::Partition,
            granules: Granules::Blocks(blocks),
        })
    }

    /// A tolerance block family. Each block must be a maximal clique of the
    /// tolerance the family generates (the union of `B × B`), and the blocks
    /// must cover the universe. Disjoint covering families are classified as
    /// partitions.
    pub fn block_family(universe: &Arc<Universe>, mut blocks: Vec<u64>) -> Result<Self> {
        blocks.sort_unstable();
        blocks.dedup();
        let full = universe.full_mask();
        if blocks.iter().any(|&b| b == 0 || b & !full != 0) {
            return Err(Error::input("blocks must be nonempty subsets of the universe"));
        }
        let cover = blocks.iter().fold(0, |a, b| a | b);
        if cover != full {
            return Err(Error::input(format!(
                "blocks do not cover {}",
                universe.render(full & !cover)
            )));
        }
        let disjoint = blocks
            .iter()
            .enumerate()
            .all(|(i, a)| blocks[i + 1..].iter().all(|b| a & b == 0));
        if disjoint {
            return Granulation::partition(universe, blocks);
        }
        let mut adj = vec![0u64; universe.len()];
        for &b in &blocks {
            for i in iter_bits(b) {
                adj[i] |= b;
            }
        }
        for &b in &blocks {
            let common = iter_bits(b).fold(full, |acc, i| acc & adj[i]);
            if common & !b != 0 {
                return Err(Error::input(format!(
                    "block {} is not maximal: {} is related to all of it",
                    universe.render(b),
                    universe.render(common & !b)
                )));
            }
        }
        Ok(Granulation {
            universe: universe.clone(),
            kind: GranulationKind::BlockFamily,
            granules: Granules::Blocks(blocks),
        })
    }

    /// A neighborhood map, one (possibly empty) neighborhood per object.
    pub fn neighborhood_map(universe: &Arc<Universe>, map: Vec<u64>) -> Result<Self> {
        if map.len() != universe.len() {
            return Err(Error::input(format!(
                "neighborhood map has {} entries for {} objects",
                map.len(),
                universe.len()
            )));
        }
        if map.iter().any(|m| m & !universe.full_mask() != 0) {
            return Err(Error::input("neighborhood outside the universe"));
        }
        Ok(Granulation {
            universe: universe.clone(),
            kind: GranulationKind::NeighborhoodMap,
            granules: Granules::Neighborhoods(map),
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn kind(&self) -> GranulationKind {
        self.kind
    }

    /// Blocks of a partition or block family, ascending by mask.
    pub fn blocks(&self) -> Option<&[u64]> {
        match &self.granules {
            Granules::Blocks(b) => Some(b),
            Granules::Neighborhoods(_) => None,
        }
    }

    pub fn block_sets(&self) -> Vec<ObjectSet> {
        self.granule_masks()
            .into_iter()
            .map(|b| ObjectSet::from_bits_unchecked(&self.universe, b))
            .collect()
    }

    /// The granules used for lower/upper approximation: the blocks, or the
    /// distinct nonempty neighborhoods of a neighborhood map.
    pub fn granule_masks(&self) -> Vec<u64> {
        match &self.granules {
            Granules::Blocks(b) => b.clone(),
            Granules::Neighborhoods(n) => {
                let mut g: Vec<u64> = n.iter().copied().filter(|&m| m != 0).collect();
                g.sort_unstable();
                g.dedup();
                g
            }
        }
    }

    /// Neighborhood of every object. Blocks induce `n(z)` = union of the
    /// blocks containing `z`.
    pub fn neighborhoods(&self) -> Vec<u64> {
        match &self.granules {
            Granules::Neighborhoods(n) => n.clone(),
            Granules::Blocks(blocks) => (0..self.universe.len())
                .map(|z| {
                    blocks
                        .iter()
                        .filter(|&&b| b & (1 << z) != 0)
                        .fold(0, |a, b| a | b)
                })
                .collect(),
        }
    }

    pub fn neighborhood(&self, z: usize) -> u64 {
        match &self.granules {
            Granules::Neighborhoods(n) => n[z],
            Granules::Blocks(_) => self.neighborhoods()[z],
        }
    }

    /// Replaces every neighborhood equal to `{z}` by the empty set.
    pub fn with_empty_singletons(&self) -> Granulation {
        let map = self
            .neighborhoods()
            .into_iter()
            .enumerate()
            .map(|(z, m)| if m == 1 << z { 0 } else { m })
            .collect();
        Granulation::neighborhood_map(&self.universe, map).expect("derived from a valid map")
    }
}

/// Maximal cliques of a reflexive, symmetric relation.
pub fn tolerance_blocks(rel: &Relation) -> Result<Granulation> {
    if !rel.is_reflexive() || !rel.is_symmetric() {
        return Err(Error::precondition(
            "tolerance blocks need a reflexive and symmetric relation",
        ));
    }
    let universe = rel.universe();
    let n = universe.len();
    let adj: Vec<u64> = (0..n).map(|x| rel.successors(x) & !(1 << x)).collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, 0, universe.full_mask(), 0, &mut cliques);
    Granulation::block_family(universe, cliques)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // pivot: the vertex of P ∪ X with most neighbours in P
    let pivot = iter_bits(p | x)
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("P is nonempty");
    for v in iter_bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | (1 << v), p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Reads the neighborhood map off a relation.
pub fn neighborhood_map(rel: &Relation, mode: NeighborhoodMode) -> Granulation {
    let n = rel.universe().len();
    let map = (0..n)
        .map(|z| match mode {
            NeighborhoodMode::Predecessor => rel.predecessors(z),
            NeighborhoodMode::Successor => rel.successors(z),
        })
        .collect();
    Granulation::neighborhood_map(rel.universe(), map).expect("relation rows are in range")
}

/// Equivalence classes of an equivalence relation as a partition.
pub fn equivalence_classes(rel: &Relation) -> Result<Granulation> {
    if !rel.is_equivalence() {
        return Err(Error::precondition("equivalence classes need an equivalence relation"));
    }
    let n = rel.universe().len();
    let mut blocks: Vec<u64> = (0..n).map(|x| rel.successors(x)).collect();
    blocks.sort_unstable();
    blocks.dedup();
    Granulation::partition(rel.universe(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rough_core::relation::Closure;

    fn appendix() -> (Arc<Universe>, Relation) {
        let u = Universe::new(["x1", "x2", "x3", "x4"]).unwrap();
        let t = Relation::from_pairs(&u, &[("x1", "x2"), ("x2", "x3")], Closure::ReflexiveSymmetric)
            .unwrap();
        (u, t)
    }

    #[test]
    fn appendix_blocks() {
        let (u, t) = appendix();
        let g = tolerance_blocks(&t).unwrap();
        assert_eq!(g.kind(), GranulationKind::BlockFamily);
        let rendered: Vec<String> = g.blocks().unwrap().iter().map(|&b| u.render(b)).collect();
        assert_eq!(rendered, ["{x1,x2}", "{x2,x3}", "{x4}"]);
    }

    #[test]
    fn identity_and_universal_blocks() {
        let (u, _) = appendix();
        let id = tolerance_blocks(&Relation::identity(&u)).unwrap();
        assert_eq!(id.blocks().unwrap(), &[1, 2, 4, 8]);
        assert_eq!(id.kind(), GranulationKind::Partition);
        let all = tolerance_blocks(&Relation::universal(&u)).unwrap();
        assert_eq!(all.blocks().unwrap(), &[0b1111]);
    }

    #[test]
    fn blocks_need_tolerance() {
        let (u, _) = appendix();
        let r = Relation::from_pairs(&u, &[("x1", "x2")], Closure::None).unwrap();
        assert!(matches!(tolerance_blocks(&r), Err(Error::Precondition(_))));
    }

    #[test]
    fn appendix_neighborhoods() {
        let (u, t) = appendix();
        let g = neighborhood_map(&t, NeighborhoodMode::Predecessor);
        let n: Vec<String> = g.neighborhoods().iter().map(|&m| u.render(m)).collect();
        assert_eq!(n, ["{x1,x2}", "{x1,x2,x3}", "{x2,x3}", "{x4}"]);
        let s = neighborhood_map(&t, NeighborhoodMode::Successor);
        assert_eq!(g.neighborhoods(), s.neighborhoods());
        assert_eq!(g.with_empty_singletons().neighborhood(3), 0);
    }

    #[test]
    fn partition_validation() {
        let (u, _) = appendix();
        assert!(Granulation::partition(&u, vec![0b0011, 0b0110, 0b1000]).is_err());
        assert!(Granulation::partition(&u, vec![0b0011, 0b0100]).is_err());
        assert!(Granulation::block_family(&u, vec![0b0011, 0b0110]).is_err());
        // {x1,x2}, {x2,x3}, {x1,x3} generate a triangle whose blocks are not maximal
        assert!(Granulation::block_family(&u, vec![0b0011, 0b0110, 0b0101, 0b1000]).is_err());
    }
}
