//! Finite universes, information tables and the granulations derived from them.

mod granulation;
mod relation;
mod space;
mod table;
mod universe;

pub use granulation::{
    equivalence_classes, neighborhood_map, tolerance_blocks, Granulation, GranulationKind,
    NeighborhoodMode,
};
pub use relation::{Closure, Relation};
pub use space::{GranularSpace, SpaceOptions};
pub use table::{Comparator, InformationTable, Quantifier, ValueSet};
pub use universe::{all_subsets, iter_bits, ObjectSet, Universe};

pub(crate) use universe::ensure_same;
