//! Set-valued precision/accuracy measures over approximation operators, the
//! structure of their ranges, and the verdicts built on them.

mod measure;
mod range;
mod verdict;

pub use measure::{
    amalg, amalg_standard_inclusion_failures, compare_reference, finv, ABSENT, nabla, Discrepancy, MeasureKind,
    MeasureSpec, MeasureTable,
};
pub use range::{default_definiteness_pair, measure_range, Definiteness, RangeStructure};
pub use verdict::{verdict, ImportanceClass, VerdictKind, Verdict, Witness};
