//! Approximation operators: classical, tolerance-granular, bited, k-graded,
//! identity and fixture tables, plus exhaustive or sampled property probes.

mod operator;
mod profile;
mod spec;

pub use operator::{
    bited_upper, classical_lower, classical_upper, graded_lower, graded_upper, max_neighborhood,
    tol_lower, tol_upper, ApproximationOperator, OperatorKind,
};
pub use profile::{profile, Flag, OperatorProfile, ProfileScope};
pub use spec::{fixture_json, load_fixture, parse_fixture, resolve_operator, OperatorSpec};
