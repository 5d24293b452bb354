//! Exact evaluation and randomized semantic checks.

mod auto;
mod check;
mod eval;

pub use auto::{table_symmetries, AutoSampler, Automorphism, OCTONION_SAMPLING_NOTE};
pub use check::{
    candidates, check_equivalence, check_orbit_invariance, CheckOptions, Disagreement,
    EquivalenceReport, OrbitReport, Violation,
};
pub use eval::{eval_atom, eval_formula, eval_term};
