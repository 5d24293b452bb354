//! Quantifier elimination for the quaternions and octonions in the language
//! `(+, -, *, 0, 1, <=, conj)`.
//!
//! A formula over the algebra is rewritten into coordinates over the ordered
//! base field ([`realify`]), joined with equations that pin a complete
//! orbit invariant of the free variables ([`invariants`]), handed to a real
//! quantifier-elimination backend ([`qe`]), and the quantifier-free answer is
//! pulled back through the invariant terms ([`transfer`]). The [`verify`]
//! module evaluates formulas in the algebras and samples automorphisms to
//! check the results.

pub mod algebra;
pub mod error;
pub mod formula;
pub mod invariants;
pub mod poly;
pub mod qe;
pub mod rational;
pub mod realify;
pub mod transfer;
pub mod var;
pub mod verify;

pub use algebra::{Algebra, AlgebraElement, Octonion, Quaternion};
pub use error::{Error, Result};
pub use formula::{AlgAtom, AlgFormula, AlgTerm, Formula, RealAtom, RealFormula, Rel};
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use var::Var;
