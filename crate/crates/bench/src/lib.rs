//! Fixtures shared by the benchmarks.

use hoqe::formula::{parse_alg, parse_real};
use hoqe::{AlgFormula, AlgebraElement, Octonion, Quaternion, Rational, RealFormula};

/// Elements with small mixed-sign rational coordinates, deterministic.
pub fn elements<T: AlgebraElement>(n: usize) -> Vec<T> {
    (0..n)
        .map(|k| {
            let coords: Vec<Rational> = (0..T::ALGEBRA.dim())
                .map(|i| {
                    let p = ((k * 7 + i * 3) % 11) as i64 - 5;
                    let q = ((k + i) % 4) as i64 + 1;
                    Rational::new(p, q)
                })
                .collect();
            T::from_coords(&coords)
        })
        .collect()
}

pub fn quaternions(n: usize) -> Vec<Quaternion> {
    elements(n)
}

pub fn octonions(n: usize) -> Vec<Octonion> {
    elements(n)
}

pub const INVERSE: &str = "exists y. x*y = 1";
pub const CENTER: &str = "exists y. y + conj(y) = x";
pub const COMMUTANT: &str = "forall y. x*y = y*x";

pub fn alg(src: &str) -> AlgFormula {
    parse_alg(src).expect("fixture parses")
}

/// Real blocks of increasing difficulty for the backend.
pub fn real_blocks() -> Vec<(&'static str, RealFormula)> {
    [
        ("linear", "exists x. a*x + b = 0 && x <= c"),
        ("quadratic", "exists x. x^2 - 3*x + z <= 0 && x >= w"),
        ("two_vars", "exists x. exists y. x + y = z && x*y = w"),
        (
            "eq_chain",
            "exists x. exists y. exists u. x = y && y = u && u^2 <= z",
        ),
    ]
    .into_iter()
    .map(|(name, src)| (name, parse_real(src).expect("fixture parses")))
    .collect()
}
