//! Random quantifier-free algebra formulas and sample points.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hoqe::realify::Realification;
use hoqe::verify::{eval_formula, AutoSampler};
use hoqe::{AlgFormula, AlgTerm, AlgebraElement, Formula, Rational, Var};

pub fn random_term(rng: &mut ChaCha8Rng, vars: &[Var], depth: usize) -> AlgTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => AlgTerm::Zero,
            1 => AlgTerm::One,
            2 => AlgTerm::ones(2),
            _ => AlgTerm::Var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_term(rng, vars, depth - 1);
    match rng.gen_range(0..5) {
        0 => AlgTerm::neg(sub(rng)),
        1 => AlgTerm::add(sub(rng), sub(rng)),
        2 => AlgTerm::sub(sub(rng), sub(rng)),
        3 => AlgTerm::mul(sub(rng), sub(rng)),
        _ => AlgTerm::conj(sub(rng)),
    }
}

pub fn random_formula(rng: &mut ChaCha8Rng, vars: &[Var], depth: usize) -> AlgFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        let a = random_term(rng, vars, 2);
        let b = random_term(rng, vars, 2);
        return if rng.gen_bool(0.5) {
            AlgFormula::eq(a, b)
        } else {
            AlgFormula::le(a, b)
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, vars, depth - 1);
    match rng.gen_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::And(vec![sub(rng), sub(rng)]),
        2 => Formula::Or(vec![sub(rng), sub(rng)]),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::And(vec![sub(rng), Formula::not(sub(rng))]),
    }
}

/// Truth of `phi` in the algebra and truth of its realification at the same
/// point, for `points` sampled points.
pub fn compare_realification<T: AlgebraElement>(
    phi: &AlgFormula,
    vars: &[Var],
    sampler: &mut AutoSampler,
    points: usize,
) -> Result<(), String> {
    let mut ctx = Realification::new(T::ALGEBRA, vars);
    let real = ctx.realify_formula(phi).map_err(|e| e.to_string())?;
    for _ in 0..points {
        let values: Vec<T> = vars.iter().map(|_| sampler.mixed_element()).collect();
        let lookup = |v: Var| vars.iter().position(|&w| w == v).map(|i| values[i].clone());
        let expected = eval_formula(phi, &lookup).map_err(|e| e.to_string())?;
        let mut coords: BTreeMap<Var, Rational> = BTreeMap::new();
        for (v, x) in vars.iter().zip(&values) {
            for (c, val) in ctx
                .coords(*v)
                .map_err(|e| e.to_string())?
                .iter()
                .zip(x.coords())
            {
                coords.insert(*c, val);
            }
        }
        let got = real
            .eval_map(&coords)
            .ok_or("realification has unassigned variables")?;
        if got != expected {
            return Err(format!(
                "{phi} at {values:?}: algebra {expected}, real {got}"
            ));
        }
    }
    Ok(())
}
