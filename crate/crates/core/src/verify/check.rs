//! Randomized semantic checks: equivalence of a formula with its eliminated
//! form, and invariance of a formula under automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::auto::{AutoSampler, Automorphism, OCTONION_SAMPLING_NOTE};
use super::eval::eval_formula;
use crate::algebra::{format_coords, Algebra, AlgebraElement, Octonion, Quaternion};
use crate::error::{Error, Result};
use crate::formula::{AlgFormula, Quantifier};
use crate::rational::Rational;
use crate::var::Var;

/// Largest number of matrix evaluations spent on one witness search.
const SEARCH_BUDGET: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    /// Coordinates of sampled elements are `p/q`, `|p|, q <= bound`.
    pub bound: i64,
    /// Random candidates tried per bound variable, on top of the structured ones.
    pub witness_bound: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            samples: 1000,
            seed: 0,
            bound: 10,
            witness_bound: 32,
        }
    }
}

/// One sampled point where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub assignment: BTreeMap<String, String>,
    pub original: bool,
    pub eliminated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub kind: &'static str,
    pub algebra: Algebra,
    pub samples: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Points where no witness (or counterexample) was found but the
    /// eliminated side claims one exists.
    pub inconclusive: usize,
    pub seed: u64,
    pub bound: i64,
    pub witness_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub header: Option<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Counterexamples shown in text form; JSON output carries all of them.
const LISTED: usize = 10;

fn more(f: &mut fmt::Formatter<'_>, n: usize) -> fmt::Result {
    if n > LISTED {
        writeln!(f, "  ... and {} more", n - LISTED)?;
    }
    Ok(())
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.header {
            writeln!(f, "note: {h}")?;
        }
        writeln!(
            f,
            "{} check over {}: {} samples, {} agreements, {} disagreements, {} inconclusive (seed {}, bound {})",
            self.kind,
            self.algebra,
            self.samples,
            self.agreements,
            self.disagreements.len(),
            self.inconclusive,
            self.seed,
            self.bound
        )?;
        for d in self.disagreements.iter().take(LISTED) {
            writeln!(
                f,
                "  disagreement at {}: original {}, eliminated {}",
                show_assignment(&d.assignment),
                d.original,
                d.eliminated
            )?;
        }
        more(f, self.disagreements.len())
    }
}

/// A point whose truth value changed under an automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub assignment: BTreeMap<String, String>,
    pub image: BTreeMap<String, String>,
    pub before: bool,
    pub after: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub kind: &'static str,
    pub algebra: Algebra,
    pub samples: usize,
    pub agreements: usize,
    pub violations: Vec<Violation>,
    /// Variables held fixed while the others are moved.
    pub pinned: BTreeMap<String, String>,
    pub seed: u64,
    pub bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub header: Option<String>,
}

impl OrbitReport {
    pub fn invariant(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for OrbitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.header {
            writeln!(f, "note: {h}")?;
        }
        writeln!(
            f,
            "orbit check over {}: {} samples, {} agreements, {} violations (seed {}, bound {})",
            self.algebra,
            self.samples,
            self.agreements,
            self.violations.len(),
            self.seed,
            self.bound
        )?;
        if !self.pinned.is_empty() {
            writeln!(f, "  pinned: {}", show_assignment(&self.pinned))?;
        }
        for v in self.violations.iter().take(LISTED) {
            writeln!(
                f,
                "  violation at {} -> {}: {} became {}",
                show_assignment(&v.assignment),
                show_assignment(&v.image),
                v.before,
                v.after
            )?;
        }
        more(f, self.violations.len())
    }
}

fn show_assignment(a: &BTreeMap<String, String>) -> String {
    a.iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn header(algebra: Algebra) -> Option<String> {
    (algebra == Algebra::Oct).then(|| OCTONION_SAMPLING_NOTE.to_string())
}

fn render<T: AlgebraElement>(vars: &[Var], vals: &[T]) -> BTreeMap<String, String> {
    vars.iter()
        .zip(vals)
        .map(|(v, x)| (v.name().to_string(), format_coords(&x.coords(), T::ALGEBRA)))
        .collect()
}

fn lookup<'a, T: AlgebraElement>(vars: &'a [Var], vals: &'a [T]) -> impl Fn(Var) -> Option<T> + 'a {
    move |v| vars.iter().position(|&w| w == v).map(|i| vals[i].clone())
}

/// Compares `original` (quantifier-free, or a single block of one kind of
/// quantifier over a quantifier-free matrix) with the quantifier-free
/// `eliminated` on seeded sample points.
///
/// Quantified sides are decided by searching for a witness (for `exists`) or
/// a counterexample (for `forall`). When the search finds nothing and the
/// eliminated side agrees with that outcome, the point counts as an
/// agreement; otherwise it is inconclusive.
pub fn check_equivalence(
    original: &AlgFormula,
    eliminated: &AlgFormula,
    algebra: Algebra,
    opts: &CheckOptions,
) -> Result<EquivalenceReport> {
    match algebra {
        Algebra::Quat => equivalence::<Quaternion>(original, eliminated, opts),
        Algebra::Oct => equivalence::<Octonion>(original, eliminated, opts),
    }
}

struct Block {
    quantifier: Option<Quantifier>,
    bound: Vec<Var>,
    matrix: AlgFormula,
}

fn split_block(phi: &AlgFormula) -> Result<Block> {
    if phi.is_quantifier_free() {
        return Ok(Block {
            quantifier: None,
            bound: Vec::new(),
            matrix: phi.clone(),
        });
    }
    let p = phi.prenex_parts();
    let q = p.prefix[0].0;
    if p.prefix.iter().any(|(r, _)| *r != q) {
        return Err(Error::UnsupportedShape(
            "checking needs at most one block of like quantifiers".into(),
        ));
    }
    Ok(Block {
        quantifier: Some(q),
        bound: p.prefix.iter().map(|(_, v)| *v).collect(),
        matrix: p.matrix,
    })
}

fn union_vars(a: &AlgFormula, b: &AlgFormula) -> Vec<Var> {
    let mut vars = a.free_vars();
    for v in b.free_vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars
}

/// Structured sample points first (all zero, all one, each basis unit),
/// then seeded random ones.
fn sample_point<T: AlgebraElement>(
    i: usize,
    n: usize,
    sampler: &mut AutoSampler,
    extra: &[T],
) -> Vec<T> {
    let dim = T::ALGEBRA.dim();
    let fixed = |x: T| vec![x; n];
    if i == 0 {
        return fixed(T::zero());
    }
    if i < dim + 1 {
        return fixed(T::basis(i - 1));
    }
    let i = i - dim - 1;
    if i < extra.len() {
        return fixed(extra[i].clone());
    }
    (0..n).map(|_| sampler.mixed_element()).collect()
}

fn equivalence<T: AlgebraElement>(
    original: &AlgFormula,
    eliminated: &AlgFormula,
    opts: &CheckOptions,
) -> Result<EquivalenceReport> {
    if !eliminated.is_quantifier_free() {
        return Err(Error::NotQuantifierFree);
    }
    let block = split_block(original)?;
    let vars = union_vars(original, eliminated);
    let mut sampler = AutoSampler::new(T::ALGEBRA, opts.seed, opts.bound);
    let mut report = EquivalenceReport {
        kind: "equivalence",
        algebra: T::ALGEBRA,
        samples: opts.samples,
        agreements: 0,
        disagreements: Vec::new(),
        inconclusive: 0,
        seed: opts.seed,
        bound: opts.bound,
        witness_bound: opts.witness_bound,
        header: header(T::ALGEBRA),
    };
    for i in 0..opts.samples {
        let point: Vec<T> = sample_point(i, vars.len(), &mut sampler, &[]);
        let elim = eval_formula(eliminated, &lookup(&vars, &point))?;
        let orig = match block.quantifier {
            None => Some(eval_formula(&block.matrix, &lookup(&vars, &point))?),
            Some(q) => {
                let want = q == Quantifier::Exists;
                let mut search = Search {
                    matrix: &block.matrix,
                    bound: &block.bound,
                    target: want,
                    budget: SEARCH_BUDGET,
                    witness_bound: opts.witness_bound,
                };
                let mut vars_all = vars.clone();
                let mut vals_all = point.clone();
                if search.find(&mut vars_all, &mut vals_all, &mut sampler)? {
                    Some(want)
                } else if elim != want {
                    // nothing found, and the eliminated side says nothing exists
                    Some(!want)
                } else {
                    None
                }
            }
        };
        match orig {
            None => report.inconclusive += 1,
            Some(o) if o == elim => report.agreements += 1,
            Some(o) => report.disagreements.push(Disagreement {
                assignment: render(&vars, &point),
                original: o,
                eliminated: elim,
            }),
        }
    }
    Ok(report)
}

/// Depth-first search for values of the bound variables making the matrix
/// evaluate to `target`.
struct Search<'a> {
    matrix: &'a AlgFormula,
    bound: &'a [Var],
    target: bool,
    budget: usize,
    witness_bound: usize,
}

impl Search<'_> {
    fn find<T: AlgebraElement>(
        &mut self,
        vars: &mut Vec<Var>,
        vals: &mut Vec<T>,
        sampler: &mut AutoSampler,
    ) -> Result<bool> {
        let k = self.bound.iter().filter(|v| vars.contains(v)).count();
        if k == self.bound.len() {
            if self.budget == 0 {
                return Ok(false);
            }
            self.budget -= 1;
            return Ok(eval_formula(self.matrix, &lookup(vars, vals))? == self.target);
        }
        let y = self.bound[k];
        let mut cands = candidates(vals);
        for _ in 0..self.witness_bound {
            cands.push(sampler.mixed_element());
        }
        for c in cands {
            if self.budget == 0 {
                break;
            }
            vars.push(y);
            vals.push(c);
            let found = self.find(vars, vals, sampler)?;
            vars.pop();
            vals.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Witness candidates built from the values already assigned: small
/// constants, basis units, and simple expressions in the assigned values.
pub fn candidates<T: AlgebraElement>(known: &[T]) -> Vec<T> {
    let dim = T::ALGEBRA.dim();
    let half = Rational::new(1, 2);
    let mut out: Vec<T> = vec![T::zero(), T::one(), T::one().neg()];
    for k in 1..dim {
        out.push(T::basis(k));
        out.push(T::basis(k).neg());
    }
    let push = |x: T, out: &mut Vec<T>| {
        if !out.contains(&x) {
            out.push(x);
        }
    };
    for a in known {
        push(a.clone(), &mut out);
        push(a.neg(), &mut out);
        push(a.conj(), &mut out);
        push(a.scale(&half), &mut out);
        push(a.conj().scale(&half), &mut out);
        push(T::from_scalar(a.re()), &mut out);
        push(a.sub(&T::from_scalar(a.re())), &mut out);
        if let Some(inv) = a.inverse() {
            push(inv.clone(), &mut out);
            push(inv.neg(), &mut out);
        }
    }
    if known.len() <= 4 {
        for a in known {
            let Some(inv) = a.inverse() else { continue };
            for b in known {
                push(inv.mul(b), &mut out);
                push(b.mul(&inv), &mut out);
                push(a.mul(b), &mut out);
                push(b.sub(a), &mut out);
            }
        }
    }
    out
}

/// Checks that the truth value of the quantifier-free `phi` is unchanged
/// when its free variables are moved by sampled automorphisms. Variables in
/// `pinned` keep the given coordinates and are not moved; this is how
/// non-invariant formulas mentioning constants are expressed.
pub fn check_orbit_invariance(
    phi: &AlgFormula,
    algebra: Algebra,
    pinned: &[(Var, Vec<Rational>)],
    opts: &CheckOptions,
) -> Result<OrbitReport> {
    match algebra {
        Algebra::Quat => orbit::<Quaternion>(phi, pinned, opts),
        Algebra::Oct => orbit::<Octonion>(phi, pinned, opts),
    }
}

fn orbit<T: AlgebraElement>(
    phi: &AlgFormula,
    pinned: &[(Var, Vec<Rational>)],
    opts: &CheckOptions,
) -> Result<OrbitReport> {
    if !phi.is_quantifier_free() {
        return Err(Error::NotQuantifierFree);
    }
    let dim = T::ALGEBRA.dim();
    for (_, c) in pinned {
        if c.len() != dim {
            return Err(Error::ArityMismatch {
                expected: dim,
                got: c.len(),
            });
        }
    }
    let pin_vars: Vec<Var> = pinned.iter().map(|(v, _)| *v).collect();
    let pin_vals: Vec<T> = pinned.iter().map(|(_, c)| T::from_coords(c)).collect();
    let moving: Vec<Var> = phi
        .free_vars()
        .into_iter()
        .filter(|v| !pin_vars.contains(v))
        .collect();
    let mut all_vars = moving.clone();
    all_vars.extend(&pin_vars);

    let mut sampler = AutoSampler::new(T::ALGEBRA, opts.seed, opts.bound);
    let mut report = OrbitReport {
        kind: "orbit",
        algebra: T::ALGEBRA,
        samples: opts.samples,
        agreements: 0,
        violations: Vec::new(),
        pinned: render(&pin_vars, &pin_vals),
        seed: opts.seed,
        bound: opts.bound,
        header: header(T::ALGEBRA),
    };
    for i in 0..opts.samples {
        let point: Vec<T> = sample_point(i, moving.len(), &mut sampler, &pin_vals);
        let g: Automorphism = sampler.sample_automorphism();
        let image: Vec<T> = point.iter().map(|x| g.apply(x)).collect();
        let mut before_vals = point.clone();
        before_vals.extend(pin_vals.iter().cloned());
        let mut after_vals = image.clone();
        after_vals.extend(pin_vals.iter().cloned());
        let before = eval_formula(phi, &lookup(&all_vars, &before_vals))?;
        let after = eval_formula(phi, &lookup(&all_vars, &after_vals))?;
        if before == after {
            report.agreements += 1;
        } else {
            report.violations.push(Violation {
                assignment: render(&moving, &point),
                image: render(&moving, &image),
                before,
                after,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_alg;

    fn opts(samples: usize) -> CheckOptions {
        CheckOptions {
            samples,
            ..CheckOptions::default()
        }
    }

    fn f(s: &str) -> AlgFormula {
        parse_alg(s).unwrap()
    }

    #[test]
    fn inverse_exists_iff_nonzero() {
        let r = check_equivalence(
            &f("exists y. x*y = 1"),
            &f("!(x = 0)"),
            Algebra::Quat,
            &opts(200),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.inconclusive, 0);
        // at x = 0 nothing is found and `true` claims a witness
        let r = check_equivalence(
            &f("exists y. x*y = 1"),
            &f("true"),
            Algebra::Quat,
            &opts(50),
        )
        .unwrap();
        assert!(r.passed() && r.inconclusive > 0);
        let r = check_equivalence(
            &f("exists y. x*y = 1"),
            &f("x = 0"),
            Algebra::Quat,
            &opts(50),
        )
        .unwrap();
        assert!(!r.passed());
        assert!(r.disagreements.iter().all(|d| d.assignment["x"] != "0"));
    }

    #[test]
    fn octonion_center() {
        let r = check_equivalence(
            &f("exists y. y + conj(y) = x"),
            &f("x = conj(x)"),
            Algebra::Oct,
            &opts(200),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.header.is_some());
    }

    #[test]
    fn universal_block() {
        let r = check_equivalence(
            &f("forall y. x*y = y*x"),
            &f("x = conj(x)"),
            Algebra::Quat,
            &opts(100),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
        let r = check_equivalence(
            &f("forall y. x*y = y*x"),
            &f("true"),
            Algebra::Quat,
            &opts(100),
        )
        .unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn mixed_blocks_rejected() {
        let e = check_equivalence(
            &f("forall y. exists w. y*w = x"),
            &f("true"),
            Algebra::Quat,
            &opts(1),
        );
        assert!(matches!(e, Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn orbit_positive_and_negative() {
        let r = check_orbit_invariance(&f("x*x = 0 - 1"), Algebra::Quat, &[], &opts(100)).unwrap();
        assert!(r.invariant());
        let i = Quaternion::i().coords();
        let r = check_orbit_invariance(
            &f("x = p"),
            Algebra::Quat,
            &[(Var::new("p"), i.clone())],
            &opts(100),
        )
        .unwrap();
        assert!(!r.invariant(), "{r}");
        let oi = Octonion::basis(1).coords();
        let r = check_orbit_invariance(
            &f("x = p"),
            Algebra::Oct,
            &[(Var::new("p"), oi)],
            &opts(100),
        )
        .unwrap();
        assert!(!r.invariant(), "{r}");
    }

    #[test]
    fn deterministic_reports() {
        let a = check_equivalence(
            &f("exists y. y*y = x"),
            &f("true"),
            Algebra::Quat,
            &opts(60),
        )
        .unwrap();
        let b = check_equivalence(
            &f("exists y. y*y = x"),
            &f("true"),
            Algebra::Quat,
            &opts(60),
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
