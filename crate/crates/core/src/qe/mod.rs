//! Quantifier elimination over real closed fields for quantified variables
//! of degree at most two, by equation substitution and linear/quadratic
//! virtual substitution.

mod clause;
mod simplify;
mod vs;

use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Formula, RealAtom, RealFormula, Rel};
use crate::poly::Poly;
use crate::var::Var;

pub use clause::{clauses_to_formula, simplify_clauses, Clause};
pub use simplify::simplify;
pub use vs::{roots_of, Root, TestPoint};

pub const DEFAULT_MAX_CLAUSES: usize = 100_000;
pub const DEFAULT_MAX_MONOMIALS: usize = 1_000_000;

/// How the next variable of a block is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// Per clause: constant-coefficient linear equations first, then linear
    /// equations with the simplest coefficient, then lowest degree.
    #[default]
    Auto,
    /// Innermost variable of the block first.
    Given,
}

impl FromStr for Order {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Order::Auto),
            "given" => Ok(Order::Given),
            _ => Err(format!("unknown order `{s}` (expected auto or given)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QeOptions {
    pub order: Order,
    pub max_clauses: usize,
    pub max_monomials: usize,
    /// Merge and prune clauses of the result.
    pub simplify: bool,
}

impl Default for QeOptions {
    fn default() -> Self {
        QeOptions {
            order: Order::Auto,
            max_clauses: DEFAULT_MAX_CLAUSES,
            max_monomials: DEFAULT_MAX_MONOMIALS,
            simplify: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackendSteps {
    pub eq_subst: u64,
    pub linear_vs: u64,
    pub quadratic_vs: u64,
}

impl BackendSteps {
    pub fn total(&self) -> u64 {
        self.eq_subst + self.linear_vs + self.quadratic_vs
    }
}

/// Result of substituting the root of a linear equation.
#[derive(Clone, Debug, PartialEq)]
pub struct EqSubst {
    /// The clause with the variable replaced, or `None` if that is
    /// contradictory.
    pub substituted: Option<Clause>,
    /// Coefficient of the variable; the substitution assumes it is nonzero.
    pub guard: Poly,
    /// The branch where the coefficient vanishes, when it can.
    pub degenerate: Option<Clause>,
}

/// Replaces `var` using a linear equation `c var + r = 0` of the clause.
pub fn eq_substitute(clause: &Clause, var: Var) -> Result<EqSubst> {
    let eq = clause
        .entries()
        .filter(|(q, m)| *m == clause::ZERO && q.degree_in(var) == 1)
        .map(|(q, _)| q.clone())
        .min_by_key(|q| eq_score(q, var))
        .ok_or(Error::NotApplicable(var))?;
    Ok(substitute_equation(clause, var, &eq))
}

fn eq_score(q: &Poly, var: Var) -> (bool, u32, usize, usize) {
    let c = &q.coeffs_in(var)[1];
    (!c.is_constant(), c.total_degree(), c.len(), q.len())
}

/// Upper bound on the degree in the other block variables once `var` is
/// solved from the linear equation `eq` and substituted into the clause.
fn degree_after_substitution(clause: &Clause, var: Var, eq: &Poly, vars: &[Var]) -> u32 {
    let cs = eq.coeffs_in(var);
    let (r, c) = (&cs[0], &cs[1]);
    let mut worst = 0;
    for &u in vars.iter().filter(|&&u| u != var) {
        let (dr, dc) = (r.degree_in(u), c.degree_in(u));
        for (a, _) in clause.entries().filter(|(a, _)| *a != eq) {
            let parts = a.coeffs_in(var);
            let k = parts.len().saturating_sub(1) as u32;
            for (i, ai) in parts.iter().enumerate() {
                if !ai.is_zero() {
                    let i = i as u32;
                    worst = worst.max(ai.degree_in(u) + i * dr + (k - i) * dc);
                }
            }
        }
    }
    worst
}

fn substitute_equation(clause: &Clause, var: Var, eq: &Poly) -> EqSubst {
    let cs = eq.coeffs_in(var);
    let (r, c) = (&cs[0], &cs[1]);
    let rest = clause.without(eq);
    let (with, without) = rest.split_on(var);
    let num = -r;
    let substituted = if let Some(k) = c.constant_value() {
        let val = num.scale(&k.recip());
        without.conjoin(
            with.iter()
                .map(|a| RealAtom::new(a.poly.substitute(var, &val), a.rel)),
        )
    } else {
        let mut atoms = vec![RealAtom::ne(c.clone())];
        for a in &with {
            let p = vs::linear_value(&a.poly.coeffs_in(var), &num, c, a.rel);
            atoms.push(RealAtom::new(p, a.rel));
        }
        without.conjoin(atoms)
    };
    let degenerate = if c.is_constant() {
        None
    } else {
        rest.conjoin([RealAtom::eq(c.clone()), RealAtom::eq(r.clone())])
    };
    EqSubst {
        substituted,
        guard: c.clone(),
        degenerate,
    }
}

/// Eliminates `exists var` from a disjunction of clauses in which `var` has
/// degree at most one.
pub fn linear_vs(clauses: &[Clause], var: Var) -> Result<Vec<Clause>> {
    vs_checked(clauses, var, 1)
}

/// Eliminates `exists var` from a disjunction of clauses in which `var` has
/// degree at most two.
pub fn quadratic_vs(clauses: &[Clause], var: Var) -> Result<Vec<Clause>> {
    vs_checked(clauses, var, 2)
}

fn vs_checked(clauses: &[Clause], var: Var, max: u32) -> Result<Vec<Clause>> {
    let mut out = Vec::new();
    for c in clauses {
        check_degree(c, var, max)?;
        let mut qe = Qe::new(QeOptions::default());
        let mut pending = vec![c.clone()];
        while let Some(c) = pending.pop() {
            let (done, more) = qe.virtual_substitution(&c, var, false)?;
            out.extend(done);
            pending.extend(more);
        }
    }
    Ok(simplify_clauses(out))
}

/// Reduces the other atoms modulo an equation whose leading coefficient in a
/// block variable is constant; where the equation holds, remainders have the
/// same signs. Only the first variable with such an equation is used, so a
/// reduced clause is not reduced again. `None` when nothing changes,
/// `Some(None)` when the clause becomes false.
fn reduce_by_equation(c: &Clause, vars: &[Var]) -> Option<Option<Clause>> {
    let (v, e) = vars.iter().find_map(|&v| {
        c.entries()
            .filter(|(e, m)| *m == clause::ZERO && e.degree_in(v) >= 2 && e.rem_in(e, v).is_some())
            .min_by_key(|(e, _)| (e.degree_in(v), e.len()))
            .map(|(e, _)| (v, e.clone()))
    })?;
    let d = e.degree_in(v);
    let mut changed = false;
    let mut atoms = Vec::with_capacity(c.len());
    for (q, m) in c.entries() {
        let q = if *q != e && q.degree_in(v) >= d {
            changed = true;
            q.rem_in(&e, v).expect("constant leading coefficient")
        } else {
            q.clone()
        };
        atoms.push(clause::mask_atom(&q, m).expect("proper mask"));
    }
    changed.then(|| Clause::from_atoms(atoms))
}

/// `q` is `v^k * r` with `r` free of `v`, and the mask only asks whether `q`
/// vanishes.
fn zero_test_of_power(q: &Poly, mask: u8, v: Var) -> bool {
    if mask != clause::ZERO && mask != clause::NEG | clause::POS {
        return false;
    }
    let k = q.degree_in(v);
    k > 0 && q.exponent_gcd(v) == k && q.terms().all(|(m, _)| m.degree_in(v) == k)
}

fn check_degree(c: &Clause, var: Var, max: u32) -> Result<()> {
    for a in c.atoms() {
        let d = a.poly.degree_in(var);
        if d > max {
            return Err(Error::DegreeTooHigh {
                var,
                atom: a.to_string(),
                degree: d,
            });
        }
    }
    Ok(())
}

/// Disjunctive normal form of a quantifier-free formula as normalized
/// clauses.
pub fn to_clauses(f: &RealFormula, max_clauses: usize) -> Result<Vec<Clause>> {
    let out = dnf(f, true, max_clauses)?;
    Ok(out)
}

fn dnf(f: &RealFormula, positive: bool, limit: usize) -> Result<Vec<Clause>> {
    let and = |a: Vec<Clause>, b: Vec<Clause>| -> Result<Vec<Clause>> {
        let mut out = Vec::new();
        for x in &a {
            for y in &b {
                if let Some(c) = x.and(y) {
                    out.push(c);
                }
            }
            if out.len() > limit {
                return Err(Error::SizeLimitExceeded {
                    what: "clauses",
                    count: out.len(),
                    limit,
                });
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    };
    let or = |mut a: Vec<Clause>, b: Vec<Clause>| -> Result<Vec<Clause>> {
        a.extend(b);
        a.sort();
        a.dedup();
        if a.len() > limit {
            return Err(Error::SizeLimitExceeded {
                what: "clauses",
                count: a.len(),
                limit,
            });
        }
        Ok(a)
    };
    match (f, positive) {
        (Formula::True, true) | (Formula::False, false) => Ok(vec![Clause::top()]),
        (Formula::True, false) | (Formula::False, true) => Ok(Vec::new()),
        (Formula::Atom(a), _) => {
            let a = if positive { a.clone() } else { a.negated() };
            Ok(Clause::from_atoms([a]).into_iter().collect())
        }
        (Formula::Not(g), _) => dnf(g, !positive, limit),
        (Formula::And(gs), true) | (Formula::Or(gs), false) => {
            let mut acc = vec![Clause::top()];
            for g in gs {
                acc = and(acc, dnf(g, positive, limit)?)?;
                if acc.is_empty() {
                    break;
                }
            }
            Ok(acc)
        }
        (Formula::Or(gs), true) | (Formula::And(gs), false) => {
            let mut acc = Vec::new();
            for g in gs {
                acc = or(acc, dnf(g, positive, limit)?)?;
            }
            Ok(acc)
        }
        (Formula::Implies(a, b), true) => or(dnf(a, false, limit)?, dnf(b, true, limit)?),
        (Formula::Implies(a, b), false) => and(dnf(a, true, limit)?, dnf(b, false, limit)?),
        (Formula::Exists(..) | Formula::Forall(..), _) => Err(Error::NotQuantifierFree),
    }
}

/// The elimination engine; keeps step counters across calls.
#[derive(Clone, Debug)]
pub struct Qe {
    pub options: QeOptions,
    pub steps: BackendSteps,
    partial: Option<RealFormula>,
    /// Results of final substitutions kept unexpanded.
    finished: Vec<RealFormula>,
}

impl Qe {
    pub fn new(options: QeOptions) -> Self {
        Qe {
            options,
            steps: BackendSteps::default(),
            partial: None,
            finished: Vec::new(),
        }
    }

    /// After a failed call: the eliminated part of the block together with
    /// the clauses still quantified.
    pub fn partial(&self) -> Option<&RealFormula> {
        self.partial.as_ref()
    }

    /// Eliminates every quantifier, innermost block first. Universal blocks
    /// are handled as negated existential ones.
    pub fn eliminate(&mut self, phi: &RealFormula) -> Result<RealFormula> {
        Ok(match phi {
            Formula::True | Formula::False | Formula::Atom(_) => phi.clone(),
            Formula::Not(g) => Formula::not(self.eliminate(g)?),
            Formula::And(gs) => Formula::and_all(
                gs.iter()
                    .map(|g| self.eliminate(g))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Formula::Or(gs) => Formula::or_all(
                gs.iter()
                    .map(|g| self.eliminate(g))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Formula::Implies(a, b) => Formula::implies(self.eliminate(a)?, self.eliminate(b)?),
            Formula::Exists(..) => {
                let (vars, body) = block(phi, true);
                let inner = self.eliminate(body)?;
                self.eliminate_block(&vars, &inner)?
            }
            Formula::Forall(..) => {
                let (vars, body) = block(phi, false);
                let inner = self.eliminate(body)?;
                let neg = self.eliminate_block(&vars, &Formula::not(inner))?;
                simplify(&Formula::not(neg))
            }
        })
    }

    /// `exists vars. matrix` for a quantifier-free matrix.
    pub fn eliminate_block(&mut self, vars: &[Var], matrix: &RealFormula) -> Result<RealFormula> {
        let clauses = to_clauses(matrix, self.options.max_clauses)?;
        let out = self.eliminate_clauses(vars, clauses)?;
        let finished = std::mem::take(&mut self.finished);
        if out.len() == 1 && out[0].is_empty() {
            return Ok(Formula::True);
        }
        Ok(Formula::or_all(
            std::iter::once(clauses_to_formula(&out)).chain(finished),
        ))
    }

    /// Eliminates `vars` from a disjunction of clauses. Some results may be
    /// left in `self.finished`.
    fn eliminate_clauses(&mut self, vars: &[Var], clauses: Vec<Clause>) -> Result<Vec<Clause>> {
        self.partial = None;
        self.finished.clear();
        let mut pending = clauses;
        let mut seen: HashSet<Clause> = HashSet::new();
        let mut out: Vec<Clause> = Vec::new();
        let mut monomials = 0usize;
        while let Some(c) = pending.pop() {
            let Some(c) = c.propagate_equations() else {
                continue;
            };
            if !seen.insert(c.clone()) {
                continue;
            }
            if !vars.iter().any(|&v| c.contains_var(v)) {
                if c.is_empty() {
                    // `true` absorbs everything else
                    return Ok(vec![Clause::top()]);
                }
                monomials += c.monomials();
                out.push(c);
                if monomials > self.options.max_monomials {
                    let err = Error::SizeLimitExceeded {
                        what: "monomials",
                        count: monomials,
                        limit: self.options.max_monomials,
                    };
                    self.record_partial(vars, &out, &pending);
                    return Err(err);
                }
                continue;
            }
            let before = self.finished.len();
            let step = self.step(&c, vars);
            monomials += self.finished[before..]
                .iter()
                .map(formula_monomials)
                .sum::<usize>();
            if monomials > self.options.max_monomials {
                let err = Error::SizeLimitExceeded {
                    what: "monomials",
                    count: monomials,
                    limit: self.options.max_monomials,
                };
                self.record_partial(vars, &out, &pending);
                return Err(err);
            }
            match step {
                Ok((done, more)) => {
                    // `done` is free of one variable only
                    pending.extend(done);
                    pending.extend(more);
                }
                Err(e) => {
                    pending.push(c);
                    self.record_partial(vars, &out, &pending);
                    return Err(e);
                }
            }
            if pending.len() + out.len() > self.options.max_clauses {
                let count = pending.len() + out.len();
                self.record_partial(vars, &out, &pending);
                return Err(Error::SizeLimitExceeded {
                    what: "clauses",
                    count,
                    limit: self.options.max_clauses,
                });
            }
        }
        Ok(if self.options.simplify {
            simplify_clauses(out)
        } else {
            out.sort();
            out.dedup();
            out
        })
    }

    fn record_partial(&mut self, vars: &[Var], out: &[Clause], pending: &[Clause]) {
        let done = clauses_to_formula(out);
        let rest = vars
            .iter()
            .rev()
            .fold(clauses_to_formula(pending), |acc, &v| {
                Formula::exists(v, acc)
            });
        let finished = self.finished.drain(..);
        self.partial = Some(Formula::or_all([done, rest].into_iter().chain(finished)));
    }

    /// One elimination step on a clause. Returns clauses now free of the
    /// chosen variable and clauses that still need work.
    fn step(&mut self, c: &Clause, vars: &[Var]) -> Result<(Vec<Clause>, Vec<Clause>)> {
        let mut present: Vec<Var> = vars
            .iter()
            .copied()
            .filter(|&v| c.contains_var(v))
            .collect();
        if self.options.order == Order::Given {
            // innermost first
            present = vec![*present.last().unwrap()];
        }
        // linear equations
        type Key = (bool, bool, u32, u32, u32, usize, usize, String);
        let mut best: Option<(Key, Var, Poly)> = None;
        for &v in &present {
            let maxdeg = c.entries().map(|(q, _)| q.degree_in(v)).max().unwrap_or(0);
            for (q, m) in c.entries() {
                if m != clause::ZERO || q.degree_in(v) != 1 {
                    continue;
                }
                let (nc, cd, cl, ql) = eq_score(q, v);
                let after = degree_after_substitution(c, v, q, &present);
                let key = (
                    after > 2,
                    nc,
                    after,
                    maxdeg,
                    cd,
                    cl,
                    ql,
                    v.name().to_string(),
                );
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, v, q.clone()));
                }
            }
        }
        if let Some((_, v, eq)) = best {
            self.steps.eq_subst += 1;
            let s = substitute_equation(c, v, &eq);
            let pending = s.substituted.into_iter().chain(s.degenerate).collect();
            return Ok((Vec::new(), pending));
        }
        if let Some(reduced) = reduce_by_equation(c, &present) {
            return Ok((Vec::new(), reduced.into_iter().collect()));
        }
        // lowest degree, then fewest atoms; a variable occurring only in
        // powers of v^g counts with degree divided by g
        let (v, g, deg) = present
            .iter()
            .map(|&v| {
                let deg = c.entries().map(|(q, _)| q.degree_in(v)).max().unwrap_or(0);
                let g = c
                    .entries()
                    .filter(|(q, m)| !zero_test_of_power(q, *m, v))
                    .fold(0, |g, (q, _)| num_integer::gcd(g, q.exponent_gcd(v)))
                    .max(1);
                let uses = c.entries().filter(|(q, _)| q.contains(v)).count();
                ((deg / g, uses, v.name().to_string()), v, g)
            })
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(k, v, g)| (v, g, k.0))
            .expect("clause mentions a block variable");
        if g > 1 {
            // exists v. phi(v^g) iff exists u. phi(u), with u >= 0 for even g
            let mut atoms: Vec<RealAtom> = c
                .entries()
                .map(|(q, m)| {
                    // x^k r = 0 iff x^g r = 0 (with x^g nonnegative or bijective)
                    let k = if zero_test_of_power(q, m, v) {
                        q.degree_in(v)
                    } else {
                        g
                    };
                    clause::mask_atom(&q.compress_exponents(v, k), m).expect("proper mask")
                })
                .collect();
            if g % 2 == 0 {
                atoms.push(RealAtom::ge(Poly::var(v)));
            }
            return Ok((Vec::new(), Clause::from_atoms(atoms).into_iter().collect()));
        }
        check_degree(c, v, 2)?;
        if deg <= 1 {
            self.steps.linear_vs += 1;
        } else {
            self.steps.quadratic_vs += 1;
        }
        let last = vars.iter().filter(|&&u| c.contains_var(u)).count() == 1;
        self.virtual_substitution(c, v, last)
    }

    /// Eliminates `v` from one clause by virtual substitution. The second
    /// list holds the branch where the chosen equation degenerates.
    /// With `last` set (no other block variable in the clause) a point whose
    /// expansion would be wide goes to `self.finished` as a conjunction of
    /// disjunctions instead.
    fn virtual_substitution(
        &mut self,
        c: &Clause,
        v: Var,
        last: bool,
    ) -> Result<(Vec<Clause>, Vec<Clause>)> {
        let (with, rest) = c.split_on(v);
        let eq = with
            .iter()
            .filter(|a| a.rel == Rel::Eq)
            .min_by_key(|a| (a.poly.degree_in(v), a.poly.len()))
            .cloned();
        let mut points: Vec<(Vec<RealAtom>, TestPoint)> = Vec::new();
        let mut degenerate = Vec::new();
        match &eq {
            Some(e) => {
                for (g, root) in roots_of(&e.poly, v) {
                    points.push((g, TestPoint::Root { root, eps: false }));
                }
                let cs = e.poly.coeffs_in(v);
                let vanish = cs[1..]
                    .iter()
                    .map(|p| RealAtom::eq(p.clone()))
                    .chain([RealAtom::eq(cs[0].clone())]);
                degenerate.extend(c.without(&e.poly).conjoin(vanish));
            }
            None => {
                points.push((Vec::new(), TestPoint::MinusInf));
                for a in &with {
                    let eps = matches!(a.rel, Rel::Lt | Rel::Ne);
                    for (g, root) in roots_of(&a.poly, v) {
                        points.push((g, TestPoint::Root { root, eps }));
                    }
                }
            }
        }
        let mut out = Vec::new();
        'points: for (guard, point) in points {
            let Some(start) = rest.conjoin(guard) else {
                continue;
            };
            let ds: Vec<vs::Dnf> = with
                .iter()
                .map(|a| vs::substitute(&point, v, &a.poly, a.rel))
                .collect();
            let width = ds
                .iter()
                .fold(1usize, |w, d| w.saturating_mul(d.len().max(1)));
            if last && width > WIDE {
                let mut base = start;
                let mut factors = Vec::new();
                for d in ds {
                    if let [conj] = d.as_slice() {
                        match base.conjoin(conj.iter().cloned()) {
                            Some(b) => base = b,
                            None => continue 'points,
                        }
                        continue;
                    }
                    let cls: Vec<Clause> = d.into_iter().filter_map(Clause::from_atoms).collect();
                    if cls.is_empty() {
                        continue 'points;
                    }
                    if !cls.iter().any(Clause::is_empty) {
                        factors.push(clauses_to_formula(&cls));
                    }
                }
                self.finished.push(Formula::and_all(
                    std::iter::once(base.to_formula()).chain(factors),
                ));
                continue;
            }
            let mut acc = vec![start];
            for d in ds {
                let mut next = Vec::new();
                for cl in &acc {
                    for conj in &d {
                        if let Some(n) = cl.conjoin(conj.iter().cloned()) {
                            next.push(n);
                        }
                    }
                }
                next.sort();
                next.dedup();
                acc = next;
                if acc.is_empty() {
                    break;
                }
                if acc.len() > self.options.max_clauses {
                    return Err(Error::SizeLimitExceeded {
                        what: "clauses",
                        count: acc.len(),
                        limit: self.options.max_clauses,
                    });
                }
            }
            out.extend(acc);
        }
        Ok((out, degenerate))
    }
}

/// Expansion width above which a final substitution is not multiplied out.
const WIDE: usize = 16;

fn formula_monomials(f: &RealFormula) -> usize {
    match f {
        Formula::True | Formula::False => 0,
        Formula::Atom(a) => a.poly.len(),
        Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => formula_monomials(g),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().map(formula_monomials).sum(),
        Formula::Implies(a, b) => formula_monomials(a) + formula_monomials(b),
    }
}

/// Collects a maximal block of like quantifiers.
fn block(phi: &RealFormula, exists: bool) -> (Vec<Var>, &RealFormula) {
    let mut vars = Vec::new();
    let mut cur = phi;
    loop {
        match cur {
            Formula::Exists(v, b) if exists => {
                vars.push(*v);
                cur = b;
            }
            Formula::Forall(v, b) if !exists => {
                vars.push(*v);
                cur = b;
            }
            _ => return (vars, cur),
        }
    }
}

/// Convenience wrapper with default options.
pub fn eliminate(phi: &RealFormula) -> Result<RealFormula> {
    Qe::new(QeOptions::default()).eliminate(phi)
}

/// `exists vars. matrix` with the given options; also returns the step
/// counters.
pub fn eliminate_block(
    vars: &[Var],
    matrix: &RealFormula,
    options: QeOptions,
) -> Result<(RealFormula, BackendSteps)> {
    let mut qe = Qe::new(options);
    let f = qe.eliminate_block(vars, matrix)?;
    Ok((f, qe.steps))
}
