//! Quantifier elimination in the quaternions and octonions by transfer to
//! the base field.
//!
//! For a block `exists y. phi(x, y)` with free `x = (x_1..x_m)`, the image of
//! the defined set under the invariant map is
//!
//! ```text
//! exists coords(x) coords(y). realify(phi) && z_1 = s_1(x) && ... && z_d = s_d(x)
//! ```
//!
//! which is eliminated over the reals. The quantifier-free result in the
//! `z_i` is pulled back by substituting the invariant terms `tau_i`.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::formula::{
    AlgAtom, AlgFormula, AlgTerm, Formula, Quantifier, RealAtom, RealFormula, Rel,
};
use crate::invariants::InvariantScheme;
use crate::poly::Poly;
use crate::qe::{BackendSteps, Qe, QeOptions};
use crate::realify::Realification;
use crate::var::Var;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferOptions {
    pub qe: QeOptions,
    /// Simplify realified atoms; off reproduces the raw atom counts.
    pub simplify: bool,
    /// Drop octonion word invariants with repeated polynomials.
    pub dedup: bool,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions {
            qe: QeOptions::default(),
            simplify: true,
            dedup: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    DryRun,
    NotConjunctive,
    DegreeTooHigh,
    SizeLimitExceeded,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json_name(*self);
        f.write_str(s)
    }
}

fn serde_json_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::DryRun => "dry_run",
        Status::NotConjunctive => "not_conjunctive",
        Status::DegreeTooHigh => "degree_too_high",
        Status::SizeLimitExceeded => "size_limit_exceeded",
        Status::Failed => "failed",
    }
}

/// Size counts of a transfer run, summed over its blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub algebra: Algebra,
    /// Free algebra variables.
    pub m: usize,
    /// Quantified algebra variables.
    pub l: usize,
    /// Atoms of the quantifier-free matrix.
    pub r: usize,
    pub quantified_real_vars: usize,
    pub atoms_pre_qe: usize,
    pub atoms_post_qe: usize,
    pub backend_steps: BackendSteps,
    pub status: Status,
    pub wall_ms: u64,
    /// Quantified coordinates plus invariant variables.
    pub total_real_vars: usize,
    /// Whether the matrix is a conjunction of atoms.
    pub conjunctive: bool,
}

impl TransferReport {
    fn new(algebra: Algebra) -> Self {
        TransferReport {
            algebra,
            m: 0,
            l: 0,
            r: 0,
            quantified_real_vars: 0,
            atoms_pre_qe: 0,
            atoms_post_qe: 0,
            backend_steps: BackendSteps::default(),
            status: Status::Ok,
            wall_ms: 0,
            total_real_vars: 0,
            conjunctive: true,
        }
    }
}

/// One existential block ready for transfer.
#[derive(Clone, Debug)]
pub struct TransferJob {
    pub algebra: Algebra,
    pub free: Vec<Var>,
    pub bound: Vec<Var>,
    /// Quantifier-free matrix.
    pub matrix: AlgFormula,
    pub scheme: InvariantScheme,
    /// One fresh variable per scheme entry.
    pub z: Vec<Var>,
}

impl TransferJob {
    /// `free` lists the free variables in order; `bound` the block.
    pub fn new(
        algebra: Algebra,
        free: Vec<Var>,
        bound: Vec<Var>,
        matrix: AlgFormula,
        dedup: bool,
    ) -> Result<Self> {
        if !matrix.is_quantifier_free() {
            return Err(Error::NotQuantifierFree);
        }
        let mut scheme = InvariantScheme::for_algebra(algebra, &free)?;
        if dedup {
            scheme = scheme.dedup();
        }
        let mut taken: BTreeSet<&'static str> = BTreeSet::new();
        for v in free.iter().chain(&bound).chain(matrix.all_vars().iter()) {
            taken.insert(v.name());
            for i in 0..algebra.dim() {
                taken.insert(v.coord(i).name());
            }
        }
        let mut z = Vec::with_capacity(scheme.len());
        let mut next = 1;
        for _ in 0..scheme.len() {
            while taken.contains(format!("z{next}").as_str()) {
                next += 1;
            }
            let v = Var::new(&format!("z{next}"));
            taken.insert(v.name());
            z.push(v);
        }
        Ok(TransferJob {
            algebra,
            free,
            bound,
            matrix,
            scheme,
            z,
        })
    }

    /// The real formula whose quantifier-free equivalent describes the
    /// invariant image of the defined set. Returns the block of quantified
    /// coordinates and the matrix.
    pub fn build_image_formula(&self, simplify: bool) -> Result<(Vec<Var>, RealFormula)> {
        let vars: Vec<Var> = self.free.iter().chain(&self.bound).copied().collect();
        let mut ctx = Realification::new(self.algebra, &vars);
        if !simplify {
            ctx = ctx.without_simplification();
        }
        let body = ctx.realify_formula(&self.matrix)?;
        let mut parts = vec![body];
        for (e, &z) in self.scheme.entries.iter().zip(&self.z) {
            parts.push(Formula::Atom(RealAtom::eq(&Poly::var(z) - &e.poly)));
        }
        let mut quantified = Vec::new();
        for &v in &vars {
            quantified.extend_from_slice(ctx.coords(v)?);
        }
        let matrix = if simplify {
            Formula::and_all(parts)
        } else {
            Formula::And(flatten_and(parts))
        };
        Ok((quantified, matrix))
    }

    /// Substitutes the invariant terms for the `z` variables.
    pub fn pullback(&self, psi: &RealFormula) -> Result<AlgFormula> {
        pullback(psi, &self.z, &self.scheme)
    }
}

fn flatten_and(parts: Vec<RealFormula>) -> Vec<RealFormula> {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Formula::And(xs) => out.extend(flatten_and(xs)),
            Formula::True => {}
            other => out.push(other),
        }
    }
    out
}

/// Rewrites a quantifier-free formula over `z` into the algebra language by
/// `z_i -> tau_i`. Strict atoms become `<=`/`=`/`!` combinations.
pub fn pullback(psi: &RealFormula, z: &[Var], scheme: &InvariantScheme) -> Result<AlgFormula> {
    let term_of = |v: Var| -> Result<AlgTerm> {
        z.iter()
            .position(|&w| w == v)
            .map(|i| scheme.entries[i].term.clone())
            .ok_or_else(|| {
                Error::UnsupportedShape(format!("variable {v} is not an invariant variable"))
            })
    };
    let poly_term = |p: &Poly| -> Result<AlgTerm> {
        let mut acc: Option<AlgTerm> = None;
        for (m, c) in p.terms() {
            let n: BigInt = c.numer().clone();
            let mut t: Option<AlgTerm> = None;
            for &(v, e) in m.pairs() {
                let base = term_of(v)?;
                for _ in 0..e {
                    t = Some(match t {
                        None => base.clone(),
                        Some(t) => AlgTerm::mul(t, base.clone()),
                    });
                }
            }
            let term = match (t, n == BigInt::from(1)) {
                (None, _) => AlgTerm::integer(&n),
                (Some(t), true) => t,
                (Some(t), false) => AlgTerm::mul(AlgTerm::integer(&n), t),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => AlgTerm::add(a, term),
            });
        }
        Ok(acc.unwrap_or(AlgTerm::Zero))
    };
    let atom = |a: &RealAtom| -> Result<AlgFormula> {
        let p = a.poly.clear_denominators();
        if !p.has_integer_coeffs() {
            return Err(Error::NonIntegerCoefficient(p.to_string()));
        }
        // p = pos - neg with both sides having positive coefficients
        let mut pos = Poly::zero();
        let mut neg = Poly::zero();
        for (m, c) in p.terms() {
            if c.is_positive() {
                pos.add_term(m.clone(), c.clone());
            } else {
                neg.add_term(m.clone(), -c);
            }
        }
        let (l, r) = (poly_term(&pos)?, poly_term(&neg)?);
        let eq = || Formula::Atom(AlgAtom::Eq(l.clone(), r.clone()));
        let le = || Formula::Atom(AlgAtom::Le(l.clone(), r.clone()));
        Ok(match a.rel {
            Rel::Eq => eq(),
            Rel::Le => le(),
            Rel::Lt => Formula::and_all([le(), Formula::not(eq())]),
            Rel::Ne => Formula::not(eq()),
        })
    };
    fn walk(f: &RealFormula, atom: &dyn Fn(&RealAtom) -> Result<AlgFormula>) -> Result<AlgFormula> {
        Ok(match f {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => atom(a)?,
            Formula::Not(g) => Formula::not(walk(g, atom)?),
            Formula::And(gs) => {
                Formula::And(gs.iter().map(|g| walk(g, atom)).collect::<Result<_>>()?)
            }
            Formula::Or(gs) => {
                Formula::Or(gs.iter().map(|g| walk(g, atom)).collect::<Result<_>>()?)
            }
            Formula::Implies(a, b) => Formula::implies(walk(a, atom)?, walk(b, atom)?),
            Formula::Exists(..) | Formula::Forall(..) => return Err(Error::NotQuantifierFree),
        })
    }
    walk(psi, &atom)
}

/// Successful transfer.
#[derive(Clone, Debug)]
pub struct TransferOutcome {
    pub formula: AlgFormula,
    pub report: TransferReport,
}

/// Failed transfer: the backend error, the counts so far, and the real
/// formula reached when elimination stopped.
#[derive(Debug)]
pub struct TransferFailure {
    pub error: Error,
    pub report: TransferReport,
    pub partial: Option<RealFormula>,
}

impl fmt::Display for TransferFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.error)
    }
}

impl std::error::Error for TransferFailure {}

struct Runner {
    algebra: Algebra,
    options: TransferOptions,
    qe: Qe,
    report: TransferReport,
}

impl Runner {
    fn run(&mut self, phi: &AlgFormula) -> std::result::Result<AlgFormula, Box<TransferFailure>> {
        Ok(match phi {
            Formula::True | Formula::False | Formula::Atom(_) => phi.clone(),
            Formula::Not(g) => Formula::not(self.run(g)?),
            Formula::And(gs) => Formula::And(
                gs.iter()
                    .map(|g| self.run(g))
                    .collect::<std::result::Result<_, _>>()?,
            ),
            Formula::Or(gs) => Formula::Or(
                gs.iter()
                    .map(|g| self.run(g))
                    .collect::<std::result::Result<_, _>>()?,
            ),
            Formula::Implies(a, b) => Formula::implies(self.run(a)?, self.run(b)?),
            Formula::Forall(v, g) => {
                let neg = Formula::exists(*v, Formula::not((**g).clone()));
                Formula::not(self.run(&neg)?)
            }
            Formula::Exists(..) => {
                let mut bound = Vec::new();
                let mut cur = phi;
                while let Formula::Exists(v, b) = cur {
                    bound.push(*v);
                    cur = b;
                }
                let matrix = self.run(cur)?;
                self.block(phi, bound, matrix)?
            }
        })
    }

    fn fail(&self, error: Error, partial: Option<RealFormula>) -> Box<TransferFailure> {
        let mut report = self.report.clone();
        report.status = match error {
            Error::DegreeTooHigh { .. } => Status::DegreeTooHigh,
            Error::SizeLimitExceeded { .. } => Status::SizeLimitExceeded,
            _ => Status::Failed,
        };
        report.backend_steps = self.qe.steps;
        Box::new(TransferFailure {
            error,
            report,
            partial,
        })
    }

    fn block(
        &mut self,
        whole: &AlgFormula,
        bound: Vec<Var>,
        matrix: AlgFormula,
    ) -> std::result::Result<AlgFormula, Box<TransferFailure>> {
        let free = whole.free_vars();
        let job = TransferJob::new(self.algebra, free, bound, matrix, self.options.dedup)
            .map_err(|e| self.fail(e, None))?;
        let (qvars, image) = job
            .build_image_formula(self.options.simplify)
            .map_err(|e| self.fail(e, None))?;
        self.report.quantified_real_vars += qvars.len();
        self.report.atoms_pre_qe += image.atom_count();
        self.report.total_real_vars += qvars.len() + job.z.len();
        let psi = match self.qe.eliminate_block(&qvars, &image) {
            Ok(psi) => psi,
            Err(e) => {
                let partial = self.qe.partial().cloned();
                return Err(self.fail(e, partial));
            }
        };
        self.report.atoms_post_qe += psi.atom_count();
        job.pullback(&psi)
            .map_err(|e| self.fail(e, Some(psi.clone())))
    }
}

/// Eliminates all quantifiers of `phi` over the given algebra.
pub fn run_transfer(
    phi: &AlgFormula,
    algebra: Algebra,
    options: &TransferOptions,
) -> std::result::Result<TransferOutcome, Box<TransferFailure>> {
    let start = Instant::now();
    let mut report = TransferReport::new(algebra);
    report.m = phi.free_vars().len();
    let shape = phi.prenex_parts();
    report.l = shape.prefix.len();
    report.r = shape.matrix.atom_count();
    report.conjunctive = is_conjunction(&shape.matrix);
    let mut runner = Runner {
        algebra,
        options: options.clone(),
        qe: Qe::new(options.qe.clone()),
        report,
    };
    let input = phi.rectify();
    match runner.run(&input) {
        Ok(formula) => {
            let mut report = runner.report;
            report.backend_steps = runner.qe.steps;
            report.wall_ms = start.elapsed().as_millis() as u64;
            Ok(TransferOutcome { formula, report })
        }
        Err(mut failure) => {
            failure.report.wall_ms = start.elapsed().as_millis() as u64;
            Err(failure)
        }
    }
}

fn is_conjunction<A: crate::formula::Atom>(f: &Formula<A>) -> bool {
    match f {
        Formula::True | Formula::Atom(_) => true,
        Formula::And(gs) => gs.iter().all(|g| matches!(g, Formula::Atom(_))),
        _ => false,
    }
}

/// Dry run: the counts of the image formula with simplification off, for a
/// prenex formula. `declared` adds free variables that do not occur.
pub fn stats(phi: &AlgFormula, algebra: Algebra, declared: &[Var]) -> Result<TransferReport> {
    let start = Instant::now();
    let shape = phi.prenex_parts();
    let mut free = declared.to_vec();
    for v in phi.free_vars() {
        if !free.contains(&v) {
            free.push(v);
        }
    }
    let bound: Vec<Var> = shape.prefix.iter().map(|&(_, v)| v).collect();
    let mut report = TransferReport::new(algebra);
    report.m = free.len();
    report.l = bound.len();
    report.r = shape.matrix.atom_count();
    report.conjunctive =
        is_conjunction(&shape.matrix) && shape.prefix.iter().all(|&(q, _)| q == Quantifier::Exists);
    let job = TransferJob::new(algebra, free, bound, shape.matrix, false)?;
    let (qvars, image) = job.build_image_formula(false)?;
    report.quantified_real_vars = qvars.len();
    report.atoms_pre_qe = image.atom_count();
    report.total_real_vars = qvars.len() + job.z.len();
    report.status = if report.conjunctive {
        Status::DryRun
    } else {
        Status::NotConjunctive
    };
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// The formula `exists y_1..y_l. /\_{k=1..r} x_1*..*x_m*y_1*..*y_l = k` used
/// to instantiate the counts for given `(r, m, l)`, with its free variables.
pub fn synthetic_formula(r: usize, m: usize, l: usize) -> (AlgFormula, Vec<Var>) {
    let free: Vec<Var> = (1..=m).map(|i| Var::new(&format!("x{i}"))).collect();
    let bound: Vec<Var> = (1..=l).map(|i| Var::new(&format!("y{i}"))).collect();
    let product = free
        .iter()
        .chain(&bound)
        .map(|&v| AlgTerm::Var(v))
        .reduce(AlgTerm::mul)
        .unwrap_or(AlgTerm::One);
    let atoms = (1..=r).map(|k| AlgFormula::eq(product.clone(), AlgTerm::ones(k as u64)));
    let matrix = Formula::and_all(atoms);
    let phi = bound
        .iter()
        .rev()
        .fold(matrix, |acc, &v| Formula::exists(v, acc));
    (phi, free)
}

/// Counts for the synthetic formula of shape `(r, m, l)`.
pub fn synthetic_stats(r: usize, m: usize, l: usize, algebra: Algebra) -> Result<TransferReport> {
    let (phi, free) = synthetic_formula(r, m, l);
    let mut rep = stats(&phi, algebra, &free)?;
    rep.r = r;
    Ok(rep)
}
