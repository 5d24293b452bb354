//! First-order formulas over the algebra language and over the ordered
//! base field.
//!
//! Both languages share one connective/quantifier skeleton, [`Formula`],
//! parameterized by the atom type. Structural transforms (negation normal
//! form, prenex form, DNF, capture-avoiding substitution) are written once
//! against the [`Atom`] trait.

mod alg;
mod parse;
mod real;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;

pub use alg::{AlgAtom, AlgFormula, AlgTerm};
pub use parse::{
    parse, parse_alg, parse_alg_term, parse_real, parse_real_poly, Language, ParseError, Parsed,
};
pub use real::{RealAtom, RealFormula, Rel};

use crate::error::Error;
use crate::var::{fresh_var, Var};

/// Atomic formulas of a language.
pub trait Atom: Clone + PartialEq + Eq + Hash + Debug {
    type Term: Clone + Debug;

    fn collect_vars(&self, out: &mut BTreeSet<Var>);
    /// Variables in order of first occurrence.
    fn ordered_vars(&self, out: &mut Vec<Var>);
    fn substitute(&self, v: Var, t: &Self::Term) -> Self;
    fn term_vars(t: &Self::Term) -> BTreeSet<Var>;
    fn var_term(v: Var) -> Self::Term;
    /// The negation of the atom as a literal in negation normal form.
    fn negate(&self) -> Formula<Self>;
}

/// Formula skeleton shared by both languages.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula<A> {
    True,
    False,
    Atom(A),
    Not(Box<Formula<A>>),
    And(Vec<Formula<A>>),
    Or(Vec<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
    Exists(Var, Box<Formula<A>>),
    Forall(Var, Box<Formula<A>>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// A prenex formula split into its quantifier prefix (outermost first) and
/// quantifier-free matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Prenex<A> {
    pub prefix: Vec<(Quantifier, Var)>,
    pub matrix: Formula<A>,
}

impl<A: Atom> Prenex<A> {
    pub fn into_formula(self) -> Formula<A> {
        self.prefix
            .into_iter()
            .rev()
            .fold(self.matrix, |body, (q, v)| match q {
                Quantifier::Exists => Formula::Exists(v, Box::new(body)),
                Quantifier::Forall => Formula::Forall(v, Box::new(body)),
            })
    }
}

#[allow(clippy::should_implement_trait)]
impl<A: Atom> Formula<A> {
    pub fn atom(a: A) -> Self {
        Formula::Atom(a)
    }

    pub fn not(f: Formula<A>) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn exists(v: Var, f: Formula<A>) -> Self {
        Formula::Exists(v, Box::new(f))
    }

    pub fn forall(v: Var, f: Formula<A>) -> Self {
        Formula::Forall(v, Box::new(f))
    }

    pub fn implies(a: Formula<A>, b: Formula<A>) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction that folds constants and flattens nested conjunctions.
    pub fn and_all(parts: impl IntoIterator<Item = Formula<A>>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Disjunction that folds constants and flattens nested disjunctions.
    pub fn or_all(parts: impl IntoIterator<Item = Formula<A>>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                let mut vs = Vec::new();
                a.ordered_vars(&mut vs);
                for v in vs {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::Not(f) => f.free_vars_into(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.free_vars_into(bound, out);
                }
            }
            Formula::Implies(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(*v);
                f.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_all_vars(&mut out);
        out
    }

    fn visit_all_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => a.collect_vars(out),
            Formula::Not(f) => f.visit_all_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit_all_vars(out)),
            Formula::Implies(a, b) => {
                a.visit_all_vars(out);
                b.visit_all_vars(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                out.insert(*v);
                f.visit_all_vars(out);
            }
        }
    }

    /// Number of atom occurrences.
    pub fn atom_count(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.atom_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::atom_count).sum(),
            Formula::Implies(a, b) => a.atom_count() + b.atom_count(),
        }
    }

    pub fn map_atoms<B: Atom>(&self, f: &mut impl FnMut(&A) -> Formula<B>) -> Formula<B> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => f(a),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Exists(v, g) => Formula::exists(*v, g.map_atoms(f)),
            Formula::Forall(v, g) => Formula::forall(*v, g.map_atoms(f)),
        }
    }

    /// Renames free occurrences of `from` to `to`; `to` must not be captured.
    fn rename_free(&self, from: Var, to: Var) -> Formula<A> {
        self.substitute_unchecked(from, &A::var_term(to))
    }

    fn substitute_unchecked(&self, v: Var, t: &A::Term) -> Formula<A> {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.substitute(v, t)),
            Formula::Not(f) => Formula::not(f.substitute_unchecked(v, t)),
            Formula::And(fs) => {
                Formula::And(fs.iter().map(|f| f.substitute_unchecked(v, t)).collect())
            }
            Formula::Or(fs) => {
                Formula::Or(fs.iter().map(|f| f.substitute_unchecked(v, t)).collect())
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute_unchecked(v, t), b.substitute_unchecked(v, t))
            }
            Formula::Exists(w, f) | Formula::Forall(w, f) => {
                if *w == v {
                    self.clone()
                } else {
                    let body = Box::new(f.substitute_unchecked(v, t));
                    match self {
                        Formula::Exists(..) => Formula::Exists(*w, body),
                        _ => Formula::Forall(*w, body),
                    }
                }
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    /// Binders that would capture a variable of `t` are renamed.
    pub fn substitute(&self, v: Var, t: &A::Term) -> Formula<A> {
        let tvars = A::term_vars(t);
        self.subst_rec(v, t, &tvars)
    }

    fn subst_rec(&self, v: Var, t: &A::Term, tvars: &BTreeSet<Var>) -> Formula<A> {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.substitute(v, t)),
            Formula::Not(f) => Formula::not(f.subst_rec(v, t, tvars)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.subst_rec(v, t, tvars)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.subst_rec(v, t, tvars)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(a.subst_rec(v, t, tvars), b.subst_rec(v, t, tvars))
            }
            Formula::Exists(w, f) | Formula::Forall(w, f) => {
                let is_exists = matches!(self, Formula::Exists(..));
                if *w == v || !f.free_vars().contains(&v) {
                    return self.clone();
                }
                let (w2, body) = if tvars.contains(w) {
                    let mut taken = f.all_vars();
                    taken.extend(tvars.iter().copied());
                    taken.insert(v);
                    let w2 = fresh_var(w.name(), |c| taken.contains(&c));
                    (w2, f.rename_free(*w, w2))
                } else {
                    (*w, (**f).clone())
                };
                let body = Box::new(body.subst_rec(v, t, tvars));
                if is_exists {
                    Formula::Exists(w2, body)
                } else {
                    Formula::Forall(w2, body)
                }
            }
        }
    }

    /// Removes `->` and pushes negations down to atoms. Quantifiers are kept.
    pub fn nnf(&self) -> Formula<A> {
        self.nnf_pol(true)
    }

    fn nnf_pol(&self, positive: bool) -> Formula<A> {
        match (self, positive) {
            (Formula::True, true) | (Formula::False, false) => Formula::True,
            (Formula::True, false) | (Formula::False, true) => Formula::False,
            (Formula::Atom(a), true) => Formula::Atom(a.clone()),
            (Formula::Atom(a), false) => a.negate(),
            (Formula::Not(f), p) => f.nnf_pol(!p),
            (Formula::And(fs), true) => Formula::and_all(fs.iter().map(|f| f.nnf_pol(true))),
            (Formula::And(fs), false) => Formula::or_all(fs.iter().map(|f| f.nnf_pol(false))),
            (Formula::Or(fs), true) => Formula::or_all(fs.iter().map(|f| f.nnf_pol(true))),
            (Formula::Or(fs), false) => Formula::and_all(fs.iter().map(|f| f.nnf_pol(false))),
            (Formula::Implies(a, b), true) => Formula::or_all([a.nnf_pol(false), b.nnf_pol(true)]),
            (Formula::Implies(a, b), false) => {
                Formula::and_all([a.nnf_pol(true), b.nnf_pol(false)])
            }
            (Formula::Exists(v, f), true) => Formula::exists(*v, f.nnf_pol(true)),
            (Formula::Exists(v, f), false) => Formula::forall(*v, f.nnf_pol(false)),
            (Formula::Forall(v, f), true) => Formula::forall(*v, f.nnf_pol(true)),
            (Formula::Forall(v, f), false) => Formula::exists(*v, f.nnf_pol(false)),
        }
    }

    /// Rewrites `->` into `!`/`||` and `forall x. f` into `!exists x. !f`.
    /// Negations are otherwise left where they are.
    pub fn existential_form(&self) -> Formula<A> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.existential_form()),
            Formula::And(fs) => Formula::And(fs.iter().map(Formula::existential_form).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(Formula::existential_form).collect()),
            Formula::Implies(a, b) => Formula::Or(vec![
                Formula::not(a.existential_form()),
                b.existential_form(),
            ]),
            Formula::Exists(v, f) => Formula::exists(*v, f.existential_form()),
            Formula::Forall(v, f) => {
                Formula::not(Formula::exists(*v, Formula::not(f.existential_form())))
            }
        }
    }

    /// Renames bound variables so that every binder is distinct and no bound
    /// name is also free somewhere in the formula.
    pub fn rectify(&self) -> Formula<A> {
        let mut taken: BTreeSet<Var> = self.free_vars().into_iter().collect();
        self.rectify_rec(&mut taken)
    }

    fn rectify_rec(&self, taken: &mut BTreeSet<Var>) -> Formula<A> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.rectify_rec(taken)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rectify_rec(taken)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rectify_rec(taken)).collect()),
            Formula::Implies(a, b) => {
                let a = a.rectify_rec(taken);
                Formula::implies(a, b.rectify_rec(taken))
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let all = f.all_vars();
                let v2 = if taken.contains(v) {
                    fresh_var(v.name(), |c| taken.contains(&c) || all.contains(&c))
                } else {
                    *v
                };
                taken.insert(v2);
                let body = if v2 == *v {
                    (**f).clone()
                } else {
                    f.rename_free(*v, v2)
                };
                let body = Box::new(body.rectify_rec(taken));
                match self {
                    Formula::Exists(..) => Formula::Exists(v2, body),
                    _ => Formula::Forall(v2, body),
                }
            }
        }
    }

    /// Prenex normal form with a negation-normal-form matrix.
    pub fn prenex(&self) -> Formula<A> {
        self.prenex_parts().into_formula()
    }

    pub fn prenex_parts(&self) -> Prenex<A> {
        let f = self.nnf().rectify();
        let mut prefix = Vec::new();
        let matrix = pull_quantifiers(&f, &mut prefix);
        Prenex { prefix, matrix }
    }

    /// Disjunctive normal form of a quantifier-free formula: a list of
    /// clauses, each a list of literals (atoms or negated atoms in NNF).
    /// An empty clause list is `false`; an empty clause is `true`.
    pub fn to_dnf(&self, max_clauses: usize) -> Result<Vec<Vec<Formula<A>>>, Error> {
        if !self.is_quantifier_free() {
            return Err(Error::NotQuantifierFree);
        }
        dnf_rec(&self.nnf(), max_clauses)
    }
}

fn pull_quantifiers<A: Atom>(f: &Formula<A>, prefix: &mut Vec<(Quantifier, Var)>) -> Formula<A> {
    match f {
        Formula::Exists(v, g) => {
            prefix.push((Quantifier::Exists, *v));
            pull_quantifiers(g, prefix)
        }
        Formula::Forall(v, g) => {
            prefix.push((Quantifier::Forall, *v));
            pull_quantifiers(g, prefix)
        }
        Formula::And(gs) => Formula::and_all(
            gs.iter()
                .map(|g| pull_quantifiers(g, prefix))
                .collect::<Vec<_>>(),
        ),
        Formula::Or(gs) => Formula::or_all(
            gs.iter()
                .map(|g| pull_quantifiers(g, prefix))
                .collect::<Vec<_>>(),
        ),
        // NNF input: Not only wraps atoms and Implies is gone
        other => other.clone(),
    }
}

fn dnf_rec<A: Atom>(f: &Formula<A>, max: usize) -> Result<Vec<Vec<Formula<A>>>, Error> {
    match f {
        Formula::True => Ok(vec![vec![]]),
        Formula::False => Ok(vec![]),
        Formula::Atom(_) | Formula::Not(_) => Ok(vec![vec![f.clone()]]),
        Formula::Or(gs) => {
            let mut out = Vec::new();
            for g in gs {
                out.extend(dnf_rec(g, max)?);
                if out.len() > max {
                    return Err(Error::SizeLimitExceeded {
                        what: "clauses",
                        count: out.len(),
                        limit: max,
                    });
                }
            }
            Ok(out)
        }
        Formula::And(gs) => {
            let mut acc: Vec<Vec<Formula<A>>> = vec![vec![]];
            for g in gs {
                let d = dnf_rec(g, max)?;
                let count = acc.len().saturating_mul(d.len());
                if count > max {
                    return Err(Error::SizeLimitExceeded {
                        what: "clauses",
                        count,
                        limit: max,
                    });
                }
                let mut next = Vec::with_capacity(count);
                for c in &acc {
                    for e in &d {
                        let mut n = c.clone();
                        for lit in e {
                            if !n.contains(lit) {
                                n.push(lit.clone());
                            }
                        }
                        next.push(n);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        Formula::Implies(..) | Formula::Exists(..) | Formula::Forall(..) => {
            Err(Error::NotQuantifierFree)
        }
    }
}

/// Rebuilds a formula from DNF clauses.
pub fn from_dnf<A: Atom>(clauses: Vec<Vec<Formula<A>>>) -> Formula<A> {
    Formula::or_all(clauses.into_iter().map(Formula::and_all))
}

/// Groups variables in first-occurrence order, handy for assignment maps.
pub fn index_vars(vars: &[Var]) -> BTreeMap<Var, usize> {
    vars.iter().enumerate().map(|(i, v)| (*v, i)).collect()
}
