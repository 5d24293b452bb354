//! Atoms `p rel 0` over the ordered base field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Atom, Formula};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::var::Var;

/// Relation of a polynomial to zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Le,
    Lt,
    Ne,
}

impl Rel {
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Rel::Eq => sign == 0,
            Rel::Le => sign <= 0,
            Rel::Lt => sign < 0,
            Rel::Ne => sign != 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Le => "<=",
            Rel::Lt => "<",
            Rel::Ne => "!=",
        }
    }

    /// Bit mask over `{negative, zero, positive}` (bits 0, 1, 2).
    pub fn sign_mask(self) -> u8 {
        match self {
            Rel::Eq => 0b010,
            Rel::Le => 0b011,
            Rel::Lt => 0b001,
            Rel::Ne => 0b101,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RealAtom {
    pub poly: Poly,
    pub rel: Rel,
}

impl RealAtom {
    pub fn new(poly: Poly, rel: Rel) -> Self {
        RealAtom { poly, rel }
    }

    pub fn eq(poly: Poly) -> Self {
        RealAtom::new(poly, Rel::Eq)
    }

    pub fn le(poly: Poly) -> Self {
        RealAtom::new(poly, Rel::Le)
    }

    pub fn lt(poly: Poly) -> Self {
        RealAtom::new(poly, Rel::Lt)
    }

    pub fn ne(poly: Poly) -> Self {
        RealAtom::new(poly, Rel::Ne)
    }

    /// `-p < 0`, i.e. `p > 0`.
    pub fn gt(poly: Poly) -> Self {
        RealAtom::new(-poly, Rel::Lt)
    }

    /// `-p <= 0`, i.e. `p >= 0`.
    pub fn ge(poly: Poly) -> Self {
        RealAtom::new(-poly, Rel::Le)
    }

    pub fn negated(&self) -> RealAtom {
        match self.rel {
            Rel::Eq => RealAtom::ne(self.poly.clone()),
            Rel::Ne => RealAtom::eq(self.poly.clone()),
            Rel::Le => RealAtom::lt(-&self.poly),
            Rel::Lt => RealAtom::le(-&self.poly),
        }
    }

    pub fn eval(&self, assign: &dyn Fn(Var) -> Option<Rational>) -> Option<bool> {
        Some(self.rel.holds(self.poly.eval(assign)?.signum()))
    }

    /// Truth value when the polynomial is constant.
    pub fn constant_truth(&self) -> Option<bool> {
        self.poly
            .constant_value()
            .map(|c| self.rel.holds(c.signum()))
    }
}

impl Atom for RealAtom {
    type Term = Poly;

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.poly.collect_vars(out);
    }

    fn ordered_vars(&self, out: &mut Vec<Var>) {
        let mut vs: Vec<Var> = self.poly.vars().into_iter().collect();
        vs.sort_by_key(|v| v.name());
        for v in vs {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }

    fn substitute(&self, v: Var, t: &Poly) -> Self {
        RealAtom::new(self.poly.substitute(v, t), self.rel)
    }

    fn term_vars(t: &Poly) -> BTreeSet<Var> {
        t.vars()
    }

    fn var_term(v: Var) -> Poly {
        Poly::var(v)
    }

    fn negate(&self) -> Formula<Self> {
        Formula::Atom(self.negated())
    }
}

impl fmt::Display for RealAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.rel.symbol())
    }
}

pub type RealFormula = Formula<RealAtom>;

impl RealFormula {
    /// Evaluates a quantifier-free formula; `None` when a variable is
    /// unassigned or a quantifier is present.
    pub fn eval(&self, assign: &dyn Fn(Var) -> Option<Rational>) -> Option<bool> {
        Some(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => a.eval(assign)?,
            Formula::Not(g) => !g.eval(assign)?,
            Formula::And(gs) => {
                for g in gs {
                    if !g.eval(assign)? {
                        return Some(false);
                    }
                }
                true
            }
            Formula::Or(gs) => {
                for g in gs {
                    if g.eval(assign)? {
                        return Some(true);
                    }
                }
                false
            }
            Formula::Implies(a, b) => !a.eval(assign)? || b.eval(assign)?,
            Formula::Exists(..) | Formula::Forall(..) => return None,
        })
    }

    pub fn eval_map(&self, assign: &BTreeMap<Var, Rational>) -> Option<bool> {
        self.eval(&|v| assign.get(&v).cloned())
    }

    pub fn max_monomials(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Atom(a) => a.poly.monomial_count(),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.max_monomials(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::max_monomials).sum(),
            Formula::Implies(a, b) => a.max_monomials() + b.max_monomials(),
        }
    }
}

impl fmt::Display for Formula<RealAtom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::alg::fmt_formula(self, f)
    }
}
