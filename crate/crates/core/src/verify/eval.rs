//! Direct evaluation of algebra terms and formulas at exact points.

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::formula::{AlgAtom, AlgFormula, AlgTerm, Formula};
use crate::var::Var;

pub fn eval_term<T: AlgebraElement>(t: &AlgTerm, assign: &dyn Fn(Var) -> Option<T>) -> Result<T> {
    Ok(match t {
        AlgTerm::Var(v) => assign(*v).ok_or(Error::Unassigned(*v))?,
        AlgTerm::Zero => T::zero(),
        AlgTerm::One => T::one(),
        AlgTerm::Neg(a) => eval_term(a, assign)?.neg(),
        AlgTerm::Conj(a) => eval_term(a, assign)?.conj(),
        AlgTerm::Add(a, b) => eval_term(a, assign)?.add(&eval_term(b, assign)?),
        AlgTerm::Sub(a, b) => eval_term(a, assign)?.sub(&eval_term(b, assign)?),
        AlgTerm::Mul(a, b) => eval_term(a, assign)?.mul(&eval_term(b, assign)?),
    })
}

/// `t <= u` holds only when both values are central and ordered.
pub fn eval_atom<T: AlgebraElement>(
    a: &AlgAtom,
    assign: &dyn Fn(Var) -> Option<T>,
) -> Result<bool> {
    Ok(match a {
        AlgAtom::Eq(t, u) => eval_term(t, assign)? == eval_term(u, assign)?,
        AlgAtom::Le(t, u) => {
            let (t, u) = (eval_term(t, assign)?, eval_term(u, assign)?);
            t.is_central() && u.is_central() && t.re() <= u.re()
        }
    })
}

/// Evaluates a quantifier-free formula.
pub fn eval_formula<T: AlgebraElement>(
    phi: &AlgFormula,
    assign: &dyn Fn(Var) -> Option<T>,
) -> Result<bool> {
    Ok(match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => eval_atom(a, assign)?,
        Formula::Not(f) => !eval_formula(f, assign)?,
        Formula::And(fs) => {
            for f in fs {
                if !eval_formula(f, assign)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(fs) => {
            for f in fs {
                if eval_formula(f, assign)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval_formula(a, assign)? || eval_formula(b, assign)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(Error::NotQuantifierFree),
    })
}
