//! Translation of algebra terms and formulas into coordinates over the base
//! field. An algebra variable `x` becomes the real variables
//! `x_0, ..., x_{dim-1}` in basis order.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::formula::{AlgAtom, AlgFormula, AlgTerm, Formula, RealAtom, RealFormula};
use crate::poly::Poly;
use crate::var::Var;

/// Realification context for one algebra.
#[derive(Clone, Debug)]
pub struct Realification {
    algebra: Algebra,
    var_map: BTreeMap<Var, Vec<Var>>,
    simplify: bool,
    cache: HashMap<AlgTerm, Vec<Poly>>,
}

impl Realification {
    /// Declares `vars`; more variables are declared automatically when
    /// quantifiers binding them are realified.
    pub fn new(algebra: Algebra, vars: &[Var]) -> Self {
        let mut r = Realification {
            algebra,
            var_map: BTreeMap::new(),
            simplify: true,
            cache: HashMap::new(),
        };
        for &v in vars {
            r.declare(v);
        }
        r
    }

    /// Keep trivially true coordinate equations and unnormalized atoms, so
    /// that atom counts are exactly `dim` per equation.
    pub fn without_simplification(mut self) -> Self {
        self.simplify = false;
        self
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn declare(&mut self, v: Var) -> &[Var] {
        let dim = self.dim();
        self.var_map
            .entry(v)
            .or_insert_with(|| (0..dim).map(|i| v.coord(i)).collect())
    }

    pub fn coords(&self, v: Var) -> Result<&[Var]> {
        self.var_map
            .get(&v)
            .map(Vec::as_slice)
            .ok_or(Error::Undeclared(v))
    }

    pub fn realify_term(&mut self, t: &AlgTerm) -> Result<Vec<Poly>> {
        if let Some(hit) = self.cache.get(t) {
            return Ok(hit.clone());
        }
        let dim = self.dim();
        let out = match t {
            AlgTerm::Var(v) => self.coords(*v)?.iter().map(|&c| Poly::var(c)).collect(),
            AlgTerm::Zero => vec![Poly::zero(); dim],
            AlgTerm::One => {
                let mut v = vec![Poly::zero(); dim];
                v[0] = Poly::one();
                v
            }
            AlgTerm::Neg(a) => self.realify_term(a)?.into_iter().map(|p| -p).collect(),
            AlgTerm::Conj(a) => {
                let mut v = self.realify_term(a)?;
                for p in v.iter_mut().skip(1) {
                    *p = -std::mem::take(p);
                }
                v
            }
            AlgTerm::Add(a, b) => {
                let (a, b) = (self.realify_term(a)?, self.realify_term(b)?);
                a.iter().zip(&b).map(|(x, y)| x + y).collect()
            }
            AlgTerm::Sub(a, b) => {
                let (a, b) = (self.realify_term(a)?, self.realify_term(b)?);
                a.iter().zip(&b).map(|(x, y)| x - y).collect()
            }
            AlgTerm::Mul(a, b) => {
                let (a, b) = (self.realify_term(a)?, self.realify_term(b)?);
                mul_coords(self.algebra, &a, &b)
            }
        };
        self.cache.insert(t.clone(), out.clone());
        Ok(out)
    }

    fn eq_atom(&self, p: Poly) -> Option<RealAtom> {
        if !self.simplify {
            return Some(RealAtom::eq(p));
        }
        if p.is_zero() {
            return None;
        }
        Some(RealAtom::eq(p.normalized_sign().0))
    }

    /// `t = u` becomes `dim` coordinate equations. `t <= u` holds only when
    /// both sides are central: the imaginary coordinates of both vanish and
    /// the real parts are ordered.
    pub fn realify_atom(&mut self, atom: &AlgAtom) -> Result<RealFormula> {
        let mut parts = Vec::new();
        match atom {
            AlgAtom::Eq(t, u) => {
                let (t, u) = (self.realify_term(t)?, self.realify_term(u)?);
                for (a, b) in t.iter().zip(&u) {
                    parts.extend(self.eq_atom(a - b));
                }
            }
            AlgAtom::Le(t, u) => {
                let (t, u) = (self.realify_term(t)?, self.realify_term(u)?);
                for side in [&t, &u] {
                    for p in side.iter().skip(1) {
                        parts.extend(self.eq_atom(p.clone()));
                    }
                }
                let d = &t[0] - &u[0];
                let d = if self.simplify && !d.is_zero() {
                    d.primitive()
                } else {
                    d
                };
                parts.push(RealAtom::le(d));
            }
        }
        Ok(Formula::and_all(parts.into_iter().map(Formula::Atom)))
    }

    pub fn realify_formula(&mut self, phi: &AlgFormula) -> Result<RealFormula> {
        Ok(match phi {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => self.realify_atom(a)?,
            Formula::Not(f) => Formula::not(self.realify_formula(f)?),
            Formula::And(fs) => Formula::and_all(
                fs.iter()
                    .map(|f| self.realify_formula(f))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Formula::Or(fs) => Formula::Or(
                fs.iter()
                    .map(|f| self.realify_formula(f))
                    .collect::<Result<_>>()?,
            ),
            Formula::Implies(a, b) => {
                Formula::implies(self.realify_formula(a)?, self.realify_formula(b)?)
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let coords = self.declare(*v).to_vec();
                let body = self.realify_formula(f)?;
                let exists = matches!(phi, Formula::Exists(..));
                coords.into_iter().rev().fold(body, |acc, c| {
                    if exists {
                        Formula::exists(c, acc)
                    } else {
                        Formula::forall(c, acc)
                    }
                })
            }
        })
    }
}

/// Coordinates of a product through the structure constants.
pub fn mul_coords(algebra: Algebra, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let dim = algebra.dim();
    let table = algebra.mul_table();
    let mut out = vec![Poly::zero(); dim];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let (k, sign) = table[i][j];
            let prod = ai * bj;
            out[k] = if sign > 0 {
                &out[k] + &prod
            } else {
                &out[k] - &prod
            };
        }
    }
    out
}

/// Realifies a formula declaring its free variables first.
pub fn realify(algebra: Algebra, phi: &AlgFormula) -> Result<RealFormula> {
    Realification::new(algebra, &phi.free_vars()).realify_formula(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_alg;
    use crate::formula::parse_real_poly;

    fn ctx(alg: Algebra, vars: &[&str]) -> Realification {
        let vs: Vec<Var> = vars.iter().map(|s| Var::new(s)).collect();
        Realification::new(alg, &vs)
    }

    fn p(s: &str) -> Poly {
        parse_real_poly(s).unwrap()
    }

    #[test]
    fn conj_negates_imaginary_part() {
        let mut r = ctx(Algebra::Quat, &["x"]);
        let v = r.realify_term(&AlgTerm::conj(AlgTerm::var("x"))).unwrap();
        assert_eq!(v, vec![p("x_0"), p("-x_1"), p("-x_2"), p("-x_3")]);
    }

    #[test]
    fn zero_term() {
        let mut r = ctx(Algebra::Quat, &[]);
        assert_eq!(
            r.realify_term(&AlgTerm::Zero).unwrap(),
            vec![Poly::zero(); 4]
        );
    }

    #[test]
    fn product_real_part() {
        let mut r = ctx(Algebra::Quat, &["x", "y"]);
        let v = r
            .realify_term(&AlgTerm::mul(AlgTerm::var("x"), AlgTerm::var("y")))
            .unwrap();
        assert_eq!(v[0], p("x_0*y_0 - x_1*y_1 - x_2*y_2 - x_3*y_3"));
    }

    #[test]
    fn equality_is_componentwise() {
        let f = realify(Algebra::Quat, &parse_alg("x = 0").unwrap()).unwrap();
        assert_eq!(f.to_string(), "x_0 = 0 && x_1 = 0 && x_2 = 0 && x_3 = 0");
    }

    #[test]
    fn order_on_constants() {
        let f = realify(Algebra::Quat, &parse_alg("0 <= 1").unwrap()).unwrap();
        assert_eq!(f, Formula::Atom(RealAtom::le(Poly::from_int(-1))));
    }

    #[test]
    fn order_requires_central_values() {
        let f = realify(Algebra::Quat, &parse_alg("x <= 1").unwrap()).unwrap();
        assert_eq!(
            f.to_string(),
            "x_1 = 0 && x_2 = 0 && x_3 = 0 && x_0 - 1 <= 0"
        );
    }

    #[test]
    fn self_conjugate_equation() {
        let f = realify(Algebra::Quat, &parse_alg("x = conj(x)").unwrap()).unwrap();
        assert_eq!(f.to_string(), "x_1 = 0 && x_2 = 0 && x_3 = 0");
    }

    #[test]
    fn quantifiers_expand_to_coordinates() {
        let phi = parse_alg("exists y. x*y = 1").unwrap();
        let f = Realification::new(Algebra::Quat, &[Var::new("x")])
            .without_simplification()
            .realify_formula(&phi)
            .unwrap();
        let pre = f.prenex_parts();
        assert_eq!(pre.prefix.len(), 4);
        assert_eq!(pre.matrix.atom_count(), 4);
        let oct = Realification::new(Algebra::Oct, &[Var::new("x")])
            .without_simplification()
            .realify_formula(&phi)
            .unwrap();
        assert_eq!(oct.prenex_parts().prefix.len(), 8);
        assert_eq!(oct.prenex_parts().matrix.atom_count(), 8);
    }

    #[test]
    fn undeclared_variable() {
        let mut r = ctx(Algebra::Quat, &[]);
        assert!(matches!(
            r.realify_term(&AlgTerm::var("nope")),
            Err(Error::Undeclared(_))
        ));
    }

    #[test]
    fn variable_free_formula_is_constant() {
        let f = realify(Algebra::Oct, &parse_alg("1 + 1 = 1 * 1").unwrap()).unwrap();
        assert!(f.free_vars().is_empty());
        assert_eq!(f.eval(&|_| None), Some(false));
    }
}
