//! Virtual substitution of symbolic test points into atoms.
//!
//! Test points for `exists x` are `-inf`, roots of the atoms' polynomials in
//! `x`, and `root + eps` for strict atoms. Substituting any of them yields
//! polynomial conditions only: quotients are cleared by even powers of the
//! denominator, square roots by the sign rules for `A + B sqrt(D)`, and the
//! infinitesimal and `-inf` by case splits on the coefficients.

use crate::formula::{RealAtom, Rel};
use crate::poly::Poly;
use crate::var::Var;

/// Disjunction of conjunctions of raw atoms.
pub type Dnf = Vec<Vec<RealAtom>>;

pub fn dnf_atom(a: RealAtom) -> Dnf {
    vec![vec![a]]
}

pub fn dnf_or(mut a: Dnf, b: Dnf) -> Dnf {
    a.extend(b);
    a
}

pub fn dnf_and(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut c = x.clone();
            c.extend(y.iter().cloned());
            out.push(c);
        }
    }
    out
}

/// A root of a polynomial of degree at most two in the eliminated variable.
#[derive(Clone, Debug, PartialEq)]
pub enum Root {
    /// `num / den`, valid under `den != 0`.
    Linear { num: Poly, den: Poly },
    /// `(-b + sign sqrt(disc)) / (2a)`, valid under `a != 0 && disc >= 0`.
    Quadratic {
        a: Poly,
        b: Poly,
        disc: Poly,
        sign: i32,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum TestPoint {
    MinusInf,
    Root { root: Root, eps: bool },
}

/// The roots of `q` as a polynomial in `x`, each with its guard.
pub fn roots_of(q: &Poly, x: Var) -> Vec<(Vec<RealAtom>, Root)> {
    let cs = q.coeffs_in(x);
    match cs.len() {
        2 => vec![(
            vec![RealAtom::ne(cs[1].clone())],
            Root::Linear {
                num: -&cs[0],
                den: cs[1].clone(),
            },
        )],
        3 => {
            let (c, b, a) = (&cs[0], &cs[1], &cs[2]);
            let disc = &(b * b) - &(&(a * c) * &Poly::from_int(4));
            let quad_guard = vec![RealAtom::ne(a.clone()), RealAtom::ge(disc.clone())];
            let mut out = Vec::new();
            if !a.is_constant() {
                out.push((
                    vec![RealAtom::eq(a.clone()), RealAtom::ne(b.clone())],
                    Root::Linear {
                        num: -c,
                        den: b.clone(),
                    },
                ));
            }
            for sign in [1, -1] {
                out.push((
                    quad_guard.clone(),
                    Root::Quadratic {
                        a: a.clone(),
                        b: b.clone(),
                        disc: disc.clone(),
                        sign,
                    },
                ));
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Substitutes `point` for `x` in `q rel 0`.
pub fn substitute(point: &TestPoint, x: Var, q: &Poly, rel: Rel) -> Dnf {
    if !q.contains(x) {
        return dnf_atom(RealAtom::new(q.clone(), rel));
    }
    match point {
        TestPoint::MinusInf => minus_inf(&q.coeffs_in(x), rel),
        TestPoint::Root { root, eps: false } => at_root(root, x, q, rel),
        TestPoint::Root { root, eps: true } => after_root(root, x, q, rel),
    }
}

fn at_root(root: &Root, x: Var, q: &Poly, rel: Rel) -> Dnf {
    match root {
        Root::Linear { num, den } => dnf_atom(RealAtom::new(
            linear_value(&q.coeffs_in(x), num, den, rel),
            rel,
        )),
        Root::Quadratic { a, b, disc, sign } => {
            let (aa, bb) = quadratic_value(&q.coeffs_in(x), a, b, disc, *sign);
            sqrt_sign(aa, bb, disc, rel)
        }
    }
}

/// `den^e * q(num/den)` with `e` the degree, raised to even for ordered
/// relations so the sign is kept.
pub fn linear_value(cs: &[Poly], num: &Poly, den: &Poly, rel: Rel) -> Poly {
    let d = cs.len() - 1;
    let mut total = Poly::zero();
    let mut num_pow = Poly::one();
    let den_pows: Vec<Poly> = {
        let mut v = vec![Poly::one()];
        for i in 1..=d {
            v.push(&v[i - 1] * den);
        }
        v
    };
    for (i, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            total = &total + &(&(c * &num_pow) * &den_pows[d - i]);
        }
        if i < d {
            num_pow = &num_pow * num;
        }
    }
    if d % 2 == 1 && matches!(rel, Rel::Le | Rel::Lt) {
        total = &total * den;
    }
    total
}

/// `(2a)^2 q(root) = A + B sqrt(disc)`, returns `(A, B)`.
fn quadratic_value(cs: &[Poly], a: &Poly, b: &Poly, disc: &Poly, sign: i32) -> (Poly, Poly) {
    let zero = Poly::zero();
    let gamma = &cs[0];
    let beta = cs.get(1).unwrap_or(&zero);
    let alpha = cs.get(2).unwrap_or(&zero);
    let p0 = -b;
    let d = &Poly::from_int(2) * a;
    let aa = &(&(alpha * &(&(&p0 * &p0) + disc)) + &(&(beta * &d) * &p0)) + &(gamma * &(&d * &d));
    let mut bb = &(&Poly::from_int(2) * &(alpha * &p0)) + &(beta * &d);
    if sign < 0 {
        bb = -bb;
    }
    (aa, bb)
}

/// Sign condition on `A + B sqrt(D)` given `D >= 0`.
fn sqrt_sign(a: Poly, b: Poly, disc: &Poly, rel: Rel) -> Dnf {
    if b.is_zero() {
        return dnf_atom(RealAtom::new(a, rel));
    }
    let norm = &(&a * &a) - &(&(&b * &b) * disc);
    let ab = &a * &b;
    match rel {
        Rel::Eq => vec![vec![RealAtom::le(ab), RealAtom::eq(norm)]],
        Rel::Ne => vec![vec![RealAtom::gt(ab)], vec![RealAtom::ne(norm)]],
        Rel::Le => vec![
            vec![RealAtom::le(a), RealAtom::ge(norm.clone())],
            vec![RealAtom::le(b), RealAtom::le(norm)],
        ],
        Rel::Lt => vec![
            vec![RealAtom::lt(a.clone()), RealAtom::gt(norm.clone())],
            vec![RealAtom::le(b.clone()), RealAtom::lt(a)],
            vec![RealAtom::le(b), RealAtom::lt(norm)],
        ],
    }
}

/// `q(t + eps) rel 0` for an infinitesimal `eps > 0`.
fn after_root(root: &Root, x: Var, q: &Poly, rel: Rel) -> Dnf {
    let cs = q.coeffs_in(x);
    match rel {
        Rel::Eq => vec![cs.into_iter().map(RealAtom::eq).collect()],
        Rel::Ne => cs.into_iter().map(|c| vec![RealAtom::ne(c)]).collect(),
        Rel::Lt => eps_negative(root, x, q),
        Rel::Le => dnf_or(
            eps_negative(root, x, q),
            vec![cs.into_iter().map(RealAtom::eq).collect()],
        ),
    }
}

/// `q(t + eps) < 0`: the first nonvanishing derivative at `t` is negative.
fn eps_negative(root: &Root, x: Var, q: &Poly) -> Dnf {
    if !q.contains(x) {
        return dnf_atom(RealAtom::lt(q.clone()));
    }
    let dq = q.derivative(x);
    let now = at_root(root, x, q, Rel::Lt);
    let zero = at_root(root, x, q, Rel::Eq);
    dnf_or(now, dnf_and(&zero, &eps_negative(root, x, &dq)))
}

/// `q(-inf) rel 0` from the coefficient list, lowest degree first.
fn minus_inf(cs: &[Poly], rel: Rel) -> Dnf {
    let all_zero = || vec![cs.iter().cloned().map(RealAtom::eq).collect::<Vec<_>>()];
    match rel {
        Rel::Eq => all_zero(),
        Rel::Ne => cs.iter().map(|c| vec![RealAtom::ne(c.clone())]).collect(),
        Rel::Lt => inf_negative(cs),
        Rel::Le => dnf_or(inf_negative(cs), all_zero()),
    }
}

fn inf_negative(cs: &[Poly]) -> Dnf {
    let mut out = Vec::new();
    let mut prefix: Vec<RealAtom> = Vec::new();
    for (k, c) in cs.iter().enumerate().rev() {
        let signed = if k % 2 == 1 { -c } else { c.clone() };
        let mut clause = prefix.clone();
        clause.push(RealAtom::lt(signed));
        out.push(clause);
        prefix.push(RealAtom::eq(c.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_real_poly;
    use crate::rational::Rational;

    fn p(s: &str) -> Poly {
        parse_real_poly(s).unwrap()
    }

    fn holds(d: &Dnf, at: &dyn Fn(Var) -> Option<Rational>) -> bool {
        d.iter().any(|c| c.iter().all(|a| a.eval(at).unwrap()))
    }

    #[test]
    fn linear_root_value() {
        let x = Var::new("x");
        // q = x^2 - 2 at x = 3/2: 4 * (9/4 - 2) = 1
        let v = linear_value(&p("x^2 - 2").coeffs_in(x), &p("3"), &p("2"), Rel::Eq);
        assert_eq!(v, p("1"));
        // odd degree keeps the sign for ordered relations
        let w = linear_value(&p("x").coeffs_in(x), &p("1"), &p("-1"), Rel::Lt);
        assert_eq!(w, p("-1"));
    }

    #[test]
    fn sqrt_rules_match_numeric_signs() {
        let d = Var::new("sq_d");
        let vals = [-3i64, -1, 0, 1, 2, 5];
        for a in vals {
            for b in vals {
                for disc in [0i64, 1, 2, 4, 9] {
                    let num = a as f64 + b as f64 * (disc as f64).sqrt();
                    for rel in [Rel::Eq, Rel::Ne, Rel::Le, Rel::Lt] {
                        let dnf =
                            sqrt_sign(Poly::from_int(a), Poly::from_int(b), &Poly::var(d), rel);
                        let at = |v: Var| (v == d).then(|| Rational::from_int(disc));
                        let s = if num.abs() < 1e-9 {
                            0
                        } else if num < 0.0 {
                            -1
                        } else {
                            1
                        };
                        assert_eq!(
                            holds(&dnf, &at),
                            rel.holds(s),
                            "{a} + {b} sqrt {disc} {rel:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn minus_infinity() {
        let x = Var::new("x");
        let q = p("-x^2 + 5");
        let d = minus_inf(&q.coeffs_in(x), Rel::Lt);
        assert!(holds(&d, &|_| None));
        let r = p("x + 5");
        let d = minus_inf(&r.coeffs_in(x), Rel::Lt);
        assert!(holds(&d, &|_| None));
        let d = minus_inf(&r.coeffs_in(x), Rel::Eq);
        assert!(!holds(&d, &|_| None));
    }

    #[test]
    fn infinitesimal_after_root() {
        let x = Var::new("x");
        let root = Root::Linear {
            num: p("0"),
            den: p("1"),
        };
        // x^2 < 0 just after 0: false; -x < 0 just after 0: true
        assert!(!holds(&after_root(&root, x, &p("x^2"), Rel::Lt), &|_| None));
        assert!(holds(&after_root(&root, x, &p("-x"), Rel::Lt), &|_| None));
        assert!(holds(
            &after_root(&root, x, &p("x^2 - x"), Rel::Lt),
            &|_| None
        ));
    }
}
