//! Terms and atoms of the algebra language `(+, -, *, 0, 1, <=, conj)`.

use std::collections::BTreeSet;
use std::fmt;

use super::{Atom, Formula};
use crate::var::Var;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AlgTerm {
    Var(Var),
    Zero,
    One,
    Neg(Box<AlgTerm>),
    Add(Box<AlgTerm>, Box<AlgTerm>),
    Sub(Box<AlgTerm>, Box<AlgTerm>),
    Mul(Box<AlgTerm>, Box<AlgTerm>),
    Conj(Box<AlgTerm>),
}

#[allow(clippy::should_implement_trait)]
impl AlgTerm {
    pub fn var(name: &str) -> AlgTerm {
        AlgTerm::Var(Var::new(name))
    }

    pub fn neg(t: AlgTerm) -> AlgTerm {
        AlgTerm::Neg(Box::new(t))
    }

    pub fn add(a: AlgTerm, b: AlgTerm) -> AlgTerm {
        AlgTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: AlgTerm, b: AlgTerm) -> AlgTerm {
        AlgTerm::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: AlgTerm, b: AlgTerm) -> AlgTerm {
        AlgTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn conj(a: AlgTerm) -> AlgTerm {
        AlgTerm::Conj(Box::new(a))
    }

    /// `1 + 1 + ... + 1` (`n` ones, left associated); `0` for `n == 0`.
    pub fn ones(n: u64) -> AlgTerm {
        if n == 0 {
            return AlgTerm::Zero;
        }
        let mut t = AlgTerm::One;
        for _ in 1..n {
            t = AlgTerm::add(t, AlgTerm::One);
        }
        t
    }

    /// A term denoting the integer `n`. Small values are sums of ones;
    /// larger ones use binary doubling `(1 + 1) * k + b` to keep terms short.
    pub fn integer(n: &num_bigint::BigInt) -> AlgTerm {
        use num_traits::{Signed, ToPrimitive, Zero};
        if n.is_negative() {
            return AlgTerm::neg(AlgTerm::integer(&-n));
        }
        if n.is_zero() {
            return AlgTerm::Zero;
        }
        if let Some(small) = n.to_u64() {
            if small <= 4 {
                return AlgTerm::ones(small);
            }
        }
        let two = num_bigint::BigInt::from(2);
        let half = n / &two;
        let bit = n % &two;
        let doubled = AlgTerm::mul(AlgTerm::ones(2), AlgTerm::integer(&half));
        if bit.is_zero() {
            doubled
        } else {
            AlgTerm::add(doubled, AlgTerm::One)
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        let mut v = Vec::new();
        self.ordered_vars(&mut v);
        out.extend(v);
    }

    pub fn ordered_vars(&self, out: &mut Vec<Var>) {
        match self {
            AlgTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            AlgTerm::Zero | AlgTerm::One => {}
            AlgTerm::Neg(a) | AlgTerm::Conj(a) => a.ordered_vars(out),
            AlgTerm::Add(a, b) | AlgTerm::Sub(a, b) | AlgTerm::Mul(a, b) => {
                a.ordered_vars(out);
                b.ordered_vars(out);
            }
        }
    }

    pub fn substitute(&self, v: Var, t: &AlgTerm) -> AlgTerm {
        match self {
            AlgTerm::Var(w) if *w == v => t.clone(),
            AlgTerm::Var(_) | AlgTerm::Zero | AlgTerm::One => self.clone(),
            AlgTerm::Neg(a) => AlgTerm::neg(a.substitute(v, t)),
            AlgTerm::Conj(a) => AlgTerm::conj(a.substitute(v, t)),
            AlgTerm::Add(a, b) => AlgTerm::add(a.substitute(v, t), b.substitute(v, t)),
            AlgTerm::Sub(a, b) => AlgTerm::sub(a.substitute(v, t), b.substitute(v, t)),
            AlgTerm::Mul(a, b) => AlgTerm::mul(a.substitute(v, t), b.substitute(v, t)),
        }
    }

    /// Number of multiplications along the deepest path: an upper bound on
    /// the degree of the realified coordinates.
    pub fn degree_bound(&self) -> u32 {
        match self {
            AlgTerm::Var(_) => 1,
            AlgTerm::Zero | AlgTerm::One => 0,
            AlgTerm::Neg(a) | AlgTerm::Conj(a) => a.degree_bound(),
            AlgTerm::Add(a, b) | AlgTerm::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
            AlgTerm::Mul(a, b) => a.degree_bound() + b.degree_bound(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            AlgTerm::Add(..) | AlgTerm::Sub(..) => 1,
            AlgTerm::Mul(..) => 2,
            AlgTerm::Neg(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            AlgTerm::Var(v) => write!(f, "{v}"),
            AlgTerm::Zero => f.write_str("0"),
            AlgTerm::One => f.write_str("1"),
            AlgTerm::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 4)
            }
            AlgTerm::Conj(a) => {
                f.write_str("conj(")?;
                a.fmt_at(f, 0)?;
                f.write_str(")")
            }
            AlgTerm::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)
            }
            AlgTerm::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" - ")?;
                b.fmt_at(f, 2)
            }
            AlgTerm::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str(" * ")?;
                b.fmt_at(f, 3)
            }
        }
    }
}

impl fmt::Display for AlgTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// `t = u` or `t <= u`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AlgAtom {
    Eq(AlgTerm, AlgTerm),
    Le(AlgTerm, AlgTerm),
}

impl AlgAtom {
    pub fn terms(&self) -> (&AlgTerm, &AlgTerm) {
        match self {
            AlgAtom::Eq(a, b) | AlgAtom::Le(a, b) => (a, b),
        }
    }
}

impl Atom for AlgAtom {
    type Term = AlgTerm;

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        let (a, b) = self.terms();
        a.collect_vars(out);
        b.collect_vars(out);
    }

    fn ordered_vars(&self, out: &mut Vec<Var>) {
        let (a, b) = self.terms();
        a.ordered_vars(out);
        b.ordered_vars(out);
    }

    fn substitute(&self, v: Var, t: &AlgTerm) -> Self {
        match self {
            AlgAtom::Eq(a, b) => AlgAtom::Eq(a.substitute(v, t), b.substitute(v, t)),
            AlgAtom::Le(a, b) => AlgAtom::Le(a.substitute(v, t), b.substitute(v, t)),
        }
    }

    fn term_vars(t: &AlgTerm) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        t.collect_vars(&mut s);
        s
    }

    fn var_term(v: Var) -> AlgTerm {
        AlgTerm::Var(v)
    }

    fn negate(&self) -> Formula<Self> {
        // the surface language has no strict or disequality atoms
        Formula::not(Formula::Atom(self.clone()))
    }
}

impl fmt::Display for AlgAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgAtom::Eq(a, b) => write!(f, "{a} = {b}"),
            AlgAtom::Le(a, b) => write!(f, "{a} <= {b}"),
        }
    }
}

pub type AlgFormula = Formula<AlgAtom>;

impl AlgFormula {
    pub fn eq(a: AlgTerm, b: AlgTerm) -> AlgFormula {
        Formula::Atom(AlgAtom::Eq(a, b))
    }

    pub fn le(a: AlgTerm, b: AlgTerm) -> AlgFormula {
        Formula::Atom(AlgAtom::Le(a, b))
    }
}

pub(super) fn fmt_formula<A: Atom + fmt::Display>(
    phi: &Formula<A>,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    fmt_at(phi, f, 0)
}

fn level<A>(phi: &Formula<A>) -> u8 {
    match phi {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 5,
    }
}

fn fmt_at<A: Atom + fmt::Display>(
    phi: &Formula<A>,
    f: &mut fmt::Formatter<'_>,
    min: u8,
) -> fmt::Result {
    if level(phi) < min {
        f.write_str("(")?;
        fmt_at(phi, f, 0)?;
        return f.write_str(")");
    }
    match phi {
        Formula::True => f.write_str("true"),
        Formula::False => f.write_str("false"),
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::Not(g) => {
            f.write_str("!(")?;
            fmt_at(g, f, 0)?;
            f.write_str(")")
        }
        Formula::And(gs) => join(gs, " && ", 4, f),
        Formula::Or(gs) => join(gs, " || ", 3, f),
        Formula::Implies(a, b) => {
            fmt_at(a, f, 2)?;
            f.write_str(" -> ")?;
            fmt_at(b, f, 1)
        }
        Formula::Exists(v, g) => {
            write!(f, "exists {v}. ")?;
            fmt_at(g, f, 0)
        }
        Formula::Forall(v, g) => {
            write!(f, "forall {v}. ")?;
            fmt_at(g, f, 0)
        }
    }
}

fn join<A: Atom + fmt::Display>(
    gs: &[Formula<A>],
    sep: &str,
    min: u8,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if gs.is_empty() {
        return f.write_str(if sep.contains('&') { "true" } else { "false" });
    }
    for (i, g) in gs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        fmt_at(g, f, min)?;
    }
    Ok(())
}

impl fmt::Display for Formula<AlgAtom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_printing_respects_structure() {
        let (x, y, z) = (AlgTerm::var("x"), AlgTerm::var("y"), AlgTerm::var("z"));
        let t = AlgTerm::sub(x.clone(), AlgTerm::sub(y.clone(), z.clone()));
        assert_eq!(t.to_string(), "x - (y - z)");
        let t = AlgTerm::mul(AlgTerm::add(x.clone(), y.clone()), z.clone());
        assert_eq!(t.to_string(), "(x + y) * z");
        let t = AlgTerm::neg(AlgTerm::mul(x.clone(), y.clone()));
        assert_eq!(t.to_string(), "-(x * y)");
        let t = AlgTerm::mul(AlgTerm::neg(x), AlgTerm::conj(y));
        assert_eq!(t.to_string(), "-x * conj(y)");
    }

    #[test]
    fn integers_as_terms() {
        assert_eq!(AlgTerm::ones(2).to_string(), "1 + 1");
        assert_eq!(AlgTerm::integer(&3.into()).to_string(), "1 + 1 + 1");
        assert_eq!(AlgTerm::integer(&(-1).into()).to_string(), "-1");
        assert_eq!(
            AlgTerm::integer(&10.into()).to_string(),
            "(1 + 1) * ((1 + 1) * (1 + 1) + 1)"
        );
    }

    #[test]
    fn degree_bound() {
        let x = AlgTerm::var("x");
        let t = AlgTerm::mul(
            AlgTerm::mul(x.clone(), AlgTerm::conj(x.clone())),
            AlgTerm::add(x, AlgTerm::One),
        );
        assert_eq!(t.degree_bound(), 3);
    }
}
