//! Complete orbit invariants of tuples under the automorphism group, as
//! algebra terms with central values.
//!
//! Real parts cannot be written in the algebra language (they need a factor
//! one half), so every invariant is stored in the doubled form
//! `w + conj(w)`, which equals `2 Re(w)` times the unit. A rescaled complete
//! invariant is still complete, and the doubled form is an honest term.
//!
//! * Quaternions: for `u_i = v_i - conj(v_i)`, the entries are
//!   `v_i + conj(v_i)`, then `u_i u_j` and `(u_i u_j) u_k` in doubled form.
//!   There are `m + m^2 + m^3` of them.
//! * Octonions: one entry per nonassociative word of length at most 4 in the
//!   `m` letters, `m + m^2 + 2 m^3 + 5 m^4` in total.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::formula::AlgTerm;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::realify::Realification;
use crate::var::Var;

/// A nonassociative word: binary tree whose leaves are letter indices
/// (0-based internally, printed 1-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum WordTree {
    Leaf(usize),
    Node(Box<WordTree>, Box<WordTree>),
}

impl WordTree {
    pub fn len(&self) -> usize {
        match self {
            WordTree::Leaf(_) => 1,
            WordTree::Node(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> Vec<usize> {
        match self {
            WordTree::Leaf(i) => vec![*i],
            WordTree::Node(a, b) => {
                let mut v = a.letters();
                v.extend(b.letters());
                v
            }
        }
    }

    pub fn to_term(&self, vars: &[Var]) -> AlgTerm {
        match self {
            WordTree::Leaf(i) => AlgTerm::Var(vars[*i]),
            WordTree::Node(a, b) => AlgTerm::mul(a.to_term(vars), b.to_term(vars)),
        }
    }

    fn relabel(&self, labels: &mut impl Iterator<Item = usize>) -> WordTree {
        match self {
            WordTree::Leaf(_) => WordTree::Leaf(labels.next().unwrap()),
            WordTree::Node(a, b) => {
                let a = a.relabel(labels);
                WordTree::Node(Box::new(a), Box::new(b.relabel(labels)))
            }
        }
    }
}

impl fmt::Display for WordTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordTree::Leaf(i) => write!(f, "{}", i + 1),
            WordTree::Node(a, b) => write!(f, "({a} {b})"),
        }
    }
}

/// All tree shapes with `n` leaves, ordered by the size of the left subtree.
fn shapes(n: usize) -> Vec<WordTree> {
    if n == 1 {
        return vec![WordTree::Leaf(0)];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in shapes(k) {
            for r in shapes(n - k) {
                out.push(WordTree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Every word with at most `maxlen` letters drawn from `m` letters, ordered
/// by length, then shape, then the label sequence lexicographically.
pub fn enum_words(m: usize, maxlen: usize) -> Vec<WordTree> {
    assert!(
        m >= 1 && maxlen >= 1,
        "need at least one letter and length one"
    );
    let mut out = Vec::new();
    for len in 1..=maxlen {
        let count = m.pow(len as u32);
        for shape in shapes(len) {
            for code in 0..count {
                // digits of `code` in base m, most significant first
                let mut digits = vec![0usize; len];
                let mut c = code;
                for d in digits.iter_mut().rev() {
                    *d = c % m;
                    c /= m;
                }
                out.push(shape.relabel(&mut digits.into_iter()));
            }
        }
    }
    out
}

/// `m + m^2 + 2m^3 + 5m^4 + ...`: Catalan-weighted word count.
pub fn word_count(m: usize, maxlen: usize) -> usize {
    let mut catalan = 1usize;
    let mut total = 0;
    for len in 1..=maxlen {
        total += catalan * m.pow(len as u32);
        // C_{n+1} = C_n * 2(2n+1)/(n+2) with n = len - 1
        let n = len - 1;
        catalan = catalan * 2 * (2 * n + 1) / (n + 2);
    }
    total
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeEntry {
    pub label: String,
    /// Central-valued algebra term.
    pub term: AlgTerm,
    /// Real coordinate of `term` as a polynomial in the variable coordinates.
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantScheme {
    pub algebra: Algebra,
    pub vars: Vec<Var>,
    pub entries: Vec<SchemeEntry>,
}

fn doubled(t: AlgTerm) -> AlgTerm {
    AlgTerm::add(t.clone(), AlgTerm::conj(t))
}

fn imaginary_doubled(v: Var) -> AlgTerm {
    AlgTerm::sub(AlgTerm::Var(v), AlgTerm::conj(AlgTerm::Var(v)))
}

impl InvariantScheme {
    pub fn for_algebra(algebra: Algebra, vars: &[Var]) -> Result<Self> {
        match algebra {
            Algebra::Quat => Self::quat(vars),
            Algebra::Oct => Self::oct(vars, 4),
        }
    }

    /// The quaternion scheme over `vars`, entries in lexicographic index order.
    pub fn quat(vars: &[Var]) -> Result<Self> {
        let m = vars.len();
        let mut labeled = Vec::with_capacity(m + m * m + m * m * m);
        for (i, &v) in vars.iter().enumerate() {
            labeled.push((format!("L1[{}]", i + 1), doubled(AlgTerm::Var(v))));
        }
        for i in 0..m {
            for j in 0..m {
                let u = AlgTerm::mul(imaginary_doubled(vars[i]), imaginary_doubled(vars[j]));
                labeled.push((format!("L2[{},{}]", i + 1, j + 1), doubled(u)));
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let u = AlgTerm::mul(
                        AlgTerm::mul(imaginary_doubled(vars[i]), imaginary_doubled(vars[j])),
                        imaginary_doubled(vars[k]),
                    );
                    labeled.push((format!("L3[{},{},{}]", i + 1, j + 1, k + 1), doubled(u)));
                }
            }
        }
        Self::build(Algebra::Quat, vars, labeled)
    }

    /// The octonion word scheme over `vars` with words up to `maxlen` letters.
    pub fn oct(vars: &[Var], maxlen: usize) -> Result<Self> {
        let labeled = if vars.is_empty() {
            Vec::new()
        } else {
            enum_words(vars.len(), maxlen)
                .into_iter()
                .map(|w| (format!("W{w}"), doubled(w.to_term(vars))))
                .collect()
        };
        Self::build(Algebra::Oct, vars, labeled)
    }

    fn build(algebra: Algebra, vars: &[Var], labeled: Vec<(String, AlgTerm)>) -> Result<Self> {
        let mut ctx = Realification::new(algebra, vars);
        let mut entries = Vec::with_capacity(labeled.len());
        for (label, term) in labeled {
            let coords = ctx.realify_term(&term)?;
            debug_assert!(
                coords[1..].iter().all(Poly::is_zero),
                "{label} is not central"
            );
            entries.push(SchemeEntry {
                label,
                term,
                poly: coords.into_iter().next().unwrap(),
            });
        }
        Ok(InvariantScheme {
            algebra,
            vars: vars.to_vec(),
            entries,
        })
    }

    /// Default variable names `v1 .. vm`.
    pub fn default_vars(m: usize) -> Vec<Var> {
        (1..=m).map(|i| Var::new(&format!("v{i}"))).collect()
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Drops entries whose polynomial repeats an earlier entry's.
    pub fn dedup(mut self) -> Self {
        let mut seen = HashSet::new();
        self.entries.retain(|e| seen.insert(e.poly.clone()));
        self
    }

    /// Central values of every entry at `tuple`, in entry order.
    pub fn eval<T: AlgebraElement>(&self, tuple: &[T]) -> Result<Vec<Rational>> {
        if tuple.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: tuple.len(),
            });
        }
        assert_eq!(T::ALGEBRA, self.algebra, "tuple lives in the wrong algebra");
        let mut cache = HashMap::new();
        for (v, x) in self.vars.iter().zip(tuple) {
            cache.insert(AlgTerm::Var(*v), x.clone());
        }
        self.entries
            .iter()
            .map(|e| {
                let val = eval_shared(&e.term, &mut cache)?;
                debug_assert!(val.is_central());
                Ok(val.re())
            })
            .collect()
    }

    /// One line per entry: `label TAB term TAB polynomial`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&format!("{}\t{}\t{}\n", e.label, e.term, e.poly));
        }
        s
    }
}

/// Term evaluation that reuses values of repeated subterms; `cache` starts
/// with the variable assignment.
fn eval_shared<T: AlgebraElement>(t: &AlgTerm, cache: &mut HashMap<AlgTerm, T>) -> Result<T> {
    if let Some(v) = cache.get(t) {
        return Ok(v.clone());
    }
    let v = match t {
        AlgTerm::Var(v) => return Err(Error::Unassigned(*v)),
        AlgTerm::Zero => T::zero(),
        AlgTerm::One => T::one(),
        AlgTerm::Neg(a) => eval_shared(a, cache)?.neg(),
        AlgTerm::Conj(a) => eval_shared(a, cache)?.conj(),
        AlgTerm::Add(a, b) => eval_shared(a, cache)?.add(&eval_shared(b, cache)?),
        AlgTerm::Sub(a, b) => eval_shared(a, cache)?.sub(&eval_shared(b, cache)?),
        AlgTerm::Mul(a, b) => eval_shared(a, cache)?.mul(&eval_shared(b, cache)?),
    };
    cache.insert(t.clone(), v.clone());
    Ok(v)
}

pub fn quat_scheme(m: usize) -> InvariantScheme {
    InvariantScheme::quat(&InvariantScheme::default_vars(m)).expect("scheme variables are declared")
}

pub fn oct_scheme(m: usize) -> InvariantScheme {
    InvariantScheme::oct(&InvariantScheme::default_vars(m), 4)
        .expect("scheme variables are declared")
}

pub fn eval_scheme<T: AlgebraElement>(
    scheme: &InvariantScheme,
    tuple: &[T],
) -> Result<Vec<Rational>> {
    scheme.eval(tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Octonion, Quaternion};

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn quat_entry_counts() {
        assert_eq!(quat_scheme(1).len(), 3);
        assert_eq!(quat_scheme(2).len(), 14);
        assert_eq!(quat_scheme(3).len(), 39);
        assert_eq!(quat_scheme(2).entries[2].label, "L2[1,1]");
    }

    #[test]
    fn first_entry_is_twice_the_real_part() {
        let s = quat_scheme(1);
        let v = s.eval(&[Quaternion::from_ints(1, 2, 0, 0)]).unwrap();
        assert_eq!(v[0], r(2));
    }

    #[test]
    fn second_entries() {
        let s = quat_scheme(2);
        let (i, j) = (Quaternion::i(), Quaternion::j());
        let v = s.eval(&[i.clone(), j]).unwrap();
        // L2[1,2]
        assert_eq!(v[2 + 1], r(0));
        let w = s.eval(&[i.clone(), i]).unwrap();
        assert_eq!(w[2], r(-8));
    }

    #[test]
    fn triple_entry_orientation() {
        let s = quat_scheme(3);
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let idx = s
            .entries
            .iter()
            .position(|e| e.label == "L3[1,2,3]")
            .unwrap();
        let a = s.eval(&[i.clone(), j.clone(), k.clone()]).unwrap();
        let b = s.eval(&[i, j, k.neg()]).unwrap();
        assert_eq!(a[idx], r(-16));
        assert_eq!(b[idx], r(16));
        for (e, (x, y)) in s.entries.iter().zip(a.iter().zip(&b)) {
            if !e.label.starts_with("L3") {
                assert_eq!(x, y, "{}", e.label);
            }
        }
    }

    #[test]
    fn zero_tuple() {
        let s = quat_scheme(3);
        let v = s
            .eval(&[Quaternion::zero(), Quaternion::zero(), Quaternion::zero()])
            .unwrap();
        assert!(v.iter().all(Rational::is_zero));
    }

    #[test]
    fn arity_mismatch() {
        let s = quat_scheme(2);
        assert!(matches!(
            s.eval(&[Quaternion::one()]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(enum_words(1, 4).len(), 9);
        let two: Vec<_> = enum_words(2, 2)
            .into_iter()
            .filter(|w| w.len() == 2)
            .collect();
        assert_eq!(two.len(), 4);
        assert_eq!(
            two.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            ["(1 1)", "(1 2)", "(2 1)", "(2 2)"]
        );
        for m in 1usize..=3 {
            let expect = m + m * m + 2 * m.pow(3) + 5 * m.pow(4);
            assert_eq!(enum_words(m, 4).len(), expect);
            assert_eq!(word_count(m, 4), expect);
        }
    }

    #[test]
    fn words_are_distinct_and_ordered() {
        let ws = enum_words(2, 4);
        let set: HashSet<_> = ws.iter().collect();
        assert_eq!(set.len(), ws.len());
        assert!(ws.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert_eq!(ws[0], WordTree::Leaf(0));
    }

    #[test]
    fn oct_scheme_values() {
        let s = oct_scheme(1);
        assert_eq!(s.len(), 9);
        let v = s.eval(&[Octonion::l()]).unwrap();
        assert_eq!(v[0], r(0));
        assert_eq!(s.entries[1].label, "W(1 1)");
        assert_eq!(v[1], r(-2));
    }

    #[test]
    fn dump_format() {
        let s = quat_scheme(1);
        let d = s.dump();
        let first = d.lines().next().unwrap();
        let cols: Vec<_> = first.split('\t').collect();
        assert_eq!(cols, ["L1[1]", "v1 + conj(v1)", "2*v1_0"]);
        assert_eq!(d.lines().count(), 3);
    }

    #[test]
    fn dedup_removes_repeated_polynomials() {
        let s = oct_scheme(1);
        let d = s.clone().dedup();
        assert!(d.len() < s.len());
        let polys: HashSet<_> = d.entries.iter().map(|e| e.poly.clone()).collect();
        assert_eq!(polys.len(), d.len());
    }
}
