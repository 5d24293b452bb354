//! The quaternion and octonion algebras over the rationals.
//!
//! Basis orders are fixed: `(1, i, j, k)` for quaternions and
//! `(1, i, j, k, l, il, jl, kl)` for octonions, where an octonion is the
//! Cayley–Dickson pair `h0 + h1·l`. Every coordinate index used elsewhere in
//! the crate (realified variable suffixes, automorphism matrices) refers to
//! these orders.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Which algebra a formula is interpreted in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Quat,
    Oct,
}

impl Algebra {
    pub fn dim(self) -> usize {
        match self {
            Algebra::Quat => 4,
            Algebra::Oct => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Quat => "quat",
            Algebra::Oct => "oct",
        }
    }

    /// Structure constants: `e_i * e_j = sign * e_k`, stored at `[i][j]`.
    pub fn mul_table(self) -> &'static [Vec<(usize, i8)>] {
        match self {
            Algebra::Quat => &QUAT_TABLE,
            Algebra::Oct => &OCT_TABLE,
        }
    }

    pub fn basis_names(self) -> &'static [&'static str] {
        match self {
            Algebra::Quat => &["1", "i", "j", "k"],
            Algebra::Oct => &["1", "i", "j", "k", "l", "il", "jl", "kl"],
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algebra {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quat" | "H" | "quaternion" | "quaternions" => Ok(Algebra::Quat),
            "oct" | "O" | "octonion" | "octonions" => Ok(Algebra::Oct),
            other => Err(format!("unknown algebra `{other}` (expected quat or oct)")),
        }
    }
}

/// Common surface of the two algebras, used by evaluation and sampling code.
pub trait AlgebraElement: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const ALGEBRA: Algebra;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_coords(coords: &[Rational]) -> Self;
    fn coords(&self) -> Vec<Rational>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    fn norm(&self) -> Rational;
    fn scale(&self, c: &Rational) -> Self;

    fn re(&self) -> Rational {
        self.coords()[0].clone()
    }

    fn im(&self) -> Vec<Rational> {
        self.coords()[1..].to_vec()
    }

    fn from_scalar(c: Rational) -> Self {
        let mut v = vec![Rational::zero(); Self::ALGEBRA.dim()];
        v[0] = c;
        Self::from_coords(&v)
    }

    fn basis(i: usize) -> Self {
        let mut v = vec![Rational::zero(); Self::ALGEBRA.dim()];
        v[i] = Rational::one();
        Self::from_coords(&v)
    }

    fn is_zero(&self) -> bool {
        self.coords().iter().all(Rational::is_zero)
    }

    /// Central elements are the scalar multiples of 1.
    fn is_central(&self) -> bool {
        self.im().iter().all(Rational::is_zero)
    }

    /// `conj(x) / N(x)`; `None` for zero.
    fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            None
        } else {
            Some(self.conj().scale(&n.recip()))
        }
    }
}

/// `a + b i + c j + d k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }
}

pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    let (pn, pd) = integral(&[&p.a, &p.b, &p.c, &p.d]);
    let (qn, qd) = integral(&[&q.a, &q.b, &q.c, &q.d]);
    let r = int_quat_mul(&pn, &qn);
    let d = pd * qd;
    let [a, b, c, e] = r.map(|x| Rational::from_parts(x, d.clone()));
    Quaternion { a, b, c, d: e }
}

/// Numerators over the least common denominator.
fn integral(cs: &[&Rational]) -> (Vec<BigInt>, BigInt) {
    let den = cs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let num = cs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (num, den)
}

fn int_quat_mul(p: &[BigInt], q: &[BigInt]) -> [BigInt; 4] {
    [
        &p[0] * &q[0] - &p[1] * &q[1] - &p[2] * &q[2] - &p[3] * &q[3],
        &p[0] * &q[1] + &p[1] * &q[0] + &p[2] * &q[3] - &p[3] * &q[2],
        &p[0] * &q[2] - &p[1] * &q[3] + &p[2] * &q[0] + &p[3] * &q[1],
        &p[0] * &q[3] + &p[1] * &q[2] - &p[2] * &q[1] + &p[3] * &q[0],
    ]
}

fn int_quat_conj(p: &[BigInt]) -> [BigInt; 4] {
    [p[0].clone(), -&p[1], -&p[2], -&p[3]]
}

pub fn quat_conj(q: &Quaternion) -> Quaternion {
    Quaternion {
        a: q.a.clone(),
        b: -&q.b,
        c: -&q.c,
        d: -&q.d,
    }
}

pub fn quat_norm(q: &Quaternion) -> Rational {
    &q.a * &q.a + &q.b * &q.b + &q.c * &q.c + &q.d * &q.d
}

impl AlgebraElement for Quaternion {
    const ALGEBRA: Algebra = Algebra::Quat;

    fn zero() -> Self {
        Quaternion::default()
    }

    fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    fn from_coords(c: &[Rational]) -> Self {
        assert_eq!(c.len(), 4, "quaternion needs 4 coordinates");
        Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
    }

    fn coords(&self) -> Vec<Rational> {
        vec![
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    fn add(&self, o: &Self) -> Self {
        Quaternion::new(
            &self.a + &o.a,
            &self.b + &o.b,
            &self.c + &o.c,
            &self.d + &o.d,
        )
    }

    fn sub(&self, o: &Self) -> Self {
        Quaternion::new(
            &self.a - &o.a,
            &self.b - &o.b,
            &self.c - &o.c,
            &self.d - &o.d,
        )
    }

    fn neg(&self) -> Self {
        Quaternion::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    fn mul(&self, o: &Self) -> Self {
        quat_mul(self, o)
    }

    fn conj(&self) -> Self {
        quat_conj(self)
    }

    fn norm(&self) -> Rational {
        quat_norm(self)
    }

    fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    fn re(&self) -> Rational {
        self.a.clone()
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coords(&self.coords(), Algebra::Quat))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `h0 + h1 l` with `l^2 = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Octonion {
    pub h0: Quaternion,
    pub h1: Quaternion,
}

impl Octonion {
    pub fn new(h0: Quaternion, h1: Quaternion) -> Self {
        Octonion { h0, h1 }
    }

    pub fn from_quaternion(q: Quaternion) -> Self {
        Octonion::new(q, Quaternion::default())
    }

    pub fn l() -> Self {
        Octonion::new(Quaternion::default(), Quaternion::from_ints(1, 0, 0, 0))
    }
}

/// Cayley–Dickson product `(a + b l)(c + d l) = (ac - conj(d) b) + (da + b conj(c)) l`.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (xn, xd) = integral(&[
        &x.h0.a, &x.h0.b, &x.h0.c, &x.h0.d, &x.h1.a, &x.h1.b, &x.h1.c, &x.h1.d,
    ]);
    let (yn, yd) = integral(&[
        &y.h0.a, &y.h0.b, &y.h0.c, &y.h0.d, &y.h1.a, &y.h1.b, &y.h1.c, &y.h1.d,
    ]);
    let (a, b, c, d) = (&xn[..4], &xn[4..], &yn[..4], &yn[4..]);
    let ac = int_quat_mul(a, c);
    let db = int_quat_mul(&int_quat_conj(d), b);
    let da = int_quat_mul(d, a);
    let bc = int_quat_mul(b, &int_quat_conj(c));
    let den = xd * yd;
    let f = |n: BigInt| Rational::from_parts(n, den.clone());
    let [h0a, h0b, h0c, h0d] = [0, 1, 2, 3].map(|i| f(&ac[i] - &db[i]));
    let [h1a, h1b, h1c, h1d] = [0, 1, 2, 3].map(|i| f(&da[i] + &bc[i]));
    Octonion {
        h0: Quaternion::new(h0a, h0b, h0c, h0d),
        h1: Quaternion::new(h1a, h1b, h1c, h1d),
    }
}

pub fn oct_conj(x: &Octonion) -> Octonion {
    Octonion {
        h0: quat_conj(&x.h0),
        h1: x.h1.neg(),
    }
}

pub fn oct_norm(x: &Octonion) -> Rational {
    quat_norm(&x.h0) + quat_norm(&x.h1)
}

impl AlgebraElement for Octonion {
    const ALGEBRA: Algebra = Algebra::Oct;

    fn zero() -> Self {
        Octonion::default()
    }

    fn one() -> Self {
        Octonion::from_quaternion(Quaternion::one())
    }

    fn from_coords(c: &[Rational]) -> Self {
        assert_eq!(c.len(), 8, "octonion needs 8 coordinates");
        Octonion::new(
            Quaternion::from_coords(&c[..4]),
            Quaternion::from_coords(&c[4..]),
        )
    }

    fn coords(&self) -> Vec<Rational> {
        let mut v = self.h0.coords();
        v.extend(self.h1.coords());
        v
    }

    fn add(&self, o: &Self) -> Self {
        Octonion::new(self.h0.add(&o.h0), self.h1.add(&o.h1))
    }

    fn sub(&self, o: &Self) -> Self {
        Octonion::new(self.h0.sub(&o.h0), self.h1.sub(&o.h1))
    }

    fn neg(&self) -> Self {
        Octonion::new(self.h0.neg(), self.h1.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        oct_mul(self, o)
    }

    fn conj(&self) -> Self {
        oct_conj(self)
    }

    fn norm(&self) -> Rational {
        oct_norm(self)
    }

    fn scale(&self, s: &Rational) -> Self {
        Octonion::new(self.h0.scale(s), self.h1.scale(s))
    }

    fn re(&self) -> Rational {
        self.h0.a.clone()
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coords(&self.coords(), Algebra::Oct))
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Human-readable form such as `1 + 2i - 1/2kl`.
pub fn format_coords(coords: &[Rational], algebra: Algebra) -> String {
    let names = algebra.basis_names();
    let mut out = String::new();
    for (c, name) in coords.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if *name == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(name);
        } else {
            out.push_str(&format!("{mag}{name}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn table_from<T: AlgebraElement>() -> Vec<Vec<(usize, i8)>> {
    let dim = T::ALGEBRA.dim();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let p = T::basis(i).mul(&T::basis(j)).coords();
                    let nz: Vec<usize> = (0..dim).filter(|&k| !p[k].is_zero()).collect();
                    assert_eq!(nz.len(), 1, "basis product is not a signed basis element");
                    let k = nz[0];
                    let sign = if p[k].is_one() {
                        1
                    } else {
                        assert_eq!(p[k], Rational::from_int(-1));
                        -1
                    };
                    (k, sign)
                })
                .collect()
        })
        .collect()
}

static QUAT_TABLE: Lazy<Vec<Vec<(usize, i8)>>> = Lazy::new(table_from::<Quaternion>);
// Generated from `oct_mul`, never written out by hand.
static OCT_TABLE: Lazy<Vec<Vec<(usize, i8)>>> = Lazy::new(table_from::<Octonion>);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion {
        Quaternion::from_ints(a, b, c, d)
    }

    fn o(c: [i64; 8]) -> Octonion {
        let v: Vec<Rational> = c.iter().map(|&x| Rational::from_int(x)).collect();
        Octonion::from_coords(&v)
    }

    #[test]
    fn ij_is_k() {
        assert_eq!(
            quat_mul(&Quaternion::i(), &Quaternion::j()),
            Quaternion::k()
        );
        assert_eq!(
            quat_mul(&Quaternion::j(), &Quaternion::i()),
            Quaternion::k().neg()
        );
        assert_eq!(
            quat_mul(&Quaternion::j(), &Quaternion::k()),
            Quaternion::i()
        );
        assert_eq!(
            quat_mul(&Quaternion::k(), &Quaternion::i()),
            Quaternion::j()
        );
        for u in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
            assert_eq!(quat_mul(&u, &u), q(-1, 0, 0, 0));
        }
    }

    #[test]
    fn unit_and_bilinear_expansion() {
        let x = q(3, -1, 4, 2);
        assert_eq!(quat_mul(&Quaternion::one(), &x), x);
        assert_eq!(quat_mul(&q(1, 1, 0, 0), &q(1, 0, 1, 0)), q(1, 1, 1, 1));
    }

    #[test]
    fn quaternion_conjugation() {
        assert_eq!(quat_conj(&q(1, 1, 0, 0)), q(1, -1, 0, 0));
        let x = q(2, 3, -5, 7);
        assert_eq!(quat_conj(&quat_conj(&x)), x);
        let lhs = quat_conj(&quat_mul(&Quaternion::i(), &Quaternion::j()));
        let rhs = quat_mul(&quat_conj(&Quaternion::j()), &quat_conj(&Quaternion::i()));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Quaternion::k().neg());
    }

    #[test]
    fn quaternion_norm() {
        assert_eq!(quat_norm(&q(1, 1, 1, 1)), Rational::from_int(4));
        assert_eq!(quat_norm(&Quaternion::zero()), Rational::zero());
        let ij = quat_mul(&Quaternion::i(), &Quaternion::j());
        assert_eq!(
            quat_norm(&ij),
            quat_norm(&Quaternion::i()) * quat_norm(&Quaternion::j())
        );
        assert_eq!(quat_norm(&ij), Rational::one());
    }

    #[test]
    fn l_squared_is_minus_one() {
        assert_eq!(
            oct_mul(&Octonion::l(), &Octonion::l()),
            Octonion::one().neg()
        );
        let y = o([1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(oct_mul(&Octonion::one(), &y), y);
    }

    #[test]
    fn doubling_formula_example() {
        // (i l)(j l): a = 0, b = i, c = 0, d = j gives -(conj(j) i) = -(-j i) = j i = -k.
        let il = Octonion::new(Quaternion::zero(), Quaternion::i());
        let jl = Octonion::new(Quaternion::zero(), Quaternion::j());
        let p = oct_mul(&il, &jl);
        assert_eq!(p.h0, Quaternion::k().neg());
        assert_eq!(p.h1, Quaternion::zero());
    }

    #[test]
    fn octonion_conjugation() {
        assert_eq!(oct_conj(&Octonion::l()), Octonion::l().neg());
        assert_eq!(oct_conj(&Octonion::one()), Octonion::one());
        let x = o([3, 1, -2, 5, 7, -1, 0, 4]);
        let s = x.add(&oct_conj(&x));
        assert_eq!(s, Octonion::from_scalar(Rational::from_int(6)));
    }

    #[test]
    fn re_and_im() {
        let x = q(1, 2, 0, 0);
        assert_eq!(x.re(), Rational::one());
        assert!(Quaternion::one().im().iter().all(Rational::is_zero));
        let y = o([1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(y.re(), Rational::one());
        assert_eq!(y.im().len(), 7);
        let half = y.add(&y.conj()).scale(&Rational::new(1, 2));
        assert_eq!(half, Octonion::from_scalar(y.re()));
    }

    #[test]
    fn non_associativity_witness() {
        let i = Octonion::from_quaternion(Quaternion::i());
        let j = Octonion::from_quaternion(Quaternion::j());
        let l = Octonion::l();
        let lhs = oct_mul(&oct_mul(&i, &j), &l);
        let rhs = oct_mul(&i, &oct_mul(&j, &l));
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn tables_are_signed_permutations() {
        for alg in [Algebra::Quat, Algebra::Oct] {
            let t = alg.mul_table();
            let dim = alg.dim();
            for row in t.iter().take(dim) {
                let mut seen: Vec<usize> = row.iter().map(|&(k, _)| k).collect();
                seen.sort();
                assert_eq!(seen, (0..dim).collect::<Vec<_>>());
            }
            assert_eq!(t[0][3], (3, 1));
        }
        // l * l = -1 in the octonion table
        assert_eq!(Algebra::Oct.mul_table()[4][4], (0, -1));
    }

    #[test]
    fn inverse() {
        let x = q(1, 1, 1, 1);
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), Quaternion::one());
        assert!(Quaternion::zero().inverse().is_none());
    }

    #[test]
    fn formatting() {
        assert_eq!(
            format_coords(&q(1, -2, 0, 1).coords(), Algebra::Quat),
            "1 - 2i + k"
        );
        assert_eq!(
            format_coords(&Quaternion::zero().coords(), Algebra::Quat),
            "0"
        );
    }
}
