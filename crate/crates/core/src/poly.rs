//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::rational::Rational;
use crate::var::Var;

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes `v` from the monomial, returning its exponent.
    pub fn split_off(&self, v: Var) -> (Monomial, u32) {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (Monomial(rest), e)
            }
            Err(_) => (self.clone(), 0),
        }
    }

    /// Square root when every exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.0.iter().all(|&(_, e)| e % 2 == 0) {
            Some(Monomial(self.0.iter().map(|&(v, e)| (v, e / 2)).collect()))
        } else {
            None
        }
    }

    fn display_key(&self) -> Vec<(&'static str, u32)> {
        let mut k: Vec<_> = self.0.iter().map(|&(v, e)| (v.name(), e)).collect();
        k.sort();
        k
    }
}

/// Graded lexicographic order over variable ids.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            for k in 0..a.len().min(b.len()) {
                let (va, ea) = a[k];
                let (vb, eb) = b[k];
                if va != vb {
                    // the monomial containing the smaller variable is larger
                    return if va < vb {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts: Vec<_> = self.0.iter().map(|&(v, e)| (v.name(), e)).collect();
        parts.sort();
        for (i, (name, e)) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial: map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Rational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(Monomial::var(v), Rational::one());
        p
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        for m in self.terms.keys() {
            out.extend(m.pairs().iter().map(|&(v, _)| v));
        }
    }

    /// Leading term in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the leading term in the (deterministic) display order.
    pub fn display_leading_coeff(&self) -> Option<&Rational> {
        self.terms
            .iter()
            .max_by(|a, b| display_cmp(a.0, b.0))
            .map(|(_, c)| c)
    }

    /// Writes `self = sum_i c_i * v^i`; entry `i` of the result is `c_i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            if e > 0 {
                let m2 = rest.mul(&Monomial(vec![(v, e - 1)]).normalized());
                out.add_term(m2, c * &Rational::from_int(e as i64));
            }
        }
        out
    }

    pub fn eval(&self, assign: &dyn Fn(Var) -> Option<Rational>) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        // Sum in integers over the common denominator
        // lcm(coefficient denominators) * prod_v den_v^maxdeg_v.
        let mut maxdeg: BTreeMap<Var, u32> = BTreeMap::new();
        let mut lcm = BigInt::one();
        for (m, c) in &self.terms {
            for &(v, e) in m.pairs() {
                let d = maxdeg.entry(v).or_insert(0);
                *d = (*d).max(e);
            }
            lcm = lcm.lcm(c.denom());
        }
        // per variable: powers of numerator and denominator up to maxdeg
        let mut powers: Vec<(Var, Vec<BigInt>, Vec<BigInt>)> = Vec::with_capacity(maxdeg.len());
        for (&v, &d) in &maxdeg {
            let x = assign(v)?;
            let mut nums = vec![BigInt::one()];
            let mut dens = vec![BigInt::one()];
            for k in 1..=d as usize {
                nums.push(&nums[k - 1] * x.numer());
                dens.push(&dens[k - 1] * x.denom());
            }
            powers.push((v, nums, dens));
        }
        let mut total = BigInt::from(0);
        for (m, c) in &self.terms {
            let mut t = c.numer() * (&lcm / c.denom());
            let mut pairs = m.pairs().iter().peekable();
            for (v, nums, dens) in &powers {
                let top = nums.len() - 1;
                let e = match pairs.peek() {
                    Some(&&(w, e)) if w == *v => {
                        pairs.next();
                        e as usize
                    }
                    _ => 0,
                };
                if e > 0 {
                    t *= &nums[e];
                }
                if e < top {
                    t *= &dens[top - e];
                }
            }
            total += t;
        }
        let den = powers.iter().fold(lcm, |acc, (_, _, dens)| {
            acc * dens.last().expect("nonempty")
        });
        Some(Rational::from_parts(total, den))
    }

    pub fn eval_map(&self, assign: &BTreeMap<Var, Rational>) -> Option<Rational> {
        self.eval(&|v| assign.get(&v).cloned())
    }

    /// Replaces `v` by `q`.
    pub fn substitute(&self, v: Var, q: &Poly) -> Poly {
        if !self.contains(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        // Horner
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Substitutes several variables at once.
    pub fn substitute_all(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in m.pairs() {
                match map.get(&v) {
                    Some(q) => t = &t * &q.pow(e),
                    None => kept.push((v, e)),
                }
            }
            out = &out + &t.mul_monomial(&Monomial::from_pairs(kept));
        }
        out
    }

    pub fn rename(&self, from: Var, to: Var) -> Poly {
        self.substitute(from, &Poly::var(to))
    }

    /// Gcd of the exponents of `v` over the terms that contain it; 0 when
    /// `v` does not occur.
    pub fn exponent_gcd(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(v))
            .fold(0, num_integer::gcd)
    }

    /// Remainder of `self` on division by `e` as polynomials in `v`, when the
    /// leading coefficient of `e` in `v` is a nonzero constant.
    pub fn rem_in(&self, e: &Poly, v: Var) -> Option<Poly> {
        let es = e.coeffs_in(v);
        let d = es.len().checked_sub(1).filter(|&d| d > 0)? as u32;
        let lc = es[d as usize].constant_value().filter(|c| !c.is_zero())?;
        let inv = lc.recip();
        let mut r = self.clone();
        while r.degree_in(v) >= d {
            let k = r.degree_in(v);
            let top = r.coeffs_in(v).pop().expect("nonzero");
            let shift = Monomial::from_pairs(vec![(v, k - d)]);
            r = &r - &(&top.scale(&inv).mul_monomial(&shift) * e);
        }
        Some(r)
    }

    /// Replaces `v^(g k)` by `v^k`; `g` must divide every exponent of `v`.
    pub fn compress_exponents(&self, v: Var, g: u32) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m
                .pairs()
                .iter()
                .map(|&(w, e)| {
                    if w == v {
                        debug_assert_eq!(e % g, 0);
                        (w, e / g)
                    } else {
                        (w, e)
                    }
                })
                .collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let mut g: Option<Rational> = None;
        for c in self.terms.values() {
            g = Some(match g {
                None => c.abs(),
                Some(g) => g.gcd(c),
            });
        }
        g.unwrap_or_else(Rational::one)
    }

    /// `self / content`: coprime integer coefficients, sign unchanged.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Primitive part with positive display-leading coefficient, and the sign
    /// that was divided out.
    pub fn normalized_sign(&self) -> (Poly, i32) {
        let p = self.primitive();
        match p.display_leading_coeff() {
            Some(c) if c.is_negative() => (-p, -1),
            _ => (p, 1),
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        // cheap necessary conditions: extreme monomials divide, and no
        // variable has higher degree in `d`
        let (lo, _) = self.terms.iter().next()?;
        let (dlo, _) = d.terms.iter().next()?;
        lo.div(dlo)?;
        self.leading()?.0.div(d.leading()?.0)?;
        let mut main = None;
        for v in d.vars() {
            let k = d.degree_in(v);
            if k > self.degree_in(v) {
                return None;
            }
            if main.is_none_or(|(_, best)| k > best) {
                main = Some((v, k));
            }
        }
        // divisibility survives fixing all other variables
        if let Some((v, _)) = main {
            if let (Some(dv), Some(qv)) = (d.restricted_mod(v), self.restricted_mod(v)) {
                if !divides_mod(&dv, &qv) {
                    return None;
                }
            }
        }
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            let t = Poly::term(c.clone(), m.clone());
            rem = &rem - &(&t * d);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// `Some(q)` with `q * q == self` and `q` having positive display-leading
    /// coefficient, when `self` is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let d = self.total_degree();
        if d % 2 == 1 {
            return None;
        }
        let (lo, lo_c) = self.terms.iter().next()?;
        lo.sqrt()?;
        if lo_c.is_negative() {
            return None;
        }
        lo_c.sqrt_exact()?;
        let (lm, lc) = self.leading()?;
        let m0 = lm.sqrt()?;
        let c0 = lc.sqrt_exact()?;
        // Peel off terms of the root from the top: rem = self - q^2,
        // next root term = lead(rem) / (2 * lead(q)).
        let mut q = Poly::term(c0.clone(), m0.clone());
        let two_lead = Poly::term(&c0 + &c0, m0.clone());
        let mut rem = self - &(&q * &q);
        while let Some((rm, _)) = rem.leading() {
            if rm.degree() < d / 2 {
                return None;
            }
            let t = rem.leading_term().div_exact(&two_lead)?;
            if t.leading()?.0 >= &m0 {
                return None;
            }
            q = &q + &t;
            rem = self - &(&q * &q);
        }
        match q.display_leading_coeff() {
            Some(c) if c.is_negative() => Some(-q),
            _ => Some(q),
        }
    }

    /// Coefficients in `v` modulo [`PRIME`], lowest first, after fixing
    /// every other variable at a small integer that depends only on the
    /// variable. `None` when a denominator vanishes modulo the prime.
    fn restricted_mod(&self, v: Var) -> Option<Vec<u64>> {
        let mut out: Vec<u64> = Vec::new();
        for (m, c) in &self.terms {
            let mut k = 0;
            let den = mod_prime(c.denom());
            if den == 0 {
                return None;
            }
            let mut t = mul_mod(mod_prime(c.numer()), pow_mod(den, PRIME - 2));
            for &(w, e) in m.pairs() {
                if w == v {
                    k = e as usize;
                } else {
                    t = mul_mod(t, pow_mod(2 + (w.index() as u64 * 37) % 23, e as u64));
                }
            }
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = (out[k] + t) % PRIME;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Some(out)
    }

    fn leading_term(&self) -> Poly {
        match self.leading() {
            Some((m, c)) => Poly::term(c.clone(), m.clone()),
            None => Poly::zero(),
        }
    }

    /// Number of stored terms, used for size accounting.
    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by the lcm of denominators so every coefficient is an
    /// integer; the factor is positive.
    pub fn clear_denominators(&self) -> Poly {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        if l.is_one() {
            self.clone()
        } else {
            self.scale(&Rational::from_bigint(l))
        }
    }

    /// True when every term has even exponents and a coefficient of the
    /// given sign (`1` or `-1`), i.e. the polynomial is semidefinite by
    /// inspection.
    pub fn is_sign_definite_by_inspection(&self, sign: i32) -> bool {
        !self.is_zero()
            && self
                .terms
                .iter()
                .all(|(m, c)| c.signum() == sign && m.pairs().iter().all(|&(_, e)| e % 2 == 0))
    }

    pub fn abs_max_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
    }
}

impl Monomial {
    fn normalized(self) -> Monomial {
        Monomial::from_pairs(self.0)
    }
}

fn display_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        // reverse name order so that `x` outranks `y` as in lex order
        let ka = a.display_key();
        let kb = b.display_key();
        for (x, y) in ka.iter().zip(kb.iter()) {
            if x.0 != y.0 {
                return y.0.cmp(x.0);
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        ka.len().cmp(&kb.len())
    })
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Prints in the real-formula term syntax, e.g. `2*x_0^2 - x_1*y_1 + 3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| display_cmp(b.0, a.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{m}")?;
            } else {
                // rational coefficients only appear before normalization
                write!(f, "({mag})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::from_int(n)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Poly {
        Poly::constant(c)
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_prime(n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(PRIME));
    u64::try_from(r).expect("reduced")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

/// Whether `d` divides `q` modulo [`PRIME`] (coefficients lowest first). A
/// zero `d` gives no information and counts as dividing.
fn divides_mod(d: &[u64], q: &[u64]) -> bool {
    let Some(&lead) = d.last() else { return true };
    let inv = pow_mod(lead, PRIME - 2);
    let mut r = q.to_vec();
    while r.len() >= d.len() {
        let top = r.pop().expect("nonempty");
        if top == 0 {
            continue;
        }
        let f = mul_mod(top, inv);
        let shift = r.len() + 1 - d.len();
        for (i, &c) in d[..d.len() - 1].iter().enumerate() {
            r[shift + i] = (r[shift + i] + PRIME - mul_mod(f, c)) % PRIME;
        }
    }
    r.iter().all(|&x| x == 0)
}
