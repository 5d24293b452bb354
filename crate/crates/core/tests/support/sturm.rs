//! Univariate real root isolation with Sturm sequences, used as an oracle
//! for one-variable existential problems.

use hoqe::{Rational, Rel};

/// Coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly(pub Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn sign_at(&self, t: &Rational) -> i32 {
        self.eval(t).signum()
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_int(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UPoly::new(c)
    }

    /// Quotient and remainder.
    pub fn divmod(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dn = d.degree();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dn).max(1)];
        while r.len() > dn && !r.is_empty() {
            let k = r.len() - 1 - dn;
            let f = r.last().unwrap() / d.lead();
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&f * c);
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Same polynomial divided by the absolute value of its leading
    /// coefficient.
    fn normalized(&self) -> UPoly {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let l = l.abs();
                UPoly(self.0.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.normalized(), o.normalized());
        while !b.is_zero() {
            let r = a.divmod(&b).1.normalized();
            a = b;
            b = r;
        }
        a
    }

    pub fn squarefree(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        self.divmod(&g).0
    }
}

fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.normalized(), p.derivative().normalized()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].divmod(&chain[n - 1]).1;
        chain.push(UPoly::new(r.0.into_iter().map(|c| -c).collect()).normalized());
    }
}

fn variations(chain: &[UPoly], t: &Rational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| p.sign_at(t))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots in `(a, b]`.
fn count(chain: &[UPoly], a: &Rational, b: &Rational) -> usize {
    variations(chain, a) - variations(chain, b)
}

/// Disjoint open intervals, in increasing order, each holding exactly one
/// root of the squarefree `p`; endpoints are never roots.
pub fn isolate(p: &UPoly) -> Vec<(Rational, Rational)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let cauchy = Rational::one() + p.0.iter().map(|c| (c / p.lead()).abs()).max().unwrap();
    let mut bound = Rational::one();
    while bound <= cauchy {
        bound = &bound * Rational::from_int(2);
    }
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match count(&chain, &a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let two = Rational::from_int(2);
                let mut mid = (&a + &b) / &two;
                let mut k = 3;
                while p.sign_at(&mid).eq(&0) {
                    mid = &a + &((&b - &a) / Rational::from_int(k));
                    k += 1;
                }
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Monic irreducible factors over the rationals of a polynomial of degree
/// at most 2, without repetition.
fn factors(p: &UPoly) -> Vec<UPoly> {
    let monic = |c: Vec<Rational>| {
        let u = UPoly::new(c);
        let l = u.lead().clone();
        UPoly(u.0.iter().map(|c| c / &l).collect())
    };
    match p.degree() {
        0 => Vec::new(),
        1 => vec![monic(p.0.clone())],
        2 => {
            let (c, b, a) = (&p.0[0], &p.0[1], &p.0[2]);
            let disc = b * b - Rational::from_int(4) * a * c;
            match disc.sqrt_exact() {
                None => vec![monic(p.0.clone())],
                Some(r) => {
                    let two_a = Rational::from_int(2) * a;
                    let r1 = (-b + &r) / &two_a;
                    let r2 = (-b - &r) / &two_a;
                    let mut out = vec![monic(vec![-r1.clone(), Rational::one()])];
                    if r1 != r2 {
                        out.push(monic(vec![-r2, Rational::one()]));
                    }
                    out
                }
            }
        }
        d => panic!("oracle handles degree at most 2, got {d}"),
    }
}

/// Truth of `exists t. matrix(t)` where the matrix sees the sign vector of
/// `polys` (each of degree at most 2) at `t`.
///
/// Roots of distinct irreducible factors are distinct, so after isolating
/// each factor on its own the intervals are refined until pairwise
/// disjoint. The sign of a polynomial at a root of factor `f` is zero when
/// `f` divides it and otherwise its sign anywhere on the isolating interval.
pub fn exists(polys: &[UPoly], matrix: &dyn Fn(&[i32]) -> bool) -> bool {
    let mut fs: Vec<UPoly> = Vec::new();
    for p in polys {
        for f in factors(p) {
            if !fs.contains(&f) {
                fs.push(f);
            }
        }
    }
    // (factor index, interval)
    let mut roots: Vec<(usize, Rational, Rational)> = Vec::new();
    let chains: Vec<Vec<UPoly>> = fs.iter().map(sturm_chain).collect();
    for (i, f) in fs.iter().enumerate() {
        roots.extend(isolate(f).into_iter().map(|(a, b)| (i, a, b)));
    }
    loop {
        roots.sort_by(|x, y| x.1.cmp(&y.1));
        let Some(k) = (1..roots.len()).find(|&k| roots[k - 1].2 > roots[k].1) else {
            break;
        };
        // shrink the wider of the two overlapping intervals
        let w = |r: &(usize, Rational, Rational)| &r.2 - &r.1;
        let j = if w(&roots[k - 1]) >= w(&roots[k]) {
            k - 1
        } else {
            k
        };
        let (i, a, b) = roots[j].clone();
        let mut mid = (&a + &b) / Rational::from_int(2);
        let mut d = 3;
        while fs[i].sign_at(&mid) == 0 {
            mid = &a + &((&b - &a) / Rational::from_int(d));
            d += 1;
        }
        roots[j] = if count(&chains[i], &a, &mid) == 1 {
            (i, a, mid)
        } else {
            (i, mid, b)
        };
    }
    let at_point = |t: &Rational| matrix(&polys.iter().map(|p| p.sign_at(t)).collect::<Vec<_>>());
    if roots.is_empty() {
        return at_point(&Rational::zero());
    }
    if at_point(&roots[0].1) {
        return true;
    }
    for (i, a, b) in &roots {
        let mid = (a + b) / Rational::from_int(2);
        let signs: Vec<i32> = polys
            .iter()
            .map(|q| {
                if !q.is_zero() && q.degree() >= fs[*i].degree() && q.divmod(&fs[*i]).1.is_zero() {
                    0
                } else {
                    q.sign_at(&mid)
                }
            })
            .collect();
        if matrix(&signs) || at_point(b) {
            return true;
        }
    }
    false
}

pub fn rel_holds(rel: Rel, sign: i32) -> bool {
    match rel {
        Rel::Eq => sign == 0,
        Rel::Le => sign <= 0,
        Rel::Lt => sign < 0,
        Rel::Ne => sign != 0,
    }
}

/// The polynomial of degree at most `deg` through `(t, f(t))` for
/// `t = 0..=deg`.
pub fn interpolate(deg: usize, f: &dyn Fn(&Rational) -> Rational) -> UPoly {
    let xs: Vec<Rational> = (0..=deg as i64).map(Rational::from_int).collect();
    let mut acc = UPoly(Vec::new());
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = UPoly::new(vec![f(xi)]);
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let d = xi - xj;
                basis = basis.mul(&UPoly::new(vec![-(xj / &d), Rational::one() / &d]));
            }
        }
        let n = acc.0.len().max(basis.0.len());
        let mut c = vec![Rational::zero(); n];
        for (k, v) in acc.0.iter().enumerate() {
            c[k] += v;
        }
        for (k, v) in basis.0.iter().enumerate() {
            c[k] += v;
        }
        acc = UPoly::new(c);
    }
    acc
}
