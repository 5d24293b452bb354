//! Random existential blocks whose truth can be decided by a univariate
//! oracle.
//!
//! A block is `exists y1 .. yn. (y2 = c2*y1 + q2(z)) && .. && B` where `B` is a
//! boolean combination of atoms of total degree at most 2 in the bound
//! variables. Substituting the definitions leaves a one-variable problem in
//! `y1` of degree at most 2.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hoqe::{Formula, Monomial, Poly, Rational, RealAtom, RealFormula, Rel, Var};

use super::sturm::{self, UPoly};

#[derive(Clone, Debug)]
pub enum Shape {
    Atom(usize),
    Not(Box<Shape>),
    And(Vec<Shape>),
    Or(Vec<Shape>),
}

impl Shape {
    fn eval(&self, truth: &[bool]) -> bool {
        match self {
            Shape::Atom(i) => truth[*i],
            Shape::Not(s) => !s.eval(truth),
            Shape::And(ss) => ss.iter().all(|s| s.eval(truth)),
            Shape::Or(ss) => ss.iter().any(|s| s.eval(truth)),
        }
    }

    fn build(&self, atoms: &[RealAtom]) -> RealFormula {
        match self {
            Shape::Atom(i) => Formula::atom(atoms[*i].clone()),
            Shape::Not(s) => Formula::not(s.build(atoms)),
            Shape::And(ss) => Formula::And(ss.iter().map(|s| s.build(atoms)).collect()),
            Shape::Or(ss) => Formula::Or(ss.iter().map(|s| s.build(atoms)).collect()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub bound: Vec<Var>,
    pub free: Vec<Var>,
    /// `(y_d, c, q)` meaning `y_d = c*y1 + q`.
    pub defs: Vec<(Var, Rational, Poly)>,
    pub atoms: Vec<RealAtom>,
    pub shape: Shape,
}

pub fn small_int(rng: &mut ChaCha8Rng, b: i64) -> Rational {
    Rational::from_int(rng.gen_range(-b..=b))
}

/// Affine polynomial in the free variables with small integer coefficients,
/// sometimes with one quadratic term.
fn free_poly(rng: &mut ChaCha8Rng, free: &[Var]) -> Poly {
    let mut p = Poly::constant(small_int(rng, 3));
    for &z in free {
        if rng.gen_bool(0.5) {
            p = &p + &Poly::var(z).scale(&small_int(rng, 3));
        }
    }
    if !free.is_empty() && rng.gen_bool(0.25) {
        let a = free[rng.gen_range(0..free.len())];
        let b = free[rng.gen_range(0..free.len())];
        p = &p + &(&Poly::var(a) * &Poly::var(b)).scale(&small_int(rng, 2));
    }
    p
}

fn random_shape(rng: &mut ChaCha8Rng, atoms: &[usize], depth: usize) -> Shape {
    if atoms.len() == 1 || depth == 0 {
        let leaf = Shape::Atom(atoms[rng.gen_range(0..atoms.len())]);
        return if atoms.len() == 1 && rng.gen_bool(0.15) {
            Shape::Not(Box::new(leaf))
        } else {
            leaf
        };
    }
    let split = rng.gen_range(1..atoms.len());
    let (l, r) = atoms.split_at(split);
    let parts = vec![
        random_shape(rng, l, depth - 1),
        random_shape(rng, r, depth - 1),
    ];
    let s = if rng.gen_bool(0.6) {
        Shape::And(parts)
    } else {
        Shape::Or(parts)
    };
    if rng.gen_bool(0.1) {
        Shape::Not(Box::new(s))
    } else {
        s
    }
}

pub fn random_block(rng: &mut ChaCha8Rng) -> Block {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=4);
    let bound: Vec<Var> = (1..=n).map(|i| Var::new(&format!("y{i}"))).collect();
    let free: Vec<Var> = (1..=k).map(|i| Var::new(&format!("z{i}"))).collect();
    let defs: Vec<(Var, Rational, Poly)> = bound[1..]
        .iter()
        .map(|&y| (y, small_int(rng, 2), free_poly(rng, &free)))
        .collect();
    let n_atoms = rng.gen_range(1..=6 - defs.len());
    let mut monos: Vec<Monomial> = vec![Monomial::one()];
    for (i, &a) in bound.iter().enumerate() {
        monos.push(Monomial::from_pairs(vec![(a, 1)]));
        for &b in &bound[i..] {
            monos.push(if a == b {
                Monomial::from_pairs(vec![(a, 2)])
            } else {
                Monomial::from_pairs(vec![(a, 1), (b, 1)])
            });
        }
    }
    let rels = [Rel::Eq, Rel::Le, Rel::Lt, Rel::Ne];
    let atoms: Vec<RealAtom> = (0..n_atoms)
        .map(|_| {
            let mut p = Poly::zero();
            for m in &monos {
                if rng.gen_bool(0.45) {
                    let c = if rng.gen_bool(0.6) {
                        Poly::constant(small_int(rng, 3))
                    } else {
                        free_poly(rng, &free)
                    };
                    p = &p + &c.mul_monomial(m);
                }
            }
            if !p.contains(bound[0]) && !bound[1..].iter().any(|&y| p.contains(y)) {
                p = &p + &Poly::var(bound[rng.gen_range(0..n)]);
            }
            RealAtom::new(p, rels[rng.gen_range(0..4)])
        })
        .collect();
    let idx: Vec<usize> = (0..n_atoms).collect();
    let shape = random_shape(rng, &idx, 3);
    Block {
        bound,
        free,
        defs,
        atoms,
        shape,
    }
}

impl Block {
    pub fn formula(&self) -> RealFormula {
        let mut parts: Vec<RealFormula> = self
            .defs
            .iter()
            .map(|(y, c, q)| {
                let rhs = &Poly::var(self.bound[0]).scale(c) + q;
                Formula::atom(RealAtom::eq(&Poly::var(*y) - &rhs))
            })
            .collect();
        parts.push(self.shape.build(&self.atoms));
        let mut f = Formula::And(parts);
        for &y in self.bound.iter().rev() {
            f = Formula::exists(y, f);
        }
        f
    }

    /// Truth of the block at `z` by root isolation in `y1`.
    pub fn oracle(&self, z: &BTreeMap<Var, Rational>) -> bool {
        let y1 = self.bound[0];
        let defs: Vec<(Var, Rational, Rational)> = self
            .defs
            .iter()
            .map(|(y, c, q)| (*y, c.clone(), q.eval_map(z).expect("free vars assigned")))
            .collect();
        let at = |atom: &RealAtom, t: &Rational| -> Rational {
            let mut m = z.clone();
            m.insert(y1, t.clone());
            for (y, c, q) in &defs {
                m.insert(*y, c * t + q);
            }
            atom.poly.eval_map(&m).expect("all vars assigned")
        };
        let polys: Vec<UPoly> = self
            .atoms
            .iter()
            .map(|a| {
                let u = sturm::interpolate(2, &|t| at(a, t));
                let probe = Rational::from_int(7);
                assert_eq!(
                    u.eval(&probe),
                    at(a, &probe),
                    "atom has degree above 2 in y1"
                );
                u
            })
            .collect();
        let rels: Vec<Rel> = self.atoms.iter().map(|a| a.rel).collect();
        sturm::exists(&polys, &|signs| {
            let truth: Vec<bool> = signs
                .iter()
                .zip(&rels)
                .map(|(&s, &r)| sturm::rel_holds(r, s))
                .collect();
            self.shape.eval(&truth)
        })
    }
}

/// Free-variable assignment: small integers half the time, so that
/// degenerate coefficients and discriminants come up, otherwise `p/q` with
/// `|p| <= 10`, `1 <= q <= 10`.
pub fn random_point(rng: &mut ChaCha8Rng, free: &[Var]) -> BTreeMap<Var, Rational> {
    free.iter()
        .map(|&z| {
            let v = if rng.gen_bool(0.5) {
                small_int(rng, 3)
            } else {
                Rational::new(rng.gen_range(-10..=10), rng.gen_range(1..=10))
            };
            (z, v)
        })
        .collect()
}
