//! Conjunctions of sign conditions, kept in a normal form.
//!
//! A clause maps each primitive polynomial `q` (integer coprime
//! coefficients, positive display-leading coefficient) to the set of signs
//! it may take, as a bit mask over `{negative, zero, positive}`. Two atoms on
//! the same polynomial are merged by intersecting masks, so contradictions
//! such as `q < 0 && q > 0` vanish at insertion time.

use std::collections::BTreeMap;

use crate::formula::{Formula, RealAtom, RealFormula, Rel};
use crate::poly::{Monomial, Poly};
use crate::var::Var;

pub const NEG: u8 = 0b001;
pub const ZERO: u8 = 0b010;
pub const POS: u8 = 0b100;
pub const ALL: u8 = 0b111;

/// Swaps the negative and positive bits.
pub fn flip(m: u8) -> u8 {
    (m & ZERO) | ((m & NEG) << 2) | ((m & POS) >> 2)
}

pub fn rel_mask(rel: Rel) -> u8 {
    rel.sign_mask()
}

/// The atom saying that the sign of `q` lies in `mask`; `None` for the
/// full and empty masks.
pub fn mask_atom(q: &Poly, mask: u8) -> Option<RealAtom> {
    Some(match mask {
        NEG => RealAtom::lt(q.clone()),
        ZERO => RealAtom::eq(q.clone()),
        POS => RealAtom::gt(q.clone()),
        m if m == NEG | ZERO => RealAtom::le(q.clone()),
        m if m == ZERO | POS => RealAtom::ge(q.clone()),
        m if m == NEG | POS => RealAtom::ne(q.clone()),
        _ => return None,
    })
}

/// Result of normalizing one atom.
enum Normal {
    Const(bool),
    /// Conjunction of simpler atoms to be normalized in turn.
    Split(Vec<RealAtom>),
    Masked(Poly, u8),
}

fn classify(atom: &RealAtom) -> Normal {
    if let Some(c) = atom.poly.constant_value() {
        return Normal::Const(atom.rel.holds(c.signum()));
    }
    let (q, s) = atom.poly.normalized_sign();
    let mut mask = rel_mask(atom.rel);
    if s < 0 {
        mask = flip(mask);
    }
    let mut possible = ALL;
    if q.is_sign_definite_by_inspection(1) {
        possible = if q.constant_term().is_positive() {
            POS
        } else {
            ZERO | POS
        };
    }
    mask &= possible;
    if mask == 0 {
        return Normal::Const(false);
    }
    if mask == possible {
        return Normal::Const(true);
    }
    if possible == ZERO | POS && mask == ZERO {
        // a sum of even monomials with positive coefficients vanishes iff
        // every monomial does
        let parts = q
            .terms()
            .map(|(m, _)| {
                let vars: Vec<(Var, u32)> = m.pairs().iter().map(|&(v, _)| (v, 1)).collect();
                RealAtom::eq(Poly::term(
                    crate::rational::Rational::one(),
                    Monomial::from_pairs(vars),
                ))
            })
            .collect::<Vec<_>>();
        if parts.len() > 1 || parts[0].poly != q {
            return Normal::Split(parts);
        }
    }
    if q.total_degree() >= 2 {
        if let Some(r) = q.sqrt_exact() {
            // q = r^2 is never negative
            let (z, p) = (mask & ZERO != 0, mask & POS != 0);
            return match (z, p) {
                (true, true) => Normal::Const(true),
                (false, false) => Normal::Const(false),
                (true, false) => Normal::Split(vec![RealAtom::eq(r)]),
                (false, true) => Normal::Split(vec![RealAtom::ne(r)]),
            };
        }
    }
    Normal::Masked(q, mask)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Clause {
    masks: BTreeMap<Poly, u8>,
}

impl Clause {
    /// The empty conjunction.
    pub fn top() -> Self {
        Clause::default()
    }

    /// `None` when the atoms are contradictory.
    pub fn from_atoms(atoms: impl IntoIterator<Item = RealAtom>) -> Option<Self> {
        let mut c = Clause::top();
        c.insert_all(atoms.into_iter().collect())?;
        c.reduce()?;
        Some(c)
    }

    pub fn conjoin(&self, atoms: impl IntoIterator<Item = RealAtom>) -> Option<Self> {
        let mut c = self.clone();
        c.insert_all(atoms.into_iter().collect())?;
        c.reduce()?;
        Some(c)
    }

    pub fn and(&self, other: &Clause) -> Option<Self> {
        let (mut c, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (q, m) in &small.masks {
            c.intersect(q.clone(), *m)?;
        }
        c.reduce()?;
        Some(c)
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Poly, u8)> {
        self.masks.iter().map(|(q, m)| (q, *m))
    }

    pub fn mask_of(&self, q: &Poly) -> Option<u8> {
        self.masks.get(q).copied()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.masks.keys().any(|q| q.contains(v))
    }

    pub fn monomials(&self) -> usize {
        self.masks.keys().map(Poly::monomial_count).sum()
    }

    /// The atoms in a canonical form with the relation set `{=, <=, <, !=}`.
    pub fn atoms(&self) -> Vec<RealAtom> {
        self.masks
            .iter()
            .filter_map(|(q, &m)| mask_atom(q, m))
            .collect()
    }

    /// Splits into the entries mentioning `v` and the rest.
    pub fn split_on(&self, v: Var) -> (Vec<RealAtom>, Clause) {
        let mut with = Vec::new();
        let mut rest = Clause::top();
        for (q, &m) in &self.masks {
            if q.contains(v) {
                with.extend(mask_atom(q, m));
            } else {
                rest.masks.insert(q.clone(), m);
            }
        }
        (with, rest)
    }

    /// A copy without the entry for `q`.
    pub fn without(&self, q: &Poly) -> Clause {
        let mut c = self.clone();
        c.masks.remove(q);
        c
    }

    pub fn to_formula(&self) -> RealFormula {
        let mut atoms = self.atoms();
        atoms.sort_by_cached_key(|a| a.to_string());
        Formula::and_all(atoms.into_iter().map(Formula::Atom))
    }

    fn insert_all(&mut self, mut queue: Vec<RealAtom>) -> Option<()> {
        while let Some(a) = queue.pop() {
            match classify(&a) {
                Normal::Const(true) => {}
                Normal::Const(false) => return None,
                Normal::Split(parts) => queue.extend(parts),
                Normal::Masked(q, m) => self.intersect(q, m)?,
            }
        }
        Some(())
    }

    fn intersect(&mut self, q: Poly, m: u8) -> Option<()> {
        let e = self.masks.entry(q).or_insert(ALL);
        *e &= m;
        if *e == 0 {
            None
        } else {
            Some(())
        }
    }

    /// Cancels factors known to be nonzero: if `g != 0` is in the clause and
    /// `q = g h`, a condition on `q` is rewritten as one on `h` whenever the
    /// sign information allows it.
    fn reduce(&mut self) -> Option<()> {
        for _ in 0..32 {
            let guards: Vec<(Poly, u8)> = self
                .masks
                .iter()
                .filter(|(q, m)| *m & ZERO == 0 && q.total_degree() >= 1)
                .map(|(q, m)| (q.clone(), *m))
                .collect();
            if guards.is_empty() {
                return Some(());
            }
            let mut change = None;
            'outer: for (q, &m) in &self.masks {
                for (g, gm) in &guards {
                    if g == q || g.total_degree() > q.total_degree() || g.len() > q.len() {
                        continue;
                    }
                    let hm = match *gm {
                        POS => m,
                        NEG => flip(m),
                        _ if m == ZERO || m == NEG | POS => m,
                        _ => continue,
                    };
                    if let Some(h) = q.div_exact(g) {
                        change = Some((q.clone(), h, hm));
                        break 'outer;
                    }
                }
            }
            match change {
                None => return Some(()),
                Some((q, h, hm)) => {
                    self.masks.remove(&q);
                    let atom = mask_atom(&h, hm).expect("mask is proper");
                    self.insert_all(vec![atom])?;
                }
            }
        }
        Some(())
    }

    /// Uses short equations `c v + r = 0` with constant `c` to eliminate `v`
    /// from the other entries. The equation itself is kept, so the clause
    /// stays equivalent.
    pub fn propagate_equations(&self) -> Option<Clause> {
        let mut c = self.clone();
        for _ in 0..16 {
            let pick = c.masks.iter().find_map(|(q, &m)| {
                if m != ZERO || q.len() > 2 {
                    return None;
                }
                let v = pivot_var(q)?;
                c.masks
                    .keys()
                    .any(|o| o != q && o.contains(v))
                    .then(|| (q.clone(), v))
            });
            let Some((eq, v)) = pick else { return Some(c) };
            let coeffs = eq.coeffs_in(v);
            let val = coeffs[0].scale(&(-coeffs[1].constant_value().unwrap()).recip());
            let mut next = Clause::top();
            let mut moved = Vec::new();
            for (q, &m) in &c.masks {
                if q != &eq && q.contains(v) {
                    moved.extend(mask_atom(&q.substitute(v, &val), m));
                } else {
                    next.masks.insert(q.clone(), m);
                }
            }
            next.insert_all(moved)?;
            next.reduce()?;
            c = next;
        }
        Some(c)
    }
}

/// A variable occurring in `q` only linearly with a constant coefficient,
/// equal to a constant or a multiple of another variable.
fn pivot_var(q: &Poly) -> Option<Var> {
    let mut vars: Vec<Var> = q.vars().into_iter().collect();
    vars.sort_by_key(|v| v.name());
    vars.into_iter().find(|&v| {
        q.degree_in(v) == 1 && {
            let cs = q.coeffs_in(v);
            cs[1].is_constant() && !cs[0].contains(v) && cs[0].total_degree() <= 1
        }
    })
}

/// Removes duplicate clauses, clauses implied by a weaker one, and merges
/// pairs that differ only in the mask of a single polynomial.
pub fn simplify_clauses(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.sort();
    clauses.dedup();
    if clauses.iter().any(Clause::is_empty) {
        return vec![Clause::top()];
    }
    for _ in 0..8 {
        let before = clauses.len();
        clauses = merge_pass(clauses);
        clauses = subsume(clauses);
        if clauses.len() == before {
            break;
        }
    }
    clauses
}

fn merge_pass(clauses: Vec<Clause>) -> Vec<Clause> {
    use std::collections::HashMap;
    if clauses.len() > 20_000 {
        return clauses;
    }
    let mut alive: Vec<Option<Clause>> = clauses.into_iter().map(Some).collect();
    let mut index: HashMap<(Clause, Poly), usize> = HashMap::new();
    let mut i = 0;
    while i < alive.len() {
        let Some(c) = alive[i].clone() else {
            i += 1;
            continue;
        };
        let mut merged = None;
        for (q, m) in c.entries() {
            let key = (c.without(q), q.clone());
            if let Some(&j) = index.get(&key) {
                if let Some(other) = &alive[j] {
                    let om = other.mask_of(q).unwrap();
                    let mut rest = key.0.clone();
                    let u = m | om;
                    if u != ALL {
                        rest.masks.insert(q.clone(), u);
                    }
                    merged = Some((j, rest));
                    break;
                }
            }
        }
        match merged {
            Some((j, new)) => {
                alive[j] = None;
                alive[i] = None;
                alive.push(Some(new));
            }
            None => {
                for (q, _) in c.entries() {
                    index.insert((c.without(q), q.clone()), i);
                }
            }
        }
        i += 1;
    }
    let mut out: Vec<Clause> = alive.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    out
}

/// Drops every clause that has a proper sub-clause with weaker (superset)
/// masks in the list.
fn subsume(mut clauses: Vec<Clause>) -> Vec<Clause> {
    if clauses.len() > 4000 {
        return clauses;
    }
    clauses.sort_by_key(Clause::len);
    let mut kept: Vec<Clause> = Vec::new();
    for c in clauses {
        let implied = kept.iter().any(|k| {
            k.len() <= c.len()
                && k.masks
                    .iter()
                    .all(|(q, &km)| c.masks.get(q).is_some_and(|&cm| cm & !km == 0))
        });
        if !implied {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// Disjunction of clauses as a formula, with atoms shared by every clause
/// pulled out in front.
pub fn clauses_to_formula(clauses: &[Clause]) -> RealFormula {
    match clauses {
        [] => return Formula::False,
        [c] => return c.to_formula(),
        _ => {}
    }
    let common: Vec<(Poly, u8)> = clauses[0]
        .entries()
        .filter(|(q, m)| clauses[1..].iter().all(|c| c.mask_of(q) == Some(*m)))
        .map(|(q, m)| (q.clone(), m))
        .collect();
    let mut shared = Clause::top();
    for (q, m) in &common {
        shared.masks.insert(q.clone(), *m);
    }
    let mut rest: Vec<RealFormula> = clauses
        .iter()
        .map(|c| {
            let mut r = c.clone();
            for (q, _) in &common {
                r.masks.remove(q);
            }
            r.to_formula()
        })
        .collect();
    rest.sort_by_cached_key(|f| f.to_string());
    rest.dedup();
    Formula::and_all([shared.to_formula(), Formula::or_all(rest)])
}
