//! Structural simplification of real formulas.

use std::collections::BTreeMap;

use super::clause::{mask_atom, Clause, ALL};
use crate::formula::{Formula, RealAtom, RealFormula};
use crate::poly::Poly;

/// Constant folding, flattening, duplicate removal, content normalization,
/// and contradiction/tautology detection among sibling atoms. The result
/// evaluates exactly like the input.
pub fn simplify(phi: &RealFormula) -> RealFormula {
    match phi {
        Formula::True | Formula::False => phi.clone(),
        Formula::Atom(a) => atom(a),
        Formula::Not(g) => match simplify(g) {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Atom(a) => atom(&a.negated()),
            Formula::Not(h) => *h,
            other => Formula::not(other),
        },
        Formula::And(gs) => conjunction(gs.iter().map(simplify).collect()),
        Formula::Or(gs) => disjunction(gs.iter().map(simplify).collect()),
        Formula::Implies(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (&a, &b) {
                (Formula::False, _) | (_, Formula::True) => Formula::True,
                (Formula::True, _) => b,
                (_, Formula::False) => simplify(&Formula::not(a)),
                _ => Formula::implies(a, b),
            }
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let body = simplify(g);
            if !body.all_vars().contains(v) {
                body
            } else if matches!(phi, Formula::Exists(..)) {
                Formula::exists(*v, body)
            } else {
                Formula::forall(*v, body)
            }
        }
    }
}

fn atom(a: &RealAtom) -> RealFormula {
    match Clause::from_atoms([a.clone()]) {
        None => Formula::False,
        Some(c) => c.to_formula(),
    }
}

fn conjunction(parts: Vec<RealFormula>) -> RealFormula {
    let mut atoms = Vec::new();
    let mut others = Vec::new();
    for p in flatten(parts, true) {
        match p {
            Formula::True => {}
            Formula::False => return Formula::False,
            Formula::Atom(a) => atoms.push(a),
            other => {
                if !others.contains(&other) {
                    others.push(other);
                }
            }
        }
    }
    let Some(c) = Clause::from_atoms(atoms) else {
        return Formula::False;
    };
    let mut out: Vec<RealFormula> = match c.to_formula() {
        Formula::True => Vec::new(),
        Formula::And(xs) => xs,
        f => vec![f],
    };
    out.extend(others);
    Formula::and_all(out)
}

fn disjunction(parts: Vec<RealFormula>) -> RealFormula {
    // union of sign masks per polynomial
    let mut masks: BTreeMap<Poly, u8> = BTreeMap::new();
    let mut others = Vec::new();
    for p in flatten(parts, false) {
        match p {
            Formula::False => {}
            Formula::True => return Formula::True,
            Formula::Atom(a) => match Clause::from_atoms([a.clone()]) {
                None => {}
                Some(c) if c.is_empty() => return Formula::True,
                Some(c) if c.len() == 1 => {
                    let (q, m) = c.entries().next().map(|(q, m)| (q.clone(), m)).unwrap();
                    *masks.entry(q).or_insert(0) |= m;
                }
                Some(c) => others.push(c.to_formula()),
            },
            other => {
                if !others.contains(&other) {
                    others.push(other);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (q, m) in masks {
        if m == ALL {
            return Formula::True;
        }
        out.push(Formula::Atom(
            mask_atom(&q, m).expect("nonempty proper mask"),
        ));
    }
    out.extend(others);
    Formula::or_all(out)
}

fn flatten(parts: Vec<RealFormula>, and: bool) -> Vec<RealFormula> {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Formula::And(xs) if and => out.extend(flatten(xs, and)),
            Formula::Or(xs) if !and => out.extend(flatten(xs, and)),
            other => out.push(other),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_real;

    fn s(src: &str) -> String {
        simplify(&parse_real(src).unwrap()).to_string()
    }

    #[test]
    fn constant_folding() {
        assert_eq!(s("0 <= 1 && z = 1"), "z - 1 = 0");
        assert_eq!(s("1 <= 0 || z = 1"), "z - 1 = 0");
        assert_eq!(s("!(1 = 1)"), "false");
    }

    #[test]
    fn duplicates() {
        assert_eq!(s("z = 1 || z = 1"), "z - 1 = 0");
        assert_eq!(s("z <= 0 || z > 0"), "true");
        assert_eq!(s("z < 0 && z > 0"), "false");
    }

    #[test]
    fn content_removal() {
        assert_eq!(s("2*z - 2 = 0"), "z - 1 = 0");
    }

    #[test]
    fn vacuous_quantifier() {
        assert_eq!(s("exists x. z = 0"), "z = 0");
    }
}
