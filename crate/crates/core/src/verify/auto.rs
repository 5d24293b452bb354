//! Automorphisms as rational matrices, and a seeded sampler for them.
//!
//! Quaternion automorphisms are the inner maps `v -> q v q^-1`. For the
//! octonions only a subgroup is reachable: compositions of lifted quaternion
//! automorphisms `p + r l -> phi(p) + phi(r) l` with the signed permutations
//! of the basis that preserve the multiplication table.

use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraElement, Octonion, Quaternion};
use crate::rational::Rational;

/// Printed at the top of every octonion report.
pub const OCTONION_SAMPLING_NOTE: &str =
    "octonion automorphisms are drawn from the subgroup generated by lifted quaternion automorphisms and the 1344 signed basis permutations preserving the multiplication table, not from all of G2(Q)";

/// Linear map given by its matrix: `matrix[i][j]` is the `e_i` coordinate of
/// the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub algebra: Algebra,
    pub matrix: Vec<Vec<Rational>>,
}

impl Automorphism {
    pub fn identity(algebra: Algebra) -> Self {
        let n = algebra.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Automorphism { algebra, matrix }
    }

    /// The map sending basis element `j` to `images[j]`.
    pub fn from_images<T: AlgebraElement>(images: &[T]) -> Self {
        let n = T::ALGEBRA.dim();
        assert_eq!(images.len(), n);
        let cols: Vec<Vec<Rational>> = images.iter().map(|t| t.coords()).collect();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        Automorphism {
            algebra: T::ALGEBRA,
            matrix,
        }
    }

    /// `v -> q v q^-1` for nonzero `q`.
    pub fn conjugation(q: &Quaternion) -> Self {
        let inv = q.inverse().expect("conjugating element is nonzero");
        let images: Vec<Quaternion> = (0..4)
            .map(|j| q.mul(&Quaternion::basis(j)).mul(&inv))
            .collect();
        Automorphism::from_images(&images)
    }

    /// The octonion automorphism `p + r l -> phi(p) + phi(r) l`.
    pub fn lift(phi: &Automorphism) -> Self {
        assert_eq!(phi.algebra, Algebra::Quat);
        let mut matrix = vec![vec![Rational::zero(); 8]; 8];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = phi.matrix[i][j].clone();
                matrix[i + 4][j + 4] = phi.matrix[i][j].clone();
            }
        }
        Automorphism {
            algebra: Algebra::Oct,
            matrix,
        }
    }

    pub fn apply<T: AlgebraElement>(&self, x: &T) -> T {
        assert_eq!(T::ALGEBRA, self.algebra);
        let c = x.coords();
        let out: Vec<Rational> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&c).map(|(a, b)| a * b).sum())
            .collect();
        T::from_coords(&out)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let n = self.algebra.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| &self.matrix[i][k] * &other.matrix[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Automorphism {
            algebra: self.algebra,
            matrix,
        }
    }

    /// Exact check: `g(1) = 1` and `g(e_i e_j) = g(e_i) g(e_j)` for every
    /// pair of basis elements.
    pub fn is_automorphism(&self) -> bool {
        match self.algebra {
            Algebra::Quat => self.check::<Quaternion>(),
            Algebra::Oct => self.check::<Octonion>(),
        }
    }

    fn check<T: AlgebraElement>(&self) -> bool {
        let n = T::ALGEBRA.dim();
        let images: Vec<T> = (0..n)
            .map(|j| {
                T::from_coords(
                    &self
                        .matrix
                        .iter()
                        .map(|row| row[j].clone())
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        if images[0] != T::one() {
            return false;
        }
        let table = T::ALGEBRA.mul_table();
        for i in 0..n {
            for j in 0..n {
                let (k, sign) = table[i][j];
                let lhs = if sign > 0 {
                    images[k].clone()
                } else {
                    images[k].neg()
                };
                if lhs != images[i].mul(&images[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Signed basis permutations preserving the octonion multiplication table.
/// Found by choosing images of the generators `i`, `j`, `l` among the 14
/// signed imaginary units and keeping the choices that extend to an
/// automorphism.
pub fn table_symmetries() -> &'static [Automorphism] {
    static SYMS: Lazy<Vec<Automorphism>> = Lazy::new(|| {
        let table = Algebra::Oct.mul_table();
        // signed units as (index, sign)
        let mul = |(a, s): (usize, i8), (b, t): (usize, i8)| {
            let (k, u) = table[a][b];
            (k, s * t * u)
        };
        let units: Vec<(usize, i8)> = (1..8).flat_map(|k| [(k, 1), (k, -1)]).collect();
        let mut out = Vec::new();
        for &gi in &units {
            for &gj in &units {
                for &gl in &units {
                    let gk = mul(gi, gj);
                    let img = [
                        (0, 1),
                        gi,
                        gj,
                        gk,
                        gl,
                        mul(gi, gl),
                        mul(gj, gl),
                        mul(gk, gl),
                    ];
                    let hom = (0..8).all(|a| {
                        (0..8).all(|b| {
                            let (k, s) = table[a][b];
                            let (m, t) = img[k];
                            mul(img[a], img[b]) == (m, s * t)
                        })
                    });
                    if !hom {
                        continue;
                    }
                    let mut matrix = vec![vec![Rational::zero(); 8]; 8];
                    for (j, &(k, s)) in img.iter().enumerate() {
                        matrix[k][j] = Rational::from_int(s as i64);
                    }
                    out.push(Automorphism {
                        algebra: Algebra::Oct,
                        matrix,
                    });
                }
            }
        }
        out
    });
    &SYMS
}

/// Seeded source of rationals, algebra elements and automorphisms.
#[derive(Clone, Debug)]
pub struct AutoSampler {
    pub algebra: Algebra,
    pub seed: u64,
    /// Coordinates are `p/q` with `|p| <= bound`, `1 <= q <= bound`.
    pub bound: i64,
    rng: ChaCha8Rng,
}

impl AutoSampler {
    pub fn new(algebra: Algebra, seed: u64, bound: i64) -> Self {
        assert!(bound >= 1, "coefficient bound must be positive");
        AutoSampler {
            algebra,
            seed,
            bound,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        Rational::new(p, q)
    }

    pub fn element<T: AlgebraElement>(&mut self) -> T {
        let c: Vec<Rational> = (0..T::ALGEBRA.dim()).map(|_| self.rational()).collect();
        T::from_coords(&c)
    }

    /// A random element that is zero or central now and then, so that
    /// boundary cases of typical formulas are hit.
    pub fn mixed_element<T: AlgebraElement>(&mut self) -> T {
        match self.rng.gen_range(0..8) {
            0 => T::zero(),
            1 | 2 => T::from_scalar(self.rational()),
            3 => {
                let mut c = vec![Rational::zero(); T::ALGEBRA.dim()];
                let k = self.rng.gen_range(0..c.len());
                c[k] = self.rational();
                T::from_coords(&c)
            }
            _ => self.element(),
        }
    }

    fn nonzero_quaternion(&mut self) -> Quaternion {
        loop {
            let q: Quaternion = self.element();
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// A verified automorphism of the sampler's algebra.
    pub fn sample_automorphism(&mut self) -> Automorphism {
        loop {
            let g = match self.algebra {
                Algebra::Quat => Automorphism::conjugation(&self.nonzero_quaternion()),
                Algebra::Oct => {
                    let syms = table_symmetries();
                    let mut g = Automorphism::identity(Algebra::Oct);
                    for _ in 0..self.rng.gen_range(1..=3) {
                        let f = if self.rng.gen_bool(0.5) {
                            Automorphism::lift(&Automorphism::conjugation(
                                &self.nonzero_quaternion(),
                            ))
                        } else {
                            syms[self.rng.gen_range(0..syms.len())].clone()
                        };
                        g = f.compose(&g);
                    }
                    g
                }
            };
            if g.is_automorphism() {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_conjugation() {
        assert_eq!(
            Automorphism::conjugation(&Quaternion::one()),
            Automorphism::identity(Algebra::Quat)
        );
    }

    #[test]
    fn conjugation_by_one_plus_i() {
        let g = Automorphism::conjugation(&Quaternion::from_ints(1, 1, 0, 0));
        assert_eq!(g.apply(&Quaternion::i()), Quaternion::i());
        assert_eq!(g.apply(&Quaternion::j()), Quaternion::k());
        assert_eq!(g.apply(&Quaternion::k()), Quaternion::j().neg());
        assert!(g.is_automorphism());
    }

    #[test]
    fn table_symmetry_group_order() {
        let syms = table_symmetries();
        assert_eq!(syms.len(), 1344);
        assert!(syms.contains(&Automorphism::identity(Algebra::Oct)));
    }

    #[test]
    fn sampled_maps_are_automorphisms() {
        for alg in [Algebra::Quat, Algebra::Oct] {
            let mut s = AutoSampler::new(alg, 7, 10);
            for _ in 0..20 {
                assert!(s.sample_automorphism().is_automorphism());
            }
        }
    }

    #[test]
    fn a_non_automorphism_is_rejected() {
        let mut m = Automorphism::identity(Algebra::Quat);
        m.matrix[1][1] = Rational::from_int(2);
        assert!(!m.is_automorphism());
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut a = AutoSampler::new(Algebra::Oct, 99, 10);
        let mut b = AutoSampler::new(Algebra::Oct, 99, 10);
        for _ in 0..5 {
            assert_eq!(a.sample_automorphism(), b.sample_automorphism());
        }
    }
}
