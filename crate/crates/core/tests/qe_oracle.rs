//! The real backend against an independent root-isolation oracle.

mod support;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hoqe::qe;
use hoqe::{Rational, Rel};
use support::blocks::{random_block, random_point};
use support::sturm::{exists, isolate, rel_holds, UPoly};

fn up(c: &[i64]) -> UPoly {
    UPoly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
}

#[test]
fn sturm_isolates_known_roots() {
    // (t^2 - 2)(t - 1)(t + 3)
    let p = up(&[-2, 0, 1]).mul(&up(&[-1, 1])).mul(&up(&[3, 1]));
    let cells = isolate(&p);
    assert_eq!(cells.len(), 4);
    let approx = [
        -3.0,
        -std::f64::consts::SQRT_2,
        1.0,
        std::f64::consts::SQRT_2,
    ];
    for ((a, b), r) in cells.iter().zip(approx) {
        assert!(a.to_f64() < r && r < b.to_f64());
    }
    assert!(isolate(&up(&[1, 0, 1])).is_empty());
}

#[test]
fn sturm_oracle_small_cases() {
    let holds = |p: UPoly, rel: Rel| exists(&[p], &|s| rel_holds(rel, s[0]));
    assert!(holds(up(&[-3, 0, 1]), Rel::Eq));
    assert!(!holds(up(&[1, 0, 1]), Rel::Le));
    assert!(holds(up(&[0, 0, 1]), Rel::Le));
    assert!(!holds(up(&[0, 0, 1]), Rel::Lt));
    assert!(holds(up(&[2, -3, 1]), Rel::Le));
    assert!(!holds(up(&[0]), Rel::Ne));
    // t = 0 and t > 0 never hold together
    assert!(!exists(&[up(&[0, 1]), up(&[0, -1])], &|s| s[0] == 0 && s[1] < 0));
    // double root touched only at one point
    assert!(exists(&[up(&[1, -2, 1]), up(&[-1, 1])], &|s| s[0] <= 0
        && s[1] == 0));
}

#[test]
fn generated_blocks_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 0..60 {
        let block = random_block(&mut rng);
        let phi = block.formula();
        let out = qe::eliminate(&phi).unwrap_or_else(|e| panic!("block {n} {phi}: {e}"));
        for y in &block.bound {
            assert!(!out.all_vars().contains(y), "{out} mentions {y}");
        }
        for _ in 0..40 {
            let z = random_point(&mut rng, &block.free);
            let got = out.eval_map(&z).expect("quantifier-free and closed");
            assert_eq!(
                got,
                block.oracle(&z),
                "block {n} {phi}\nat {z:?}\ngot {out}"
            );
        }
    }
}
