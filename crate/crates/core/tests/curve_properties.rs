use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use suzuki_core::arith::{power_sums, satisfies_functional_equation};
use suzuki_core::field::Embedding;
use suzuki_core::suzuki::{
    brute_force_count, l_polynomial, l_polynomial_ext, mcguire_extend, on_curve, period, point_count,
    within_hasse_weil, Automorphism, CountReport,
};
use suzuki_core::CurveParams;

const LIMIT: u128 = 1 << 24;

fn cp(p: u64, t: u32) -> CurveParams {
    CurveParams::new(p, t).unwrap()
}

#[test]
fn hasse_weil_for_every_count_encoded_by_l() {
    for (p, t) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let c = cp(p, t);
        for n in 1..=2 * c.genus_usize().unwrap() {
            let r = point_count(&c, n).unwrap();
            assert!(within_hasse_weil(&c.qn(n), &c.genus(), &r.count), "({p},{t}) n={n}");
        }
    }
}

#[test]
fn extension_l_polynomials_are_consistent_with_the_base() {
    for (p, t) in [(3, 1), (5, 1)] {
        let c = cp(p, t);
        let g = c.genus_usize().unwrap();
        let base = power_sums(&l_polynomial(&c).unwrap(), 2 * g * 12);
        for n in 1..=12 {
            let ln = l_polynomial_ext(&c, n).unwrap();
            assert!(satisfies_functional_equation(&ln, &c.qn(n), g));
            let s = power_sums(&ln, 1);
            assert_eq!(s[0], base[n - 1], "({p},{t}) n={n}");
        }
    }
}

#[test]
fn automorphisms_preserve_extension_point_sets() {
    for (p, t, n) in [(3, 1, 2), (3, 1, 3), (5, 1, 2)] {
        let c = cp(p, t);
        let fq = c.base_field().unwrap();
        let big = c.extension_field(n).unwrap();
        let emb = Embedding::new(&fq, &big).unwrap();
        let pts: HashSet<_> = big
            .elements()
            .flat_map(|x| big.elements().map(move |y| (x.clone(), y)))
            .filter(|(x, y)| on_curve(&c, x, y))
            .collect();
        let count = brute_force_count(&c, n, LIMIT).unwrap().count;
        assert_eq!(BigInt::from(pts.len() + 1), count);
        let q = fq.order().unwrap();
        for (a, b, g) in [(1, 1, 0), (q - 1, 2 % q, 1), (2, 0, q - 1)] {
            let aut = Automorphism::new(&c, fq.from_index(a), fq.from_index(b), fq.from_index(g)).unwrap();
            let image: HashSet<_> = pts.iter().map(|(x, y)| aut.apply_with(&emb, x, y).unwrap()).collect();
            assert_eq!(image, pts, "({p},{t}) n={n}");
        }
    }
}

#[test]
fn count_report_json() {
    let r = point_count(&cp(3, 1), 6).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(json, r#"{"n":6,"N":"892","method":"formula","maximality":"Maximal"}"#);
    let back: CountReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mcguire_matches_formula(p_idx in 0usize..4, n in 1usize..200) {
        let (p, t) = [(3, 1), (5, 1), (7, 1), (3, 2)][p_idx];
        let c = cp(p, t);
        let s = period(&c).unwrap();
        let base = point_count(&c, n.gcd(&s)).unwrap();
        prop_assert_eq!(mcguire_extend(&c, &base, n).unwrap().count, point_count(&c, n).unwrap().count);
    }

    #[test]
    fn composition_matches_action(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let c = cp(3, 2);
        let fq = c.base_field().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pick = |nonzero: bool| if nonzero { fq.random_nonzero(&mut rng) } else { fq.random(&mut rng) };
        let a = Automorphism::new(&c, pick(true), pick(false), pick(false)).unwrap();
        let b = Automorphism::new(&c, pick(true), pick(false), pick(false)).unwrap();
        let ab = a.then(&b).unwrap();
        let x = fq.from_index(rng.gen_range(0..27));
        let y = fq.from_index(rng.gen_range(0..27));
        let (x1, y1) = a.apply(&x, &y).unwrap();
        prop_assert_eq!(ab.apply(&x, &y).unwrap(), b.apply(&x1, &y1).unwrap());
        prop_assert!(a.then(&a.inverse().unwrap()).unwrap().is_identity());
    }
}
