mod common;

use common::oracle_product;
use multising::grassmann::{pushforward_p_s, FiberClass, GrassClass, GrassRing, Partition};
use multising::Rat;
use proptest::prelude::*;

#[test]
fn products_match_symmetric_polynomial_oracle() {
    let g = GrassRing::new(3, 7).unwrap();
    let small: Vec<Partition> = (0..=6).flat_map(|d| g.basis_of_degree(d)).collect();
    let mut checked = 0;
    for a in &small {
        for b in &small {
            if a.size() + b.size() > 6 {
                continue;
            }
            let lhs = GrassClass::schur(g, a.clone()).checked_mul(&GrassClass::schur(g, b.clone())).unwrap();
            assert_eq!(lhs, oracle_product(g, a, b), "{} * {}", a, b);
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn products_with_truncation_match_oracle() {
    let g = GrassRing::new(2, 5).unwrap();
    for a in g.basis() {
        for b in g.basis() {
            let lhs = GrassClass::schur(g, a.clone()).checked_mul(&GrassClass::schur(g, b.clone())).unwrap();
            assert_eq!(lhs, oracle_product(g, &a, &b), "{} * {}", a, b);
        }
    }
}

#[test]
fn sigma1_fourth_power() {
    let g = GrassRing::new(2, 4).unwrap();
    let s1 = GrassClass::schur(g, Partition::row(1));
    let p = s1.checked_mul(&s1).unwrap().checked_mul(&s1).unwrap().checked_mul(&s1).unwrap();
    assert_eq!(p.integrate(), Rat::from_int(2));
    // degree 4 in Gr_2(C^5): 5
    let g = GrassRing::new(2, 5).unwrap();
    let s1 = GrassClass::schur(g, Partition::row(1));
    let mut acc = GrassClass::one(g);
    for _ in 0..6 {
        acc = acc.checked_mul(&s1).unwrap();
    }
    assert_eq!(acc.integrate(), Rat::from_int(5));
}

#[test]
fn poincare_pairing() {
    for (k, n) in [(2, 4), (3, 6)] {
        let g = GrassRing::new(k, n).unwrap();
        let basis = g.basis();
        for a in &basis {
            for b in &basis {
                let x = GrassClass::schur(g, a.clone());
                let y = GrassClass::schur(g, b.clone());
                let expected = if *b == g.dual(a) { Rat::one() } else { Rat::zero() };
                assert_eq!(x.checked_mul(&y).unwrap().integrate(), expected, "{} {}", a, b);
                assert_eq!(x.pairing(&y).unwrap(), expected);
            }
        }
    }
}

#[test]
fn ring_mismatch_is_rejected() {
    let a = GrassClass::one(GrassRing::new(2, 4).unwrap());
    let b = GrassClass::one(GrassRing::new(2, 5).unwrap());
    assert!(a.checked_mul(&b).is_err());
}

fn arb_class(g: GrassRing) -> impl Strategy<Value = GrassClass> {
    let basis = g.basis();
    let nb = basis.len();
    proptest::collection::vec((0..nb, -5i64..=5), 0..4)
        .prop_map(move |v| GrassClass::from_terms(g, v.into_iter().map(|(i, c)| (basis[i].clone(), Rat::from_int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_formula(y in arb_class(GrassRing::new(3, 7).unwrap()), w in 0usize..10) {
        let g = GrassRing::new(3, 7).unwrap();
        let lhs = pushforward_p_s(&FiberClass::pullback(&y).shift(w));
        let rhs = pushforward_p_s(&FiberClass::xi_pow(g, w)).checked_mul(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_commutes_with_pushforward(
        cs in proptest::collection::vec(arb_class(GrassRing::new(3, 7).unwrap()), 1..7)
    ) {
        let g = GrassRing::new(3, 7).unwrap();
        let x = FiberClass::from_coeffs(g, cs).unwrap();
        prop_assert_eq!(pushforward_p_s(&x), pushforward_p_s(&x.reduce()));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in arb_class(GrassRing::new(3, 6).unwrap()),
        b in arb_class(GrassRing::new(3, 6).unwrap()),
        c in arb_class(GrassRing::new(3, 6).unwrap()),
    ) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.checked_mul(&a).unwrap());
        prop_assert_eq!(ab.checked_mul(&c).unwrap(), a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap());
    }
}
