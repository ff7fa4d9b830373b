mod common;

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use bcwitt_core::poly::RatPolynomial;
use bcwitt_core::witt::{GhostVector, RationalWitt, WittVector};
use bcwitt_core::Rational;

fn int_witt_exact(n: usize) -> impl Strategy<Value = WittVector> {
    prop::collection::vec(-4i64..=4, n).prop_map(|c| WittVector::from_integers(&c).unwrap())
}

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn same_trunc_pair(n: usize) -> impl Strategy<Value = (WittVector, WittVector)> {
    (prop::collection::vec(-4i64..=4, n), prop::collection::vec(-4i64..=4, n))
        .prop_map(|(a, b)| (WittVector::from_integers(&a).unwrap(), WittVector::from_integers(&b).unwrap()))
}

fn scale(g: &GhostVector, k: i64) -> GhostVector {
    g.scale(&q(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghosts_match_product_form_oracle(a in prop::collection::vec(-3i64..=3, 1..=10)) {
        let n = a.len();
        let w = WittVector::from_series(&product_form_series(&a, n)).unwrap();
        let g = w.ghost();
        prop_assert_eq!(g.values(), &product_form_ghosts(&a, n)[..]);
        prop_assert_eq!(g.values(), &ghosts_from_series(&w.series())[..]);
    }

    #[test]
    fn ghost_is_a_ring_map((a, b) in (1usize..=12).prop_flat_map(same_trunc_pair)) {
        prop_assert_eq!(a.add(&b).ghost(), a.ghost().add(&b.ghost()));
        prop_assert_eq!(a.mul(&b).ghost(), a.ghost().mul(&b.ghost()));
        prop_assert_eq!(a.sub(&b).ghost(), a.ghost().sub(&b.ghost()));
        prop_assert_eq!(a.mul(&WittVector::one(a.truncation())), a.clone());
        prop_assert_eq!(a.add(&WittVector::zero(a.truncation())), a.clone());
    }

    #[test]
    fn integral_vectors_are_closed_under_mul((a, b) in (1usize..=12).prop_flat_map(same_trunc_pair)) {
        prop_assert!(a.mul(&b).is_integral());
        prop_assert!(a.add(&b).is_integral());
        prop_assert!(a.neg().is_integral());
    }

    #[test]
    fn unghost_inverts_ghost(c in prop::collection::vec(rat(), 1..=24)) {
        let w = WittVector::new(c).unwrap();
        prop_assert_eq!(w.ghost().unghost(), w.clone());
        let g = GhostVector::new(w.coeffs().to_vec()).unwrap();
        prop_assert_eq!(g.unghost().ghost(), g.clone());
        prop_assert_eq!(&w.series()[..], &exp_from_ghosts(w.ghost().values())[..]);
    }

    #[test]
    fn frobenius_verschiebung_relations(w in int_witt_exact(36), n in 1usize..=6, m in 1usize..=6) {
        let f = |x: &WittVector, k| x.frobenius(k).unwrap();
        prop_assert_eq!(f(&f(&w, m), n), f(&w, n * m));
        prop_assert_eq!(w.verschiebung(m).verschiebung(n), w.verschiebung(n * m));
        let fv = f(&w.verschiebung(n), n);
        prop_assert_eq!(fv.ghost(), scale(&w.truncate(fv.truncation()).ghost(), n as i64));
        prop_assert_eq!(fv.clone(), w.truncate(fv.truncation()).times(n as i64));
        if n.gcd(&m) == 1 {
            let lhs = f(&w.verschiebung(m), n);
            let rhs = f(&w, n).verschiebung(m);
            let t = lhs.truncation().min(rhs.truncation());
            prop_assert_eq!(lhs.truncate(t), rhs.truncate(t));
        }
    }

    #[test]
    fn teichmuller_is_multiplicative(a in rat(), b in rat(), n in 1usize..=10) {
        let ta = WittVector::teichmuller(&a, n);
        let tb = WittVector::teichmuller(&b, n);
        prop_assert_eq!(ta.mul(&tb), WittVector::teichmuller(&(&a * &b), n));
    }

    #[test]
    fn rational_form_expands_like_the_series_oracle(
        num in prop::collection::vec(-3i64..=3, 0..4),
        den in prop::collection::vec(-3i64..=3, 0..4),
        n in 1usize..=15,
    ) {
        let poly = |tail: &[i64]| {
            let mut c = vec![q(1)];
            c.extend(tail.iter().map(|&x| q(x)));
            c
        };
        let (pn, pd) = (poly(&num), poly(&den));
        let r = RationalWitt::new(RatPolynomial::new(pn.clone()), RatPolynomial::new(pd.clone())).unwrap();
        let s = rational_series(&pn, &pd, n);
        prop_assert_eq!(r.expand(n).series(), s);
        let other = RationalWitt::new(RatPolynomial::new(pd), RatPolynomial::new(pn)).unwrap();
        prop_assert!(r.add(&other).is_one());
        prop_assert_eq!(r.add(&other.neg()).expand(n), r.expand(n).add(&r.expand(n)));
        prop_assert_eq!(r.verschiebung(2).expand(n), r.expand(n).verschiebung(2));
    }
}

#[test]
fn frobenius_shrinks_and_errors() {
    let w = WittVector::from_integers(&[1; 10]).unwrap();
    assert_eq!(w.frobenius(3).unwrap().truncation(), 3);
    assert!(w.frobenius(11).is_err());
    assert_eq!(w.frobenius(10).unwrap().ghost().values(), &[w.ghost().values()[9].clone()]);
}

#[test]
fn integer_ghosts_have_integer_witt_vectors_when_congruent() {
    // necklace counts 2^m give 1/(1 - 2t)
    let g = GhostVector::from_integers((1..=10).map(|m| BigInt::from(2).pow(m))).unwrap();
    assert!(g.unghost().is_integral());
    assert_eq!(g.unghost(), WittVector::teichmuller(&q(2), 10));
}
