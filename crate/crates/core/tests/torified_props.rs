mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use bcwitt_core::error::Error;
use bcwitt_core::torified::{bb_assemble, LClass, LeveledClass, TorifiedClass};

fn class(max_deg: usize) -> impl Strategy<Value = TorifiedClass> {
    prop::collection::vec(0u64..=50, 0..=max_deg + 1).prop_map(|a| TorifiedClass::from_u64(&a))
}

/// `Σ c_e L^{e/2}` evaluated at `L = x²`, scaled by `x^{shift}` to clear negative powers.
fn eval_l_at_square(l: &LClass, x: &BigInt, shift: i64) -> BigInt {
    l.doubled_terms()
        .map(|(e2, c)| {
            let p = e2 + shift;
            assert!(p >= 0);
            c * x.pow(p as u32)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn points_are_a_ring_map(a in class(6), b in class(6), m in 1u64..=20) {
        prop_assert_eq!(a.add(&b).f1m_points(m), a.f1m_points(m) + b.f1m_points(m));
        prop_assert_eq!(a.mul(&b).f1m_points(m), a.f1m_points(m) * b.f1m_points(m));
        prop_assert_eq!(a.f1m_points(m), eval_uint(a.coeffs(), &BigInt::from(m)).to_biguint().unwrap());
    }

    #[test]
    fn basis_change_round_trip(a in class(20)) {
        let l = a.to_l();
        prop_assert!(!l.has_half_twists());
        prop_assert_eq!(l.to_t().unwrap(), a.clone());
        // T = L - 1: compare values at L = y² = x + 1
        for y in 1..=4i64 {
            let y = BigInt::from(y);
            prop_assert_eq!(eval_l_at_square(&l, &y, 0), eval_uint(a.coeffs(), &(&y * &y - 1)));
        }
    }

    #[test]
    fn bb_assembly_matches_evaluation(parts in prop::collection::vec((class(3), 0u32..=4), 0..5), x in 0i64..=5) {
        let total = bb_assemble(&parts);
        let x = BigInt::from(x);
        let expected: BigInt = parts.iter().map(|(z, d)| eval_uint(z.coeffs(), &x) * (&x + BigInt::from(1)).pow(*d)).sum();
        prop_assert_eq!(eval_uint(total.coeffs(), &x), expected);
    }

    #[test]
    fn bb_with_point_cells_is_the_plain_sum(parts in prop::collection::vec(class(5), 0..6)) {
        let sum = parts.iter().fold(TorifiedClass::zero(), |acc, p| acc.add(p));
        let with_dims: Vec<_> = parts.into_iter().map(|p| (p, 0)).collect();
        prop_assert_eq!(bb_assemble(&with_dims), sum);
    }

    #[test]
    fn virtual_motive_is_a_half_twist(a in class(8), n in 0u64..=6) {
        let v = a.to_l().virtual_motive(n).unwrap();
        let y = BigInt::from(3);
        // L^{-n/2}[X] at L = 9, scaled by 3^n
        prop_assert_eq!(eval_l_at_square(&v, &y, n as i64), eval_uint(a.coeffs(), &BigInt::from(8)) );
        prop_assert_eq!(v.has_half_twists(), n % 2 == 1 && !a.is_zero());
    }

    #[test]
    fn leveled_maps(a in class(4), level in 1u64..=6, n in 1u64..=6) {
        let c = LeveledClass::new(a.clone(), level).unwrap();
        prop_assert_eq!(c.bc_sigma(n).bc_rho(n).cls.clone(), a.scale(&BigUint::from(n)));
        prop_assert_eq!(c.bc_rho(n).bc_sigma(n).cls.clone(), a.scale(&BigUint::from(n)));
        prop_assert_eq!(c.bc_rho(n).level(), level * n);
    }
}

#[test]
fn non_torified_l_classes_are_rejected() {
    assert_eq!(LClass::from_coeffs(&[-2, 1]).to_t(), Err(Error::NotEffectivelyTorified));
    assert_eq!(LClass::from_doubled(BTreeMap::from([(-2, BigInt::from(1))])).to_t(), Err(Error::NotEffectivelyTorified));
    assert_eq!(LClass::from_doubled(BTreeMap::from([(1, BigInt::from(1))])).to_t(), Err(Error::HalfTwistPresent));
    assert_eq!(LClass::from_coeffs(&[-1, 1]).to_t().unwrap(), TorifiedClass::from_u64(&[0, 1]));
}
