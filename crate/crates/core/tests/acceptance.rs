//! Acceptance criteria, one PASS/FAIL line each. Every check is exact and uses fixed seeds.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bcwitt_core::arith::totient;
use bcwitt_core::dynamical::{spectral_euler, torified_dynamical_zeta, DynamicalKind, ToralMap};
use bcwitt_core::endo::EndoObject;
use bcwitt_core::equivariant::{identity_checks, CyclicAction};
use bcwitt_core::matrix::Matrix;
use bcwitt_core::poly::IntPolynomial;
use bcwitt_core::qz::{QZElement, QZFraction};
use bcwitt_core::torified::{LClass, TorifiedClass};
use bcwitt_core::witt::{GhostVector, WittVector};
use bcwitt_core::zeta::{assembled_quotient_symbolic, f1_zeta, hw_quotient, hw_quotient_check, q_to_1_limit};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn qv(x: &BigInt) -> Q {
    Q::from_integer(x.clone())
}

// ---- 1 ----

const M_P2_L: [i64; 18] = [1, 2, 6, 10, 14, 15, 16, 16, 16, 16, 16, 16, 15, 14, 10, 6, 2, 1];
const M_P2_T: [u64; 18] = [
    192, 1632, 7468, 23370, 54320, 97643, 139008, 159082, 147653, 111606, 68678, 34230, 13665, 4284, 1020, 174,
    19, 1,
];

fn criterion_1() -> Check {
    // binomial expansion of Σ c_i (1+T)^i
    let mut oracle = vec![0i128; M_P2_L.len()];
    for (i, &c) in M_P2_L.iter().enumerate() {
        let mut binom = 1i128;
        for (k, slot) in oracle.iter_mut().enumerate().take(i + 1) {
            *slot += c as i128 * binom;
            binom = binom * (i - k) as i128 / (k as i128 + 1);
        }
    }
    ensure!(oracle.iter().zip(M_P2_T).all(|(a, b)| *a == b as i128), "oracle disagrees with the printed class");
    let t = LClass::from_coeffs(&M_P2_L).to_t().map_err(|e| e.to_string())?;
    ensure!(t == TorifiedClass::from_u64(&M_P2_T), "l_to_t gave {:?}", t.coeffs());
    for (m, want) in [(1u64, 864045u64), (2, 383699680), (3, 36177267945)] {
        let got = t.f1m_points(m);
        let direct: u128 = M_P2_T.iter().rev().fold(0u128, |acc, &a| acc * m as u128 + a as u128);
        ensure!(got == BigUint::from(want) && direct == want as u128, "points at m={m}: {got}");
    }
    ensure!(t.euler_characteristic() == BigUint::from(192u32), "euler characteristic");
    ensure!(t.to_l() == LClass::from_coeffs(&M_P2_L), "round trip to the L basis");
    Ok(())
}

// ---- 2 ----

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let naive = random_naive(&mut rng, 24, 8);
        let x = from_naive(&naive);
        for n in 1..=12u64 {
            let pi: Naive = (0..n).map(|j| (j, n)).map(|(a, b)| {
                let g = a.gcd(&b);
                ((a / g, b / g), 1)
            }).collect();
            ensure!(to_naive(&x.rho(n)) == naive_rho(&naive, n), "ρ̃_{n} vs naive");
            ensure!(to_naive(&x.sigma(n)) == naive_sigma(&naive, n), "σ_{n} vs naive");
            ensure!(x.rho(n).sigma(n) == x.scale(&BigInt::from(n)), "σ∘ρ̃ ≠ n at n={n}");
            ensure!(to_naive(&x.sigma(n).rho(n)) == naive_mul(&naive, &pi), "ρ̃∘σ ≠ ·nπ_n (oracle) at n={n}");
            ensure!(x.sigma(n).rho(n) == x.mul(&QZElement::pi_n_times_n(n)), "ρ̃∘σ ≠ ·nπ_n at n={n}");
        }
    }
    Ok(())
}

// ---- 3 ----

fn random_witt(rng: &mut impl Rng, trunc: usize) -> WittVector {
    WittVector::from_integers(&(0..trunc).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>()).unwrap()
}

fn frob(w: &WittVector, n: usize) -> Result<WittVector, String> {
    w.frobenius(n).map_err(|e| e.to_string())
}

fn criterion_3() -> Check {
    let trunc = 36;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = random_witt(&mut rng, trunc);
    for n in 1..=6usize {
        for m in 1..=6usize {
            let ff = frob(&frob(&x, m)?, n)?;
            ensure!(ff == frob(&x, n * m)?, "F_{n}F_{m} ≠ F_{}", n * m);
            ensure!(x.verschiebung(m).verschiebung(n) == x.verschiebung(n * m), "V_{n}V_{m} ≠ V_{}", n * m);
            if n.gcd(&m) == 1 {
                let lhs = frob(&x.verschiebung(m), n)?;
                let rhs = frob(&x, n)?.verschiebung(m);
                ensure!(lhs == rhs, "F_{n}V_{m} ≠ V_{m}F_{n}");
            }
        }
        let fv = frob(&x.verschiebung(n), n)?;
        ensure!(fv == x.times(n as i64).truncate(trunc / n), "F_{n}V_{n} ≠ {n}");
    }
    for _ in 0..100 {
        let (a, b) = (random_witt(&mut rng, trunc), random_witt(&mut rng, trunc));
        let (ga, gb) = (a.ghost(), b.ghost());
        ensure!(ga.values() == ghosts_from_series(&a.series()).as_slice(), "ghost vs logarithmic derivative");
        ensure!(a.add(&b).ghost() == ga.add(&gb), "ghost not additive");
        ensure!(a.mul(&b).ghost() == ga.mul(&gb), "ghost not multiplicative");
        ensure!(ga.unghost() == a, "ghost not injective");
        ensure!((a == b) == (ga == gb), "distinct vectors share ghosts");
    }
    Ok(())
}

// ---- 4 ----

fn criterion_4() -> Check {
    let trunc = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let random_endo = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(1..=3);
        let rows = random_imat(rng, d, 3);
        (rows.clone(), EndoObject::new(Matrix::from_int_rows(&rows).unwrap()))
    };
    for _ in 0..100 {
        let (ra, a) = random_endo(&mut rng);
        let (_, b) = random_endo(&mut rng);
        let (la, lb) = (a.l_map(), b.l_map());
        let traces: Vec<Q> = (1..=trunc as u64).map(|k| qv(&trace(&imat_pow(&imat(&ra), k)))).collect();
        ensure!(la.ghost(trunc).values() == traces.as_slice(), "ghosts of l_map are not the traces");
        ensure!(a.direct_sum(&b).l_map().ghost(trunc) == la.add(&lb).ghost(trunc), "⊕ does not go to +");
        ensure!(a.tensor(&b).l_map().ghost(trunc) == la.ghost(trunc).mul(&lb.ghost(trunc)), "⊗ does not go to ⋆");
        ensure!(
            a.tensor(&b).l_map().expand(trunc) == la.expand(trunc).mul(&lb.expand(trunc)),
            "⊗ does not go to the Witt product"
        );
        for n in 1..=5usize {
            let f = frob(&la.expand(trunc), n)?;
            ensure!(a.frobenius(n).l_map().ghost(trunc / n) == f.ghost(), "F_{n} does not commute");
            ensure!(a.verschiebung(n).l_map().ghost(trunc) == la.verschiebung(n).ghost(trunc), "V_{n} does not commute");
            ensure!(
                a.verschiebung(n).l_map().expand(trunc) == la.expand(trunc).verschiebung(n),
                "V_{n} does not commute with the series Verschiebung"
            );
        }
    }
    Ok(())
}

// ---- 5, 9 ----

/// All multisets of cyclotomic indices ≤ 12 with total degree ≤ `max_deg`.
fn cyclotomic_multisets(max_deg: u64) -> Vec<Vec<u64>> {
    fn rec(start: u64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for m in start..=12 {
            let d = totient(m);
            if d <= left {
                cur.push(m);
                rec(m, left - d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, max_deg, &mut Vec::new(), &mut out);
    out
}

fn charpoly_of(ms: &[u64]) -> Vec<i64> {
    ms.iter().fold(vec![1i64], |acc, &m| poly_mul_i64(&acc, &cyclotomic_oracle(m)))
}

fn criterion_5() -> Check {
    let n = 24;
    for ms in cyclotomic_multisets(6) {
        let rows = companion(&charpoly_of(&ms));
        let oracle = exp_from_ghosts(
            &(1..=n as u64).map(|k| qv(&lefschetz_oracle(&imat(&rows), k))).collect::<Vec<_>>(),
        );
        let f = ToralMap::from_rows(&rows).map_err(|e| e.to_string())?;
        let closed = f.lefschetz_zeta_closed().map_err(|e| format!("{ms:?}: {e}"))?;
        ensure!(closed.expand(n).series() == oracle, "closed form differs from the oracle for {ms:?}");
    }
    Ok(())
}

fn criterion_9() -> Check {
    for ms in cyclotomic_multisets(6) {
        let f = ToralMap::companion(&IntPolynomial::from_i64(&charpoly_of(&ms))).map_err(|e| e.to_string())?;
        let mut oracle = QZElement::zero();
        for &m in &ms {
            for j in (0..m).filter(|j| j.gcd(&m) == 1) {
                oracle = oracle.add(&QZElement::basis(QZFraction::new(j as i64, m).unwrap()));
            }
        }
        let chi = spectral_euler(f.matrix()).map_err(|e| e.to_string())?;
        ensure!(chi == oracle, "spectral Euler characteristic of {ms:?}");
        for n in 1..=6u64 {
            let p = spectral_euler(f.power(n).matrix()).map_err(|e| e.to_string())?;
            ensure!(p == chi.sigma(n), "σ_{n} compatibility for {ms:?}");
            let v = spectral_euler(f.verschiebung(n as usize).matrix()).map_err(|e| e.to_string())?;
            ensure!(v == chi.rho(n), "ρ̃_{n} compatibility for {ms:?}");
        }
    }
    Ok(())
}

// ---- 6 ----

fn random_class(rng: &mut impl Rng, max_deg: usize) -> TorifiedClass {
    let d = rng.gen_range(0..=max_deg);
    TorifiedClass::from_u64(&(0..=d).map(|_| rng.gen_range(0..=6)).collect::<Vec<_>>())
}

fn criterion_6() -> Check {
    let trunc = 12;
    for q in [2u64, 3, 5] {
        for k in 0..=4u32 {
            let want: Vec<Q> = (1..=trunc as u32)
                .map(|m| {
                    let qm = BigInt::from(q).pow(m);
                    qv(&Pow::pow((qm - 1u32) / (q - 1), k))
                })
                .collect();
            let got = hw_quotient(k, q, trunc).map_err(|e| e.to_string())?;
            ensure!(got.values() == want.as_slice(), "Witt quotient ghosts for q={q}, k={k}");
            let check = hw_quotient_check(k, q, trunc).map_err(|e| e.to_string())?;
            ensure!(check.values() == want.as_slice(), "Z_1 check for q={q}, k={k}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let c = random_class(&mut rng, 5);
        let lim = q_to_1_limit(&assembled_quotient_symbolic(&c, trunc).map_err(|e| e.to_string())?);
        ensure!(lim == f1_zeta(&c, trunc).ghost, "q → 1 limit for {:?}", c.coeffs());
        let points: Vec<Q> = (1..=trunc as i64)
            .map(|m| qv(&c.coeffs().iter().rev().fold(BigInt::from(0), |acc, a| acc * m + BigInt::from(a.clone()))))
            .collect();
        ensure!(lim.values() == points.as_slice(), "q → 1 limit vs point counts");
    }
    Ok(())
}

// ---- 7 ----

fn criterion_7() -> Check {
    let trunc = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (a, b) = (random_class(&mut rng, 4), random_class(&mut rng, 4));
        let (za, zb) = (f1_zeta(&a, trunc).ghost, f1_zeta(&b, trunc).ghost);
        ensure!(f1_zeta(&a.add(&b), trunc).ghost == za.add(&zb), "F₁ zeta not additive");
        ensure!(f1_zeta(&a.mul(&b), trunc).ghost == za.mul(&zb), "F₁ zeta not multiplicative");
        let z = f1_zeta(&a, trunc);
        ensure!(z.witt.series() == exp_from_ghosts(za.values()), "F₁ zeta series vs exp oracle");
    }
    for _ in 0..50 {
        let da = rng.gen_range(1..=3);
        let db = rng.gen_range(1..=3);
        let (ra, rb) = (random_imat(&mut rng, da, 2), random_imat(&mut rng, db, 2));
        let (f, g) = (ToralMap::from_rows(&ra).unwrap(), ToralMap::from_rows(&rb).unwrap());
        let (gf, gg) = (f.lefschetz_zeta_series(trunc).ghost(), g.lefschetz_zeta_series(trunc).ghost());
        let oracle = |r: &Vec<Vec<i64>>| -> GhostVector {
            GhostVector::from_integers((1..=trunc as u64).map(|k| lefschetz_oracle(&imat(r), k))).unwrap()
        };
        ensure!(gf == oracle(&ra) && gg == oracle(&rb), "Lefschetz ghosts vs determinant oracle");
        let u = torified_dynamical_zeta(&[f.clone(), g.clone()], trunc, DynamicalKind::Lefschetz)
            .map_err(|e| e.to_string())?;
        ensure!(u.ghost() == gf.add(&gg), "dynamical zeta not additive under ⊔");
        ensure!(f.product(&g).lefschetz_zeta_series(trunc).ghost() == gf.mul(&gg), "dynamical zeta not multiplicative under ×");
    }
    Ok(())
}

// ---- 8 ----

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut actions = 0usize;
    for level in 1..=8u64 {
        for lens in cycle_types(level, 12) {
            let size: usize = lens.iter().sum();
            let mut labels: Vec<usize> = (0..size).collect();
            for relabel in 0..2 {
                if relabel == 1 {
                    rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), &mut rng);
                }
                let a = CyclicAction::new(level, perm_with_cycles(&lens, &labels)).map_err(|e| e.to_string())?;
                actions += 1;
                for n in 1..=4 {
                    for k in 1..=32 {
                        let r = identity_checks(&a, n, k);
                        ensure!(r.periodic_sigma && r.periodic_verschiebung, "level {level} {lens:?} n={n} k={k}: {r:?}");
                    }
                }
            }
        }
    }
    ensure!(actions > 0, "no actions enumerated");
    for _ in 0..200 {
        let level = rng.gen_range(1..=8u64);
        let divs: Vec<usize> = (1..=level as usize).filter(|d| level as usize % d == 0).collect();
        let mut lens = Vec::new();
        let mut left = rng.gen_range(0..=12usize);
        while let Some(&d) = divs.iter().filter(|&&d| d <= left).nth(rng.gen_range(0..divs.len())) {
            lens.push(d);
            left -= d;
        }
        let size: usize = lens.iter().sum();
        let mut labels: Vec<usize> = (0..size).collect();
        rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), &mut rng);
        let a = CyclicAction::new(level, perm_with_cycles(&lens, &labels)).map_err(|e| e.to_string())?;
        let oracle = lens.iter().fold(QZElement::zero(), |acc, &d| {
            (0..d).fold(acc, |acc, j| acc.add(&QZElement::basis(QZFraction::new(j as i64, d as u64).unwrap())))
        });
        ensure!(a.euler_char() == oracle, "Euler characteristic vs orbit oracle");
        for n in 1..=4 {
            let r = identity_checks(&a, n, 1);
            ensure!(r.euler_sigma && r.euler_rho, "Euler intertwining at n={n}: {r:?}");
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check, Option<u64>); 9] = [
        (1, "M_P2(4,1) class conversion, point counts and Euler characteristic", criterion_1, Some(1)),
        (2, "Z[Q/Z] relations σ_n∘ρ̃_n = n and ρ̃_n∘σ_n = ·nπ_n", criterion_2, Some(5)),
        (3, "Witt F/V relations and the ghost ring map", criterion_3, Some(10)),
        (4, "endomorphism classes to rational Witt vectors", criterion_4, None),
        (5, "Lefschetz closed form vs determinant series", criterion_5, Some(30)),
        (6, "Hasse–Weil Witt quotients and the q → 1 limit", criterion_6, None),
        (7, "exponentiability of F₁ and dynamical zeta functions", criterion_7, None),
        (8, "equivariant periodic points and Euler intertwining", criterion_8, Some(60)),
        (9, "spectral Euler characteristic under powers and Verschiebung", criterion_9, None),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("exceeded {s} s")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("PASS criterion {id}: {name} ({:.2} s)", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {id}: {name} ({:.2} s): {e}", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
