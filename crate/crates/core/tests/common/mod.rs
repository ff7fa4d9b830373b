//! Independent oracles and generators shared by the integration suites.
//!
//! Nothing here calls the library routine it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use bcwitt_core::qz::{QZElement, QZFraction};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

// ---- Z[Q/Z] as a plain map keyed by reduced (num, den) ----

pub type Naive = BTreeMap<(u64, u64), i64>;

fn reduce(num: i128, den: u64) -> (u64, u64) {
    let d = den as i128;
    let n = num.rem_euclid(d);
    let g = (n as u64).gcd(&den);
    if n == 0 {
        (0, 1)
    } else {
        (n as u64 / g, den / g)
    }
}

fn bump(m: &mut Naive, key: (u64, u64), c: i64) {
    let e = m.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        m.remove(&key);
    }
}

pub fn naive_sigma(x: &Naive, n: u64) -> Naive {
    let mut out = Naive::new();
    for (&(a, b), &c) in x {
        bump(&mut out, reduce(a as i128 * n as i128, b), c);
    }
    out
}

pub fn naive_rho(x: &Naive, n: u64) -> Naive {
    let mut out = Naive::new();
    for (&(a, b), &c) in x {
        // (a/b + j)/n = (a + j·b)/(n·b)
        for j in 0..n {
            bump(&mut out, reduce(a as i128 + j as i128 * b as i128, n * b), c);
        }
    }
    out
}

pub fn naive_mul(x: &Naive, y: &Naive) -> Naive {
    let mut out = Naive::new();
    for (&(a, b), &c) in x {
        for (&(u, v), &d) in y {
            let l = b.lcm(&v);
            bump(&mut out, reduce(a as i128 * (l / b) as i128 + u as i128 * (l / v) as i128, l), c * d);
        }
    }
    out
}

pub fn to_naive(x: &QZElement) -> Naive {
    x.terms()
        .map(|(r, c)| ((r.num(), r.den()), i64::try_from(c).expect("small coefficient")))
        .collect()
}

pub fn from_naive(x: &Naive) -> QZElement {
    QZElement::from_terms(
        x.iter().map(|(&(a, b), &c)| (QZFraction::new(a as i64, b).unwrap(), BigInt::from(c))),
    )
}

pub fn random_naive(rng: &mut impl Rng, max_den: u64, terms: usize) -> Naive {
    let mut out = Naive::new();
    for _ in 0..rng.gen_range(0..=terms) {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(0..den);
        bump(&mut out, reduce(num as i128, den), rng.gen_range(-5..=5));
    }
    out
}

// ---- power series over Q ----

/// `exp(Σ_{m≥1} g_m t^m / m)` to order `n`, via `m·c_m = Σ_{j=1..m} g_j c_{m-j}`.
pub fn exp_from_ghosts(g: &[Q]) -> Vec<Q> {
    let n = g.len();
    let mut c = vec![Q::zero(); n + 1];
    c[0] = Q::one();
    for m in 1..=n {
        let mut s = Q::zero();
        for j in 1..=m {
            s += &g[j - 1] * &c[m - j];
        }
        c[m] = s / Q::from_integer(BigInt::from(m));
    }
    c
}

/// Ghosts `g_m` with `t·f'/f = Σ g_m t^m`, computed from the logarithmic derivative.
pub fn ghosts_from_series(f: &[Q]) -> Vec<Q> {
    let n = f.len() - 1;
    assert!(f[0].is_one());
    // f·h = t·f' where h = Σ g_m t^m
    let mut h = vec![Q::zero(); n + 1];
    for m in 1..=n {
        let mut s = Q::from_integer(BigInt::from(m)) * &f[m];
        for j in 1..m {
            s -= &h[j] * &f[m - j];
        }
        h[m] = s;
    }
    h[1..].to_vec()
}

pub fn poly_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Series of `num/den` to order `n`, `den[0] = 1`.
pub fn rational_series(num: &[Q], den: &[Q], n: usize) -> Vec<Q> {
    assert!(den[0].is_one());
    let mut out = vec![Q::zero(); n + 1];
    for m in 0..=n {
        let mut s = num.get(m).cloned().unwrap_or_else(Q::zero);
        for j in 1..=m.min(den.len() - 1) {
            s -= &den[j] * &out[m - j];
        }
        out[m] = s;
    }
    out
}

/// Ghosts of `∏_d (1 - a_d t^d)^{-1}`: `g_m = Σ_{d|m} d·a_d^{m/d}`.
pub fn product_form_ghosts(a: &[i64], n: usize) -> Vec<Q> {
    (1..=n)
        .map(|m| {
            let mut s = BigInt::zero();
            for (i, &ad) in a.iter().enumerate() {
                let d = i + 1;
                if m % d == 0 {
                    s += BigInt::from(d) * num_traits::pow(BigInt::from(ad), m / d);
                }
            }
            Q::from_integer(s)
        })
        .collect()
}

/// Series of `∏_d (1 - a_d t^d)^{-1}` to order `n`, by repeated geometric-series products.
pub fn product_form_series(a: &[i64], n: usize) -> Vec<Q> {
    let mut acc = vec![Q::zero(); n + 1];
    acc[0] = Q::one();
    for (i, &ad) in a.iter().enumerate() {
        let d = i + 1;
        let mut geo = vec![Q::zero(); n + 1];
        let mut p = BigInt::one();
        for k in 0..=n / d {
            geo[k * d] = Q::from_integer(p.clone());
            p *= ad;
        }
        acc = poly_mul(&acc, &geo, n);
    }
    acc
}

// ---- integer matrices ----

pub type IMat = Vec<Vec<BigInt>>;

pub fn imat(rows: &[Vec<i64>]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

pub fn imat_pow(a: &IMat, e: u64) -> IMat {
    let n = a.len();
    let mut out: IMat = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    for _ in 0..e {
        out = imat_mul(&out, a);
    }
    out
}

/// Fraction-free Bareiss determinant.
pub fn bareiss_det(m: &IMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(I - M^n)`.
pub fn lefschetz_oracle(m: &IMat, n: u64) -> BigInt {
    let p = imat_pow(m, n);
    let d = m.len();
    let a: IMat = (0..d)
        .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64) - &p[i][j]).collect())
        .collect();
    bareiss_det(&a)
}

pub fn trace(m: &IMat) -> BigInt {
    (0..m.len()).map(|i| m[i][i].clone()).sum()
}

/// Companion matrix of a monic integer polynomial given low-to-high.
pub fn companion(p: &[i64]) -> Vec<Vec<i64>> {
    let d = p.len() - 1;
    assert_eq!(p[d], 1);
    (0..d)
        .map(|i| (0..d).map(|j| if j == d - 1 { -p[i] } else { (i == j + 1) as i64 }).collect())
        .collect()
}

pub fn random_imat(rng: &mut impl Rng, dim: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

/// A unimodular integer matrix, as a product of elementary moves.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut u: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
    let mut inv = u.clone();
    if dim < 2 {
        return (u, inv);
    }
    for _ in 0..4 {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        while j == i {
            j = rng.gen_range(0..dim);
        }
        let c = rng.gen_range(-1..=1i64);
        // u ← u·E, E = I + c·e_ij; inv ← E⁻¹·inv
        for row in u.iter_mut() {
            row[j] += c * row[i];
        }
        let ri = inv[j].clone();
        for (k, x) in inv[i].iter_mut().enumerate() {
            *x -= c * ri[k];
        }
    }
    (u, inv)
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

// ---- cyclotomic polynomials by root-of-unity-free recursion ----

/// `Φ_m` low-to-high via `t^m - 1 = ∏_{d|m} Φ_d`, by exact long division.
pub fn cyclotomic_oracle(m: u64) -> Vec<i64> {
    let mut p: Vec<i64> = vec![0; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = long_div(&p, &cyclotomic_oracle(d));
        }
    }
    p
}

fn long_div(p: &[i64], d: &[i64]) -> Vec<i64> {
    let mut r = p.to_vec();
    let dd = d.len() - 1;
    let mut out = vec![0; r.len() - dd];
    for i in (0..out.len()).rev() {
        let c = r[i + dd];
        out[i] = c;
        for (j, &x) in d.iter().enumerate() {
            r[i + j] -= c * x;
        }
    }
    assert!(r.iter().all(|&x| x == 0));
    out
}

pub fn poly_mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ---- torified classes ----

/// `Σ a_k x^k` for a coefficient list.
pub fn eval_uint(a: &[BigUint], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + BigInt::from(c.clone()))
}

pub fn eval_int(a: &[i64], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, &c| acc * x + BigInt::from(c))
}

pub fn is_nonneg(x: &BigInt) -> bool {
    !x.is_negative()
}

/// All multisets of cycle lengths with sum ≤ `max_size`, each length dividing `level`.
pub fn cycle_types(level: u64, max_size: usize) -> Vec<Vec<usize>> {
    let parts: Vec<usize> = (1..=level as usize).filter(|d| level as usize % d == 0).collect();
    let mut out = Vec::new();
    fn rec(parts: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in start..parts.len() {
            if parts[i] <= left {
                cur.push(parts[i]);
                rec(parts, i, left - parts[i], cur, out);
                cur.pop();
            }
        }
    }
    rec(&parts, 0, max_size, &mut Vec::new(), &mut out);
    out
}

/// A permutation with the given cycle lengths, with points relabelled by `labels`.
pub fn perm_with_cycles(lengths: &[usize], labels: &[usize]) -> Vec<usize> {
    let n: usize = lengths.iter().sum();
    assert_eq!(labels.len(), n);
    let mut perm = vec![0; n];
    let mut start = 0;
    for &l in lengths {
        for i in 0..l {
            perm[labels[start + i]] = labels[start + (i + 1) % l];
        }
        start += l;
    }
    perm
}
