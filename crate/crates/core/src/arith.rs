//! Number-theoretic primitives and cyclotomic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn moebius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Stirling numbers of the second kind from the alternating binomial sum
/// `S(k,r) = (1/r!) Σ_j (-1)^(r-j) C(r,j) j^k`.
pub fn stirling2(k: u64, r: u64) -> BigInt {
    let k32 = u32::try_from(k).expect("exponent too large");
    let sum = (0..=r).fold(BigInt::zero(), |acc, j| {
        let term = binomial(r, j) * num_traits::pow(BigInt::from(j), k32 as usize);
        if (r - j) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    let (q, rem) = sum.div_rem(&factorial(r));
    debug_assert!(rem.is_zero());
    q
}

/// `t^d - 1`
fn t_pow_minus_one(d: u64) -> IntPolynomial {
    let mut p = IntPolynomial::monomial(BigInt::one(), d as usize);
    p = &p - &IntPolynomial::one();
    p
}

/// The `m`-th cyclotomic polynomial `∏_{d|m} (t^d - 1)^μ(m/d)`.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1);
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in divisors(m) {
        match moebius(m / d) {
            1 => num = &num * &t_pow_minus_one(d),
            -1 => den = &den * &t_pow_minus_one(d),
            _ => {}
        }
    }
    num.checked_div(&den).expect("cyclotomic quotient is exact")
}

/// `Φ_m(1)` by direct evaluation.
pub fn cyclotomic_at_one(m: u64) -> BigInt {
    cyclotomic(m).eval(&BigInt::one())
}

/// Writes `±p` as a product of cyclotomic polynomials.
///
/// Returns the indices in ascending order, repeated per multiplicity. Trial division tries
/// each `Φ_d` with `φ(d)` at most the remaining degree, smallest `d` first.
pub fn cyclotomic_factor(p: &IntPolynomial) -> Result<Vec<u64>> {
    let lead = p.leading().ok_or(Error::NotQuasiUnipotent)?;
    if !lead.abs().is_one() {
        return Err(Error::NotQuasiUnipotent);
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut d = 1u64;
    loop {
        let deg = rest.degree().unwrap_or(0) as u64;
        if deg == 0 {
            break;
        }
        // φ(d) >= sqrt(d/2), so no index past 2·deg² can still fit.
        if d > 2 * deg * deg + 2 {
            return Err(Error::NotQuasiUnipotent);
        }
        if totient(d) <= deg {
            let phi = cyclotomic(d);
            while let Some(q) = rest.checked_div(&phi) {
                out.push(d);
                rest = q;
            }
        }
        d += 1;
    }
    debug_assert!(rest.coeff(0).abs().is_one());
    Ok(out)
}

/// `∏_i Φ_{m_i}`
pub fn cyclotomic_product(indices: &[u64]) -> IntPolynomial {
    indices
        .iter()
        .fold(IntPolynomial::one(), |acc, &m| &acc * &cyclotomic(m))
}

pub fn lcm_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1, |acc, x| acc.lcm(&x))
}
