//! The group ring `Z[Q/Z]` and the Bost–Connes maps on it.
//!
//! Elements are finite formal sums `Σ c_r e(r)` with `r ∈ Q/Z` and integer coefficients.
//! `σ_n` is the ring endomorphism `e(r) ↦ e(nr)`; `ρ̃_n` is the additive map sending `e(r)`
//! to the sum over the `n` solutions of `n r' = r`. Together they satisfy
//! `σ_n ∘ ρ̃_n = n` and `ρ̃_n ∘ σ_n = (·) · Σ_{nr=0} e(r)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::factorize;
use crate::error::{Error, Result};

/// An element of `Q/Z`, stored reduced in `[0, 1)`. Zero is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QZFraction {
    num: u64,
    den: u64,
}

impl QZFraction {
    pub const ZERO: QZFraction = QZFraction { num: 0, den: 1 };

    /// Canonicalises `num/den mod 1`.
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        let r = i128::from(num).rem_euclid(i128::from(den)) as u64;
        Ok(Self::reduced(r, den))
    }

    fn reduced(num: u64, den: u64) -> Self {
        let num = num % den;
        let g = num.gcd(&den);
        QZFraction { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `n · r mod 1`
    pub fn times(&self, n: u64) -> Self {
        let num = (u128::from(self.num) * u128::from(n) % u128::from(self.den)) as u64;
        Self::reduced(num, self.den)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let a = u128::from(self.num) * u128::from(den / self.den);
        let b = u128::from(other.num) * u128::from(den / other.den);
        Self::reduced(((a + b) % u128::from(den)) as u64, den)
    }

    /// The `n` solutions of `n·x = self`, i.e. `(self + j)/n` for `j = 0..n`.
    pub fn division_points(&self, n: u64) -> impl Iterator<Item = QZFraction> + '_ {
        let den = self.den * n;
        (0..n).map(move |j| Self::reduced(self.num + j * self.den, den))
    }
}

impl Ord for QZFraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.den, self.num).cmp(&(other.den, other.num))
    }
}

impl PartialOrd for QZFraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QZFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QZFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({self})")
    }
}

impl FromStr for QZFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| Error::invalid(format!("bad fraction {s:?}")))?;
        let d: u64 = d.parse().map_err(|_| Error::invalid(format!("bad fraction {s:?}")))?;
        QZFraction::new(n, d)
    }
}

/// A finite integer combination of elements `e(r)`, `r ∈ Q/Z`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QZElement {
    terms: BTreeMap<QZFraction, BigInt>,
}

impl QZElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e(0)`, the unit.
    pub fn one() -> Self {
        Self::basis(QZFraction::ZERO)
    }

    pub fn basis(r: QZFraction) -> Self {
        Self::from_terms([(r, BigInt::one())])
    }

    /// Sums the given terms, dropping zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (QZFraction, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (r, c) in terms {
            out.add_term(r, c);
        }
        out
    }

    fn add_term(&mut self, r: QZFraction, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(r).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, r: &QZFraction) -> BigInt {
        self.terms.get(r).cloned().unwrap_or_default()
    }

    /// Terms in canonical `(den, num)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&QZFraction, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(*r, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(r, c)| (*r, c * k)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (r, a) in &self.terms {
            for (s, b) in &other.terms {
                out.add_term(r.plus(s), a * b);
            }
        }
        out
    }

    /// Ring endomorphism `e(r) ↦ e(nr)`.
    pub fn sigma(&self, n: u64) -> Self {
        assert!(n >= 1, "sigma index must be positive");
        Self::from_terms(self.terms.iter().map(|(r, c)| (r.times(n), c.clone())))
    }

    /// Additive map `e(r) ↦ Σ_{nr' = r} e(r')`.
    pub fn rho(&self, n: u64) -> Self {
        assert!(n >= 1, "rho index must be positive");
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|(r, c)| r.division_points(n).map(move |s| (s, c.clone()))),
        )
    }

    /// `n·π_n = Σ_{nr = 0} e(r)`, the integral form of the idempotent `π_n`.
    pub fn pi_n_times_n(n: u64) -> Self {
        Self::one().rho(n)
    }

    /// Decomposes along `Q/Z = (Q/Z)_F × (Q/Z)^F` for a finite set of primes `F`.
    pub fn split(&self, primes: &PrimeSet) -> SplitQZElement {
        let mut out = SplitQZElement::default();
        for (r, c) in &self.terms {
            let key = primes.split_fraction(r);
            out.add_term(key, c.clone());
        }
        out
    }
}

impl fmt::Debug for QZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(r, c)| format!("{c}·e({r})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A nonempty finite set of distinct primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        primes.sort_unstable();
        primes.dedup();
        if primes.is_empty() {
            return Err(Error::invalid("prime set must be nonempty"));
        }
        if let Some(p) = primes.iter().find(|&&p| !crate::arith::is_prime(p)) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeSet(primes))
    }

    pub fn primes(&self) -> &[u64] {
        &self.0
    }

    /// Splits `d = d_F · d^F` into its F-smooth and F-coprime parts.
    pub fn split_denominator(&self, d: u64) -> (u64, u64) {
        factorize(d).into_iter().fold((1, 1), |(s, c), (p, e)| {
            let pe = p.pow(e);
            if self.0.contains(&p) {
                (s * pe, c)
            } else {
                (s, c * pe)
            }
        })
    }

    fn split_fraction(&self, r: &QZFraction) -> (QZFraction, QZFraction) {
        let (ds, dc) = self.split_denominator(r.den);
        // a/d = x/ds + y/dc  with  x ≡ a·dc⁻¹ (mod ds),  y ≡ a·ds⁻¹ (mod dc)
        let x = mul_mod(r.num, inverse_mod(dc, ds), ds);
        let y = mul_mod(r.num, inverse_mod(ds, dc), dc);
        (QZFraction::reduced(x, ds), QZFraction::reduced(y, dc))
    }

    pub fn is_smooth(&self, d: u64) -> bool {
        self.split_denominator(d).1 == 1
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = i128::from(a).extended_gcd(&i128::from(m));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(i128::from(m)) as u64
}

/// An element of `Z[(Q/Z)_F] ⊗ Z[(Q/Z)^F]`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SplitQZElement {
    terms: BTreeMap<(QZFraction, QZFraction), BigInt>,
}

impl SplitQZElement {
    /// Validates that every key has an F-smooth first and F-coprime second denominator.
    pub fn from_terms(
        primes: &PrimeSet,
        terms: impl IntoIterator<Item = ((QZFraction, QZFraction), BigInt)>,
    ) -> Result<Self> {
        let mut out = Self::default();
        for ((a, b), c) in terms {
            if !primes.is_smooth(a.den) || primes.split_denominator(b.den).0 != 1 {
                return Err(Error::invalid(format!("({a}, {b}) is not an F-split pair")));
            }
            out.add_term((a, b), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, key: (QZFraction, QZFraction), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(QZFraction, QZFraction), &BigInt)> {
        self.terms.iter()
    }

    /// Tensor-product multiplication.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                out.add_term((a.plus(x), b.plus(y)), c * d);
            }
        }
        out
    }

    pub fn unsplit(&self) -> QZElement {
        QZElement::from_terms(self.terms.iter().map(|((a, b), c)| (a.plus(b), c.clone())))
    }
}

impl fmt::Debug for SplitQZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b), c)| format!("{c}·e({a})⊗e({b})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
