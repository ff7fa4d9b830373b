//! Grothendieck classes of torified varieties.
//!
//! A torified class is `Σ a_k T^k` with `T = [G_m] = L - 1` and nonnegative `a_k`, one term
//! per torus of dimension `k` in the decomposition. The same class in the Lefschetz basis is
//! an [`LClass`], which also carries the half-integer Tate twists of virtual motives.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::binomial;
use crate::error::{Error, Result};

/// `Σ a_k T^k` with nonnegative coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TorifiedClass {
    a: Vec<BigUint>,
}

impl TorifiedClass {
    pub fn new(mut a: Vec<BigUint>) -> Self {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        TorifiedClass { a }
    }

    pub fn from_u64(a: &[u64]) -> Self {
        Self::new(a.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The class of a point.
    pub fn one() -> Self {
        Self::from_u64(&[1])
    }

    /// `T^k`, the class of a `k`-dimensional split torus.
    pub fn torus(k: usize) -> Self {
        let mut a = vec![BigUint::zero(); k + 1];
        a[k] = BigUint::one();
        TorifiedClass { a }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.a
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.a.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.a.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.a.len().max(other.a.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigUint::zero(); self.a.len() + other.a.len() - 1];
        for (i, x) in self.a.iter().enumerate() {
            for (j, y) in other.a.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, n: &BigUint) -> Self {
        Self::new(self.a.iter().map(|x| x * n).collect())
    }

    /// `a_0`, the number of zero-dimensional tori.
    pub fn euler_characteristic(&self) -> BigUint {
        self.coeff(0)
    }

    /// Points over `F_{1^m}`: `Σ a_k m^k`.
    pub fn f1m_points(&self, m: u64) -> BigUint {
        assert!(m >= 1, "m must be positive");
        let m = BigUint::from(m);
        self.a.iter().rev().fold(BigUint::zero(), |acc, c| acc * &m + c)
    }

    /// Substitutes `T = L - 1`.
    pub fn to_l(&self) -> LClass {
        let mut c: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (k, a) in self.a.iter().enumerate() {
            let a = BigInt::from(a.clone());
            for j in 0..=k {
                let term = binomial(k as u64, j as u64) * &a;
                let term = if (k - j) % 2 == 0 { term } else { -term };
                *c.entry(2 * j as i64).or_default() += term;
            }
        }
        LClass::from_doubled(c)
    }
}

impl fmt::Debug for TorifiedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}·T^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A Laurent polynomial in `L^{1/2}`. Exponents are stored doubled.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LClass {
    c: BTreeMap<i64, BigInt>,
}

impl LClass {
    /// From a map `2·exponent → coefficient`; zero coefficients are dropped.
    pub fn from_doubled(c: BTreeMap<i64, BigInt>) -> Self {
        LClass { c: c.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// `Σ c_k L^k` for integer exponents `k = 0, 1, …`.
    pub fn from_coeffs(c: &[i64]) -> Self {
        Self::from_doubled(
            c.iter().enumerate().map(|(k, &v)| (2 * k as i64, BigInt::from(v))).collect(),
        )
    }

    /// Terms as `(2·exponent, coefficient)`, ascending.
    pub fn doubled_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.c.iter().map(|(e, v)| (*e, v))
    }

    pub fn coeff_doubled(&self, e2: i64) -> BigInt {
        self.c.get(&e2).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn has_half_twists(&self) -> bool {
        self.c.keys().any(|e| e % 2 != 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.c.clone();
        for (e, v) in &other.c {
            *c.entry(*e).or_default() += v;
        }
        Self::from_doubled(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, v) in &self.c {
            for (f, w) in &other.c {
                *c.entry(e + f).or_default() += v * w;
            }
        }
        Self::from_doubled(c)
    }

    /// Substitutes `L = T + 1`; fails when a `T`-coefficient comes out negative.
    pub fn to_t(&self) -> Result<TorifiedClass> {
        if self.has_half_twists() {
            return Err(Error::HalfTwistPresent);
        }
        if self.c.keys().any(|&e| e < 0) {
            return Err(Error::NotEffectivelyTorified);
        }
        let deg = self.c.keys().next_back().map_or(0, |&e| (e / 2) as usize);
        let mut t = vec![BigInt::zero(); deg + 1];
        for (e, v) in &self.c {
            let k = (e / 2) as u64;
            for j in 0..=k {
                t[j as usize] += binomial(k, j) * v;
            }
        }
        if t.iter().any(Signed::is_negative) {
            return Err(Error::NotEffectivelyTorified);
        }
        Ok(TorifiedClass::new(t.into_iter().map(|x| x.to_biguint().unwrap()).collect()))
    }

    /// `L^{-n/2}·[X]`, the virtual motive of a class of dimension `n`.
    pub fn virtual_motive(&self, n: u64) -> Result<Self> {
        if self.has_half_twists() {
            return Err(Error::HalfTwistPresent);
        }
        let shift = i64::try_from(n).map_err(|_| Error::invalid("dimension too large"))?;
        Ok(LClass { c: self.c.iter().map(|(e, v)| (e - shift, v.clone())).collect() })
    }
}

impl fmt::Debug for LClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.c.iter().map(|(e, v)| format!("{v}·L^{}", half_exponent_string(*e))).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Renders a doubled exponent as `"k"` or `"k/2"`.
pub fn half_exponent_string(e2: i64) -> String {
    if e2 % 2 == 0 {
        (e2 / 2).to_string()
    } else {
        format!("{e2}/2")
    }
}

/// Parses `"k"` or `"k/2"` into a doubled exponent.
pub fn parse_half_exponent(s: &str) -> Result<i64> {
    let bad = || Error::invalid(format!("bad exponent {s:?}"));
    match s.trim().split_once('/') {
        None => s.trim().parse::<i64>().map(|k| 2 * k).map_err(|_| bad()),
        Some((n, "2")) => n.trim().parse::<i64>().map_err(|_| bad()),
        Some((n, "1")) => n.trim().parse::<i64>().map(|k| 2 * k).map_err(|_| bad()),
        Some(_) => Err(bad()),
    }
}

/// Assembles `[X] = Σ [Z_i]·L^{d_i}` from a Białynicki-Birula decomposition, in the T-basis.
///
/// Each affine fibre `A^{d}` contributes `L^d = (1 + T)^d`, which has nonnegative coefficients,
/// so the result is again torified.
pub fn bb_assemble(pieces: &[(TorifiedClass, u32)]) -> TorifiedClass {
    let affine_line = TorifiedClass::from_u64(&[1, 1]);
    pieces.iter().fold(TorifiedClass::zero(), |acc, (z, d)| {
        let cell = (0..*d).fold(TorifiedClass::one(), |p, _| p.mul(&affine_line));
        acc.add(&z.mul(&cell))
    })
}

/// A torified class together with the level `N` through which its `Ẑ`-action factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeveledClass {
    pub cls: TorifiedClass,
    level: u64,
}

impl LeveledClass {
    pub fn new(cls: TorifiedClass, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        Ok(LeveledClass { cls, level })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Precomposing the action with `σ_n` leaves the class and level unchanged.
    pub fn bc_sigma(&self, n: u64) -> Self {
        assert!(n >= 1);
        self.clone()
    }

    /// Product with `Z_n` carrying the Verschiebung action: class times `n`, level times `n`.
    pub fn bc_rho(&self, n: u64) -> Self {
        assert!(n >= 1);
        LeveledClass { cls: self.cls.scale(&BigUint::from(n)), level: self.level * n }
    }
}
