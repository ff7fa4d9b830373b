//! Big Witt vectors `W(R) = 1 + tR[[t]]` over Q.
//!
//! Witt addition is the product of power series and Witt multiplication is determined by
//! `[a] ⋆ [b] = [ab]` for Teichmüller lifts `[a] = (1 - at)⁻¹`. Both are computed through the
//! ghost map `P ↦ t d/dt log P = Σ N_m t^m`, which turns them into pointwise operations;
//! the conversion in either direction is the Newton recursion
//! `m·c_m = Σ_{j=1}^{m} N_j c_{m-j}`.
//!
//! Binary operations on truncated vectors work at the smaller of the two truncations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};
use crate::Rational;

fn rat(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Truncated series `1 + c_1 t + … + c_N t^N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    coeffs: Vec<Rational>,
}

/// Ghost components `N_1, …, N_N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GhostVector {
    values: Vec<Rational>,
}

impl WittVector {
    /// From `c_1..c_N`; the constant term 1 is implicit.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        Ok(WittVector { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// From a full series `c_0..c_N`, which must start with 1.
    pub fn from_series(series: &[Rational]) -> Result<Self> {
        match series.split_first() {
            Some((c0, rest)) if c0.is_one() => Self::new(rest.to_vec()),
            Some(_) => Err(Error::invalid("constant term must be 1")),
            None => Err(Error::invalid("empty series")),
        }
    }

    /// The additive identity, the constant series 1.
    pub fn zero(trunc: usize) -> Self {
        WittVector { coeffs: vec![Rational::zero(); trunc.max(1)] }
    }

    /// The multiplicative identity `[1] = 1/(1 - t)`.
    pub fn one(trunc: usize) -> Self {
        Self::teichmuller(&Rational::one(), trunc)
    }

    /// `[a] = (1 - at)⁻¹`
    pub fn teichmuller(a: &Rational, trunc: usize) -> Self {
        let trunc = trunc.max(1);
        let mut coeffs = Vec::with_capacity(trunc);
        let mut p = Rational::one();
        for _ in 0..trunc {
            p *= a;
            coeffs.push(p.clone());
        }
        WittVector { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_1..c_N`
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `1, c_1, …, c_N`
    pub fn series(&self) -> Vec<Rational> {
        std::iter::once(Rational::one()).chain(self.coeffs.iter().cloned()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc >= 1 && trunc <= self.truncation());
        WittVector { coeffs: self.coeffs[..trunc].to_vec() }
    }

    pub fn ghost(&self) -> GhostVector {
        let c = self.series();
        let n = self.truncation();
        let mut ghost: Vec<Rational> = Vec::with_capacity(n);
        for m in 1..=n {
            let mut v = rat(m) * &c[m];
            for j in 1..m {
                v -= &ghost[j - 1] * &c[m - j];
            }
            ghost.push(v);
        }
        GhostVector { values: ghost }
    }

    /// Witt sum: the product of the series.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let prod = series_mul(&self.series(), &other.series(), n);
        WittVector { coeffs: prod[1..].to_vec() }
    }

    /// Additive inverse: the reciprocal series.
    pub fn neg(&self) -> Self {
        let inv = series_inverse(&self.series(), self.truncation());
        WittVector { coeffs: inv[1..].to_vec() }
    }

    /// Witt difference: the series ratio.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Witt product, computed pointwise on ghosts.
    pub fn mul(&self, other: &Self) -> Self {
        self.ghost().mul(&other.ghost()).unghost()
    }

    /// `k`-fold Witt sum of `self`, i.e. the series raised to the power `k`.
    pub fn times(&self, k: i64) -> Self {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let series = series_pow(&base.series(), k.unsigned_abs(), self.truncation());
        WittVector { coeffs: series[1..].to_vec() }
    }

    /// Frobenius `F_n`: `gh(F_n w)_m = gh(w)_{nm}`, truncation `⌊N/n⌋`.
    pub fn frobenius(&self, n: usize) -> Result<Self> {
        assert!(n >= 1);
        let trunc = self.truncation() / n;
        if trunc == 0 {
            return Err(Error::TruncationTooSmall { trunc: self.truncation(), n });
        }
        let g = self.ghost();
        let values = (1..=trunc).map(|m| g.values[n * m - 1].clone()).collect();
        Ok(GhostVector { values }.unghost())
    }

    /// Verschiebung `V_n`: `P(t) ↦ P(t^n)`, same truncation.
    pub fn verschiebung(&self, n: usize) -> Self {
        assert!(n >= 1);
        let coeffs = (1..=self.truncation())
            .map(|k| if k % n == 0 { self.coeffs[k / n - 1].clone() } else { Rational::zero() })
            .collect();
        WittVector { coeffs }
    }

    /// Witt quotient `S` with `S ⋆ Q = P`, by ghost division.
    pub fn witt_div(&self, divisor: &Self) -> Result<Self> {
        self.ghost().checked_div(&divisor.ghost()).map(|g| g.unghost())
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.series().iter().map(ToString::to_string).collect();
        write!(f, "W[{}]", s.join(", "))
    }
}

impl GhostVector {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        Ok(GhostVector { values })
    }

    pub fn from_integers(values: impl IntoIterator<Item = BigInt>) -> Result<Self> {
        Self::new(values.into_iter().map(Rational::from_integer).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn truncation(&self) -> usize {
        self.values.len()
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(Rational::is_integer)
    }

    /// Integer ghosts, or `None` if any component is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    pub fn unghost(&self) -> WittVector {
        let n = self.truncation();
        let mut c: Vec<Rational> = Vec::with_capacity(n + 1);
        c.push(Rational::one());
        for m in 1..=n {
            let s: Rational = (1..=m).map(|j| &self.values[j - 1] * &c[m - j]).sum();
            c.push(s / rat(m));
        }
        WittVector { coeffs: c.split_off(1) }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        GhostVector { values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GhostVector { values: self.values.iter().map(|a| a * k).collect() }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| {
                if b.is_zero() {
                    Err(Error::NotDivisible(format!("ghost component {} of divisor is zero", i + 1)))
                } else {
                    Ok(a / b)
                }
            })
            .collect::<Result<_>>()?;
        Ok(GhostVector { values })
    }
}

impl fmt::Debug for GhostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "gh({})", s.join(", "))
    }
}

/// Ghost components that are polynomials in a formal variable `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicGhost {
    values: Vec<IntPolynomial>,
}

impl SymbolicGhost {
    pub fn new(values: Vec<IntPolynomial>) -> Self {
        SymbolicGhost { values }
    }

    pub fn values(&self) -> &[IntPolynomial] {
        &self.values
    }

    pub fn truncation(&self) -> usize {
        self.values.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        SymbolicGhost { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        SymbolicGhost { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    /// Componentwise exact division in `Z[q]`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| {
                a.checked_div(b).ok_or_else(|| {
                    Error::NotDivisible(format!("ghost component {} is not divisible in Z[q]", i + 1))
                })
            })
            .collect::<Result<_>>()?;
        Ok(SymbolicGhost { values })
    }

    pub fn eval(&self, q: &BigInt) -> GhostVector {
        GhostVector { values: self.values.iter().map(|p| Rational::from_integer(p.eval(q))).collect() }
    }

    /// The `q → 1` limit, which for polynomial ghosts is evaluation at 1.
    pub fn q_to_1_limit(&self) -> GhostVector {
        self.eval(&BigInt::one())
    }
}

/// A rational Witt vector `num/den` with both constant terms 1 and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalWitt {
    num: RatPolynomial,
    den: RatPolynomial,
}

impl RationalWitt {
    pub fn new(num: RatPolynomial, den: RatPolynomial) -> Result<Self> {
        if !num.coeff(0).is_one() || !den.coeff(0).is_one() {
            return Err(Error::invalid("rational Witt vector needs constant terms equal to 1"));
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_int(num: &IntPolynomial, den: &IntPolynomial) -> Result<Self> {
        Self::new(num.to_rational(), den.to_rational())
    }

    /// Cancels the common factor; assumes both constant terms are 1.
    fn reduced(num: RatPolynomial, den: RatPolynomial) -> Self {
        if num.degree().unwrap_or(0) == 0 || den.degree().unwrap_or(0) == 0 {
            return RationalWitt { num, den };
        }
        let g = num.gcd(&den);
        if g.degree().unwrap_or(0) == 0 {
            return RationalWitt { num, den };
        }
        let g = g.normalize_constant();
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        RationalWitt { num: n, den: d }
    }

    /// Skips the gcd; the caller guarantees coprimality and unit constant terms.
    pub(crate) fn from_coprime(num: RatPolynomial, den: RatPolynomial) -> Self {
        debug_assert!(num.coeff(0).is_one() && den.coeff(0).is_one());
        RationalWitt { num, den }
    }

    pub fn one() -> Self {
        RationalWitt { num: RatPolynomial::one(), den: RatPolynomial::one() }
    }

    /// `1/(1 - at)`
    pub fn teichmuller(a: &Rational) -> Self {
        let den = RatPolynomial::new(vec![Rational::one(), -a.clone()]);
        RationalWitt { num: RatPolynomial::one(), den }
    }

    /// `1/p` for a polynomial with constant term 1.
    pub fn inverse_of(p: RatPolynomial) -> Result<Self> {
        Self::new(RatPolynomial::one(), p)
    }

    pub fn num(&self) -> &RatPolynomial {
        &self.num
    }

    pub fn den(&self) -> &RatPolynomial {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.degree() == Some(0) && self.den.degree() == Some(0)
    }

    /// Series expansion up to `t^trunc`.
    pub fn expand(&self, trunc: usize) -> WittVector {
        let trunc = trunc.max(1);
        let inv = series_inverse(&pad(self.den.coeffs(), trunc), trunc);
        let s = series_mul(&pad(self.num.coeffs(), trunc), &inv, trunc);
        WittVector { coeffs: s[1..].to_vec() }
    }

    pub fn ghost(&self, trunc: usize) -> GhostVector {
        self.expand(trunc).ghost()
    }

    /// Witt sum: product of rational functions.
    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        RationalWitt { num: self.den.clone(), den: self.num.clone() }
    }

    /// Witt difference `p -_W q`, the series ratio `p/q`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `P(t) ↦ P(t^n)`
    pub fn verschiebung(&self, n: usize) -> Self {
        RationalWitt { num: self.num.substitute_power(n), den: self.den.substitute_power(n) }
    }

    pub fn to_integer_parts(&self) -> Option<(IntPolynomial, IntPolynomial)> {
        Some((self.num.to_integer()?, self.den.to_integer()?))
    }
}

impl fmt::Debug for RationalWitt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Exact quotient of two rational Witt vectors as power series.
///
/// The result is again a ratio of polynomials with constant term 1, so this never fails on
/// valid inputs; it is the Witt-subtraction reading of a quotient.
pub fn rational_div(p: &RationalWitt, q: &RationalWitt) -> RationalWitt {
    p.sub(q)
}

fn pad(c: &[Rational], trunc: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = c.iter().take(trunc + 1).cloned().collect();
    v.resize(trunc + 1, Rational::zero());
    v
}

/// Product of two series `c_0..` truncated to `t^n`.
pub(crate) fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reciprocal of a series with constant term 1, truncated to `t^n`.
pub(crate) fn series_inverse(a: &[Rational], n: usize) -> Vec<Rational> {
    debug_assert!(a[0].is_one());
    let mut out = vec![Rational::zero(); n + 1];
    out[0] = Rational::one();
    for k in 1..=n {
        let s: Rational = (1..=k.min(a.len() - 1)).map(|j| &a[j] * &out[k - j]).sum();
        out[k] = -s;
    }
    out
}

pub(crate) fn series_pow(a: &[Rational], mut e: u64, n: usize) -> Vec<Rational> {
    let mut acc = pad(&[Rational::one()], n);
    let mut base = pad(a, n);
    while e > 0 {
        if e & 1 == 1 {
            acc = series_mul(&acc, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base, n);
        }
    }
    acc
}
