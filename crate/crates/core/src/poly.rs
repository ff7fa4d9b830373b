//! Dense univariate polynomials, coefficients stored constant term first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Polynomial<BigInt>;
pub type RatPolynomial = Polynomial<Rational>;

impl<T> Polynomial<T>
where
    T: Clone + Zero + One + PartialEq,
{
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Substitutes `t ↦ t^n`.
    pub fn substitute_power(&self, n: usize) -> Self {
        assert!(n >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product truncated modulo `t^(n+1)`.
    pub fn mul_trunc(&self, other: &Self, n: usize) -> Self {
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Reversed coefficient list `t^deg · p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }
}

impl<'a, T> Add<&'a Polynomial<T>> for &'a Polynomial<T>
where
    T: Clone + Zero + One + PartialEq,
{
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, T> Sub<&'a Polynomial<T>> for &'a Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Sub<Output = T>,
{
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, T> Mul<&'a Polynomial<T>> for &'a Polynomial<T>
where
    T: Clone + Zero + One + PartialEq,
{
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T> Neg for &Polynomial<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: fmt::Display + Zero> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: fmt::Display + Zero> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPolynomial {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Exact quotient over Z, or `None` when `divisor` does not divide `self`.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_integral(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division that only succeeds while every step stays integral.
    fn div_rem_integral(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        let sign = if self.leading().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        Self::new(self.coeffs.iter().map(|c| c / &g * &sign).collect())
    }
}

impl RatPolynomial {
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor over Q (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Returns `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    /// Scales so that the constant term is 1. Panics on a zero constant term.
    pub fn normalize_constant(&self) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "constant term must be nonzero");
        self.scale(&c0.recip())
    }
}
