//! Lefschetz and Artin–Mazur zeta functions of toral endomorphisms.
//!
//! A map of the real torus `T^d` is determined up to homotopy by its action `M` on `H_1 = Z^d`.
//! The homology of `T^d` is the exterior algebra on `H_1`, so the Lefschetz number of `f^n`
//! is `Σ_k (-1)^k tr Λ^k M^n = det(I - M^n)`.
//!
//! When the characteristic polynomial of `M` is a product `Φ_{m_1}⋯Φ_{m_N}` the zeta function
//! has the closed form `∏_{d | m} (1 - t^d)^{-s_d}` with `m = lcm(m_i)`,
//! `s_d = (1/d) Σ_{k|d} F_k μ(d/k)` and
//! `F_k = ∏_i Φ_{m_i/(k,m_i)}(1)^{φ(m_i)/φ(m_i/(k,m_i))}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{cyclotomic_at_one, cyclotomic_factor, divisors, lcm_all, moebius, totient};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::IntPolynomial;
use crate::qz::{QZElement, QZFraction};
use crate::witt::{series_inverse, series_mul, series_pow, GhostVector, WittVector};
use crate::Rational;

/// A toral endomorphism, given by its integer matrix on `H_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToralMap {
    matrix: Matrix,
}

impl ToralMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.dim() == 0 {
            return Err(Error::invalid("toral map needs dimension at least 1"));
        }
        if !matrix.is_integral() {
            return Err(Error::invalid("toral map matrix must be integral"));
        }
        Ok(ToralMap { matrix })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(Matrix::from_int_rows(rows)?)
    }

    /// Companion matrix of a monic integer polynomial of positive degree.
    pub fn companion(p: &IntPolynomial) -> Result<Self> {
        let d = p.degree().filter(|&d| d > 0).ok_or_else(|| Error::invalid("degree must be positive"))?;
        if !p.leading().unwrap().is_one() {
            return Err(Error::invalid("companion polynomial must be monic"));
        }
        let mut rows = vec![vec![Rational::zero(); d]; d];
        for (i, row) in rows.iter_mut().enumerate().skip(1) {
            row[i - 1] = Rational::one();
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[d - 1] = Rational::from_integer(-p.coeff(i));
        }
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Map on `T^{d₁} × T^{d₂}`: block sum on `H_1`.
    pub fn product(&self, other: &Self) -> Self {
        ToralMap { matrix: self.matrix.block_sum(&other.matrix) }
    }

    pub fn power(&self, n: u64) -> Self {
        ToralMap { matrix: self.matrix.pow(n) }
    }

    /// The companion-block Verschiebung `V_n(M)` of the map.
    pub fn verschiebung(&self, n: usize) -> Self {
        ToralMap { matrix: self.matrix.verschiebung_block(n) }
    }

    /// `det(t·I - M)`.
    pub fn charpoly(&self) -> IntPolynomial {
        self.matrix.charpoly().to_integer().expect("integer matrix has integer characteristic polynomial")
    }

    /// `L(f^n) = det(I - M^n)`
    pub fn lefschetz_number(&self, n: u64) -> BigInt {
        let id = Matrix::identity(self.dim());
        id.add(&self.matrix.pow(n).scale(&-Rational::one())).det().to_integer()
    }

    /// `L(f^n)` as the alternating sum of traces on `Λ^k H_1`.
    pub fn lefschetz_number_exterior(&self, n: u64) -> BigInt {
        let p = self.matrix.pow(n);
        (0..=self.dim())
            .map(|k| {
                let t = p.exterior_trace(k).to_integer();
                if k % 2 == 0 { t } else { -t }
            })
            .sum()
    }

    pub fn lefschetz_numbers(&self, trunc: usize) -> Vec<BigInt> {
        (1..=trunc as u64).map(|n| self.lefschetz_number(n)).collect()
    }

    /// `exp(Σ L(f^n) t^n / n)` truncated.
    pub fn lefschetz_zeta_series(&self, trunc: usize) -> WittVector {
        GhostVector::from_integers(self.lefschetz_numbers(trunc.max(1)))
            .expect("nonzero truncation")
            .unghost()
    }

    pub fn lefschetz_zeta_closed(&self) -> Result<LefschetzZeta> {
        let factors = cyclotomic_factor(&self.charpoly())?;
        Ok(LefschetzZeta::from_cyclotomic_indices(&factors))
    }

    /// `exp(Σ |det(I - M^n)| t^n / n)`; fails on the first iterate with non-isolated fixed points.
    pub fn artin_mazur_series(&self, trunc: usize) -> Result<WittVector> {
        let counts = (1..=trunc.max(1))
            .map(|n| {
                let l = self.lefschetz_number(n as u64);
                if l.is_zero() {
                    Err(Error::DegenerateIterate(n))
                } else {
                    Ok(l.abs())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GhostVector::from_integers(counts)?.unghost())
    }
}

/// `∏_{d} (1 - t^d)^{-s_d}`, stored as the nonzero exponents `s_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzZeta {
    period: u64,
    exponents: BTreeMap<u64, BigInt>,
}

impl LefschetzZeta {
    /// Closed form for a characteristic polynomial `∏ Φ_{m_i}`.
    pub fn from_cyclotomic_indices(indices: &[u64]) -> Self {
        let period = lcm_all(indices.iter().copied());
        let f = |k: u64| -> BigInt {
            indices.iter().fold(BigInt::one(), |acc, &mi| {
                let r = mi / k.gcd(&mi);
                let e = totient(mi) / totient(r);
                acc * num_traits::pow(cyclotomic_at_one(r), e as usize)
            })
        };
        let mut exponents = BTreeMap::new();
        for d in divisors(period) {
            let sum: BigInt = divisors(d)
                .into_iter()
                .map(|k| f(k) * BigInt::from(moebius(d / k)))
                .sum();
            let (s, r) = sum.div_rem(&BigInt::from(d));
            assert!(r.is_zero(), "s_{d} must be integral");
            if !s.is_zero() {
                exponents.insert(d, s);
            }
        }
        LefschetzZeta { period, exponents }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigInt> {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn expand(&self, trunc: usize) -> WittVector {
        let trunc = trunc.max(1);
        let mut acc = vec![Rational::zero(); trunc + 1];
        acc[0] = Rational::one();
        for (&d, s) in &self.exponents {
            let mut factor = vec![Rational::zero(); trunc + 1];
            factor[0] = Rational::one();
            if let Some(c) = factor.get_mut(d as usize) {
                *c = -Rational::one();
            }
            let e = u64::try_from(s.magnitude()).expect("exponent fits in u64");
            let mut pw = series_pow(&factor, e, trunc);
            if s.is_positive() {
                pw = series_inverse(&pw, trunc);
            }
            acc = series_mul(&acc, &pw, trunc);
        }
        WittVector::from_series(&acc).expect("constant term 1")
    }

    /// Ghosts `Σ_{d|n} d·s_d`.
    pub fn ghost(&self, trunc: usize) -> GhostVector {
        GhostVector::from_integers((1..=trunc.max(1) as u64).map(|n| {
            self.exponents
                .iter()
                .filter(|(d, _)| n % **d == 0)
                .map(|(d, s)| BigInt::from(*d) * s)
                .sum::<BigInt>()
        }))
        .expect("nonzero truncation")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicalKind {
    Lefschetz,
    ArtinMazur,
}

/// Zeta of a torified variety with a map on each torus: the Witt sum of the per-torus zetas.
pub fn torified_dynamical_zeta(parts: &[ToralMap], trunc: usize, kind: DynamicalKind) -> Result<WittVector> {
    parts.iter().try_fold(WittVector::zero(trunc.max(1)), |acc, f| {
        let z = match kind {
            DynamicalKind::Lefschetz => f.lefschetz_zeta_series(trunc),
            DynamicalKind::ArtinMazur => f.artin_mazur_series(trunc)?,
        };
        Ok(acc.add(&z))
    })
}

/// `Σ_λ m_λ·e(λ)` over the eigenvalues of a quasi-unipotent integer matrix, viewed in `Q/Z`.
pub fn spectral_euler(m: &Matrix) -> Result<QZElement> {
    let cp = m
        .charpoly()
        .to_integer()
        .ok_or_else(|| Error::invalid("spectral Euler characteristic needs an integer matrix"))?;
    let mut out = QZElement::zero();
    for d in cyclotomic_factor(&cp)? {
        let primitive = (0..d)
            .filter(|a| a.gcd(&d) == 1)
            .map(|a| (QZFraction::new(a as i64, d).expect("d >= 1"), BigInt::one()));
        out = out.add(&QZElement::from_terms(primitive));
    }
    Ok(out)
}
