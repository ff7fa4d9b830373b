//! F₁ and Hasse–Weil zeta functions of torified classes, as Witt vectors.
//!
//! For `[X] = Σ a_k T^k` the F₁-zeta function has ghost components `#X(F_{1^m}) = Σ a_k m^k`,
//! and the Hasse–Weil zeta over `F_q` has ghost components `Σ a_k (q^m - 1)^k`. Dividing each
//! torus factor by `Z_{0,k,q} = (1 - t)^{-(q-1)^k}` in the Witt ring leaves ghosts
//! `(1 + q + … + q^{m-1})^k`, whose value at `q = 1` recovers the F₁ counts.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorial, stirling2};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::torified::TorifiedClass;
use crate::witt::{series_inverse, series_mul, GhostVector, RationalWitt, SymbolicGhost, WittVector};
use crate::Rational;

/// F₁-zeta function of a torified class: integer ghosts and the exact rational series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F1Zeta {
    pub source: TorifiedClass,
    pub ghost: GhostVector,
    pub witt: WittVector,
}

pub fn f1_zeta(c: &TorifiedClass, trunc: usize) -> F1Zeta {
    let trunc = trunc.max(1);
    let ghost = GhostVector::from_integers(
        (1..=trunc as u64).map(|m| BigInt::from(c.f1m_points(m))),
    )
    .expect("nonzero truncation");
    let witt = ghost.unghost();
    F1Zeta { source: c.clone(), ghost, witt }
}

/// A quotient of integer polynomials whose denominator has constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: IntPolynomial,
    pub den: IntPolynomial,
}

impl RationalFunction {
    /// Series coefficients `c_0..c_trunc`.
    pub fn series(&self, trunc: usize) -> Vec<Rational> {
        let pad = |p: &IntPolynomial| {
            let mut v: Vec<Rational> =
                p.coeffs().iter().take(trunc + 1).cloned().map(Rational::from_integer).collect();
            v.resize(trunc + 1, Rational::zero());
            v
        };
        series_mul(&pad(&self.num), &series_inverse(&pad(&self.den), trunc), trunc)
    }
}

/// `Li_{1-k}(t) = Σ_{ℓ<k} ℓ!·S(k,ℓ+1)·(t/(1-t))^{ℓ+1}` over the common denominator `(1-t)^k`.
pub fn polylog_rational(k: u32) -> RationalFunction {
    assert!(k >= 1, "polylog index must be positive");
    let t = IntPolynomial::from_i64(&[0, 1]);
    let one_minus_t = IntPolynomial::from_i64(&[1, -1]);
    let mut num = IntPolynomial::zero();
    for l in 0..k {
        let c = factorial(u64::from(l)) * stirling2(u64::from(k), u64::from(l) + 1);
        let term = &t.pow(l + 1) * &one_minus_t.pow(k - 1 - l);
        num = &num + &term.scale(&c);
    }
    RationalFunction { num, den: one_minus_t.pow(k) }
}

/// `Σ_m (Σ_k a_k m^k) t^m = Σ_k a_k·Li_{-k}(t)`, the logarithmic derivative `t·Z'/Z` of the F₁-zeta.
pub fn f1_ghost_generating(c: &TorifiedClass) -> RationalFunction {
    let d = c.coeffs().len() as u32;
    let one_minus_t = IntPolynomial::from_i64(&[1, -1]);
    let mut num = IntPolynomial::zero();
    for (k, a) in c.coeffs().iter().enumerate() {
        let li = polylog_rational(k as u32 + 1);
        let term = &li.num * &one_minus_t.pow(d - 1 - k as u32);
        num = &num + &term.scale(&BigInt::from(a.clone()));
    }
    RationalFunction { num, den: one_minus_t.pow(d.max(1)) }
}

/// The base `q` of a Hasse–Weil zeta function: a concrete prime power or a formal symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QParam {
    Int(u64),
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HwValue {
    Rational(RationalWitt),
    Symbolic(SymbolicGhost),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HWZeta {
    pub source: TorifiedClass,
    pub q: QParam,
    pub value: HwValue,
}

impl HWZeta {
    /// Ghost components for a concrete `q`; `None` when symbolic.
    pub fn ghost(&self, trunc: usize) -> Option<GhostVector> {
        match &self.value {
            HwValue::Rational(r) => Some(r.ghost(trunc)),
            HwValue::Symbolic(_) => None,
        }
    }
}

/// `(1 - a·t)^e` as a rational Witt vector, `e` of either sign.
fn linear_power(a: &BigInt, e: &BigInt) -> RationalWitt {
    let lin = IntPolynomial::new(vec![BigInt::one(), -a.clone()]);
    let abs = u32::try_from(e.magnitude()).expect("exponent too large");
    let p = lin.pow(abs).to_rational();
    if e >= &BigInt::zero() {
        RationalWitt::new(p, IntPolynomial::one().to_rational())
    } else {
        RationalWitt::new(IntPolynomial::one().to_rational(), p)
    }
    .expect("constant terms are 1")
}

/// `Z_{F_q}(T^k, t) = ∏_j (1 - q^j t)^{-(-1)^{k-j} C(k,j)}`.
pub fn torus_hw_zeta(k: u32, q: u64) -> RationalWitt {
    let q = BigInt::from(q);
    (0..=k).fold(RationalWitt::one(), |acc, j| {
        let c = binomial(u64::from(k), u64::from(j));
        let e = if (k - j) % 2 == 0 { -c } else { c };
        acc.add(&linear_power(&num_traits::pow(q.clone(), j as usize), &e))
    })
}

/// `(q^m - 1)^k` as a polynomial in `q`.
fn torus_points_symbolic(k: u32, m: usize) -> IntPolynomial {
    let mut qm = IntPolynomial::monomial(BigInt::one(), m);
    qm = &qm - &IntPolynomial::one();
    qm.pow(k)
}

/// Hasse–Weil zeta as the Witt sum `Σ_k a_k·Z_{F_q}(T^k, t)`.
///
/// For symbolic `q` the result is the ghost vector `Σ_k a_k (q^m - 1)^k` up to `trunc`.
pub fn hw_zeta(c: &TorifiedClass, q: &QParam, trunc: usize) -> Result<HWZeta> {
    let value = match q {
        QParam::Int(qv) => {
            if *qv < 2 {
                return Err(Error::invalid("q must be at least 2"));
            }
            // Collect the a_k-fold Witt sums of the torus factors into one exponent per (1 - q^j t).
            let mut exps = vec![BigInt::zero(); c.coeffs().len()];
            for (k, a) in c.coeffs().iter().enumerate() {
                let a = BigInt::from(a.clone());
                for (j, e) in exps.iter_mut().enumerate().take(k + 1) {
                    let term = binomial(k as u64, j as u64) * &a;
                    if (k - j) % 2 == 0 {
                        *e -= term;
                    } else {
                        *e += term;
                    }
                }
            }
            // the factors 1 - q^j t are pairwise coprime, so no cancellation is needed
            let qb = BigInt::from(*qv);
            let (mut num, mut den) = (IntPolynomial::one(), IntPolynomial::one());
            for (j, e) in exps.iter().enumerate() {
                let lin = IntPolynomial::new(vec![BigInt::one(), -num_traits::pow(qb.clone(), j)]);
                let p = lin.pow(u32::try_from(e.magnitude()).expect("exponent too large"));
                if e.is_negative() {
                    den = &den * &p;
                } else {
                    num = &num * &p;
                }
            }
            HwValue::Rational(RationalWitt::from_coprime(num.to_rational(), den.to_rational()))
        }
        QParam::Symbolic => {
            let trunc = trunc.max(1);
            let values = (1..=trunc)
                .map(|m| {
                    c.coeffs().iter().enumerate().fold(IntPolynomial::zero(), |acc, (k, a)| {
                        let term = torus_points_symbolic(k as u32, m).scale(&BigInt::from(a.clone()));
                        &acc + &term
                    })
                })
                .collect();
            HwValue::Symbolic(SymbolicGhost::new(values))
        }
    };
    Ok(HWZeta { source: c.clone(), q: q.clone(), value })
}

/// `Z_{0,k,q} = (1 - t)^{-(q-1)^k}`.
pub fn z0(k: u32, q: u64) -> RationalWitt {
    let e: BigInt = num_traits::pow(BigInt::from(q) - 1, k as usize);
    linear_power(&BigInt::one(), &-e)
}

/// Ghosts `(q - 1)^k` of `Z_{0,k,q}` as polynomials in `q`.
pub fn z0_symbolic(k: u32, trunc: usize) -> SymbolicGhost {
    let qm1 = IntPolynomial::from_i64(&[-1, 1]).pow(k);
    SymbolicGhost::new(vec![qm1; trunc.max(1)])
}

/// Ghosts `(1 + q + … + q^{m-1})^k` of `Z_{1,k,q}` in `Z[q]`.
pub fn z1_symbolic(k: u32, trunc: usize) -> SymbolicGhost {
    let values = (1..=trunc.max(1))
        .map(|m| IntPolynomial::new(vec![BigInt::one(); m]).pow(k))
        .collect();
    SymbolicGhost::new(values)
}

pub fn z1(k: u32, q: u64, trunc: usize) -> GhostVector {
    z1_symbolic(k, trunc).eval(&BigInt::from(q))
}

/// `Z_{F_q}(T^k, t) /_W Z_{0,k,q}` computed by dividing ghosts of the truncated Witt vectors.
pub fn hw_quotient(k: u32, q: u64, trunc: usize) -> Result<GhostVector> {
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    let p = torus_hw_zeta(k, q).expand(trunc);
    let d = z0(k, q).expand(trunc);
    Ok(p.witt_div(&d)?.ghost())
}

/// Runs [`hw_quotient`] and checks it against the ghosts of `Z_{1,k,q}`.
pub fn hw_quotient_check(k: u32, q: u64, trunc: usize) -> Result<GhostVector> {
    let g = hw_quotient(k, q, trunc)?;
    if g != z1(k, q, trunc) {
        return Err(Error::NotDivisible(format!(
            "Witt quotient for k = {k}, q = {q} differs from Z_1"
        )));
    }
    Ok(g)
}

/// The quotient `(q^m - 1)^k / (q - 1)^k` computed in `Z[q]`.
pub fn hw_quotient_symbolic(k: u32, trunc: usize) -> Result<SymbolicGhost> {
    let trunc = trunc.max(1);
    let p = SymbolicGhost::new((1..=trunc).map(|m| torus_points_symbolic(k, m)).collect());
    p.checked_div(&z0_symbolic(k, trunc))
}

/// Ghosts of `Σ^W_k (Z_{F_q}(T^k,t) /_W Z_{0,k,q})^{a_k}` as polynomials in `q`.
pub fn assembled_quotient_symbolic(c: &TorifiedClass, trunc: usize) -> Result<SymbolicGhost> {
    let trunc = trunc.max(1);
    let mut acc = SymbolicGhost::new(vec![IntPolynomial::zero(); trunc]);
    for (k, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let scale = SymbolicGhost::new(vec![IntPolynomial::constant(BigInt::from(a.clone())); trunc]);
        acc = acc.add(&hw_quotient_symbolic(k as u32, trunc)?.mul(&scale));
    }
    Ok(acc)
}

/// `q → 1` limit of the assembled Witt quotient; equals the F₁-zeta ghosts.
pub fn q_to_1_limit(g: &SymbolicGhost) -> GhostVector {
    g.q_to_1_limit()
}
