//! The endomorphism category at the level of K₀.
//!
//! An object `(E, f)` is a free module with an endomorphism, held as a square rational matrix.
//! The map `(E, f) ↦ det(1 - tM(f))⁻¹` sends `⊕` to Witt addition and `⊗` to Witt
//! multiplication, with ghost components `tr(M^m)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::RatPolynomial;
use crate::witt::{GhostVector, RationalWitt};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoObject {
    matrix: Matrix,
}

/// A pair `(E₊, f₊), (E₋, f₋)` of the Z/2-graded category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEndoObject {
    pub plus: EndoObject,
    pub minus: EndoObject,
}

impl EndoObject {
    pub fn new(matrix: Matrix) -> Self {
        EndoObject { matrix }
    }

    pub fn zero() -> Self {
        EndoObject { matrix: Matrix::zero(0) }
    }

    /// `(Q, a)`
    pub fn scalar(a: Rational) -> Self {
        EndoObject { matrix: Matrix::diagonal(&[a]) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        EndoObject { matrix: self.matrix.block_sum(&other.matrix) }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        EndoObject { matrix: self.matrix.kron(&other.matrix) }
    }

    /// `det(1 - tM)⁻¹`
    pub fn l_map(&self) -> RationalWitt {
        RationalWitt::inverse_of(self.matrix.det_one_minus_t()).expect("det(1 - tM) has constant term 1")
    }

    /// Ghost components of the class, `tr(M^m)` for `m = 1..=trunc`.
    pub fn trace_ghost(&self, trunc: usize) -> GhostVector {
        let mut values = Vec::with_capacity(trunc);
        let mut p = self.matrix.clone();
        for _ in 0..trunc.max(1) {
            values.push(p.trace());
            p = p.mul(&self.matrix);
        }
        GhostVector::new(values).expect("nonzero truncation")
    }

    /// `F_n(E, f) = (E, f^n)`
    pub fn frobenius(&self, n: usize) -> Self {
        assert!(n >= 1);
        EndoObject { matrix: self.matrix.pow(n as u64) }
    }

    /// `V_n(E, f) = (E^{⊕n}, V_n(f))` with `f` in the top-right block and identities below.
    pub fn verschiebung(&self, n: usize) -> Self {
        assert!(n >= 1);
        EndoObject { matrix: self.matrix.verschiebung_block(n) }
    }
}

impl GradedEndoObject {
    pub fn new(plus: EndoObject, minus: EndoObject) -> Self {
        GradedEndoObject { plus, minus }
    }

    pub fn frobenius(&self, n: usize) -> Self {
        GradedEndoObject { plus: self.plus.frobenius(n), minus: self.minus.frobenius(n) }
    }

    pub fn verschiebung(&self, n: usize) -> Self {
        GradedEndoObject { plus: self.plus.verschiebung(n), minus: self.minus.verschiebung(n) }
    }
}

/// `[E₊, f₊] - [E₋, f₋]` as the rational Witt vector `det(1 - tM₋)/det(1 - tM₊)`.
pub fn delta(g: &GradedEndoObject) -> RationalWitt {
    g.plus.l_map().sub(&g.minus.l_map())
}

/// Realises `∏(1 - α_i t) / ∏(1 - β_j t)` as `M(f₊) = diag(β_j)`, `M(f₋) = diag(α_i)`.
pub fn phi_mu(z: &RationalWitt) -> Result<GradedEndoObject> {
    let alphas = inverse_roots(z.num())?;
    let betas = inverse_roots(z.den())?;
    Ok(GradedEndoObject {
        plus: EndoObject::new(Matrix::diagonal(&betas)),
        minus: EndoObject::new(Matrix::diagonal(&alphas)),
    })
}

/// Writes `p = ∏(1 - a_i t)` with rational `a_i`, ascending, or fails with `NotSplit`.
pub fn inverse_roots(p: &RatPolynomial) -> Result<Vec<Rational>> {
    debug_assert!(p.coeff(0).is_one());
    // the a_i are the roots of the monic reversed polynomial
    let mut rest = p.reversed();
    let mut roots = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let root = rational_root(&rest)?.ok_or(Error::NotSplit)?;
        let lin = RatPolynomial::new(vec![-root.clone(), Rational::one()]);
        let (q, r) = rest.div_rem(&lin);
        debug_assert!(r.is_zero());
        rest = q;
        roots.push(root);
    }
    roots.sort();
    Ok(roots)
}

/// Some rational root of `p`, by the rational root theorem on the integer-scaled polynomial.
fn rational_root(p: &RatPolynomial) -> Result<Option<Rational>> {
    if p.coeff(0).is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    for num in divisors_big(&constant)? {
        for den in divisors_big(&lead)? {
            for sign in [1, -1] {
                let cand = Rational::new(BigInt::from(num.clone()) * sign, BigInt::from(den.clone()));
                if p.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// Trial-division divisor enumeration; coefficients beyond `u64` are rejected.
fn divisors_big(n: &BigInt) -> Result<Vec<BigUint>> {
    let n = u64::try_from(n.magnitude())
        .map_err(|_| Error::invalid("coefficient too large for rational root search"))?;
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigUint::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn m(rows: &[&[i64]]) -> EndoObject {
        EndoObject::new(Matrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
    }

    fn rw(num: &[i64], den: &[i64]) -> RationalWitt {
        RationalWitt::from_int(&IntPolynomial::from_i64(num), &IntPolynomial::from_i64(den)).unwrap()
    }

    #[test]
    fn sum_and_tensor() {
        let a = EndoObject::scalar(q(2));
        let b = EndoObject::scalar(q(3));
        assert_eq!(a.direct_sum(&b), m(&[&[2, 0], &[0, 3]]));
        assert_eq!(a.tensor(&b), m(&[&[6]]));
        let c = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(c.direct_sum(&a).dim(), 3);
        assert_eq!(c.tensor(&c).dim(), 4);
    }

    #[test]
    fn l_map_examples() {
        assert_eq!(EndoObject::scalar(q(5)).l_map(), rw(&[1], &[1, -5]));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.l_map(), rw(&[1], &[1, 0, -1]));
        assert_eq!(swap.l_map().ghost(4).values(), &[q(0), q(2), q(0), q(2)]);
        assert_eq!(swap.trace_ghost(4), swap.l_map().ghost(4));
        assert!(EndoObject::zero().l_map().is_one());
    }

    #[test]
    fn frobenius_verschiebung_examples() {
        let a = EndoObject::scalar(q(7));
        assert_eq!(a.verschiebung(2), m(&[&[0, 7], &[1, 0]]));
        assert_eq!(a.verschiebung(2).l_map(), rw(&[1], &[1, 0, -7]));
        assert_eq!(EndoObject::scalar(q(3)).frobenius(2), m(&[&[9]]));
        assert_eq!(a.verschiebung(2).frobenius(2), m(&[&[7, 0], &[0, 7]]));
    }

    #[test]
    fn delta_examples() {
        let g = GradedEndoObject::new(EndoObject::scalar(q(2)), EndoObject::scalar(q(3)));
        assert_eq!(delta(&g), rw(&[1, -3], &[1, -2]));
        let x = m(&[&[1, 1], &[0, 2]]);
        assert!(delta(&GradedEndoObject::new(x.clone(), x)).is_one());
        let g = GradedEndoObject::new(m(&[&[2, 0], &[0, 3]]), EndoObject::scalar(q(3)));
        assert_eq!(delta(&g), rw(&[1], &[1, -2]));
    }

    #[test]
    fn phi_mu_examples() {
        let g = phi_mu(&rw(&[1, -1], &[1, -3])).unwrap();
        assert_eq!(g.plus, EndoObject::scalar(q(3)));
        assert_eq!(g.minus, EndoObject::scalar(q(1)));
        let g = phi_mu(&RationalWitt::one()).unwrap();
        assert_eq!((g.plus.dim(), g.minus.dim()), (0, 0));
        let g = phi_mu(&rw(&[1], &[1, 0, -1])).unwrap();
        assert_eq!(g.plus, m(&[&[-1, 0], &[0, 1]]));
        assert_eq!(phi_mu(&rw(&[1], &[1, 1, 1])), Err(Error::NotSplit));
        // rational inverse roots
        let half = RationalWitt::teichmuller(&Rational::new(1.into(), 2.into()));
        let g = phi_mu(&half).unwrap();
        assert_eq!(delta(&g), half);
    }
}
