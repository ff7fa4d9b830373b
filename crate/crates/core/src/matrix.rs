//! Small dense square matrices over Q.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPolynomial;
use crate::Rational;

/// Square matrix, row-major. Dimension 0 is allowed and represents the zero module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Matrix { dim, entries: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            m.entries[i * values.len() + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix must be square"));
        }
        Ok(Matrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &Matrix) -> Matrix {
        let n = self.dim + other.dim;
        let mut out = Matrix::zero(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                out.set(self.dim + i, self.dim + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (a, b) = (self.dim, other.dim);
        let mut out = Matrix::zero(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, x * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// The `n`-fold companion block: `self` in the top-right corner, identities below the diagonal.
    pub fn verschiebung_block(&self, n: usize) -> Matrix {
        assert!(n >= 1);
        let d = self.dim;
        let mut out = Matrix::zero(d * n);
        for i in 0..d {
            for j in 0..d {
                out.set(i, (n - 1) * d + j, self.get(i, j).clone());
            }
        }
        for blk in 1..n {
            for i in 0..d {
                out.set(blk * d + i, (blk - 1) * d + i, Rational::one());
            }
        }
        out
    }

    pub fn det(&self) -> Rational {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &a[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &a[col * n + j] * &f;
                    a[r * n + j] -= v;
                }
            }
        }
        det
    }

    /// `det(t·I - M)` by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> RatPolynomial {
        let n = self.dim;
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut m = Matrix::zero(n);
        for k in 1..=n {
            m = self.mul(&m).add(&Matrix::identity(n).scale(&c[n - k + 1]));
            let am = self.mul(&m);
            c[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
        }
        RatPolynomial::new(c)
    }

    /// `det(I - t·M)`, the reversed characteristic polynomial.
    pub fn det_one_minus_t(&self) -> RatPolynomial {
        let mut c = self.charpoly().into_coeffs();
        c.resize(self.dim + 1, Rational::zero());
        c.reverse();
        RatPolynomial::new(c)
    }

    /// `tr Λ^k M` as the sum of the principal `k×k` minors.
    pub fn exterior_trace(&self, k: usize) -> Rational {
        let n = self.dim;
        if k > n {
            return Rational::zero();
        }
        let mut total = Rational::zero();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let minor = Matrix {
                dim: k,
                entries: idx
                    .iter()
                    .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| self.get(i, j).clone())
                    .collect(),
            };
            total += minor.det();
            // next k-subset in lexicographic order
            let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
        total
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows()
            .into_iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "Matrix{rows:?}")
    }
}
