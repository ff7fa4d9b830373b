//! Exact arithmetic for Bost–Connes structures on Grothendieck rings and Witt rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`], [`poly`], [`matrix`]: integer/rational primitives, cyclotomic polynomials,
//!   dense polynomials and small exact matrices.
//! * [`qz`]: the group ring `Z[Q/Z]` with the maps `σ_n`, `ρ̃_n` and the prime splitting.
//! * [`witt`]: truncated big Witt vectors, ghost components, rational Witt vectors,
//!   Frobenius and Verschiebung.
//! * [`torified`], [`zeta`]: torified Grothendieck classes and their F₁ / Hasse–Weil zeta functions.
//! * [`endo`]: the K₀-level endomorphism category and its map to rational Witt vectors.
//! * [`dynamical`]: Lefschetz and Artin–Mazur zeta functions of toral endomorphisms.
//! * [`equivariant`]: finite sets with cyclic actions and their `Z[Q/Z]`-valued Euler characteristic.
//! * [`json`], [`cli`]: the JSON wire formats and the `bcwitt` command line.

pub mod arith;
pub mod cli;
pub mod dynamical;
pub mod endo;
pub mod equivariant;
pub mod error;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod qz;
pub mod torified;
pub mod witt;
pub mod zeta;

pub use error::{Error, Result};

/// Exact rational numbers, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;
