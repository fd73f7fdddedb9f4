//! Exact computations in the tautological rings of the moduli space of curves
//! `M_g` and of the universal curve `C_g`.
//!
//! The crate is organised bottom-up:
//!
//! - [`combinatorics`]: κ-monomials as exponent vectors, partitions, the
//!   monomial orders, double factorials and Bernoulli numbers.
//! - [`intersection`]: the proportionality constants `r(κ_m)` of top-degree
//!   κ-monomials in `R^{g-2}(M_g)`, with a persistent memo table.
//! - [`linalg`]: exact rank over ℚ (multi-prime modular and fraction-free).
//! - [`pairing`]: the pairing matrices `P_{g,i}` and `Q_{g,i}`, their ranks and
//!   the kernel-dimension statistics derived from them.
//! - [`pushforward`]: classes on the fibre powers `C_g^n`, pushforward along
//!   point-forgetting maps, Chern classes of `F_n - E`, relation generation and
//!   the Gorenstein check.

pub mod combinatorics;
pub mod error;
pub mod export;
pub mod intersection;
pub mod linalg;
pub mod pairing;
pub mod pushforward;

pub use error::{Error, Result};

/// Exact rationals used throughout.
pub type Rational = num_rational::BigRational;
