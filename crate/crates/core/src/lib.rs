//! Binomial edge ideals of small graphs: invariants, Gröbner bases, exact
//! regularity through Hochster's formula, and the published bounds on it as
//! checkable statements.
//!
//! Polynomial code is generic over a [`algebra::Field`]; the aliases below
//! fix the prime fields used by default.

pub mod algebra;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod oracle;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::Graph;

/// The default coefficient field, `GF(32003)`.
pub type Gf32003 = algebra::Fp<32003>;
/// `GF(2)`, where homology can pick up torsion of the rationals.
pub type Gf2 = algebra::Fp<2>;
/// Polynomials over the default field.
pub type Poly = algebra::Polynomial<Gf32003>;
/// Ideals over the default field.
pub type DefaultIdeal = algebra::Ideal<Gf32003>;
