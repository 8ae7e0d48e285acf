//! Polynomials over prime fields, Buchberger's algorithm and the ideals built
//! from graphs.

mod field;
mod groebner;
mod ideal;
mod monomial;
mod polynomial;

pub use field::{Field, Fp, DEFAULT_PRIME, SUPPORTED_PRIMES};
pub use groebner::{buchberger, is_groebner_basis, is_reduced, GbBudget};
pub use ideal::{build_bei, build_gbei, is_squarefree, GroebnerBasis, Ideal, MonomialIdeal, Style, VarGrid};
pub use monomial::{Monomial, MAX_VARS};
pub use polynomial::Polynomial;
