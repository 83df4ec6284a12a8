//! Exact scalars, dense matrices and univariate polynomials over the rationals.

pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod rational;
pub mod spectral;

pub use matrix::{Matrix, Rref, Vector};
pub use poly::Polynomial;
pub use polymatrix::PolyMatrix;
pub use rational::{format_rational, frac, int, parse_rational, small_rationals, Rational};
pub use spectral::{algebraic_degree, char_polynomial, minimal_polynomial};

/// Monic gcd; zero when both inputs are zero.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.gcd(q)
}

/// All rational roots with multiplicity, ascending.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    p.rational_roots()
}
