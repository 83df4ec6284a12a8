//! Minimal and characteristic polynomials of square matrices.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::poly::Polynomial;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

fn require_square(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

/// Monic polynomial of least degree annihilating `a`, found as the first
/// linear dependence in the Krylov sequence `vec(I), vec(A), vec(A^2), ...`.
pub fn minimal_polynomial(a: &Matrix) -> Result<Polynomial> {
    require_square(a)?;
    let n = a.rows();
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let mut powers = vec![Matrix::identity(n)];
    loop {
        let k = powers.len();
        let next = &powers[k - 1] * a;
        let basis = Matrix::vec_stack(&powers)?;
        if let Some(c) = basis.solve(&next.vec())? {
            // A^k = sum c_i A^i
            let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Rational::one());
            return Ok(Polynomial::new(coeffs));
        }
        powers.push(next);
    }
}

/// `det(zI - A)` via the Faddeev-LeVerrier recurrence.
pub fn char_polynomial(a: &Matrix) -> Result<Polynomial> {
    require_square(a)?;
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &Matrix::scalar(n, coeffs[n + 1 - k].clone());
        coeffs[n - k] = -(a * &m).trace() / int(k as i64);
    }
    Ok(Polynomial::new(coeffs))
}

/// Degree of the minimal polynomial.
pub fn algebraic_degree(a: &Matrix) -> Result<usize> {
    Ok(minimal_polynomial(a)?.degree().unwrap_or(0))
}
