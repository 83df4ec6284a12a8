//! Matrices over `Q[t]`, used for symbolic pencil computations.
//!
//! A pencil `alpha*B1 + beta*B2` is dehomogenised to `B1 + t*B2`; both the
//! rank over the rational-function field and the vanishing of the
//! determinant are unchanged by this substitution.

use super::matrix::Matrix;
use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    /// `first + t * second`.
    pub fn pencil(first: &Matrix, second: &Matrix) -> Result<Self> {
        if first.shape() != second.shape() {
            return Err(Error::dims(
                format!("{:?}", first.shape()),
                format!("{:?}", second.shape()),
            ));
        }
        let data = first
            .entries()
            .iter()
            .zip(second.entries())
            .map(|(a, b)| Polynomial::new(vec![a.clone(), b.clone()]))
            .collect();
        Ok(PolyMatrix {
            rows: first.rows(),
            cols: first.cols(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    /// Fraction-free (Bareiss) echelon reduction. Returns the rank, the last
    /// pivot and the sign of the row permutation.
    fn bareiss(&self) -> (usize, Polynomial, bool) {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<Polynomial>> = (0..rows)
            .map(|i| self.data[i * cols..(i + 1) * cols].to_vec())
            .collect();
        let mut prev = Polynomial::one();
        let mut negated = false;
        let mut k = 0;
        for c in 0..cols {
            if k == rows {
                break;
            }
            let Some(p) = (k..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != k {
                a.swap(p, k);
                negated = !negated;
            }
            for i in k + 1..rows {
                for j in c + 1..cols {
                    let num = &(&a[k][c] * &a[i][j]) - &(&a[i][c] * &a[k][j]);
                    a[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact");
                }
                a[i][c] = Polynomial::zero();
            }
            prev = a[k][c].clone();
            k += 1;
        }
        (k, prev, negated)
    }

    /// Rank over the field of rational functions `Q(t)`.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Polynomial::one());
        }
        let (rank, last, negated) = self.bareiss();
        if rank < self.rows {
            return Ok(Polynomial::zero());
        }
        Ok(if negated { -&last } else { last })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    #[test]
    fn pencil_rank_and_det() {
        let b1 = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let b2 = Matrix::from_ints(&[&[0, 0], &[0, 1]]);
        let p = PolyMatrix::pencil(&b1, &b2).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.det().unwrap(), Polynomial::from_ints(&[0, 1]));

        let b1 = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b2 = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let p = PolyMatrix::pencil(&b1, &b2).unwrap();
        assert!(p.det().unwrap().is_zero());
        assert_eq!(p.rank(), 1);
    }

    #[test]
    fn det_matches_numeric_at_points() {
        let b1 = Matrix::from_ints(&[&[1, 2, 0], &[3, -1, 4], &[0, 5, 2]]);
        let b2 = Matrix::from_ints(&[&[2, 0, 1], &[1, 1, 1], &[-3, 2, 0]]);
        let det = PolyMatrix::pencil(&b1, &b2).unwrap().det().unwrap();
        for t in -3..=3 {
            let t = int(t);
            let m = &b1 + &b2.scale(&t);
            assert_eq!(det.eval(&t), m.det().unwrap());
        }
    }
}
