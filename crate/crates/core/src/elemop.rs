//! Elementary operators `T -> sum A_i T B_i` on `M_n`.
//!
//! Matrices are vectorised by stacking columns, so that
//! `vec(A X B) = (B^T kron A) vec(X)`. An operator is encoded faithfully by its
//! realignment `sum vec(A_i) vec(B_i)^T`, whose rank is the length.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};

#[derive(Clone, Debug)]
pub struct ElemOp {
    n: usize,
    terms: Vec<(Matrix, Matrix)>,
}

fn check_square(m: &Matrix, n: usize) -> Result<()> {
    if m.shape() != (n, n) {
        return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

/// Indices of a maximal independent subfamily, in order.
fn independent_indices(mats: &[Matrix]) -> Vec<usize> {
    if mats.is_empty() {
        return Vec::new();
    }
    Matrix::vec_stack(mats)
        .map(|s| s.rref().pivots)
        .unwrap_or_default()
}

/// A basis of `span{mats}` chosen among the inputs.
pub fn span_basis(mats: &[Matrix]) -> Vec<Matrix> {
    independent_indices(mats)
        .into_iter()
        .map(|i| mats[i].clone())
        .collect()
}

impl ElemOp {
    pub fn new(n: usize, terms: Vec<(Matrix, Matrix)>) -> Result<Self> {
        for (a, b) in &terms {
            check_square(a, n)?;
            check_square(b, n)?;
        }
        Ok(ElemOp { n, terms })
    }

    pub fn zero(n: usize) -> Self {
        ElemOp { n, terms: Vec::new() }
    }

    /// `M_{A,B}: T -> A T B`.
    pub fn mult(a: &Matrix, b: &Matrix) -> Result<Self> {
        ElemOp::new(a.rows(), vec![(a.clone(), b.clone())])
    }

    pub fn identity(n: usize) -> Self {
        ElemOp {
            n,
            terms: vec![(Matrix::identity(n), Matrix::identity(n))],
        }
    }

    /// `L_A = M_{A,I}`.
    pub fn left(a: &Matrix) -> Result<Self> {
        ElemOp::mult(a, &Matrix::identity(a.rows()))
    }

    /// `R_B = M_{I,B}`.
    pub fn right(b: &Matrix) -> Result<Self> {
        ElemOp::mult(&Matrix::identity(b.rows()), b)
    }

    /// The generalised derivation `T -> A T - T B`.
    pub fn derivation(a: &Matrix, b: &Matrix) -> Result<Self> {
        let i = Matrix::identity(a.rows());
        ElemOp::new(a.rows(), vec![(a.clone(), i.clone()), (i, -b)])
    }

    /// `T -> T + A T B`.
    pub fn upsilon(a: &Matrix, b: &Matrix) -> Result<Self> {
        let i = Matrix::identity(a.rows());
        ElemOp::new(a.rows(), vec![(i.clone(), i), (a.clone(), b.clone())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Matrix, Matrix)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Matrix, Matrix)> {
        self.terms
    }

    pub fn apply(&self, t: &Matrix) -> Result<Matrix> {
        check_square(t, self.n)?;
        let mut out = Matrix::zeros(self.n, self.n);
        for (a, b) in &self.terms {
            out = &out + &(&(a * t) * b);
        }
        Ok(out)
    }

    /// `sum vec(A_i) vec(B_i)^T`, an `n^2 x n^2` matrix.
    pub fn realign(&self) -> Matrix {
        let n2 = self.n * self.n;
        let mut r = Matrix::zeros(n2, n2);
        for (a, b) in &self.terms {
            let (va, vb) = (a.vec(), b.vec());
            for (p, x) in va.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (q, y) in vb.iter().enumerate() {
                    if !y.is_zero() {
                        r[(p, q)] += x * y;
                    }
                }
            }
        }
        r
    }

    pub fn length(&self) -> usize {
        self.realign().rank()
    }

    pub fn is_zero(&self) -> bool {
        self.realign().is_zero()
    }

    /// Same operator, regardless of representation.
    pub fn same_operator(&self, other: &ElemOp) -> bool {
        self.n == other.n && self.realign() == other.realign()
    }

    /// Rebuilds an operator from its realignment through a rank factorisation
    /// `R = U V`: `U` are the pivot columns of `R`, `V` the nonzero rows of its
    /// reduced echelon form.
    pub fn from_realignment(r: &Matrix, n: usize) -> Result<Self> {
        let n2 = n * n;
        if r.shape() != (n2, n2) {
            return Err(Error::dims(format!("{n2}x{n2}"), format!("{}x{}", r.rows(), r.cols())));
        }
        let rr = r.rref();
        let mut terms = Vec::with_capacity(rr.pivots.len());
        for (k, &p) in rr.pivots.iter().enumerate() {
            let a = Matrix::unvec(&r.column(p), n, n)?;
            let b = Matrix::unvec(&rr.reduced.row(k), n, n)?;
            terms.push((a, b));
        }
        Ok(ElemOp { n, terms })
    }

    /// An equal operator with exactly `length()` terms.
    pub fn minimize(&self) -> ElemOp {
        ElemOp::from_realignment(&self.realign(), self.n).expect("realignment has matching shape")
    }

    /// `self o other`: terms `(A_i C_j, D_j B_i)`, not minimised.
    pub fn compose(&self, other: &ElemOp) -> Result<ElemOp> {
        if self.n != other.n {
            return Err(Error::dims(format!("n = {}", self.n), format!("n = {}", other.n)));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, b) in &self.terms {
            for (c, d) in &other.terms {
                terms.push((a * c, d * b));
            }
        }
        Ok(ElemOp { n: self.n, terms })
    }

    pub fn plus(&self, other: &ElemOp) -> Result<ElemOp> {
        if self.n != other.n {
            return Err(Error::dims(format!("n = {}", self.n), format!("n = {}", other.n)));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ElemOp { n: self.n, terms })
    }

    pub fn scaled(&self, c: &Rational) -> ElemOp {
        ElemOp {
            n: self.n,
            terms: self.terms.iter().map(|(a, b)| (a.scale(c), b.clone())).collect(),
        }
    }

    pub fn neg(&self) -> ElemOp {
        self.scaled(&-Rational::one())
    }

    /// `t o self o t` where `t` is transposition: `M_{A,B}` becomes `M_{B^T,A^T}`.
    pub fn transposed(&self) -> ElemOp {
        ElemOp {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (b.transpose(), a.transpose()))
                .collect(),
        }
    }

    /// Matrix of the operator acting on `vec(T)`.
    pub fn operator_matrix(&self) -> Matrix {
        let n2 = self.n * self.n;
        let mut k = Matrix::zeros(n2, n2);
        for (a, b) in &self.terms {
            k = &k + &b.transpose().kron(a);
        }
        k
    }

    /// Inverse of [`ElemOp::operator_matrix`], returned minimised.
    pub fn from_operator_matrix(k: &Matrix, n: usize) -> Result<Self> {
        let n2 = n * n;
        if k.shape() != (n2, n2) {
            return Err(Error::dims(format!("{n2}x{n2}"), format!("{}x{}", k.rows(), k.cols())));
        }
        let mut r = Matrix::zeros(n2, n2);
        for i in 0..n {
            for kk in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        r[(kk * n + i, j * n + l)] = k[(j * n + i, l * n + kk)].clone();
                    }
                }
            }
        }
        ElemOp::from_realignment(&r, n)
    }

    /// Basis of `span{A_i}` drawn from this representation.
    pub fn left_span(&self) -> Vec<Matrix> {
        let lefts: Vec<Matrix> = self.terms.iter().map(|t| t.0.clone()).collect();
        span_basis(&lefts)
    }

    /// Basis of `span{B_i}` drawn from this representation.
    pub fn right_span(&self) -> Vec<Matrix> {
        let rights: Vec<Matrix> = self.terms.iter().map(|t| t.1.clone()).collect();
        span_basis(&rights)
    }

    /// Finds `D_j` with `self = sum M_{C_j, D_j}`.
    pub fn rerepresent(&self, cs: &[Matrix]) -> Result<Vec<Matrix>> {
        for c in cs {
            check_square(c, self.n)?;
        }
        let minimal = self.minimize();
        let mut ds = vec![Matrix::zeros(self.n, self.n); cs.len()];
        if minimal.terms.is_empty() {
            return Ok(ds);
        }
        if cs.is_empty() {
            return Err(Error::pre("empty spanning set for a nonzero operator"));
        }
        let stacked = Matrix::vec_stack(cs)?;
        for (a, b) in &minimal.terms {
            let alpha = stacked
                .solve(&a.vec())?
                .ok_or_else(|| Error::pre("matrices do not span the left coefficient space"))?;
            for (d, x) in ds.iter_mut().zip(&alpha) {
                if !x.is_zero() {
                    *d = &*d + &b.scale(x);
                }
            }
        }
        Ok(ds)
    }
}

/// For a zero tensor `sum A_i (x) B_i = 0`, checks
/// `dim span{A_i} + dim span{B_i} <= m`; vacuously true otherwise.
pub fn dim_bound_check(terms: &[(Matrix, Matrix)]) -> bool {
    let Some(n) = terms.first().map(|t| t.0.rows()) else {
        return true;
    };
    let Ok(op) = ElemOp::new(n, terms.to_vec()) else {
        return true;
    };
    if !op.is_zero() {
        return true;
    }
    op.left_span().len() + op.right_span().len() <= terms.len()
}
