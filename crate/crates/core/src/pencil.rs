//! Two-dimensional spaces `span{B1, B2}` of `m x n` matrices of bounded rank.
//!
//! A member is written `alpha*B1 + beta*B2`. The canonical form splits the
//! space into blocks `A_k(alpha, beta)` of size `(k-1) x k` (`beta` on the
//! diagonal, `alpha` on the superdiagonal) plus a residual block.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{frac, int, Matrix, PolyMatrix, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSpace {
    b1: Matrix,
    b2: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Chain block sizes, descending; block `k` is `(k-1) x k`.
    pub block_sizes: Vec<usize>,
    /// Domain change of basis.
    pub p: Matrix,
    /// Codomain change of basis.
    pub q: Matrix,
    /// The residual block as a pair `(R1, R2)`.
    pub residual: (Matrix, Matrix),
    /// Rank of `alpha*R1 + beta*R2` for generic `(alpha, beta)`.
    pub residual_rank: usize,
}

/// `A_k(alpha, beta)`.
pub fn canonical_block(k: usize, alpha: &Rational, beta: &Rational) -> Matrix {
    let rows = k.saturating_sub(1);
    let mut m = Matrix::zeros(rows, k);
    for i in 0..rows {
        m[(i, i)] = beta.clone();
        m[(i, i + 1)] = alpha.clone();
    }
    m
}

fn linear_combination(a: &Matrix, alpha: &Rational, b: &Matrix, beta: &Rational) -> Matrix {
    &a.scale(alpha) + &b.scale(beta)
}

fn vec_in_span(span: &[Vector], v: &[Rational]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    let basis = Matrix::from_columns(v.len(), span).expect("consistent lengths");
    let aug = Matrix::from_columns(v.len(), &[span, &[v.to_vec()]].concat()).expect("consistent lengths");
    basis.rank() == aug.rank()
}

/// Standard basis vectors completing `cols` to a basis of `Q^dim`.
fn complete_basis(dim: usize, cols: &[Vector]) -> Vec<Vector> {
    let mut all = cols.to_vec();
    let mut rank = if all.is_empty() {
        0
    } else {
        Matrix::from_columns(dim, &all).expect("consistent lengths").rank()
    };
    let mut extra = Vec::new();
    for i in 0..dim {
        if rank == dim {
            break;
        }
        let mut e = vec![Rational::zero(); dim];
        e[i] = Rational::one();
        all.push(e.clone());
        let r = Matrix::from_columns(dim, &all).expect("consistent lengths").rank();
        if r > rank {
            rank = r;
            extra.push(e);
        } else {
            all.pop();
        }
    }
    extra
}

impl PencilSpace {
    pub fn new(b1: Matrix, b2: Matrix) -> Result<Self> {
        if b1.shape() != b2.shape() {
            return Err(Error::dims(
                format!("{}x{}", b1.rows(), b1.cols()),
                format!("{}x{}", b2.rows(), b2.cols()),
            ));
        }
        if Matrix::span_dim(&[b1.clone(), b2.clone()]) != 2 {
            return Err(Error::pre("B1 and B2 are linearly dependent"));
        }
        Ok(PencilSpace { b1, b2 })
    }

    pub fn b1(&self) -> &Matrix {
        &self.b1
    }

    pub fn b2(&self) -> &Matrix {
        &self.b2
    }

    pub fn shape(&self) -> (usize, usize) {
        self.b1.shape()
    }

    pub fn member(&self, alpha: &Rational, beta: &Rational) -> Matrix {
        linear_combination(&self.b1, alpha, &self.b2, beta)
    }

    /// Largest rank of a member, computed symbolically.
    pub fn max_rank(&self) -> usize {
        PolyMatrix::pencil(&self.b1, &self.b2)
            .expect("shapes checked on construction")
            .rank()
    }

    /// Extends `y1` in `ker B1` to a chain `z_1..z_t` with `B1 z_1 = 0`,
    /// `B2 z_k = B1 z_{k+1}` and `B2 z_t = 0`.
    pub fn kernel_chain(&self, y1: &[Rational]) -> Result<Vec<Vector>> {
        let n = self.b1.cols();
        if y1.len() != n {
            return Err(Error::dims(n, y1.len()));
        }
        if y1.iter().all(|x| x.is_zero()) {
            return Err(Error::pre("starting vector is zero"));
        }
        if self.b1.mul_vec(y1).iter().any(|x| !x.is_zero()) {
            return Err(Error::pre("starting vector is not in the kernel of B1"));
        }
        let mut ys: Vec<Vector> = vec![y1.to_vec()];
        let mut images: Vec<Vector> = Vec::new();
        loop {
            let image = self.b2.mul_vec(ys.last().expect("nonempty"));
            let t = ys.len();
            let alpha = if images.is_empty() {
                image.iter().all(|x| x.is_zero()).then(Vec::new)
            } else {
                Matrix::from_columns(image.len(), &images)?.solve(&image)?
            };
            if let Some(alpha) = alpha {
                // B2 y_t = sum alpha_i B2 y_i; shift the tails to close the chain.
                let mut zs = Vec::with_capacity(t);
                for k in 1..=t {
                    let mut z = ys[k - 1].clone();
                    for i in (t - k + 1)..t {
                        let y = &ys[i + k - t - 1];
                        for (zj, yj) in z.iter_mut().zip(y) {
                            *zj -= &alpha[i - 1] * yj;
                        }
                    }
                    zs.push(z);
                }
                return Ok(zs);
            }
            if t >= n {
                return Err(Error::Hypothesis(format!("chain does not close within {n} steps")));
            }
            let next = self.b1.solve(&image)?.ok_or_else(|| {
                Error::Hypothesis("B2 z_k is not in the range of B1; chain cannot be extended".into())
            })?;
            images.push(image);
            ys.push(next);
        }
    }

    /// Kernel of the linear system whose solutions are chains of length `t`,
    /// each returned as the concatenation `z_1 .. z_t`.
    fn chains_of_length(&self, t: usize) -> Vec<Vector> {
        let (m, n) = self.shape();
        let mut sys = Matrix::zeros((t + 1) * m, t * n);
        sys.set_block(0, 0, &self.b1);
        for k in 0..t {
            sys.set_block((k + 1) * m, k * n, &self.b2);
            if k + 1 < t {
                sys.set_block((k + 1) * m, (k + 1) * n, &-&self.b1);
            }
        }
        sys.kernel_basis()
    }

    /// Minimal chain basis: `n - max_rank` chains, shortest first.
    fn minimal_chains(&self, count: usize) -> Result<Vec<Vec<Vector>>> {
        let n = self.shape().1;
        let mut chosen: Vec<Vec<Vector>> = Vec::new();
        for t in 2..=n {
            if chosen.len() == count {
                break;
            }
            let mut span: Vec<Vector> = Vec::new();
            for c in &chosen {
                let s = c.len();
                for offset in 0..=(t - s) {
                    let mut v = vec![Rational::zero(); t * n];
                    for (j, z) in c.iter().enumerate() {
                        v[(offset + j) * n..(offset + j + 1) * n].clone_from_slice(z);
                    }
                    span.push(v);
                }
            }
            for v in self.chains_of_length(t) {
                if chosen.len() == count {
                    break;
                }
                if !vec_in_span(&span, &v) {
                    span.push(v.clone());
                    chosen.push(v.chunks(n).map(|c| c.to_vec()).collect());
                }
            }
        }
        if chosen.len() != count {
            return Err(Error::Hypothesis(format!(
                "found {} chains, expected {count}",
                chosen.len()
            )));
        }
        Ok(chosen)
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let (m, n) = self.shape();
        if Matrix::vstack(&[&self.b1, &self.b2])?.rank() != n {
            return Err(Error::Hypothesis("B1 and B2 have a common kernel vector".into()));
        }
        if Matrix::hstack(&[&self.b1, &self.b2])?.rank() != m {
            return Err(Error::Hypothesis("the ranges of B1 and B2 do not span the codomain".into()));
        }
        let max_rank = self.max_rank();
        if max_rank >= n {
            return Err(Error::Hypothesis(format!(
                "maximal rank {max_rank} leaves no chain (n = {n})"
            )));
        }
        let mut chains = self.minimal_chains(n - max_rank)?;
        chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let block_sizes: Vec<usize> = chains.iter().map(Vec::len).collect();

        let domain: Vec<Vector> = chains.iter().flatten().cloned().collect();
        let codomain: Vec<Vector> = chains
            .iter()
            .flat_map(|c| c[1..].iter().map(|z| self.b1.mul_vec(z)))
            .collect();
        if Matrix::from_columns(n, &domain)?.rank() != domain.len() {
            return Err(Error::Certificate("chain vectors are dependent".into()));
        }
        if !codomain.is_empty() && Matrix::from_columns(m, &codomain)?.rank() != codomain.len() {
            return Err(Error::Certificate("chain images are dependent".into()));
        }
        let p0 = Matrix::from_columns(n, &[domain.clone(), complete_basis(n, &domain)].concat())?;
        let q0 = Matrix::from_columns(m, &[codomain.clone(), complete_basis(m, &codomain)].concat())?;
        let q0_inv = q0.inverse()?.expect("completed basis is invertible");

        let (a, p) = (codomain.len(), domain.len());
        let (b, q) = (m - a, n - p);
        let m1 = &(&q0_inv * &self.b1) * &p0;
        let m2 = &(&q0_inv * &self.b2) * &p0;
        for mi in [&m1, &m2] {
            if !mi.submatrix(a..m, 0..p).is_zero() {
                return Err(Error::Certificate("chain part is not invariant".into()));
            }
        }
        let (l1, l2) = (m1.submatrix(0..a, 0..p), m2.submatrix(0..a, 0..p));
        let (x1, x2) = (m1.submatrix(0..a, p..n), m2.submatrix(0..a, p..n));
        let (r1, r2) = (m1.submatrix(a..m, p..n), m2.submatrix(a..m, p..n));

        // L_i V - U R_i = -X_i, vectorised.
        let (v, u) = if p * q + a * b == 0 || a * q == 0 {
            (Matrix::zeros(p, q), Matrix::zeros(a, b))
        } else {
            let iq = Matrix::identity(q);
            let ia = Matrix::identity(a);
            let row = |l: &Matrix, r: &Matrix| -> Result<Matrix> {
                Matrix::hstack(&[&iq.kron(l), &-&r.transpose().kron(&ia)])
            };
            let sys = Matrix::vstack(&[&row(&l1, &r1)?, &row(&l2, &r2)?])?;
            let rhs: Vector = x1.vec().into_iter().chain(x2.vec()).map(|x| -x).collect();
            let sol = sys
                .solve(&rhs)?
                .ok_or_else(|| Error::Certificate("coupling equation has no solution".into()))?;
            (
                Matrix::unvec(&sol[..p * q], p, q)?,
                Matrix::unvec(&sol[p * q..], a, b)?,
            )
        };
        let mut pv = Matrix::identity(n);
        pv.set_block(0, p, &v);
        let mut qu = Matrix::identity(m);
        qu.set_block(0, a, &u);
        let residual_rank = if b == 0 || q == 0 {
            0
        } else {
            PolyMatrix::pencil(&r1, &r2)?.rank()
        };
        let form = CanonicalForm {
            block_sizes,
            p: &p0 * &pv,
            q: &q0 * &qu,
            residual: (r1, r2),
            residual_rank,
        };
        if !form.verify(self) {
            return Err(Error::Certificate("canonical form certificate failed".into()));
        }
        if form.block_sizes.iter().map(|k| k - 1).sum::<usize>() + form.residual_rank != max_rank {
            return Err(Error::Certificate("rank law violated".into()));
        }
        Ok(form)
    }
}

impl CanonicalForm {
    /// `diag(A_{n_1}, ..., A_{n_r}, alpha*R1 + beta*R2)`.
    pub fn pattern(&self, alpha: &Rational, beta: &Rational) -> Matrix {
        let mut blocks: Vec<Matrix> = self
            .block_sizes
            .iter()
            .map(|&k| canonical_block(k, alpha, beta))
            .collect();
        blocks.push(linear_combination(&self.residual.0, alpha, &self.residual.1, beta));
        Matrix::block_diag(&blocks.iter().collect::<Vec<_>>())
    }

    pub fn sample_points() -> Vec<(Rational, Rational)> {
        vec![
            (int(1), int(0)),
            (int(0), int(1)),
            (int(1), int(1)),
            (frac(3, 7), frac(-5, 2)),
        ]
    }

    /// `Q^-1 (alpha*B1 + beta*B2) P` equals the block pattern at four points.
    pub fn verify(&self, space: &PencilSpace) -> bool {
        let Ok(Some(q_inv)) = self.q.inverse() else {
            return false;
        };
        if !self.p.is_invertible() {
            return false;
        }
        CanonicalForm::sample_points().iter().all(|(a, b)| {
            &(&q_inv * &space.member(a, b)) * &self.p == self.pattern(a, b)
        })
    }
}
