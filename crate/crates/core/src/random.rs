//! Seeded generators for random matrices and planted instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::elemop::ElemOp;
use crate::exactnum::{int, Matrix, Rational};
use crate::pencil::canonical_block;

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let entries = (0..rows * cols).map(|_| small_int(rng, bound)).collect();
    Matrix::new(rows, cols, entries).expect("sized")
}

/// Unit lower times unit upper triangular: determinant 1, small entries.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = small_int(rng, 1);
            u[(j, i)] = small_int(rng, 1);
        }
    }
    &l * &u
}

/// Random invertible matrix with entries in `[-bound, bound]`.
pub fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = matrix(rng, n, n, bound);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A rank-`r` idempotent.
pub fn idempotent<R: Rng>(rng: &mut R, n: usize, r: usize) -> Matrix {
    let s = unimodular(rng, n);
    let s_inv = s.inverse().expect("square").expect("det 1");
    let d = Matrix::diag(&(0..n).map(|i| int(i64::from(i < r))).collect::<Vec<_>>());
    &(&s * &d) * &s_inv
}

/// `n x n` matrix whose minimal polynomial has degree `d` (`1 <= d <= n`),
/// with rational eigenvalues and possibly one Jordan block of size two.
pub fn with_min_degree<R: Rng>(rng: &mut R, n: usize, d: usize) -> Matrix {
    assert!(1 <= d && d <= n);
    let jordan = d >= 2 && rng.gen_bool(0.4);
    let distinct = if jordan { d - 1 } else { d };
    let mut pool: Vec<i64> = (-4..=4).collect();
    pool.shuffle(rng);
    let values: Vec<i64> = pool[..distinct].to_vec();
    let mut core = Matrix::zeros(n, n);
    let mut slot = 0;
    if jordan {
        core[(0, 0)] = int(values[0]);
        core[(1, 1)] = int(values[0]);
        core[(0, 1)] = int(1);
        slot = 2;
    }
    for v in values.iter().skip(usize::from(jordan)) {
        core[(slot, slot)] = int(*v);
        slot += 1;
    }
    while slot < n {
        core[(slot, slot)] = int(*values.choose(rng).expect("nonempty"));
        slot += 1;
    }
    let s = unimodular(rng, n);
    let s_inv = s.inverse().expect("square").expect("det 1");
    &(&s * &core) * &s_inv
}

/// `count` linearly independent random matrices.
pub fn independent_family<R: Rng>(rng: &mut R, n: usize, count: usize, bound: i64) -> Vec<Matrix> {
    loop {
        let fam: Vec<Matrix> = (0..count).map(|_| matrix(rng, n, n, bound)).collect();
        if Matrix::span_dim(&fam) == count {
            return fam;
        }
    }
}

/// An operator of length exactly `len`, written with at least `len + 2` terms.
pub fn planted_length<R: Rng>(rng: &mut R, n: usize, len: usize) -> ElemOp {
    let a = independent_family(rng, n, len, 3);
    let b = independent_family(rng, n, len, 3);
    let mut terms: Vec<(Matrix, Matrix)> = a.into_iter().zip(b).collect();
    let extra = rng.gen_range(2..=4);
    for _ in 0..extra {
        match rng.gen_range(0..3) {
            0 if !terms.is_empty() => {
                let i = rng.gen_range(0..terms.len());
                let r = matrix(rng, n, n, 2);
                let (a, b) = terms[i].clone();
                terms[i] = (a.clone(), &b - &r);
                terms.push((a, r));
            }
            1 if !terms.is_empty() => {
                let i = rng.gen_range(0..terms.len());
                let r = matrix(rng, n, n, 2);
                let (a, b) = terms[i].clone();
                terms[i] = (&a - &r, b.clone());
                terms.push((r, b));
            }
            _ => {
                let x = matrix(rng, n, n, 2);
                let y = matrix(rng, n, n, 2);
                terms.push((x.clone(), y.clone()));
                terms.push((-&x, y));
            }
        }
    }
    terms.shuffle(rng);
    ElemOp::new(n, terms).expect("square terms")
}

/// Terms with `sum vec(A_i) vec(B_i)^T = 0` and at least one nonzero `A_i`.
pub fn zero_tensor<R: Rng>(rng: &mut R, n: usize, terms: usize) -> Vec<(Matrix, Matrix)> {
    assert!(terms >= 2);
    let n2 = n * n;
    let rank = rng.gen_range(1..terms.min(n2 + 1));
    let basis = independent_family(rng, n, rank, 3);
    let a: Vec<Matrix> = (0..terms)
        .map(|_| {
            basis
                .iter()
                .fold(Matrix::zeros(n, n), |acc, m| &acc + &m.scale(&small_int(rng, 2)))
        })
        .collect();
    let u = Matrix::vec_stack(&a);
    let kernel = u.expect("equal shapes").kernel_basis();
    // Column c of [vec(B_1) .. vec(B_m)]^T lies in ker U.
    let mut vt = Matrix::zeros(terms, n2);
    for c in 0..n2 {
        for k in &kernel {
            let coef = small_int(rng, 2);
            for i in 0..terms {
                vt[(i, c)] = &vt[(i, c)] + &(&coef * &k[i]);
            }
        }
    }
    (0..terms)
        .map(|i| (a[i].clone(), Matrix::unvec(&vt.row(i), n, n).expect("sized")))
        .collect()
}

/// Length-two operator with a rational multiplication annihilator planted at
/// a random pencil parameter.
pub fn planted_singular<R: Rng>(rng: &mut R, n: usize) -> ElemOp {
    loop {
        let c = small_int(rng, 3);
        let a1 = matrix(rng, n, n, 3);
        let b2 = matrix(rng, n, n, 3);
        let s = singular(rng, n);
        let t = singular(rng, n);
        let a2 = &a1.scale(&c) + &s;
        let b1 = &t - &b2.scale(&c);
        let op = ElemOp::new(n, vec![(a1, b1), (a2, b2)]).expect("square");
        if op.length() == 2 {
            return op;
        }
    }
}

fn singular<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let x = matrix(rng, n, 1, 2);
    let y = matrix(rng, 1, n, 2);
    let rest = matrix(rng, n, n.saturating_sub(2), 2);
    let z = matrix(rng, n.saturating_sub(2), n, 2);
    &(&x * &y) + &(&rest * &z)
}

/// Random length-two operator with all coefficients in `[-bound, bound]`.
pub fn length_two<R: Rng>(rng: &mut R, n: usize, bound: i64) -> ElemOp {
    loop {
        let terms = (0..2).map(|_| (matrix(rng, n, n, bound), matrix(rng, n, n, bound))).collect();
        let op = ElemOp::new(n, terms).expect("square");
        if op.length() == 2 {
            return op;
        }
    }
}

/// Target `M_{A1,B1} + M_{A2,B2}` carrying a length-`k` chain annihilator.
pub fn chain_target<R: Rng>(rng: &mut R, n: usize, k: usize) -> ElemOp {
    assert!(2 <= k && k <= n);
    loop {
        // B-side: e_1 .. e_k form a chain through independent columns w_j.
        let w = matrix(rng, n, k - 1, 3);
        if w.rank() != k - 1 {
            continue;
        }
        let mut b1 = matrix(rng, n, n, 2);
        let mut b2 = matrix(rng, n, n, 2);
        for r in 0..n {
            b1[(r, 0)] = int(0);
            b2[(r, k - 1)] = int(0);
            for j in 0..k - 1 {
                b1[(r, j + 1)] = w[(r, j)].clone();
                b2[(r, j)] = w[(r, j)].clone();
            }
        }
        // A-side: row j of A2 is minus row j+1 of A1.
        let a1 = matrix(rng, n, n, 3);
        let mut a2 = matrix(rng, n, n, 3);
        for j in 0..k - 1 {
            for c in 0..n {
                a2[(j, c)] = -a1[(j + 1, c)].clone();
            }
        }
        let (p, q) = (unimodular(rng, n), unimodular(rng, n));
        let (r, s) = (unimodular(rng, n), unimodular(rng, n));
        let conj = |a: &Matrix, b: &Matrix| (&(&p * a) * &r, &(&s * b) * &q);
        let op = ElemOp::new(n, vec![conj(&a1, &b1), conj(&a2, &b2)]).expect("square");
        if op.length() == 2 {
            return op;
        }
    }
}

/// `(A, B)` with `(A - lambda)^2 = alpha I`, `(B - lambda)^2 = beta I`,
/// `alpha != beta`, both nonscalar.
pub fn scalar_square_pair<R: Rng>(rng: &mut R, n: usize) -> (Matrix, Matrix, Rational) {
    let lambda = small_int(rng, 3);
    let make = |rng: &mut R, alpha: i64| -> Matrix {
        let s = (1..=4).find(|s| s * s == alpha);
        let core = match s {
            Some(s) if n % 2 == 1 || !rng.gen_bool(0.5) => {
                let signs: Vec<Rational> = (0..n)
                    .map(|i| int(if i == 0 { s } else if i == 1 { -s } else if rng.gen_bool(0.5) { s } else { -s }))
                    .collect();
                Matrix::diag(&signs)
            }
            _ => {
                // companion blocks of z^2 - alpha
                let block = Matrix::from_ints(&[&[0, alpha], &[1, 0]]);
                Matrix::block_diag(&vec![&block; n / 2])
            }
        };
        let u = unimodular(rng, n);
        let u_inv = u.inverse().expect("square").expect("det 1");
        &(&(&u * &core) * &u_inv) + &Matrix::scalar(n, lambda.clone())
    };
    let squares = [1i64, 4, 9, 16];
    let (ia, ib) = loop {
        let i = rng.gen_range(0..squares.len());
        let j = rng.gen_range(0..squares.len());
        if i != j {
            break (i, j);
        }
    };
    let alpha = if n.is_multiple_of(2) && rng.gen_bool(0.5) { [2, 3, 5, 6][ia] } else { squares[ia] };
    let beta = if n.is_multiple_of(2) && rng.gen_bool(0.5) { [7, 10, 11, 13][ib] } else { squares[ib] };
    let a = make(rng, alpha);
    let b = make(rng, beta);
    (a, b, lambda)
}

/// Invertible generalised derivation of length two that fails the
/// scalar-square condition.
pub fn non_scalar_square_pair<R: Rng>(rng: &mut R, n: usize) -> (Matrix, Matrix) {
    loop {
        let (a, b) = if n >= 3 && rng.gen_bool(0.5) {
            {
            let db = rng.gen_range(2..=n);
            (with_min_degree(rng, n, 3), with_min_degree(rng, n, db))
        }
        } else {
            // degree two on both sides with different centres
            let a = &with_min_degree(rng, n, 2) + &Matrix::scalar(n, small_int(rng, 2));
            let b = with_min_degree(rng, n, 2);
            (a, b)
        };
        let tau = ElemOp::derivation(&a, &b).expect("square");
        if tau.length() != 2 || !tau.operator_matrix().is_invertible() {
            continue;
        }
        let centre = |m: &Matrix| {
            crate::exactnum::minimal_polynomial(m)
                .ok()
                .filter(|p| p.degree() == Some(2))
                .map(|p| p.coeff(1))
        };
        if let (Some(x), Some(y)) = (centre(&a), centre(&b)) {
            if x == y {
                continue;
            }
        }
        return (a, b);
    }
}

/// `M_{A1,B1} + M_{A2,B2}` with `B1 = K P L`, `B2 = K (I - P) L`, `P`
/// idempotent and `A1, A2` invertible; mirrored when `mirror` is set.
pub fn biorthogonal_instance<R: Rng>(rng: &mut R, n: usize, mirror: bool) -> ElemOp {
    loop {
        let rank = rng.gen_range(1..n);
        let p = idempotent(rng, n, rank);
        let k = unimodular(rng, n);
        let l = unimodular(rng, n);
        let x1 = &(&k * &p) * &l;
        let x2 = &(&k * &(&Matrix::identity(n) - &p)) * &l;
        let y1 = invertible(rng, n, 3);
        let y2 = invertible(rng, n, 3);
        let terms = if mirror { vec![(x1, y1), (x2, y2)] } else { vec![(y1, x1), (y2, x2)] };
        let op = ElemOp::new(n, terms).expect("square");
        if op.length() == 2 {
            return op;
        }
    }
}

/// Invertible `M_{A1,B1} + M_{A2,B2}` with invertible coefficients and an
/// inverse of length two. `A1^-1 A2` and `B2 B1^-1` have quadratic minimal
/// polynomials that do not split into distinct rational factors.
pub fn two_invertible_instance<R: Rng>(rng: &mut R, n: usize) -> ElemOp {
    loop {
        let a1 = invertible(rng, n, 3);
        let b1 = invertible(rng, n, 3);
        let a2 = &a1 * &nonsplit_quadratic(rng, n);
        let b2 = &nonsplit_quadratic(rng, n) * &b1;
        let op = ElemOp::new(n, vec![(a1, b1), (a2, b2)]).expect("square");
        if op.length() == 2 && op.operator_matrix().is_invertible() {
            return op;
        }
    }
}

/// Conjugate of `n/2` companion blocks of `z^2 - c` (`c` not a square) for
/// even `n`, of `J_2(l) + l I` otherwise.
fn nonsplit_quadratic<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let core = if n.is_multiple_of(2) {
        let c = *[2i64, 3, 5, -1, -2].choose(rng).expect("nonempty");
        let block = Matrix::from_ints(&[&[0, c], &[1, 0]]);
        Matrix::block_diag(&vec![&block; n / 2])
    } else {
        let l = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
        let mut m = Matrix::scalar(n, int(l));
        m[(0, 1)] = int(1);
        m
    };
    let s = unimodular(rng, n);
    let s_inv = s.inverse().expect("square").expect("det 1");
    &(&s * &core) * &s_inv
}

/// A pencil pair with planted chain blocks, together with the sizes used.
pub struct PlantedPencil {
    pub b1: Matrix,
    pub b2: Matrix,
    pub block_sizes: Vec<usize>,
    pub residual_shape: (usize, usize),
}

/// Random block sizes `>= 2` and a generic `a x c` residual (`c <= a <= 2c`),
/// mixed by random invertible changes of basis; at most `6 x 8`.
pub fn planted_pencil<R: Rng>(rng: &mut R) -> PlantedPencil {
    loop {
        let blocks = rng.gen_range(1..=3);
        let mut sizes: Vec<usize> = (0..blocks).map(|_| rng.gen_range(2..=4)).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let c = rng.gen_range(0..=2);
        let a = if c == 0 { 0 } else { rng.gen_range(c..=2 * c) };
        let rows: usize = sizes.iter().map(|k| k - 1).sum::<usize>() + a;
        let cols: usize = sizes.iter().sum::<usize>() + c;
        if rows > 6 || cols > 8 || rows == 0 {
            continue;
        }
        let r1 = matrix(rng, a, c, 3);
        let r2 = matrix(rng, a, c, 3);
        let side = |alpha: i64, beta: i64, r: &Matrix| {
            let mut parts: Vec<Matrix> = sizes.iter().map(|&k| canonical_block(k, &int(alpha), &int(beta))).collect();
            parts.push(r.clone());
            Matrix::block_diag(&parts.iter().collect::<Vec<_>>())
        };
        let q0 = invertible(rng, rows, 2);
        let p0 = invertible(rng, cols, 2);
        let p0_inv = p0.inverse().expect("square").expect("invertible");
        let b1 = &(&q0 * &side(1, 0, &r1)) * &p0_inv;
        let b2 = &(&q0 * &side(0, 1, &r2)) * &p0_inv;
        // The residual must contribute no chains and keep the ranges spanning.
        if a > 0 {
            let generic = crate::exactnum::PolyMatrix::pencil(&r1, &r2).map(|p| p.rank()).unwrap_or(0);
            let spans = Matrix::hstack(&[&r1, &r2]).map(|m| m.rank()).unwrap_or(0);
            if generic != c || spans != a {
                continue;
            }
        }
        return PlantedPencil {
            b1,
            b2,
            block_sizes: sizes,
            residual_shape: (a, c),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::minimal_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for d in 1..=n {
                let m = with_min_degree(&mut rng, n, d);
                assert_eq!(minimal_polynomial(&m).unwrap().degree(), Some(d));
            }
            let p = idempotent(&mut rng, n, 1);
            assert_eq!(&p * &p, p);
            for len in 1..=3 {
                let op = planted_length(&mut rng, n, len);
                assert!(op.terms().len() >= len + 2);
                assert_eq!(op.length(), len);
            }
            let z = zero_tensor(&mut rng, n, 4);
            assert!(ElemOp::new(n, z).unwrap().is_zero());
        }
    }

    #[test]
    fn scalar_square_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2, 3, 4] {
            let (a, b, l) = scalar_square_pair(&mut rng, n);
            for m in [&a, &b] {
                let s = m - &Matrix::scalar(n, l.clone());
                let sq = &s * &s;
                assert_eq!(sq, Matrix::scalar(n, sq[(0, 0)].clone()));
            }
        }
    }
}
