//! Nonzero solutions of `X o Psi = 0` for targets of length one and two.
//!
//! For `Psi = M_{A1,B1} + M_{A2,B2}`, a multiplication operator `M_{E,F}`
//! annihilates `Psi` exactly when one of the following holds:
//!
//! * `E A1 = E A2 = 0`, or `B1 F = B2 F = 0`;
//! * `E A1 = 0` and `B2 F = 0` (pencil parameter infinity);
//! * `E (A2 - c A1) = 0` and `(B1 + c B2) F = 0` for some scalar `c`.
//!
//! The last case needs a common root of `det(A2 - c A1)` and `det(B1 + c B2)`.
//! When the only common roots are irrational the witness lives over
//! `Q[z]/(g)` for a squarefree factor `g` of the common part and is reported
//! separately as an [`AlgebraicWitness`].
//!
//! A solution `X` is minimal when no nonzero `X'` with `X' o Psi = 0` splits
//! it as `l(X - X') + l(X') = l(X)`. Witnesses returned here are not tested
//! for minimality.

use std::fmt;

use num_traits::Zero;

use crate::elemop::ElemOp;
use crate::error::{Error, Result};
use crate::exactnum::{char_polynomial, small_rationals, Matrix, PolyMatrix, Polynomial, Rational, Vector};

#[derive(Clone, Debug)]
pub struct ChainSolution {
    pub e: Vec<Matrix>,
    pub f: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnihilatorStatus {
    None,
    Multiplication,
    Chain,
    ExistsOverCOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilParameter {
    Finite(Rational),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct AnnihilatorReport {
    pub status: AnnihilatorStatus,
    pub witness: Option<ElemOp>,
    pub pencil_parameter: Option<PencilParameter>,
    pub chain_length: Option<usize>,
    /// Which structural case produced the witness.
    pub case: Option<&'static str>,
    /// Witness with entries in `Q[z]/(g)` when no rational one exists.
    pub algebraic: Option<AlgebraicWitness>,
}

/// `M_{E,F}` over `Q[z]/(modulus)`: `E` has first row `row`, `F` has first
/// column `col`, the rest zero. Entries are reduced polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicWitness {
    pub modulus: Polynomial,
    pub row: Vec<Polynomial>,
    pub col: Vec<Polynomial>,
}

impl AlgebraicWitness {
    fn reduce(&self, p: &Polynomial) -> Polynomial {
        p.div_rem(&self.modulus).1
    }

    /// Neither `row` nor `col` vanishes at a root of the modulus.
    pub fn nonvanishing(&self) -> bool {
        let g = &self.modulus;
        let all = |v: &[Polynomial]| v.iter().fold(g.clone(), |acc, p| acc.gcd(p));
        all(&self.row).is_constant() && all(&self.col).is_constant()
    }

    /// `M_{E,F} o Psi = 0` over `Q[z]/(modulus)`, computed from the terms of
    /// `Psi` as `sum_i (row A_i) (B_i col)^T`.
    pub fn annihilates(&self, psi: &ElemOp) -> bool {
        let n = psi.n();
        if self.row.len() != n || self.col.len() != n || self.modulus.degree().unwrap_or(0) == 0 {
            return false;
        }
        let mut acc = vec![vec![Polynomial::zero(); n]; n];
        for (a, b) in psi.terms() {
            let ya: Vec<Polynomial> = (0..n)
                .map(|c| (0..n).fold(Polynomial::zero(), |s, k| &s + &self.row[k].scale(&a[(k, c)])))
                .collect();
            let bx: Vec<Polynomial> = (0..n)
                .map(|r| (0..n).fold(Polynomial::zero(), |s, k| &s + &self.col[k].scale(&b[(r, k)])))
                .collect();
            for (c, yc) in ya.iter().enumerate() {
                for (r, xr) in bx.iter().enumerate() {
                    acc[c][r] = &acc[c][r] + &(yc * xr);
                }
            }
        }
        self.nonvanishing() && acc.iter().flatten().all(|p| self.reduce(p).is_zero())
    }
}

/// Multiplication by `z` on `Q[z]/(g)` in the basis `1, z, .., z^(d-1)`.
fn companion(g: &Polynomial) -> Matrix {
    let g = g.monic();
    let d = g.degree().unwrap_or(0);
    let mut c = Matrix::zeros(d, d);
    for k in 0..d {
        if k + 1 < d {
            c[(k + 1, k)] = Rational::from_integer(1.into());
        }
        c[(k, d - 1)] = -g.coeff(k);
    }
    c
}

/// A vector `v` over `Q[z]/(g)` with `(M0 + z M1) v = 0`, as a combination of
/// a rational kernel basis of the realified map.
fn realified_kernel(m0: &Matrix, m1: &Matrix, g: &Polynomial) -> Option<Vec<Polynomial>> {
    let d = g.degree().unwrap_or(0);
    let real = &m0.kron(&Matrix::identity(d)) + &m1.kron(&companion(g));
    let basis = real.kernel_basis();
    if basis.is_empty() {
        return None;
    }
    let mut v = vec![Rational::zero(); real.cols()];
    for (k, b) in basis.iter().enumerate() {
        let w = Rational::from_integer((k as i64 + 1).into());
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += &w * bi;
        }
    }
    Some(v.chunks(d).map(|c| Polynomial::new(c.to_vec())).collect())
}

fn vanishing_part(g: &Polynomial, v: &[Polynomial]) -> Polynomial {
    v.iter().fold(g.clone(), |acc, p| acc.gcd(p))
}

/// An annihilator over `Q[z]/(g)` for `g` the squarefree part of `common`.
fn algebraic_witness(psi: &ElemOp, split: &[(Matrix, Matrix); 2], common: &Polynomial) -> Result<Option<AlgebraicWitness>> {
    let [(a1, b1), (a2, b2)] = split;
    let mut g = common
        .exact_div(&common.gcd(&common.derivative()))
        .expect("gcd divides")
        .monic();
    while g.degree().unwrap_or(0) >= 1 {
        let y = realified_kernel(&a2.transpose(), &-&a1.transpose(), &g);
        let x = realified_kernel(b1, b2, &g);
        let (Some(y), Some(x)) = (y, x) else {
            return Ok(None);
        };
        let (hy, hx) = (vanishing_part(&g, &y), vanishing_part(&g, &x));
        let bad = (&hy * &hx).exact_div(&hy.gcd(&hx)).expect("lcm").monic();
        if bad.is_constant() {
            let w = AlgebraicWitness { modulus: g, row: y, col: x };
            if !w.annihilates(psi) {
                return Err(Error::Certificate("algebraic annihilator failed verification".into()));
            }
            return Ok(Some(w));
        }
        g = g.exact_div(&bad).expect("factor divides").monic();
    }
    Ok(None)
}

impl AnnihilatorReport {
    fn none() -> Self {
        AnnihilatorReport {
            status: AnnihilatorStatus::None,
            witness: None,
            pencil_parameter: None,
            chain_length: None,
            case: None,
            algebraic: None,
        }
    }

    fn multiplication(witness: ElemOp, case: &'static str, c: Option<PencilParameter>) -> Self {
        AnnihilatorReport {
            status: AnnihilatorStatus::Multiplication,
            witness: Some(witness),
            pencil_parameter: c,
            chain_length: None,
            case: Some(case),
            algebraic: None,
        }
    }
}

impl fmt::Display for AnnihilatorStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnnihilatorStatus::None => "none",
            AnnihilatorStatus::Multiplication => "multiplication",
            AnnihilatorStatus::Chain => "chain",
            AnnihilatorStatus::ExistsOverCOnly => "exists_over_C_only",
        })
    }
}

/// `n x n` matrix whose first row is `y`.
pub(crate) fn row_matrix(y: &[Rational], n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (j, v) in y.iter().enumerate() {
        m[(0, j)] = v.clone();
    }
    m
}

/// `n x n` matrix whose first column is `x`.
pub(crate) fn column_matrix(x: &[Rational], n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (i, v) in x.iter().enumerate() {
        m[(i, 0)] = v.clone();
    }
    m
}

/// The caller's two terms when already minimal, else a minimised split.
fn length_two_split(psi: &ElemOp) -> Result<[(Matrix, Matrix); 2]> {
    let terms = if psi.terms().len() == 2 && psi.length() == 2 {
        psi.terms().to_vec()
    } else {
        psi.minimize().into_terms()
    };
    let len = terms.len();
    <[(Matrix, Matrix); 2]>::try_from(terms)
        .map_err(|_| Error::pre(format!("target must have length 2, found {len}")))
}

/// `M_{E,F}` with `E A = 0` or `B F = 0`; `None` when both are invertible.
pub fn annihilator_of_mult(a: &Matrix, b: &Matrix) -> Result<Option<ElemOp>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::pre("coefficients must be nonzero"));
    }
    let n = a.rows();
    if let Some(y) = a.left_kernel_basis().first() {
        return ElemOp::mult(&row_matrix(y, n), &Matrix::identity(n)).map(Some);
    }
    if let Some(x) = b.kernel_basis().first() {
        return ElemOp::mult(&Matrix::identity(n), &column_matrix(x, n)).map(Some);
    }
    Ok(None)
}

/// Projective pencil parameters `c` for which both `A2 - c A1` and
/// `B1 + c B2` are singular.
fn finite_pencil_roots(split: &[(Matrix, Matrix); 2]) -> Result<(Vec<Rational>, Option<Polynomial>)> {
    let [(a1, b1), (a2, b2)] = split;
    let p = PolyMatrix::pencil(a2, &-a1)?.det()?;
    let q = PolyMatrix::pencil(b1, b2)?.det()?;
    let common = match (p.is_zero(), q.is_zero()) {
        (true, true) => {
            let c = small_rationals().find(|c| !c.is_zero()).expect("infinite sequence");
            return Ok((vec![c], None));
        }
        (true, false) => q,
        (false, true) => p,
        (false, false) => p.gcd(&q),
    };
    let mut roots = common.rational_roots();
    roots.dedup();
    roots.retain(|c| !c.is_zero());
    let mut deflated = common.clone();
    for r in common.rational_roots() {
        deflated = deflated
            .exact_div(&Polynomial::from_roots(&[r]))
            .expect("root divides");
    }
    let irrational = (roots.is_empty() && !deflated.is_constant()).then_some(deflated);
    Ok((roots, irrational))
}

/// Multiplication-operator annihilators of a length-two target, tried in the
/// order: common left kernel, common kernel, mixed boundary members, pencil.
pub fn mult_annihilator_search(psi: &ElemOp) -> Result<AnnihilatorReport> {
    let split = length_two_split(psi)?;
    let [(a1, b1), (a2, b2)] = &split;
    let n = psi.n();
    let id = Matrix::identity(n);
    let checked = |e: Matrix, f: Matrix| -> Result<ElemOp> {
        let w = ElemOp::mult(&e, &f)?;
        if w.is_zero() || !verify_zero(&w, psi) {
            return Err(Error::Certificate("constructed annihilator failed verification".into()));
        }
        Ok(w)
    };

    if let Some(y) = Matrix::hstack(&[a1, a2])?.left_kernel_basis().first() {
        let w = checked(row_matrix(y, n), id)?;
        return Ok(AnnihilatorReport::multiplication(w, "common_left_kernel", None));
    }
    if let Some(x) = Matrix::vstack(&[b1, b2])?.kernel_basis().first() {
        let w = checked(id, column_matrix(x, n))?;
        return Ok(AnnihilatorReport::multiplication(w, "common_kernel", None));
    }
    let boundary = [
        (a1, b2, PencilParameter::Infinity),
        (a2, b1, PencilParameter::Finite(Rational::zero())),
    ];
    for (a, b, c) in boundary {
        if let (Some(y), Some(x)) = (a.left_kernel_basis().first(), b.kernel_basis().first()) {
            let w = checked(row_matrix(y, n), column_matrix(x, n))?;
            return Ok(AnnihilatorReport::multiplication(w, "mixed", Some(c)));
        }
    }
    let (roots, irrational) = finite_pencil_roots(&split)?;
    for c in roots {
        let left = a2 - &a1.scale(&c);
        let right = b1 + &b2.scale(&c);
        if let (Some(y), Some(x)) = (left.left_kernel_basis().first(), right.kernel_basis().first()) {
            let w = checked(row_matrix(y, n), column_matrix(x, n))?;
            return Ok(AnnihilatorReport::multiplication(
                w,
                "pencil",
                Some(PencilParameter::Finite(c)),
            ));
        }
    }
    if let Some(common) = irrational {
        return Ok(AnnihilatorReport {
            status: AnnihilatorStatus::ExistsOverCOnly,
            algebraic: algebraic_witness(psi, &split, &common)?,
            ..AnnihilatorReport::none()
        });
    }
    Ok(AnnihilatorReport::none())
}

/// Solutions `z_1..z_k` of `B1 z_1 = 0`, `B2 z_j = B1 z_{j+1}`, `B2 z_k = 0`.
fn right_chain_basis(b1: &Matrix, b2: &Matrix, k: usize) -> Vec<Vec<Vector>> {
    let n = b1.cols();
    let mut sys = Matrix::zeros((k + 1) * n, k * n);
    sys.set_block(0, 0, b1);
    for j in 0..k {
        sys.set_block((j + 1) * n, j * n, b2);
        if j + 1 < k {
            sys.set_block((j + 1) * n, (j + 1) * n, &-b1);
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| v.chunks(n).map(<[Rational]>::to_vec).collect())
        .collect()
}

/// Row vectors `e_1..e_k` with `e_j A2 + e_{j+1} A1 = 0`.
fn left_chain_basis(a1: &Matrix, a2: &Matrix, k: usize) -> Vec<Vec<Vector>> {
    let n = a1.rows();
    // Transposed: A2^T e_j + A1^T e_{j+1} = 0.
    let mut sys = Matrix::zeros((k - 1) * n, k * n);
    for j in 0..k - 1 {
        sys.set_block(j * n, j * n, &a2.transpose());
        sys.set_block(j * n, (j + 1) * n, &a1.transpose());
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| v.chunks(n).map(<[Rational]>::to_vec).collect())
        .collect()
}

/// `sum_j z_j e_j` is the matrix of the bilinear form `T -> sum e_j T z_j`.
fn pairing(es: &[Vector], zs: &[Vector]) -> bool {
    let n = zs[0].len();
    (0..n).any(|r| {
        (0..es[0].len()).any(|c| {
            let s: Rational = es.iter().zip(zs).map(|(e, z)| &z[r] * &e[c]).sum();
            !s.is_zero()
        })
    })
}

/// A chain annihilator of length `k` for a length-two target.
pub fn chain_annihilator(psi: &ElemOp, k: usize) -> Result<Option<ChainSolution>> {
    if k < 2 {
        return Err(Error::pre("chain length must be at least 2"));
    }
    let split = length_two_split(psi)?;
    let [(a1, b1), (a2, b2)] = &split;
    let n = psi.n();
    let fs = right_chain_basis(b1, b2, k);
    if fs.is_empty() {
        return Ok(None);
    }
    let es = left_chain_basis(a1, a2, k);
    for z in &fs {
        for e in &es {
            if !pairing(e, z) {
                continue;
            }
            let sol = ChainSolution {
                e: e.iter().map(|row| row_matrix(row, n)).collect(),
                f: z.iter().map(|col| column_matrix(col, n)).collect(),
            };
            let delta = sol.assemble(n);
            if delta.is_zero() || !verify_zero(&delta, psi) {
                return Err(Error::Certificate("chain annihilator failed verification".into()));
            }
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

impl ChainSolution {
    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    /// `sum M_{E_i, F_i}`.
    pub fn assemble(&self, n: usize) -> ElemOp {
        ElemOp::new(n, self.e.iter().cloned().zip(self.f.iter().cloned()).collect())
            .expect("chain matrices are n x n")
    }

    /// `Gamma_i = M_{E_{k+1-i}, F_{k+1-i}}`.
    pub fn gammas(&self) -> Vec<ElemOp> {
        self.e
            .iter()
            .zip(&self.f)
            .rev()
            .map(|(e, f)| ElemOp::mult(e, f).expect("square"))
            .collect()
    }

    /// The defining relations against the split `Psi = M_{A1,B1} + M_{A2,B2}`.
    pub fn satisfies_relations(&self, split: &[(Matrix, Matrix); 2]) -> bool {
        let [(a1, b1), (a2, b2)] = split;
        let k = self.len();
        if k == 0 || self.f.len() != k {
            return false;
        }
        let f_ok = (b1 * &self.f[0]).is_zero()
            && (b2 * &self.f[k - 1]).is_zero()
            && (0..k - 1).all(|j| b2 * &self.f[j] == b1 * &self.f[j + 1]);
        let e_ok = (0..k - 1).all(|j| (&(&self.e[j] * a2) + &(&self.e[j + 1] * a1)).is_zero());
        f_ok && e_ok
    }
}

/// `X o Psi == 0`.
pub fn verify_zero(x: &ElemOp, psi: &ElemOp) -> bool {
    x.compose(psi).map(|c| c.is_zero()).unwrap_or(false)
}

/// Checks `Psi = M1 + M2`, `Phi = sum Gamma_i`, and
/// `Gamma_1 M2 = Gamma_k M1 = 0`, `Gamma_i M1 + Gamma_{i+1} M2 = 0`.
pub fn verify_chain_structure(
    phi: &ElemOp,
    psi: &ElemOp,
    sol: &ChainSolution,
    split: &[(Matrix, Matrix); 2],
) -> bool {
    let n = psi.n();
    let Ok(m1) = ElemOp::mult(&split[0].0, &split[0].1) else {
        return false;
    };
    let Ok(m2) = ElemOp::mult(&split[1].0, &split[1].1) else {
        return false;
    };
    let Ok(sum) = m1.plus(&m2) else {
        return false;
    };
    if !sum.same_operator(psi) || !sol.assemble(n).same_operator(phi) {
        return false;
    }
    let gammas = sol.gammas();
    let k = gammas.len();
    if k < 2 {
        return false;
    }
    let zero = |x: &ElemOp, m: &ElemOp| verify_zero(x, m);
    if !zero(&gammas[0], &m2) || !zero(&gammas[k - 1], &m1) {
        return false;
    }
    (0..k - 1).all(|i| {
        let a = gammas[i].compose(&m1).expect("same n");
        let b = gammas[i + 1].compose(&m2).expect("same n");
        a.plus(&b).expect("same n").is_zero()
    })
}

/// Nonzero `lambda` with `lambda` an eigenvalue of `B` and `-1/lambda` an
/// eigenvalue of `A`, both rational.
pub fn upsilon_candidates(a: &Matrix, b: &Matrix) -> Result<Vec<Rational>> {
    let roots_a = char_polynomial(a)?.rational_roots();
    let mut roots_b = char_polynomial(b)?.rational_roots();
    roots_b.dedup();
    Ok(roots_b
        .into_iter()
        .filter(|l| !l.is_zero() && roots_a.contains(&(-l.recip())))
        .collect())
}

/// Annihilator of `I + M_{A,B}` of chain length `len` at parameter `lambda`,
/// using `I + M_{A,B} = M_{I + lambda A, I} + M_{A, B - lambda I}`.
pub fn upsilon_annihilator(a: &Matrix, b: &Matrix, lambda: &Rational, len: usize) -> Result<Option<ElemOp>> {
    if lambda.is_zero() {
        return Err(Error::pre("lambda must be nonzero"));
    }
    if len == 0 {
        return Err(Error::pre("chain length must be positive"));
    }
    let upsilon = ElemOp::upsilon(a, b)?;
    if upsilon.length() != 2 {
        return Err(Error::pre("I + M_{A,B} must have length 2"));
    }
    let n = a.rows();
    let id = Matrix::identity(n);
    let shifted = b - &id.scale(lambda);
    let nmat = &id + &a.scale(lambda);

    let top = shifted.pow(len - 1);
    let Some(x) = shifted
        .pow(len)
        .kernel_basis()
        .into_iter()
        .find(|x| top.mul_vec(x).iter().any(|v| !v.is_zero()))
    else {
        return Ok(None);
    };
    let mut fs = vec![column_matrix(&x, n)];
    for _ in 1..len {
        let next = &shifted * fs.last().expect("nonempty");
        fs.push(next);
    }
    fs.reverse();

    let ntop = nmat.pow(len - 1);
    let Some(y) = nmat
        .pow(len)
        .left_kernel_basis()
        .into_iter()
        .find(|y| ntop.left_mul_vec(y).iter().any(|v| !v.is_zero()))
    else {
        return Ok(None);
    };
    let mut s = Matrix::zeros(n, n);
    let mut power = id.clone();
    for _ in 1..len {
        power = &power * &nmat;
        s = &s + &power;
    }
    let step = s.scale(lambda);
    let mut es = vec![row_matrix(&y, n)];
    for _ in 1..len {
        let next = es.last().expect("nonempty") * &step;
        es.push(next);
    }

    let relations = (0..len - 1).all(|k| (&(&es[k] * &nmat) + &(&es[k + 1] * a)).is_zero())
        && (&es[len - 1] * &nmat).is_zero()
        && (&shifted * &fs[0]).is_zero();
    if !relations {
        return Err(Error::Certificate("chain relations failed".into()));
    }
    let delta = ElemOp::new(n, es.into_iter().zip(fs).collect())?;
    if delta.is_zero() {
        return Ok(None);
    }
    if !verify_zero(&delta, &upsilon) {
        return Err(Error::Certificate("constructed operator does not annihilate".into()));
    }
    Ok(Some(delta))
}

/// Full search: multiplication operators first, then chains of length
/// `2..=max_chain`.
pub fn find_annihilator(psi: &ElemOp, max_chain: usize) -> Result<AnnihilatorReport> {
    let minimal = psi.minimize();
    match minimal.terms().len() {
        0 => Err(Error::pre("target is the zero operator")),
        1 => {
            let (a, b) = &minimal.terms()[0];
            Ok(match annihilator_of_mult(a, b)? {
                Some(w) => AnnihilatorReport::multiplication(w, "zero_divisor", None),
                None => AnnihilatorReport::none(),
            })
        }
        2 => {
            let report = mult_annihilator_search(psi)?;
            if report.status == AnnihilatorStatus::Multiplication {
                return Ok(report);
            }
            for k in 2..=max_chain {
                if let Some(sol) = chain_annihilator(psi, k)? {
                    return Ok(AnnihilatorReport {
                        status: AnnihilatorStatus::Chain,
                        witness: Some(sol.assemble(psi.n())),
                        pencil_parameter: None,
                        chain_length: Some(k),
                        case: Some("chain"),
                        algebraic: None,
                    });
                }
            }
            Ok(report)
        }
        l => Err(Error::pre(format!("targets of length {l} are not supported"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    #[test]
    fn mult_examples() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let id = Matrix::identity(2);
        let w = annihilator_of_mult(&a, &id).unwrap().unwrap();
        assert_eq!(w.terms()[0].0, m(&[&[0, 1], &[0, 0]]));
        assert!(verify_zero(&w, &ElemOp::mult(&a, &id).unwrap()));

        let inv = m(&[&[1, 1], &[0, 1]]);
        assert!(annihilator_of_mult(&inv, &id).unwrap().is_none());

        let w = annihilator_of_mult(&id, &a).unwrap().unwrap();
        let f = &w.terms()[0].1;
        assert!((&a * f).is_zero() && !f.is_zero());
        assert!(annihilator_of_mult(&Matrix::zeros(2, 2), &id).is_err());
    }

    #[test]
    fn search_pencil_case() {
        let psi = ElemOp::new(
            2,
            vec![
                (Matrix::diag(&[int(1), int(2)]), Matrix::diag(&[int(1), int(3)])),
                (Matrix::identity(2), -&Matrix::identity(2)),
            ],
        )
        .unwrap();
        let r = mult_annihilator_search(&psi).unwrap();
        assert_eq!(r.status, AnnihilatorStatus::Multiplication);
        assert_eq!(r.pencil_parameter, Some(PencilParameter::Finite(int(1))));
        assert!(verify_zero(r.witness.as_ref().unwrap(), &psi));
    }

    #[test]
    fn search_none_for_invertible() {
        let psi = ElemOp::new(
            2,
            vec![
                (Matrix::identity(2), Matrix::identity(2)),
                (m(&[&[1, 1], &[0, 1]]), m(&[&[1, 0], &[0, 2]])),
            ],
        )
        .unwrap();
        assert!(psi.operator_matrix().is_invertible());
        let r = mult_annihilator_search(&psi).unwrap();
        assert_eq!(r.status, AnnihilatorStatus::None);
        assert!(r.witness.is_none());
        for k in 2..=4 {
            assert!(chain_annihilator(&psi, k).unwrap().is_none());
        }
    }

    #[test]
    fn search_common_left_kernel() {
        let psi = ElemOp::new(
            2,
            vec![
                (m(&[&[1, 2], &[0, 0]]), m(&[&[1, 0], &[0, 1]])),
                (m(&[&[3, 1], &[0, 0]]), m(&[&[0, 1], &[1, 0]])),
            ],
        )
        .unwrap();
        let r = mult_annihilator_search(&psi).unwrap();
        assert_eq!(r.case, Some("common_left_kernel"));
        assert_eq!(r.witness.as_ref().unwrap().terms()[0].1, Matrix::identity(2));
    }

    #[test]
    fn search_irrational_roots() {
        // det(A2 - c A1) = det(B1 + c B2) = c^2 - 2 up to sign; no rational root.
        let a1 = Matrix::identity(2);
        let a2 = m(&[&[0, 2], &[1, 0]]);
        let b1 = m(&[&[0, 2], &[1, 0]]);
        let b2 = -&Matrix::identity(2);
        let psi = ElemOp::new(2, vec![(a1, b1), (a2, b2)]).unwrap();
        let r = mult_annihilator_search(&psi).unwrap();
        assert_eq!(r.status, AnnihilatorStatus::ExistsOverCOnly);
        assert!(!psi.operator_matrix().is_invertible());
        let w = r.algebraic.unwrap();
        assert_eq!(w.modulus, Polynomial::from_ints(&[-2, 0, 1]));
        assert!(w.annihilates(&psi));

        // row (1, z), column (z, 1) by hand
        let z = Polynomial::z();
        let by_hand = AlgebraicWitness {
            modulus: Polynomial::from_ints(&[-2, 0, 1]),
            row: vec![Polynomial::one(), z.clone()],
            col: vec![z, Polynomial::one()],
        };
        assert!(by_hand.annihilates(&psi));
        let wrong = AlgebraicWitness { col: vec![Polynomial::one(), Polynomial::one()], ..by_hand };
        assert!(!wrong.annihilates(&psi));
    }

    #[test]
    fn algebraic_witness_with_degenerate_left_pencil() {
        // det(A2 - c A1) vanishes identically; det(B1 + c B2) = 3c^2 - 2c - 2
        let psi = ElemOp::new(
            2,
            vec![
                (m(&[&[0, -1], &[0, -3]]), m(&[&[-1, 1], &[-1, 3]])),
                (m(&[&[0, -2], &[0, -2]]), m(&[&[-2, 3], &[-1, 0]])),
            ],
        )
        .unwrap();
        let r = mult_annihilator_search(&psi).unwrap();
        assert_eq!(r.status, AnnihilatorStatus::ExistsOverCOnly);
        let w = r.algebraic.unwrap();
        assert_eq!(w.modulus, Polynomial::from_ints(&[-2, -2, 3]).monic());
        assert!(w.annihilates(&psi));
    }

    #[test]
    fn search_rejects_wrong_length() {
        let one = ElemOp::identity(2);
        assert!(mult_annihilator_search(&one).is_err());
        assert!(chain_annihilator(&one, 2).is_err());
    }

    fn chain_target() -> ElemOp {
        // B1, B2 carry the A_2 pencil in their first row; A1, A2 leave a
        // length-two left chain.
        let b1 = m(&[&[0, 1], &[0, 0]]);
        let b2 = m(&[&[1, 0], &[0, 0]]);
        let a1 = m(&[&[1, 0], &[0, 1]]);
        let a2 = m(&[&[1, 1], &[0, 1]]);
        ElemOp::new(2, vec![(a1, b1), (a2, b2)]).unwrap()
    }

    #[test]
    fn chain_annihilator_relations() {
        let psi = chain_target();
        let split = length_two_split(&psi).unwrap();
        let sol = chain_annihilator(&psi, 2).unwrap().unwrap();
        assert!(sol.satisfies_relations(&split));
        let phi = sol.assemble(2);
        assert!(!phi.is_zero());
        assert!(verify_zero(&phi, &psi));
        assert!(verify_chain_structure(&phi, &psi, &sol, &split));
        assert!(chain_annihilator(&psi, 1).is_err());
    }

    #[test]
    fn verify_zero_examples() {
        let psi = ElemOp::identity(2);
        let x = ElemOp::mult(&m(&[&[1, 0], &[0, 0]]), &Matrix::identity(2)).unwrap();
        assert!(!verify_zero(&x, &psi));
        assert!(verify_zero(&ElemOp::zero(2), &psi));
    }

    #[test]
    fn upsilon_annihilator_examples() {
        let lambda = int(1);
        let j = m(&[&[0, 1], &[0, 0]]);
        let b = &Matrix::identity(2) + &j;
        let a = &j.transpose() - &Matrix::identity(2);
        assert_eq!(upsilon_candidates(&a, &b).unwrap(), vec![int(1)]);
        let w = upsilon_annihilator(&a, &b, &lambda, 2).unwrap().unwrap();
        assert!(verify_zero(&w, &ElemOp::upsilon(&a, &b).unwrap()));
        assert!(upsilon_annihilator(&a, &b, &int(0), 2).is_err());

        // diagonalizable B has no chain of length two
        let b = Matrix::diag(&[int(1), int(2)]);
        assert!(upsilon_annihilator(&a, &b, &lambda, 2).unwrap().is_none());
        let w = upsilon_annihilator(&a, &b, &lambda, 1).unwrap().unwrap();
        assert!(verify_zero(&w, &ElemOp::upsilon(&a, &b).unwrap()));

        // invertible Upsilon has no annihilator at any parameter
        let a = Matrix::diag(&[int(1), int(2)]);
        let b = j.clone();
        for l in [int(1), int(-1), frac(1, 2)] {
            for len in 1..=2 {
                assert!(upsilon_annihilator(&a, &b, &l, len).unwrap().is_none());
            }
        }
    }

    #[test]
    fn find_annihilator_dispatch() {
        let inv = ElemOp::upsilon(&Matrix::diag(&[int(1), int(2)]), &m(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(find_annihilator(&inv, 4).unwrap().status, AnnihilatorStatus::None);
        let single = ElemOp::mult(&m(&[&[0, 1], &[0, 0]]), &Matrix::identity(2)).unwrap();
        assert_eq!(find_annihilator(&single, 4).unwrap().status, AnnihilatorStatus::Multiplication);
        assert!(find_annihilator(&ElemOp::zero(2), 4).is_err());
    }
}
