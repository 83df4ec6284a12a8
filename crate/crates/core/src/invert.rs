//! Inverses of elementary operators with certified length.
//!
//! Every inverse is checked by composing on both sides, and its length is
//! always read off the realignment rank of the result.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annihil::{mult_annihilator_search, verify_zero, AlgebraicWitness, AnnihilatorStatus};
use crate::elemop::ElemOp;
use crate::error::{Error, Result};
use crate::exactnum::{
    char_polynomial, int, minimal_polynomial, small_rationals, Matrix, PolyMatrix, Polynomial, Rational,
};

#[derive(Clone, Debug)]
pub struct InverseReport {
    pub invertible: bool,
    pub inverse: Option<ElemOp>,
    pub inverse_length: Option<usize>,
    pub predicted_length: Option<usize>,
    /// How `predicted_length` was obtained.
    pub provenance: Option<&'static str>,
    /// Auxiliary scalar chosen during the construction, if any.
    pub lambda: Option<Rational>,
}

impl InverseReport {
    fn singular() -> Self {
        InverseReport {
            invertible: false,
            inverse: None,
            inverse_length: None,
            predicted_length: None,
            provenance: None,
            lambda: None,
        }
    }

    /// Prediction agrees with the certified length.
    pub fn prediction_holds(&self) -> bool {
        self.predicted_length.is_some() && self.predicted_length == self.inverse_length
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    TwoInvertible,
    Biorthogonal,
}

#[derive(Clone, Debug)]
pub struct Decomposition2 {
    pub m1: (Matrix, Matrix),
    pub m2: (Matrix, Matrix),
    pub kind: DecompositionKind,
    /// Matching split `Gamma_1 + Gamma_2` of the inverse (biorthogonal only).
    pub inverse_split: Option<[(Matrix, Matrix); 2]>,
    /// The `2 x 2` change of representation applied to the input terms.
    pub g: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationInverse {
    pub lambda: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub c: Matrix,
    pub d: Matrix,
}

fn deg(a: &Matrix) -> Result<usize> {
    Ok(minimal_polynomial(a)?.degree().unwrap_or(0))
}

fn inverse_of(a: &Matrix) -> Result<Matrix> {
    a.inverse()?.ok_or_else(|| Error::pre("matrix is singular"))
}

/// Both `phi o inv` and `inv o phi` are the identity.
pub fn is_two_sided_inverse(phi: &ElemOp, inv: &ElemOp) -> bool {
    let id = ElemOp::identity(phi.n());
    let left = phi.compose(inv).map(|c| c.same_operator(&id)).unwrap_or(false);
    let right = inv.compose(phi).map(|c| c.same_operator(&id)).unwrap_or(false);
    left && right
}

fn certify(phi: &ElemOp, inverse: ElemOp, predicted: Option<usize>, provenance: &'static str) -> Result<InverseReport> {
    let inverse = inverse.minimize();
    if !is_two_sided_inverse(phi, &inverse) {
        return Err(Error::Certificate("constructed inverse fails composition check".into()));
    }
    Ok(InverseReport {
        invertible: true,
        inverse_length: Some(inverse.terms().len()),
        inverse: Some(inverse),
        predicted_length: predicted,
        provenance: Some(provenance),
        lambda: None,
    })
}

pub fn is_invertible(phi: &ElemOp) -> bool {
    phi.operator_matrix().is_invertible()
}

/// Inverse through the `n^2 x n^2` operator matrix.
pub fn inverse_elemop(phi: &ElemOp) -> Result<InverseReport> {
    let Some(k_inv) = phi.operator_matrix().inverse()? else {
        return Ok(InverseReport::singular());
    };
    let inverse = ElemOp::from_operator_matrix(&k_inv, phi.n())?;
    certify(phi, inverse, None, "operator matrix inversion")
}

/// `M_{A^-1, B^-1}` when both factors are invertible.
pub fn mult_one_sided(a: &Matrix, b: &Matrix) -> Result<Option<ElemOp>> {
    match (a.inverse()?, b.inverse()?) {
        (Some(ai), Some(bi)) => ElemOp::mult(&ai, &bi).map(Some),
        _ => Ok(None),
    }
}

/// The operator `D'` with `D' T_{A,B} = T_{A,B} D' = L_{m_B(A)}`.
pub fn derivation_aux(a: &Matrix, b: &Matrix) -> Result<ElemOp> {
    let m = minimal_polynomial(b)?;
    let n = m.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::pre("B must not be a scalar matrix"));
    }
    let size = a.rows();
    if a.shape() != b.shape() {
        return Err(Error::dims(format!("{size}x{size}"), format!("{}x{}", b.rows(), b.cols())));
    }
    let alpha = |j: usize| m.coeff(j);
    let a_pows: Vec<Matrix> = (0..=n).map(|k| a.pow(k)).collect();
    let b_pows: Vec<Matrix> = (0..n).map(|k| b.pow(k)).collect();
    let mut terms = Vec::with_capacity(n);
    for i in 1..=n.saturating_sub(2) {
        let mut left = Matrix::zeros(size, size);
        for j in i + 1..=n {
            left = &left + &a_pows[j - i].scale(&alpha(j));
        }
        terms.push((left, b_pows[i - 1].clone()));
    }
    terms.push((a.clone(), b_pows[n - 2].clone()));
    let mut right = Matrix::zeros(size, size);
    for (j, p) in b_pows.iter().enumerate().take(n) {
        right = &right + &p.scale(&alpha(j + 1));
    }
    terms.push((Matrix::identity(size), right));
    ElemOp::new(size, terms)
}

/// Inverse of `T -> AT - TB` through the explicit formula, using whichever
/// side has the smaller minimal polynomial.
pub fn derivation_inverse(a: &Matrix, b: &Matrix) -> Result<InverseReport> {
    let tau = ElemOp::derivation(a, b)?;
    if tau.length() != 2 {
        return Err(Error::pre("T_{A,B} must have length 2"));
    }
    if !char_polynomial(a)?.gcd(&char_polynomial(b)?).is_constant() {
        return Ok(InverseReport::singular());
    }
    let (da, db) = (deg(a)?, deg(b)?);
    let inverse = if db <= da {
        let m_b = minimal_polynomial(b)?;
        let scale = inverse_of(&m_b.eval_matrix(a))?;
        ElemOp::left(&scale)?.compose(&derivation_aux(a, b)?)?
    } else {
        // T_{A,B} = -t o T_{B^T, A^T} o t with t the transpose map.
        let (at, bt) = (a.transpose(), b.transpose());
        let m_a = minimal_polynomial(a)?;
        let scale = inverse_of(&m_a.eval_matrix(&bt))?;
        let inner = ElemOp::left(&scale)?.compose(&derivation_aux(&bt, &at)?)?;
        inner.transposed().neg()
    };
    let report = certify(&tau, inverse, Some(da.min(db)), "min degree of the two minimal polynomials")?;
    let oracle = inverse_elemop(&tau)?;
    match (&report.inverse, &oracle.inverse) {
        (Some(x), Some(y)) if x.same_operator(y) => Ok(report),
        _ => Err(Error::Certificate("formula disagrees with direct inversion".into())),
    }
}

/// Inverse of `T -> T + ATB` by reduction to a generalised derivation.
pub fn upsilon_inverse(a: &Matrix, b: &Matrix) -> Result<InverseReport> {
    let ups = ElemOp::upsilon(a, b)?;
    if ups.length() != 2 {
        return Err(Error::pre("I + M_{A,B} must have length 2"));
    }
    if !is_invertible(&ups) {
        return Ok(InverseReport::singular());
    }
    let n = a.rows();
    let id = Matrix::identity(n);
    let lambda = small_rationals()
        .find(|l| (b - &id.scale(l)).is_invertible() && (&id + &a.scale(l)).is_invertible())
        .expect("finitely many excluded values");
    let p = inverse_of(&(&id + &a.scale(&lambda)))?;
    let q = inverse_of(&(b - &id.scale(&lambda)))?;
    // M_{P,Q} o (I + M_{A,B}) = T_{PA, -Q}
    let inner = derivation_inverse(&(&p * a), &-&q)?;
    let inner_inv = inner
        .inverse
        .ok_or_else(|| Error::Certificate("reduced derivation is singular".into()))?;
    let inverse = inner_inv.compose(&ElemOp::mult(&p, &q)?)?;
    let predicted = deg(a)?.min(deg(b)?);
    let mut report = certify(&ups, inverse, Some(predicted), "min degree of the two minimal polynomials")?;
    report.lambda = Some(lambda);
    Ok(report)
}

/// Reads `C, D` with `phi = L_C - R_D`, if `phi` is a generalised derivation.
pub fn as_generalized_derivation(phi: &ElemOp) -> Result<Option<(Matrix, Matrix)>> {
    let n = phi.n();
    let n2 = n * n;
    let r = phi.realign();
    let vi = Matrix::identity(n).vec();
    // realign = vec(C) vec(I)^T - vec(I) vec(D)^T
    let mut sys = Matrix::zeros(n2 * n2, 2 * n2);
    let mut rhs = Vec::with_capacity(n2 * n2);
    for p in 0..n2 {
        for q in 0..n2 {
            let row = p * n2 + q;
            sys[(row, p)] = vi[q].clone();
            sys[(row, n2 + q)] = -vi[p].clone();
            rhs.push(r[(p, q)].clone());
        }
    }
    Ok(sys.solve(&rhs)?.map(|x| {
        (
            Matrix::unvec(&x[..n2], n, n).expect("sized"),
            Matrix::unvec(&x[n2..], n, n).expect("sized"),
        )
    }))
}

/// `(A - lambda I)^2 = alpha I` with `lambda = -p/2` from `z^2 + p z + q`.
fn scalar_square(a: &Matrix) -> Result<Option<(Rational, Rational)>> {
    let m = minimal_polynomial(a)?;
    if m.degree() != Some(2) {
        return Ok(None);
    }
    let lambda = -m.coeff(1) / int(2);
    let shifted = a - &Matrix::scalar(a.rows(), lambda.clone());
    let sq = &shifted * &shifted;
    let alpha = sq[(0, 0)].clone();
    if sq != Matrix::scalar(a.rows(), alpha.clone()) {
        return Ok(None);
    }
    Ok(Some((lambda, alpha)))
}

/// When the inverse of `T_{A,B}` is itself a generalised derivation, returns
/// `(lambda, alpha, beta, C, D)` with `T_{A,B}^-1 = T_{C,D}`.
pub fn derivation_inverse_is_derivation(a: &Matrix, b: &Matrix) -> Result<Option<DerivationInverse>> {
    let tau = ElemOp::derivation(a, b)?;
    if tau.length() != 2 {
        return Err(Error::pre("T_{A,B} must have length 2"));
    }
    if !is_invertible(&tau) {
        return Err(Error::pre("T_{A,B} must be invertible"));
    }
    let (Some((la, alpha)), Some((lb, beta))) = (scalar_square(a)?, scalar_square(b)?) else {
        return Ok(None);
    };
    if la != lb || alpha == beta {
        return Ok(None);
    }
    let n = a.rows();
    let lambda = la;
    let denom = (&alpha - &beta).recip();
    let c = (a - &Matrix::scalar(n, lambda.clone())).scale(&denom);
    let d = (&Matrix::scalar(n, lambda.clone()) - b).scale(&denom);
    let candidate = ElemOp::derivation(&c, &d)?;
    if !is_two_sided_inverse(&tau, &candidate) {
        return Err(Error::Certificate("derivation inverse fails composition check".into()));
    }
    Ok(Some(DerivationInverse { lambda, alpha, beta, c, d }))
}

/// Inverse of `M_{A,B} + M_{C,D}` with `B`, `C` invertible, using
/// `M_{A,B} + M_{C,D} = M_{C,B} o T_{C^-1 A, -D B^-1}`.
pub fn general_length2_inverse_length(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<InverseReport> {
    let b_inv = b.inverse()?.ok_or_else(|| Error::pre("B must be invertible"))?;
    let c_inv = c.inverse()?.ok_or_else(|| Error::pre("C must be invertible"))?;
    let delta = ElemOp::new(a.rows(), vec![(a.clone(), b.clone()), (c.clone(), d.clone())])?;
    if delta.length() != 2 {
        return Err(Error::pre("operator must have length 2"));
    }
    let x = &c_inv * a;
    let y = d * &b_inv;
    let inner = derivation_inverse(&x, &-&y)?;
    let Some(inner_inv) = inner.inverse else {
        return Ok(InverseReport::singular());
    };
    let inverse = inner_inv.compose(&ElemOp::mult(&c_inv, &b_inv)?)?;
    let predicted = deg(&x)?.min(deg(&y)?);
    certify(&delta, inverse, Some(predicted), "min degree of C^-1 A and D B^-1")
}

fn split_of(delta: &ElemOp) -> Result<[(Matrix, Matrix); 2]> {
    let terms = if delta.terms().len() == 2 && delta.length() == 2 {
        delta.terms().to_vec()
    } else {
        delta.minimize().into_terms()
    };
    let len = terms.len();
    <[(Matrix, Matrix); 2]>::try_from(terms)
        .map_err(|_| Error::pre(format!("operator must have length 2, found {len}")))
}

/// Applies `(A'_i) = G (A_i)`, `(B'_i) = G^-T (B_i)`.
fn transform(split: &[(Matrix, Matrix); 2], g: &Matrix) -> Option<[(Matrix, Matrix); 2]> {
    let h = g.inverse().ok()??.transpose();
    let comb = |w: &Matrix, i: usize, x: &Matrix, y: &Matrix| &x.scale(&w[(i, 0)]) + &y.scale(&w[(i, 1)]);
    let [(a1, b1), (a2, b2)] = split;
    Some([
        (comb(g, 0, a1, a2), comb(&h, 0, b1, b2)),
        (comb(g, 1, a1, a2), comb(&h, 1, b1, b2)),
    ])
}

/// `det(x A1 + y A2)` vanishes identically on the pencil of either side.
pub fn sum_of_invertibles_impossible(delta: &ElemOp) -> Result<bool> {
    let [(a1, b1), (a2, b2)] = split_of(delta)?;
    Ok(PolyMatrix::pencil(&a1, &a2)?.det()?.is_zero() || PolyMatrix::pencil(&b1, &b2)?.det()?.is_zero())
}

/// Rewrites a length-two operator as `M_{A,B} + M_{C,D}` with all four
/// coefficients invertible.
pub fn sum_of_invertibles(delta: &ElemOp, seed: u64) -> Result<Option<Decomposition2>> {
    let split = split_of(delta)?;
    if sum_of_invertibles_impossible(delta)? {
        return Ok(None);
    }
    let all_invertible = |s: &[(Matrix, Matrix); 2]| s.iter().all(|(a, b)| a.is_invertible() && b.is_invertible());
    let accept = |g: Matrix| -> Option<Decomposition2> {
        let t = transform(&split, &g)?;
        if !all_invertible(&t) {
            return None;
        }
        let rebuilt = ElemOp::new(delta.n(), t.to_vec()).ok()?;
        if !rebuilt.same_operator(delta) {
            return None;
        }
        let [m1, m2] = t;
        Some(Decomposition2 {
            m1,
            m2,
            kind: DecompositionKind::TwoInvertible,
            inverse_split: None,
            g: Some(g),
        })
    };
    let small: Vec<Rational> = small_rationals().take(9).collect();
    for mu in &small {
        for nu in &small {
            let g = Matrix::from_rows(vec![
                vec![Rational::one() + mu * nu, mu.clone()],
                vec![nu.clone(), Rational::one()],
            ])?;
            if let Some(d) = accept(g) {
                return Ok(Some(d));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let entries: Vec<Rational> = (0..4).map(|_| int(rng.gen_range(-7..=7))).collect();
        let g = Matrix::new(2, 2, entries)?;
        if let Some(d) = accept(g) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Projective roots `(x, y)` of `det(x P1 + y P2)`, including infinity.
fn projective_roots(p1: &Matrix, p2: &Matrix) -> Result<Option<Vec<(Rational, Rational)>>> {
    let f = PolyMatrix::pencil(p1, p2)?.det()?;
    if f.is_zero() {
        return Ok(None);
    }
    let mut roots: Vec<(Rational, Rational)> = Vec::new();
    let mut distinct = f.rational_roots();
    distinct.dedup();
    roots.extend(distinct.into_iter().map(|t| (Rational::one(), t)));
    if f.degree().unwrap_or(0) < p1.rows() {
        roots.push((Rational::zero(), Rational::one()));
    }
    Ok(Some(roots))
}

fn as_mult(pair: &(Matrix, Matrix)) -> ElemOp {
    ElemOp::mult(&pair.0, &pair.1).expect("square")
}

/// The eight relations between `Delta = M1 + M2` and `Delta^-1 = G1 + G2`.
pub fn verify_biorthogonal(delta: &ElemOp, inverse: &ElemOp, dec: &Decomposition2) -> bool {
    let Some([g1, g2]) = &dec.inverse_split else {
        return false;
    };
    let (m1, m2) = (as_mult(&dec.m1), as_mult(&dec.m2));
    let (g1, g2) = (as_mult(g1), as_mult(g2));
    let id = ElemOp::identity(delta.n());
    let zero = |x: &ElemOp, y: &ElemOp| x.compose(y).map(|c| c.is_zero()).unwrap_or(false);
    let sum = |x: ElemOp, y: ElemOp| x.plus(&y).expect("same n");
    let comp = |x: &ElemOp, y: &ElemOp| x.compose(y).expect("same n");
    zero(&g1, &m2)
        && zero(&g2, &m1)
        && zero(&m1, &g2)
        && zero(&m2, &g1)
        && sum(m1.clone(), m2.clone()).same_operator(delta)
        && sum(g1.clone(), g2.clone()).same_operator(inverse)
        && sum(comp(&m1, &g1), comp(&m2, &g2)).same_operator(&id)
        && sum(comp(&g1, &m1), comp(&g2, &m2)).same_operator(&id)
}

fn find_biorthogonal(delta: &ElemOp, inverse: &ElemOp) -> Result<Option<Decomposition2>> {
    let split = split_of(delta)?;
    let [(a1, b1), (a2, b2)] = &split;
    let mut candidates: Vec<(Rational, Rational)> = Vec::new();
    if let Some(roots) = projective_roots(a1, a2)? {
        candidates.extend(roots);
    }
    if let Some(roots) = projective_roots(b1, b2)? {
        // B-side coefficient proportional to r forces the other A-side
        // direction to be orthogonal to r.
        candidates.extend(roots.into_iter().map(|(x, y)| (-y, x)));
    }
    let k_inv = inverse.operator_matrix();
    let n = delta.n();
    for (i, p) in candidates.iter().enumerate() {
        for (j, q) in candidates.iter().enumerate() {
            if i == j {
                continue;
            }
            let g_cols = Matrix::from_rows(vec![vec![p.0.clone(), q.0.clone()], vec![p.1.clone(), q.1.clone()]])?;
            // Rows of G act on the A side, so G is the transpose of the
            // column matrix of directions.
            let g = g_cols.transpose();
            let Some(t) = transform(&split, &g) else {
                continue;
            };
            let (k1, k2) = (as_mult(&t[0]).operator_matrix(), as_mult(&t[1]).operator_matrix());
            if !(&(&k1 * &k_inv) * &k2).is_zero() || !(&(&k2 * &k_inv) * &k1).is_zero() {
                continue;
            }
            let gammas: Vec<ElemOp> = [&k1, &k2]
                .iter()
                .map(|k| ElemOp::from_operator_matrix(&(&(&k_inv * k) * &k_inv), n))
                .collect::<Result<_>>()?;
            if gammas.iter().any(|g| g.terms().len() != 1) {
                continue;
            }
            let gs = [gammas[0].terms()[0].clone(), gammas[1].terms()[0].clone()];
            let [m1, m2] = t;
            let dec = Decomposition2 {
                m1,
                m2,
                kind: DecompositionKind::Biorthogonal,
                inverse_split: Some(gs),
                g: Some(g),
            };
            if verify_biorthogonal(delta, inverse, &dec) {
                return Ok(Some(dec));
            }
        }
    }
    Ok(None)
}

/// A decomposition `Delta = M1 + M2` that is either biorthogonal to a
/// matching split of `Delta^-1`, or has all coefficients invertible.
pub fn biorthogonal_decomposition(delta: &ElemOp, seed: u64) -> Result<Option<Decomposition2>> {
    if delta.length() != 2 {
        return Ok(None);
    }
    let report = inverse_elemop(delta)?;
    let Some(inverse) = report.inverse else {
        return Ok(None);
    };
    if inverse.terms().len() != 2 {
        return Ok(None);
    }
    if let Some(dec) = find_biorthogonal(delta, &inverse)? {
        return Ok(Some(dec));
    }
    sum_of_invertibles(delta, seed)
}

/// Outcome of splitting a length-two operator on `M_n` into the two
/// possible behaviours.
#[derive(Clone, Debug)]
pub enum Dichotomy {
    /// A multiplication operator `X` with `X o Psi = 0`.
    Annihilated(ElemOp),
    /// Such an `X` exists only with entries in a proper extension of `Q`.
    AnnihilatedOverExtension(AlgebraicWitness),
    SumOfInvertibles(Box<Decomposition2>),
    Neither,
}

/// Either a multiplication annihilator or a decomposition into two
/// invertible multiplication operators.
pub fn mn_dichotomy(psi: &ElemOp, seed: u64) -> Result<Dichotomy> {
    let report = mult_annihilator_search(psi)?;
    match (report.status, report.witness, report.algebraic) {
        (AnnihilatorStatus::Multiplication, Some(w), _) if verify_zero(&w, psi) && w.length() == 1 => {
            return Ok(Dichotomy::Annihilated(w));
        }
        (AnnihilatorStatus::ExistsOverCOnly, _, Some(w)) if w.annihilates(psi) => {
            return Ok(Dichotomy::AnnihilatedOverExtension(w));
        }
        _ => {}
    }
    match sum_of_invertibles(psi, seed)? {
        Some(d) => Ok(Dichotomy::SumOfInvertibles(Box::new(d))),
        None => Ok(Dichotomy::Neither),
    }
}

#[derive(Clone, Debug)]
pub struct SideConditions {
    /// Dimension of the product span.
    pub product_dim: usize,
    pub dim_bound: bool,
    pub zero_divisors: bool,
    pub inverses: bool,
}

impl SideConditions {
    pub fn holds(&self) -> bool {
        self.dim_bound && self.zero_divisors && self.inverses
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub inverse_length: usize,
    pub case1: Option<Decomposition2>,
    pub case1_predicted: Option<usize>,
    pub case2: SideConditions,
    pub case3: SideConditions,
}

impl Classification {
    pub fn case1_holds(&self) -> bool {
        self.case1.is_some() && self.case1_predicted == Some(self.inverse_length)
    }

    /// Case numbers whose conditions all hold.
    pub fn holding(&self) -> Vec<u8> {
        let mut out = Vec::new();
        if self.case1_holds() {
            out.push(1);
        }
        if self.case2.holds() {
            out.push(2);
        }
        if self.case3.holds() {
            out.push(3);
        }
        out
    }
}

fn product_span_dim(left: &[Matrix], right: &[Matrix]) -> usize {
    let products: Vec<Matrix> = left.iter().flat_map(|x| right.iter().map(move |y| x * y)).collect();
    if products.is_empty() {
        0
    } else {
        Matrix::span_dim(&products)
    }
}

/// Whether for every `x P1 + y P2` there is a nonzero `F` in `span(fs)` with
/// `(x P1 + y P2) F = 0` (or `F (x P1 + y P2) = 0` when `left` is set).
/// This holds over the complex field exactly when the generic rank of the
/// induced linear maps is below `dim span(fs)`.
fn every_member_has_zero_divisor(p1: &Matrix, p2: &Matrix, fs: &[Matrix], left: bool) -> Result<bool> {
    let map = |p: &Matrix| -> Result<Matrix> {
        let cols: Vec<_> = fs.iter().map(|f| if left { (f * p).vec() } else { (p * f).vec() }).collect();
        Matrix::from_columns(p.rows() * p.rows(), &cols)
    };
    let rank = PolyMatrix::pencil(&map(p1)?, &map(p2)?)?.rank();
    Ok(rank < fs.len())
}

/// Whether every nonzero `x P1 + y P2` is invertible with inverse in
/// `span(es)`. Over the complex field a nonconstant `det(P1 + t P2)`, or a
/// singular `P2`, produces a singular member.
fn every_member_inverted_in(p1: &Matrix, p2: &Matrix, es: &[Matrix]) -> Result<bool> {
    let f: Polynomial = PolyMatrix::pencil(p1, p2)?.det()?;
    if !f.is_constant() || f.is_zero() || !p2.is_invertible() {
        return Ok(false);
    }
    for p in [p1, p2] {
        let inv = inverse_of(p)?;
        if Matrix::span_dim(es) != Matrix::span_dim(&[es, &[inv]].concat()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reports which structural cases describe `Delta` and its inverse.
pub fn classify_inverse(delta: &ElemOp, seed: u64) -> Result<Classification> {
    let split = split_of(delta)?;
    let report = inverse_elemop(delta)?;
    let inverse = report.inverse.ok_or_else(|| Error::pre("operator must be invertible"))?;
    let k = inverse.terms().len();
    let [(a1, b1), (a2, b2)] = &split;
    let l_inv = inverse.left_span();
    let r_inv = inverse.right_span();

    let case1 = sum_of_invertibles(delta, seed)?;
    let case1_predicted = match &case1 {
        Some(d) => {
            let x = &inverse_of(&d.m1.0)? * &d.m2.0;
            let y = &inverse_of(&d.m1.1)? * &d.m2.1;
            Some(deg(&x)?.min(deg(&y)?))
        }
        None => None,
    };

    let r_delta = delta.right_span();
    let l_delta = delta.left_span();
    let dim2 = product_span_dim(&r_delta, &r_inv);
    let case2 = SideConditions {
        product_dim: dim2,
        dim_bound: dim2 <= k,
        zero_divisors: every_member_has_zero_divisor(b1, b2, &r_inv, false)?,
        inverses: every_member_inverted_in(a1, a2, &l_inv)?,
    };
    let dim3 = product_span_dim(&l_inv, &l_delta);
    let case3 = SideConditions {
        product_dim: dim3,
        dim_bound: dim3 <= k,
        zero_divisors: every_member_has_zero_divisor(a1, a2, &l_inv, true)?,
        inverses: every_member_inverted_in(b1, b2, &r_inv)?,
    };
    Ok(Classification {
        inverse_length: k,
        case1,
        case1_predicted,
        case2,
        case3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    fn j2() -> Matrix {
        m(&[&[0, 1], &[0, 0]])
    }

    #[test]
    fn inverse_elemop_examples() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[2, 0], &[1, 1]]);
        let r = inverse_elemop(&ElemOp::mult(&a, &b).unwrap()).unwrap();
        assert!(r.invertible);
        assert_eq!(r.inverse_length, Some(1));
        let expected = ElemOp::mult(&a.inverse().unwrap().unwrap(), &b.inverse().unwrap().unwrap()).unwrap();
        assert!(r.inverse.unwrap().same_operator(&expected));

        let tau = ElemOp::derivation(&a, &a).unwrap();
        assert!(!inverse_elemop(&tau).unwrap().invertible);

        let ups = ElemOp::upsilon(&Matrix::diag(&[int(1), int(2)]), &j2()).unwrap();
        let r = inverse_elemop(&ups).unwrap();
        assert!(r.invertible);
        assert_eq!(r.inverse_length, Some(2));
    }

    #[test]
    fn mult_one_sided_examples() {
        let id = Matrix::identity(2);
        assert!(mult_one_sided(&id, &id).unwrap().unwrap().same_operator(&ElemOp::identity(2)));
        assert!(mult_one_sided(&j2(), &id).unwrap().is_none());
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = Matrix::diag(&[int(1), int(-1)]);
        let inv = mult_one_sided(&a, &b).unwrap().unwrap();
        assert!(is_two_sided_inverse(&ElemOp::mult(&a, &b).unwrap(), &inv));
    }

    fn aux_identity(a: &Matrix, b: &Matrix) {
        let aux = derivation_aux(a, b).unwrap();
        let tau = ElemOp::derivation(a, b).unwrap();
        let target = ElemOp::left(&minimal_polynomial(b).unwrap().eval_matrix(a)).unwrap();
        assert!(aux.compose(&tau).unwrap().same_operator(&target));
        assert!(tau.compose(&aux).unwrap().same_operator(&target));
    }

    #[test]
    fn derivation_aux_examples() {
        let a = Matrix::diag(&[int(2), int(3)]);
        let aux = derivation_aux(&a, &j2()).unwrap();
        assert!(aux.same_operator(&ElemOp::left(&a).unwrap().plus(&ElemOp::right(&j2()).unwrap()).unwrap()));
        aux_identity(&a, &j2());

        let b = m(&[&[0, 1], &[1, 0]]);
        let zero = Matrix::zeros(2, 2);
        let aux = derivation_aux(&zero, &b).unwrap();
        assert!(aux.same_operator(&ElemOp::right(&b).unwrap()));
        aux_identity(&zero, &b);

        let j3 = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let a3 = m(&[&[1, 2, 0], &[0, 3, 1], &[4, 0, 5]]);
        aux_identity(&a3, &j3);
        let b3 = m(&[&[2, 1, 0], &[0, 1, 1], &[1, 0, 3]]);
        aux_identity(&a3, &b3);
        assert!(derivation_aux(&a, &Matrix::scalar(2, int(3))).is_err());
    }

    #[test]
    fn derivation_inverse_examples() {
        let a = Matrix::diag(&[int(2), int(3)]);
        let r = derivation_inverse(&a, &j2()).unwrap();
        assert!(r.invertible);
        assert_eq!(r.inverse_length, Some(2));
        assert!(r.prediction_holds());
        let inv_sq = (&a * &a).inverse().unwrap().unwrap();
        let formula = ElemOp::left(&inv_sq)
            .unwrap()
            .compose(&ElemOp::left(&a).unwrap().plus(&ElemOp::right(&j2()).unwrap()).unwrap())
            .unwrap();
        assert!(r.inverse.unwrap().same_operator(&formula));

        assert!(!derivation_inverse(&Matrix::diag(&[int(0), int(1)]), &j2()).unwrap().invertible);

        let r = derivation_inverse(&Matrix::diag(&[int(5), int(6)]), &Matrix::diag(&[int(1), int(2)])).unwrap();
        assert_eq!(r.inverse_length, Some(2));
    }

    #[test]
    fn derivation_inverse_uses_smaller_side() {
        let a = Matrix::diag(&[int(1), int(2), int(3)]);
        let b = Matrix::block_diag(&[&j2(), &Matrix::zeros(1, 1)]);
        let r = derivation_inverse(&a, &b).unwrap();
        assert_eq!(r.predicted_length, Some(2));
        assert_eq!(r.inverse_length, Some(2));
        let r = derivation_inverse(&b, &a).unwrap();
        assert_eq!(r.inverse_length, Some(2));
        assert!(r.prediction_holds());
    }

    #[test]
    fn upsilon_inverse_examples() {
        let r = upsilon_inverse(&Matrix::diag(&[int(1), int(2)]), &j2()).unwrap();
        assert!(r.invertible);
        assert_eq!(r.inverse_length, Some(2));
        assert!(r.prediction_holds());

        assert!(upsilon_inverse(&Matrix::identity(2), &j2()).is_err());

        let a = Matrix::diag(&[int(1), int(2), int(3)]);
        let b = Matrix::block_diag(&[&j2(), &Matrix::zeros(1, 1)]);
        let r = upsilon_inverse(&a, &b).unwrap();
        assert_eq!(r.predicted_length, Some(2));
        assert_eq!(r.inverse_length, Some(2));
    }

    #[test]
    fn derivation_inverse_is_derivation_examples() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let b = m(&[&[0, 2], &[2, 0]]);
        let d = derivation_inverse_is_derivation(&a, &b).unwrap().unwrap();
        assert_eq!((d.lambda.clone(), d.alpha.clone(), d.beta.clone()), (int(0), int(1), int(4)));
        let expected = ElemOp::derivation(&a, &-&b).unwrap().scaled(&frac(-1, 3));
        assert!(ElemOp::derivation(&d.c, &d.d).unwrap().same_operator(&expected));

        assert!(derivation_inverse_is_derivation(&Matrix::diag(&[int(1), int(2)]), &j2())
            .unwrap_or(None)
            .is_none());

        let a = &Matrix::identity(2) + &j2();
        let b = &Matrix::scalar(2, int(3)) + &j2().transpose();
        assert!(derivation_inverse_is_derivation(&a, &b).unwrap().is_none());
    }

    #[test]
    fn as_generalized_derivation_roundtrip() {
        let c = m(&[&[1, 2], &[3, 4]]);
        let d = m(&[&[0, 1], &[-1, 2]]);
        let (c2, d2) = as_generalized_derivation(&ElemOp::derivation(&c, &d).unwrap()).unwrap().unwrap();
        assert!(ElemOp::derivation(&c2, &d2).unwrap().same_operator(&ElemOp::derivation(&c, &d).unwrap()));
        let not = ElemOp::mult(&c, &d).unwrap();
        assert!(as_generalized_derivation(&not).unwrap().is_none());
    }

    #[test]
    fn general_length2_examples() {
        let id = Matrix::identity(2);
        let a = Matrix::diag(&[int(1), int(2)]);
        let r = general_length2_inverse_length(&a, &id, &id, &j2()).unwrap();
        assert_eq!(r.predicted_length, Some(2));
        assert_eq!(r.inverse_length, Some(2));
        assert!(general_length2_inverse_length(&a, &j2(), &id, &id).is_err());

        let a3 = Matrix::diag(&[int(1), int(2), int(3)]);
        let d3 = Matrix::block_diag(&[&j2(), &Matrix::zeros(1, 1)]);
        let id3 = Matrix::identity(3);
        let r = general_length2_inverse_length(&a3, &id3, &id3, &d3).unwrap();
        assert_eq!(r.predicted_length, Some(2));
        assert!(r.prediction_holds());
    }

    #[test]
    fn sum_of_invertibles_examples() {
        let delta = ElemOp::new(2, vec![(Matrix::identity(2), Matrix::identity(2)), (j2(), j2())]).unwrap();
        assert!(is_invertible(&delta));
        let d = sum_of_invertibles(&delta, 1).unwrap().unwrap();
        assert!(d.m1.0.is_invertible() && d.m1.1.is_invertible());
        assert!(d.m2.0.is_invertible() && d.m2.1.is_invertible());
        let rebuilt = ElemOp::new(2, vec![d.m1, d.m2]).unwrap();
        assert!(rebuilt.same_operator(&delta));

        // non-regular right pencil
        let b1 = m(&[&[0, 1], &[0, 0]]);
        let b2 = m(&[&[1, 0], &[0, 0]]);
        let delta = ElemOp::new(2, vec![(b1.clone(), b2.clone()), (b2, b1)]).unwrap();
        assert!(sum_of_invertibles_impossible(&delta).unwrap());
        assert!(sum_of_invertibles(&delta, 1).unwrap().is_none());
        assert!(!is_invertible(&delta));
    }

    fn biorthogonal_instance() -> ElemOp {
        let p = m(&[&[1, 0], &[0, 0]]);
        let k = m(&[&[1, 1], &[0, 1]]);
        let l = m(&[&[2, 1], &[1, 1]]);
        let b1 = &(&k * &p) * &l;
        let b2 = &(&k * &(&Matrix::identity(2) - &p)) * &l;
        let a1 = m(&[&[1, 2], &[0, 1]]);
        let a2 = m(&[&[3, 0], &[1, 1]]);
        ElemOp::new(2, vec![(a1, b1), (a2, b2)]).unwrap()
    }

    #[test]
    fn biorthogonal_examples() {
        let delta = biorthogonal_instance();
        let d = biorthogonal_decomposition(&delta, 5).unwrap().unwrap();
        assert_eq!(d.kind, DecompositionKind::Biorthogonal);
        let inv = inverse_elemop(&delta).unwrap().inverse.unwrap();
        assert!(verify_biorthogonal(&delta, &inv, &d));

        let two = ElemOp::new(
            2,
            vec![
                (Matrix::identity(2), Matrix::identity(2)),
                (m(&[&[1, 1], &[1, 2]]), m(&[&[2, 1], &[1, 1]])),
            ],
        )
        .unwrap();
        let d = biorthogonal_decomposition(&two, 5).unwrap().unwrap();
        assert_eq!(d.kind, DecompositionKind::TwoInvertible);

        // inverse of length 3
        let a = Matrix::diag(&[int(1), int(2), int(3)]);
        let b = Matrix::diag(&[int(5), int(7), int(11)]);
        let three = ElemOp::upsilon(&a, &b).unwrap();
        assert_eq!(inverse_elemop(&three).unwrap().inverse_length, Some(3));
        assert!(biorthogonal_decomposition(&three, 5).unwrap().is_none());
    }

    #[test]
    fn classify_examples() {
        let delta = ElemOp::new(
            2,
            vec![
                (Matrix::identity(2), Matrix::identity(2)),
                (m(&[&[1, 1], &[1, 2]]), m(&[&[2, 1], &[1, 1]])),
            ],
        )
        .unwrap();
        let c = classify_inverse(&delta, 3).unwrap();
        assert!(c.case1_holds());
        assert!(c.holding().contains(&1));

        let c = classify_inverse(&biorthogonal_instance(), 3).unwrap();
        assert_eq!(c.inverse_length, 2);
        // products span K P K^-1 and K (I-P) K^-1
        assert_eq!(c.case2.product_dim, 2);
        assert!(c.case2.dim_bound);
        // B1 + B2 = K L is invertible
        assert!(!c.case2.zero_divisors);
        assert!(!c.case2.inverses && !c.case3.inverses);

        let single = ElemOp::mult(&Matrix::identity(2), &Matrix::identity(2)).unwrap();
        assert!(classify_inverse(&single, 3).is_err());
    }
}
