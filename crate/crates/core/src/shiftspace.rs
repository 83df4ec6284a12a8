//! Partial shifts on a countable basis `e_1, e_2, ...` and the length-two
//! operator `T -> B1 T B2 + B2 T B1` built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactnum::{Matrix, PolyMatrix, Rational};

/// A basis map `e_i -> e_{rule(i)}` (or `0` when the image is absent).
#[derive(Clone)]
pub struct IndexOp {
    name: String,
    image: Rc<dyn Fn(usize) -> Option<usize>>,
    preimage: Rc<dyn Fn(usize) -> Vec<usize>>,
}

impl fmt::Debug for IndexOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexOp({})", self.name)
    }
}

impl IndexOp {
    pub fn new(
        name: impl Into<String>,
        image: impl Fn(usize) -> Option<usize> + 'static,
        preimage: impl Fn(usize) -> Vec<usize> + 'static,
    ) -> Self {
        IndexOp {
            name: name.into(),
            image: Rc::new(image),
            preimage: Rc::new(preimage),
        }
    }

    pub fn identity() -> Self {
        IndexOp::new("I", Some, |j| vec![j])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn image(&self, i: usize) -> Option<usize> {
        if i == 0 {
            None
        } else {
            (self.image)(i)
        }
    }

    /// All `k` with `image(k) == j`.
    pub fn preimage(&self, j: usize) -> Vec<usize> {
        if j == 0 {
            Vec::new()
        } else {
            (self.preimage)(j)
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &IndexOp) -> IndexOp {
        let (s, t) = (self.clone(), other.clone());
        let (s2, t2) = (self.clone(), other.clone());
        IndexOp::new(
            format!("{}{}", self.name, other.name),
            move |i| t.image(i).and_then(|k| s.image(k)),
            move |j| s2.preimage(j).into_iter().flat_map(|k| t2.preimage(k)).collect(),
        )
    }

    /// The `n x n` truncation: column `c` holds `e_{image(c)}` when it is at most `n`.
    pub fn truncation(&self, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for c in 1..=n {
            if let Some(r) = self.image(c).filter(|&r| r <= n) {
                m[(r - 1, c - 1)] = Rational::one();
            }
        }
        m
    }
}

/// `B1, B2, F1, F2` with `B1 e_2i = e_i`, `B2 e_2i-1 = e_i`, `F1 e_i = e_2i`,
/// `F2 e_i = e_2i-1`.
pub fn partial_shifts() -> (IndexOp, IndexOp, IndexOp, IndexOp) {
    let b1 = IndexOp::new("B1", |i| (i % 2 == 0).then_some(i / 2), |j| vec![2 * j]);
    let b2 = IndexOp::new("B2", |i| (i % 2 == 1).then_some(i.div_ceil(2)), |j| vec![2 * j - 1]);
    let f1 = IndexOp::new("F1", |i| Some(2 * i), |j| if j % 2 == 0 { vec![j / 2] } else { vec![] });
    let f2 = IndexOp::new("F2", |i| Some(2 * i - 1), |j| if j % 2 == 1 { vec![j.div_ceil(2)] } else { vec![] });
    (b1, b2, f1, f2)
}

/// Finite sum of `c e_i e_j^T`, indices from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinRankOp {
    entries: BTreeMap<(usize, usize), Rational>,
}

impl FinRankOp {
    pub fn new() -> Self {
        FinRankOp::default()
    }

    /// `e_i e_j^T`.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut t = FinRankOp::new();
        t.add_entry(i, j, Rational::one());
        t
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut t = FinRankOp::new();
        for (i, j, c) in entries {
            t.add_entry(i, j, c);
        }
        t
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: Rational) {
        assert!(i >= 1 && j >= 1, "indices start at 1");
        let slot = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0)
    }

    pub fn plus(&self, other: &FinRankOp) -> FinRankOp {
        let mut out = self.clone();
        for (i, j, c) in other.entries() {
            out.add_entry(i, j, c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Rational) -> FinRankOp {
        FinRankOp::from_entries(self.entries().map(|(i, j, c)| (i, j, c * s)))
    }
}

/// `sum_k A_k T B_k`.
pub fn apply_elem(pairs: &[(IndexOp, IndexOp)], t: &FinRankOp) -> FinRankOp {
    let mut out = FinRankOp::new();
    for (a, b) in pairs {
        for (i, j, c) in t.entries() {
            let Some(row) = a.image(i) else { continue };
            for col in b.preimage(j) {
                out.add_entry(row, col, c.clone());
            }
        }
    }
    out
}

pub fn delta_pairs() -> Vec<(IndexOp, IndexOp)> {
    let (b1, b2, _, _) = partial_shifts();
    vec![(b1.clone(), b2.clone()), (b2, b1)]
}

pub fn delta_inverse_pairs() -> Vec<(IndexOp, IndexOp)> {
    let (_, _, f1, f2) = partial_shifts();
    vec![(f1.clone(), f2.clone()), (f2, f1)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub max_index: usize,
    pub b1f1_identity: bool,
    pub b2f2_identity: bool,
    pub b1f2_zero: bool,
    pub b2f1_zero: bool,
    pub resolution_of_identity: bool,
    pub delta_after_inverse: bool,
    pub inverse_after_delta: bool,
    /// Largest index reached while applying either operator.
    pub max_support: usize,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.b1f1_identity
            && self.b2f2_identity
            && self.b1f2_zero
            && self.b2f1_zero
            && self.resolution_of_identity
            && self.delta_after_inverse
            && self.inverse_after_delta
    }
}

pub fn verify_relations(n: usize) -> RelationReport {
    let (b1, b2, f1, f2) = partial_shifts();
    let range = 1..=n;
    let is_identity = |op: &IndexOp| range.clone().all(|i| op.image(i) == Some(i));
    let is_zero = |op: &IndexOp| range.clone().all(|i| op.image(i).is_none());
    // F1 B1 + F2 B2 as a sum of index rules: each e_i must be hit exactly once, at itself.
    let resolution = range.clone().all(|i| {
        let hits: Vec<usize> = [f1.compose(&b1), f2.compose(&b2)]
            .iter()
            .filter_map(|op| op.image(i))
            .collect();
        hits == vec![i]
    });
    let (d, d_inv) = (delta_pairs(), delta_inverse_pairs());
    let mut forward = true;
    let mut backward = true;
    let mut max_support = 0;
    for i in range.clone() {
        for j in range.clone() {
            let t = FinRankOp::unit(i, j);
            let x = apply_elem(&d_inv, &t);
            let y = apply_elem(&d, &t);
            max_support = max_support.max(x.max_index()).max(y.max_index());
            forward &= apply_elem(&d, &x) == t;
            backward &= apply_elem(&d_inv, &y) == t;
        }
    }
    RelationReport {
        max_index: n,
        b1f1_identity: is_identity(&b1.compose(&f1)),
        b2f2_identity: is_identity(&b2.compose(&f2)),
        b1f2_zero: is_zero(&b1.compose(&f2)),
        b2f1_zero: is_zero(&b2.compose(&f1)),
        resolution_of_identity: resolution,
        delta_after_inverse: forward,
        inverse_after_delta: backward,
        max_support,
    }
}

/// `(N, det(B1 + t B2) vanishes identically)` on `N x N` truncations.
pub fn pencil_nonregularity(sizes: impl IntoIterator<Item = usize>) -> Result<Vec<(usize, bool)>> {
    let (b1, b2, _, _) = partial_shifts();
    sizes
        .into_iter()
        .map(|n| {
            let det = PolyMatrix::pencil(&b1.truncation(n), &b2.truncation(n))?.det()?;
            Ok((n, det.is_zero()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Polynomial};

    #[test]
    fn example_rules() {
        let (b1, b2, f1, f2) = partial_shifts();
        assert_eq!((b1.image(2), b1.image(3), b1.image(4)), (Some(1), None, Some(2)));
        assert_eq!((b2.image(1), b2.image(3), b2.image(2)), (Some(1), Some(2), None));
        assert_eq!((f1.image(1), f1.image(3)), (Some(2), Some(6)));
        assert_eq!((f2.image(1), f2.image(2)), (Some(1), Some(3)));
    }

    #[test]
    fn preimages_match_images() {
        let (b1, b2, f1, f2) = partial_shifts();
        for op in [&b1, &b2, &f1, &f2] {
            for j in 1..40 {
                let brute: Vec<usize> = (1..200).filter(|&k| op.image(k) == Some(j)).collect();
                assert_eq!(op.preimage(j), brute, "{}", op.name());
            }
        }
    }

    #[test]
    fn apply_examples() {
        let t = FinRankOp::unit(1, 1);
        assert_eq!(apply_elem(&delta_pairs(), &t), FinRankOp::unit(1, 2));
        let x = apply_elem(&delta_inverse_pairs(), &t);
        assert!(!x.is_empty());
        assert_eq!(apply_elem(&delta_pairs(), &x), t);
        assert!(apply_elem(&delta_pairs(), &FinRankOp::new()).is_empty());
    }

    #[test]
    fn apply_is_linear() {
        let s = FinRankOp::from_entries([(1, 2, int(3)), (4, 3, int(-1))]);
        let t = FinRankOp::from_entries([(1, 2, int(1)), (5, 5, int(2))]);
        let d = delta_pairs();
        let lhs = apply_elem(&d, &s.plus(&t.scaled(&int(2))));
        let rhs = apply_elem(&d, &s).plus(&apply_elem(&d, &t).scaled(&int(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_hold() {
        assert!(verify_relations(1).all_hold());
        let r = verify_relations(8);
        assert!(r.all_hold());
        assert!(r.max_support <= 16);
        let (b1, b2, f1, f2) = partial_shifts();
        assert_eq!(b1.compose(&f1).image(1), Some(1));
        assert_eq!(f1.compose(&b1).image(3), None);
        assert_eq!(f2.compose(&b2).image(3), Some(3));
    }

    #[test]
    fn truncated_pencils() {
        let (b1, b2, _, _) = partial_shifts();
        assert!(b1.truncation(1).is_zero());
        let det = PolyMatrix::pencil(&b1.truncation(1), &b2.truncation(1)).unwrap().det().unwrap();
        assert_eq!(det, Polynomial::z());
        let cert = pencil_nonregularity(1..=6).unwrap();
        assert_eq!(cert[0], (1, false));
        assert!(cert[1..].iter().all(|&(_, zero)| zero));
    }
}
