use elementary_ops::elemop::dim_bound_check;
use elementary_ops::exactnum::{
    char_polynomial, format_rational, frac, int, minimal_polynomial, parse_rational, small_rationals, Matrix,
    Polynomial, Rational,
};
use elementary_ops::json::{self, ElemOpJson};
use elementary_ops::random;
use elementary_ops::ElemOp;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| Matrix::new(n, n, v.into_iter().map(int).collect()).unwrap())
}

fn op_of_size(n: usize, max_terms: usize) -> impl Strategy<Value = ElemOp> {
    prop::collection::vec((matrix(n), matrix(n)), 1..=max_terms).prop_map(move |terms| ElemOp::new(n, terms).unwrap())
}

fn op() -> impl Strategy<Value = ElemOp> {
    (2usize..=3).prop_flat_map(|n| op_of_size(n, 4))
}

fn op_pair_with_matrix() -> impl Strategy<Value = (ElemOp, ElemOp, Matrix)> {
    (2usize..=3).prop_flat_map(|n| (op_of_size(n, 3), op_of_size(n, 3), matrix(n)))
}

fn square() -> impl Strategy<Value = Matrix> {
    (1usize..=4).prop_flat_map(matrix)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| frac(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn length_is_realignment_rank(x in op()) {
        prop_assert_eq!(x.length(), x.realign().rank());
        prop_assert!(x.length() <= x.terms().len());
        let m = x.minimize();
        prop_assert_eq!(m.terms().len(), x.length());
        prop_assert!(m.same_operator(&x));
    }

    #[test]
    fn length_ignores_redundant_terms(x in op(), c in rational()) {
        let mut terms = x.terms().to_vec();
        let (a, b) = terms[0].clone();
        terms.push((a.scale(&c), b.clone()));
        terms.push((a, b.scale(&-c)));
        let padded = ElemOp::new(x.n(), terms).unwrap();
        prop_assert_eq!(padded.length(), x.length());
        prop_assert!(padded.same_operator(&x));
    }

    #[test]
    fn compose_is_sequential_application((x, y, t) in op_pair_with_matrix()) {
        let xy = x.compose(&y).unwrap();
        prop_assert_eq!(xy.apply(&t).unwrap(), x.apply(&y.apply(&t).unwrap()).unwrap());
        prop_assert_eq!(xy.operator_matrix(), &x.operator_matrix() * &y.operator_matrix());
        prop_assert!(xy.length() <= x.length() * y.length());
    }

    #[test]
    fn sums_and_scalars_act_pointwise((x, y, t) in op_pair_with_matrix(), c in rational()) {
        let sum = x.plus(&y).unwrap();
        prop_assert_eq!(sum.apply(&t).unwrap(), &x.apply(&t).unwrap() + &y.apply(&t).unwrap());
        prop_assert_eq!(x.scaled(&c).apply(&t).unwrap(), x.apply(&t).unwrap().scale(&c));
        prop_assert!(x.plus(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn operator_matrix_round_trips(x in op()) {
        let back = ElemOp::from_operator_matrix(&x.operator_matrix(), x.n()).unwrap();
        prop_assert!(back.same_operator(&x));
        prop_assert_eq!(back.terms().len(), x.length());
        let r = ElemOp::from_realignment(&x.realign(), x.n()).unwrap();
        prop_assert!(r.same_operator(&x));
    }

    #[test]
    fn transposed_conjugates_by_transpose((x, _y, t) in op_pair_with_matrix()) {
        let lhs = x.transposed().apply(&t).unwrap();
        let rhs = x.apply(&t.transpose()).unwrap().transpose();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.transposed().length(), x.length());
    }

    #[test]
    fn elemop_json_round_trips(x in op()) {
        let wire = ElemOpJson::from(&x);
        let text = json::to_string(&wire);
        let parsed: ElemOpJson = json::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &wire);
        prop_assert_eq!(json::to_string(&parsed), text);
        let back = ElemOp::try_from(&parsed).unwrap();
        prop_assert_eq!(back.terms(), x.terms());
    }

    #[test]
    fn rationals_round_trip_through_strings(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn zero_tensors_obey_dimension_bound(seed in any::<u64>(), n in 2usize..=3, m in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms = random::zero_tensor(&mut rng, n, m);
        let op = ElemOp::new(n, terms.clone()).unwrap();
        prop_assert!(op.is_zero());
        prop_assert!(dim_bound_check(&terms));
    }

    #[test]
    fn planted_lengths_are_recovered(seed in any::<u64>(), n in 2usize..=4, len in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(random::planted_length(&mut rng, n, len).length(), len);
    }

    #[test]
    fn derivation_has_length_two_unless_scalar(a in matrix(3), b in matrix(3)) {
        let tau = ElemOp::derivation(&a, &b).unwrap();
        let scalar = |m: &Matrix| *m == Matrix::scalar(3, m[(0, 0)].clone());
        let expected = if scalar(&a) && scalar(&b) { usize::from(a != b) } else if scalar(&a) || scalar(&b) { 1 } else { 2 };
        prop_assert_eq!(tau.length(), expected);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!((&a * &b).det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        match a.inverse().unwrap() {
            Some(inv) => prop_assert_eq!(&a * &inv, Matrix::identity(3)),
            None => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn minimal_polynomial_divides_characteristic(a in square()) {
        let m = minimal_polynomial(&a).unwrap();
        let c = char_polynomial(&a).unwrap();
        prop_assert!(m.eval_matrix(&a).is_zero());
        prop_assert!(m.divides(&c));
        prop_assert_eq!(m.leading(), Rational::from_integer(1.into()));
    }

    #[test]
    fn rational_roots_are_found(roots in prop::collection::vec(rational(), 1..=4), extra in 1i64..=5) {
        let irreducible = Polynomial::from_ints(&[2 * extra + 1, 0, 2]);
        let p = &Polynomial::from_roots(&roots) * &irreducible;
        let mut expected = roots.clone();
        expected.sort();
        prop_assert_eq!(p.rational_roots(), expected);
    }

    #[test]
    fn gcd_divides_both(xs in prop::collection::vec(-6i64..=6, 1..=4), ys in prop::collection::vec(-6i64..=6, 1..=4), zs in prop::collection::vec(-6i64..=6, 1..=3)) {
        let (x, y, z) = (Polynomial::from_ints(&xs), Polynomial::from_ints(&ys), Polynomial::from_ints(&zs));
        prop_assume!(!z.is_zero());
        let (p, q) = (&x * &z, &y * &z);
        let g = p.gcd(&q);
        prop_assume!(!g.is_zero());
        prop_assert!(g.divides(&p) && g.divides(&q));
        prop_assert!(z.divides(&g));
    }
}

#[test]
fn small_rationals_are_distinct_and_ordered_by_height() {
    let first: Vec<Rational> = small_rationals().take(200).collect();
    let mut sorted = first.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), first.len());
    let height = |r: &Rational| r.numer().abs().max(r.denom().clone());
    assert!(first.windows(2).all(|w| height(&w[0]) <= height(&w[1])));
    assert_eq!(&first[..5], &[int(0), int(1), int(-1), int(2), int(-2)]);
}
