use elementary_ops::exactnum::{format_rational, Matrix};
use elementary_ops::invert::{derivation_aux, derivation_inverse, derivation_inverse_is_derivation};
use elementary_ops::random;
use elementary_ops::ElemOp;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let a = Matrix::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
    let b = Matrix::from_ints(&[&[3, 1, 0], &[0, 3, 1], &[0, 0, 3]]);

    // aux o tau = tau o aux = L_{m_B(A)}
    let aux = derivation_aux(&a, &b)?;
    let tau = ElemOp::derivation(&a, &b)?;
    println!("auxiliary operator length {}", aux.length());
    println!("aux o tau has length {}", aux.compose(&tau)?.length());

    let r = derivation_inverse(&a, &b)?;
    println!("inverse length {:?}, predicted {:?}", r.inverse_length, r.predicted_length);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (a, b, lambda) = random::scalar_square_pair(&mut rng, 3);
    let d = derivation_inverse_is_derivation(&a, &b)?.expect("recognised");
    println!(
        "lambda = {0}, (A - lambda)^2 = {1}, (B - lambda)^2 = {2}: inverse is T -> CT - TD",
        format_rational(&lambda),
        format_rational(&d.alpha),
        format_rational(&d.beta)
    );
    println!("C = {}\nD = {}", d.c, d.d);

    let (a, b) = random::non_scalar_square_pair(&mut rng, 3);
    println!("other pair recognised: {}", derivation_inverse_is_derivation(&a, &b)?.is_some());
    Ok(())
}
