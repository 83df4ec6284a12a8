//! Inverse of `T -> T + ATB` and the length `min(deg A, deg B)`.

use elementary_ops::exactnum::{algebraic_degree, format_rational, Matrix};
use elementary_ops::invert::upsilon_inverse;
use elementary_ops::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
    let b = Matrix::from_ints(&[&[2, 0], &[1, 2]]);
    let r = upsilon_inverse(&a, &b)?;
    println!(
        "lambda = {}, length {:?}, predicted {:?}",
        r.lambda.as_ref().map(format_rational).unwrap_or_default(),
        r.inverse_length,
        r.predicted_length
    );

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (da, db) in [(2, 3), (3, 3), (4, 2)] {
        let a = random::with_min_degree(&mut rng, 4, da);
        let b = random::with_min_degree(&mut rng, 4, db);
        let r = upsilon_inverse(&a, &b)?;
        if !r.invertible {
            println!("deg {da}, {db}: not invertible");
            continue;
        }
        println!(
            "deg A = {}, deg B = {}: inverse length {:?}",
            algebraic_degree(&a)?,
            algebraic_degree(&b)?,
            r.inverse_length
        );
        assert!(r.prediction_holds());
    }
    Ok(())
}
