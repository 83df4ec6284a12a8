use elementary_ops::elemop::dim_bound_check;
use elementary_ops::exactnum::Matrix;
use elementary_ops::random;
use elementary_ops::ElemOp;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for m in 2..=6 {
        let terms = random::zero_tensor(&mut rng, 3, m);
        let op = ElemOp::new(3, terms.clone())?;
        let lefts: Vec<Matrix> = terms.iter().map(|(a, _)| a.clone()).collect();
        let rights: Vec<Matrix> = terms.iter().map(|(_, b)| b.clone()).collect();
        println!(
            "{m} terms: zero {}, dim L = {}, dim R = {}, bound holds {}",
            op.is_zero(),
            Matrix::span_dim(&lefts),
            Matrix::span_dim(&rights),
            dim_bound_check(&terms)
        );
    }
    Ok(())
}
