use elementary_ops::exactnum::Matrix;
use elementary_ops::pencil::PencilSpace;
use elementary_ops::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let b1 = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let b2 = Matrix::from_ints(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]]);
    let space = PencilSpace::new(b1, b2)?;
    let form = space.canonical_form()?;
    println!("blocks {:?}, residual rank {}", form.block_sizes, form.residual_rank);
    println!("P = {}\nQ = {}", form.p, form.q);
    println!("certificate: {}", form.verify(&space));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3 {
        let planted = random::planted_pencil(&mut rng);
        let space = PencilSpace::new(planted.b1, planted.b2)?;
        let form = space.canonical_form()?;
        println!(
            "{:?} on {:?}: planted {:?}, recovered {:?}",
            space.shape(),
            planted.residual_shape,
            planted.block_sizes,
            form.block_sizes
        );
    }
    Ok(())
}
