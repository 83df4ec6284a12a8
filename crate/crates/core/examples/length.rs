//! Length of an elementary operator, read off its realignment.

use elementary_ops::exactnum::{int, Matrix};
use elementary_ops::random;
use elementary_ops::ElemOp;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let a = Matrix::from_ints(&[&[1, 2], &[0, 1]]);
    let b = Matrix::from_ints(&[&[3, 0], &[1, 1]]);
    let i = Matrix::identity(2);

    // I (x) I + A (x) B - 2A (x) B has three terms but length two
    let op = ElemOp::new(2, vec![(i.clone(), i), (a.clone(), b.clone()), (a.scale(&int(-2)), b)])?;
    println!("terms {}, length {}", op.terms().len(), op.length());
    println!("realignment rank {}", op.realign().rank());

    let minimal = op.minimize();
    assert!(minimal.same_operator(&op));
    for (k, (a, b)) in minimal.terms().iter().enumerate() {
        println!("term {k}: A = {a}, B = {b}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for len in 1..=3 {
        let planted = random::planted_length(&mut rng, 4, len);
        println!("planted {len} in {} terms on M_4 -> length {}", planted.terms().len(), planted.length());
    }
    Ok(())
}
