use elementary_ops::exactnum::Matrix;
use elementary_ops::invert::{inverse_elemop, is_two_sided_inverse};
use elementary_ops::ElemOp;

fn main() -> elementary_ops::Result<()> {
    let x = Matrix::from_ints(&[&[0, 2], &[1, 0]]);
    let y = Matrix::from_ints(&[&[0, 3], &[1, 0]]);
    let i = Matrix::identity(2);
    let delta = ElemOp::new(2, vec![(i.clone(), i), (x, y)])?;

    let r = inverse_elemop(&delta)?;
    let inv = r.inverse.expect("invertible");
    println!("inverse has length {}", inv.length());
    for (a, b) in inv.terms() {
        println!("  A = {a}, B = {b}");
    }
    assert!(is_two_sided_inverse(&delta, &inv));

    let singular = ElemOp::derivation(&Matrix::from_ints(&[&[1, 0], &[0, 2]]), &Matrix::from_ints(&[&[2, 0], &[0, 5]]))?;
    println!("AT - TB with a shared eigenvalue invertible: {}", inverse_elemop(&singular)?.invertible);
    Ok(())
}
