use elementary_ops::exactnum::{frac, Matrix};
use elementary_ops::ElemOp;

fn main() -> elementary_ops::Result<()> {
    let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
    let b = Matrix::from_ints(&[&[-2, 0], &[1, -2]]);
    let tau = ElemOp::derivation(&a, &b)?;
    let ups = ElemOp::upsilon(&a, &b)?;

    let mut t = Matrix::from_ints(&[&[1, 0], &[0, -3]]);
    t[(0, 1)] = frac(1, 2);

    println!("T          = {t}");
    println!("AT - TB    = {}", tau.apply(&t)?);
    println!("T + ATB    = {}", ups.apply(&t)?);

    let both = tau.compose(&ups)?;
    assert_eq!(both.apply(&t)?, tau.apply(&ups.apply(&t)?)?);
    println!("length of the composition: {} (from {} terms)", both.length(), both.terms().len());

    let k = both.operator_matrix();
    println!("operator matrix on vec(T): {}x{}", k.rows(), k.cols());
    assert!(ElemOp::from_operator_matrix(&k, 2)?.same_operator(&both));
    Ok(())
}
