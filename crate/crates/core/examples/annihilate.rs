//! Elementary annihilators: multiplication operators, chains, and witnesses
//! over a quadratic extension.

use elementary_ops::annihil::{find_annihilator, verify_zero};
use elementary_ops::exactnum::{int, Matrix, Polynomial};
use elementary_ops::ElemOp;

fn show(label: &str, psi: &ElemOp) -> elementary_ops::Result<()> {
    let r = find_annihilator(psi, psi.n() * psi.n())?;
    println!("{label}: {:?} (case {:?})", r.status, r.case);
    if let Some(w) = &r.witness {
        println!("  witness of length {}, kills psi: {}", w.length(), verify_zero(w, psi));
    }
    if let Some(w) = &r.algebraic {
        let list = |ps: &[Polynomial]| ps.iter().map(Polynomial::to_string).collect::<Vec<_>>().join(", ");
        println!("  over Q[z]/({}): row ({}), column ({})", w.modulus, list(&w.row), list(&w.col));
        println!("  kills psi: {}", w.annihilates(psi));
    }
    Ok(())
}

fn main() -> elementary_ops::Result<()> {
    let diag = |a: i64, b: i64| Matrix::from_ints(&[&[a, 0], &[0, b]]);
    show("AT - TB, shared eigenvalue", &ElemOp::derivation(&diag(1, 2), &diag(1, 3))?)?;
    show("invertible T + ATB", &ElemOp::upsilon(&diag(1, 2), &diag(1, 1))?)?;

    // T -> TJ - JT with J^2 = 2: the pencils only meet at +-sqrt 2
    let i = Matrix::identity(2);
    let j = Matrix::from_ints(&[&[0, 2], &[1, 0]]);
    let psi = ElemOp::new(2, vec![(i.clone(), j.clone()), (j, i.scale(&int(-1)))])?;
    show("commutator with J", &psi)?;
    Ok(())
}
