use elementary_ops::exactnum::{format_rational, int};
use elementary_ops::shiftspace::{
    apply_elem, delta_inverse_pairs, delta_pairs, partial_shifts, pencil_nonregularity, verify_relations, FinRankOp,
};

fn main() -> elementary_ops::Result<()> {
    let (b1, b2, f1, f2) = partial_shifts();
    for i in 1..=6 {
        println!("e_{i}: B1 -> {:?}, B2 -> {:?}, F1 -> {:?}, F2 -> {:?}", b1.image(i), b2.image(i), f1.image(i), f2.image(i));
    }

    let t = FinRankOp::from_entries([(1, 3, int(2)), (4, 2, int(-1))]);
    let dt = apply_elem(&delta_pairs(), &t);
    let back = apply_elem(&delta_inverse_pairs(), &dt);
    let show = |op: &FinRankOp| {
        op.entries()
            .map(|(i, j, c)| format!("{} e{i}e{j}^T", format_rational(c)))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    println!("T = {}\nDelta T = {}", show(&t), show(&dt));
    assert_eq!(back, t);

    let report = verify_relations(32);
    println!("relations up to 32: {}", report.all_hold());
    for (n, zero) in pencil_nonregularity(1..=6)? {
        println!("N = {n}: det of the truncated pencil vanishes identically: {zero}");
    }
    Ok(())
}
