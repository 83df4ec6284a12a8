use elementary_ops::invert::classify_inverse;
use elementary_ops::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let instances = [
        ("biorthogonal", random::biorthogonal_instance(&mut rng, 2, false)),
        ("two-invertible", random::two_invertible_instance(&mut rng, 2)),
    ];
    for (label, delta) in instances {
        let c = classify_inverse(&delta, 0)?;
        println!("{label}: inverse length {}, cases {:?}", c.inverse_length, c.holding());
        println!("  case 1 predicted {:?}", c.case1_predicted);
        println!("  case 2 {:?}", c.case2);
        println!("  case 3 {:?}", c.case3);
    }
    Ok(())
}
