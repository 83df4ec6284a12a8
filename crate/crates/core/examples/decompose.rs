//! Biorthogonal splits, sums of two invertibles, and the dichotomy on `M_n`.

use elementary_ops::invert::{biorthogonal_decomposition, mn_dichotomy, Dichotomy};
use elementary_ops::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    let delta = random::biorthogonal_instance(&mut rng, 3, false);
    let d = biorthogonal_decomposition(&delta, 0)?.expect("decomposes");
    println!("biorthogonal instance -> {:?}", d.kind);
    if let Some([g1, g2]) = &d.inverse_split {
        println!("  inverse split ranks {} {} / {} {}", g1.0.rank(), g1.1.rank(), g2.0.rank(), g2.1.rank());
    }

    let delta = random::two_invertible_instance(&mut rng, 2);
    let d = biorthogonal_decomposition(&delta, 0)?.expect("decomposes");
    println!("two-invertible instance -> {:?}, G = {:?}", d.kind, d.g);

    for seed in 0..6 {
        let psi = if seed % 2 == 0 { random::planted_singular(&mut rng, 3) } else { random::length_two(&mut rng, 3, 3) };
        let label = match mn_dichotomy(&psi, seed)? {
            Dichotomy::Annihilated(w) => format!("annihilated by a multiplication of length {}", w.length()),
            Dichotomy::AnnihilatedOverExtension(w) => format!("annihilated over Q[z]/({})", w.modulus),
            Dichotomy::SumOfInvertibles(_) => "sum of two invertible multiplications".into(),
            Dichotomy::Neither => "neither".into(),
        };
        println!("psi {seed}: {label}");
    }
    Ok(())
}
