use elementary_ops::annihil::{chain_annihilator, verify_zero};
use elementary_ops::random;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elementary_ops::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, k) in [(2, 2), (3, 3), (4, 3)] {
        let psi = random::chain_target(&mut rng, n, k);
        let split: [_; 2] = psi.terms().to_vec().try_into().expect("two terms");
        match chain_annihilator(&psi, k)? {
            Some(sol) => {
                let phi = sol.assemble(n);
                println!(
                    "n = {n}, k = {k}: chain of {} terms, relations {}, kills psi {}",
                    sol.len(),
                    sol.satisfies_relations(&split),
                    verify_zero(&phi, &psi)
                );
            }
            None => println!("n = {n}, k = {k}: none"),
        }
    }
    Ok(())
}
