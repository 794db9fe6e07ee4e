//! Pre-LieDer pairs as Maurer–Cartan elements, and twisting by one of them.
//!
//! ```text
//! cargo run --example maurer_cartan
//! ```

use prelieder::corpus::{perturb_derpair, random_derpair};
use prelieder::linalg::int;
use prelieder::linfty::{mc_check, mc_twisted_check, LElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = random_derpair(&mut rng, 2, 2);
    println!("pair:\n{}", mc_check(&p).unwrap().report);

    let (q, what) = perturb_derpair(&mut rng, &p);
    println!("after perturbing {what:?}:\n{}", mc_check(&q).unwrap().report);

    // α + α′ is Maurer–Cartan iff α′ is Maurer–Cartan in the twist by α
    let alpha = LElement::from_pair(&p);
    for (name, target) in [("another pair", random_derpair(&mut rng, 2, 2)), ("the perturbed pair", q)] {
        let alpha_prime = LElement::from_pair(&target).add(&alpha.scale(&int(-1))).unwrap();
        println!("{name}: twisted Maurer-Cartan = {}", mc_twisted_check(&alpha, &alpha_prime).unwrap());
    }
}
