//! The Matsushima–Nijenhuis bracket: squares of structure cochains and bidegrees.
//!
//! ```text
//! cargo run --example mn_bracket
//! ```

use prelieder::bracket::mn_bracket;
use prelieder::cochain::{bidegree_of, Bidegree};
use prelieder::corpus::{random_derpair, random_homogeneous};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pair = random_derpair(&mut rng, 2, 1);
    let split = pair.split();

    // π+ρ+μ squares to zero exactly when the pre-Lie and representation axioms hold
    let pi = pair.structure_cochain();
    println!("[pi+rho+mu, pi+rho+mu] = 0: {}", mn_bracket(&pi, &pi).unwrap().is_zero());
    // and D is a derivation exactly when [π+ρ+μ, D] = 0
    println!("[pi+rho+mu, D] = 0: {}", mn_bracket(&pi, &pair.derivation_cochain()).unwrap().is_zero());

    // bidegrees add
    for (b1, b2) in [(Bidegree::new(1, 0), Bidegree::new(0, 1)), (Bidegree::new(2, 0), Bidegree::new(1, 0)), (Bidegree::new(1, -1), Bidegree::new(2, -1))] {
        let f = random_homogeneous(&mut rng, split, b1, 0.7);
        let g = random_homogeneous(&mut rng, split, b2, 0.7);
        let br = mn_bracket(&f, &g).unwrap();
        // the zero cochain has every bidegree
        let got = if br.is_zero() { "zero".to_string() } else { bidegree_of(&br, split).map_or("mixed".into(), |b| b.to_string()) };
        println!("[{b1}, {b2}] -> {got} ({} terms)", br.num_terms());
    }
}
