//! Abelian extensions of a regular pair: build, read back through a section, classify.
//!
//! ```text
//! cargo run --example abelian_extensions
//! ```

use prelieder::corpus::{random_ext_cocycle, random_pair_representation};
use prelieder::extension::{build_extension, classify, coboundary, extract_cocycle};
use prelieder::linalg::{int, Matrix};
use prelieder::prelie::{DerPair, PreLieAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
    let base = DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).expect("D is 2x2");
    let module = random_pair_representation(&mut rng, &base, 2);
    let c = random_ext_cocycle(&mut rng, &base, &module);

    let ext = build_extension(&base, &module, &c).unwrap();
    println!("total space has dimension {}", ext.total.dim_g());

    let s = ext.canonical_section().unwrap();
    let (back, _) = extract_cocycle(&base, &ext, &s).unwrap();
    println!("canonical section recovers the cocycle: {}", back == c);

    // another section moves the cocycle within its class
    let phi = Matrix::from_i64(&[&[1, 0], &[2, -1]]);
    let (moved, _) = extract_cocycle(&base, &ext, &(&s + &(&ext.inject * &phi))).unwrap();
    println!("other section gives another cocycle: {}", moved != c);
    match classify(&base, &module, &c, &moved).unwrap() {
        Some(zeta) => println!("isomorphic, zeta = {zeta}"),
        None => println!("not isomorphic"),
    }
    let shifted = c.add(&coboundary(&base, &module, &phi).unwrap());
    println!("c + coboundary classifies as isomorphic: {}", classify(&base, &module, &c, &shifted).unwrap().is_some());
}
