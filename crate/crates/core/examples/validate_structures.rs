//! Build a few structures by hand and check their axioms.
//!
//! ```text
//! cargo run --example validate_structures
//! ```

use prelieder::linalg::{int, Matrix};
use prelieder::prelie::{check_derpair, check_prelie, regular_representation, DerPair, PreLieAlgebra};

fn main() {
    // e1·e2 = e2: left-symmetric, not associative-commutative
    let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
    println!("e1.e2 = e2\n{}", check_prelie(&a));

    // adding e2·e2 = e1 breaks left-symmetry
    let broken = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1)), (1, 1, 0, int(1))]);
    println!("with e2.e2 = e1\n{}", check_prelie(&broken));

    let l_r = regular_representation(&a);
    for d in [Matrix::from_i64(&[&[0, 0], &[0, 1]]), Matrix::identity(2)] {
        let pair = DerPair::new(a.clone(), l_r.clone(), d.clone()).expect("dimensions agree");
        println!("D = {d}\n{}", check_derpair(&pair));
    }
}
