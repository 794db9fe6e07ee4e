//! The long exact sequence linking the pre-Lie, pair and `∂` cohomologies.
//!
//! ```text
//! cargo run --example long_exact_sequence
//! ```

use prelieder::cohomology::les_check;
use prelieder::linalg::{int, Matrix};
use prelieder::prelie::{DerPair, PreLieAlgebra};

fn main() {
    let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
    let pair = DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).expect("D is 2x2");
    let report = les_check(&pair, pair.dim_g() + 2).unwrap();
    print!("{report}");
}
