//! Cohomology dimensions of every complex attached to a regular pair and a module.
//!
//! ```text
//! cargo run --example cohomology_tables
//! ```

use prelieder::cohomology::{Complex, ComplexKind};
use prelieder::extension::DerPairRepresentation;
use prelieder::linalg::{int, Matrix};
use prelieder::prelie::{DerPair, PreLieAlgebra};

fn main() {
    let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
    let pair = DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).expect("D is 2x2");
    // the adjoint module, with K = D
    let module = DerPairRepresentation::regular(&pair);

    for kind in ComplexKind::ALL {
        let cx = Complex::of_pair(kind, &pair, Some(&module)).expect("regular pair");
        let row: Vec<String> = cx.cohomology_table(cx.top_degree()).unwrap().iter().map(|d| d.h.to_string()).collect();
        println!("{:<8} H^n, n = 1..{}: {}", kind.name(), cx.top_degree(), row.join(" "));
    }
}
