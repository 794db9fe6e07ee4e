//! Infinitesimal deformations: cocycles, trivial ones and cohomology classes.
//!
//! ```text
//! cargo run --example deformations
//! ```

use prelieder::cohomology::{Complex, DerPairCochain};
use prelieder::deformation::{
    check_infinitesimal_deformation, coboundary_datum, deformation_cocycle, same_cohomology_class, DeformationDatum,
    EquivalenceWitness,
};
use prelieder::linalg::{int, Matrix};
use prelieder::prelie::{DerPair, PreLieAlgebra};

fn main() {
    let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
    let base = DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).expect("D is 2x2");
    let zero = DeformationDatum::zero(&base);

    // coboundaries 𝒟(N, S) are cocycles, but only some satisfy the quadratic equations
    let units = [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    let as_matrix = |u: &[i64; 4]| Matrix::from_i64(&[&u[..2], &u[2..]]);
    let (w, trivial) = units
        .iter()
        .flat_map(|n| units.iter().map(move |s| EquivalenceWitness { n: as_matrix(n), s: as_matrix(s) }))
        .filter(|w| !w.n.is_zero() || !w.s.is_zero())
        .map(|w| {
            let d = coboundary_datum(&base, &w).unwrap();
            (w, d)
        })
        .find(|(_, d)| check_infinitesimal_deformation(&base, d).unwrap().ok())
        .expect("some unit witness gives a deformation");
    println!("N = {}, S = {} gives a trivial deformation", w.n, w.s);
    if let Ok(c) = deformation_cocycle(&base, &trivial) {
        println!("its cocycle has {} + {} terms", c.f.num_terms(), c.theta.as_ref().map_or(0, |t| t.num_terms()));
    }
    let found = same_cohomology_class(&base, &zero, &trivial).unwrap();
    println!("same class as zero: {}", found.is_some());

    // a 2-cocycle outside the coboundaries, if H^2 is nonzero
    let cx = Complex::Pair(&base);
    println!("dim H^2 = {}", cx.cohomology(2).unwrap().h);
    let b = cx.differential_matrix(1).unwrap();
    for v in cx.differential_matrix(2).unwrap().kernel_basis() {
        if b.solve(&v).is_some() {
            continue;
        }
        let parts = cx.element(2, &v);
        let c = DerPairCochain { f: parts[0].clone(), theta: Some(parts[1].clone()) };
        let d = DeformationDatum::from_pair_cochain(&c, base.split()).unwrap();
        let verdict = check_infinitesimal_deformation(&base, &d).unwrap();
        println!("non-trivial cocycle: deformation = {}, same class as zero = {}", verdict.ok(), same_cohomology_class(&base, &zero, &d).unwrap().is_some());
        break;
    }
}
