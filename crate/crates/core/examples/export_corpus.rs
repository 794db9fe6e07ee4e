//! Regenerate the shipped example corpus.
//!
//! ```text
//! cargo run --example export_corpus -- crates/core/corpus
//! ```
//!
//! Every file comes from a fixed seed search, so the output is reproducible.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prelieder::cochain::Bidegree;
use prelieder::cohomology::{Complex, DerPairCochain};
use prelieder::corpus::{random_derpair, random_ext_cocycle, random_homogeneous, random_pair_representation, random_regular_pair, random_representation, random_vec};
use prelieder::deformation::{coboundary_datum, is_equivalence, is_infinitesimal_deformation, DeformationDatum, EquivalenceWitness};
use prelieder::extension::{build_extension, coboundary, solve_coboundary, ExtensionCocycle};
use prelieder::io::{emit, Document, ExtensionParts};
use prelieder::linalg::{axpy, int, Matrix};
use prelieder::prelie::{DerPair, PreLieAlgebra};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// First seed from `0..` whose value passes `keep`.
fn search<T>(mut make: impl FnMut(&mut ChaCha8Rng) -> T, keep: impl Fn(&T) -> bool) -> T {
    (0..10_000).map(|s| make(&mut rng(s))).find(|x| keep(x)).expect("search space exhausted")
}

fn write(dir: &Path, name: &str, doc: &Document) {
    let path = dir.join(name);
    std::fs::write(&path, emit(doc)).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    println!("wrote {}", path.display());
}

fn matrix(rows: usize, cols: usize, r: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_vec(rows, cols, random_vec(r, rows * cols)).unwrap()
}

fn e1e2() -> DerPair {
    let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
    DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).unwrap()
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir).expect("output directory");

    // structures
    write(&dir, "abelian.json", &Document::from_algebra(&PreLieAlgebra::zero(2)));
    let base = e1e2();
    write(&dir, "e1e2.json", &Document::from_pair(&base));
    let bad = DerPair::regular(base.algebra.clone(), Matrix::identity(2)).unwrap();
    write(&dir, "bad_derivation.json", &Document::from_pair(&bad));
    let rep = search(|r| random_representation(r, &base.algebra, 2), |r| !r.rho_matrices().iter().all(Matrix::is_zero));
    write(&dir, "representation.json", &Document::from_representation(&base.algebra, &rep));
    let pair = search(
        |r| random_derpair(r, 2, 2),
        |p| !p.d.is_zero() && !p.algebra.is_abelian() && Complex::Pair(p).cohomology(2).unwrap().h > 0,
    );
    write(&dir, "pair.json", &Document::from_pair(&pair));
    let reg3 = search(|r| random_regular_pair(r, 3), |p| !p.d.is_zero() && !p.algebra.is_abelian());
    write(&dir, "regular3.json", &Document::from_pair(&reg3));

    // cochains on g ⊕ V for the bracket
    write(&dir, "pi.json", &Document::from_cochain(&pair.structure_cochain()));
    let g = search(|r| random_homogeneous(r, pair.split(), Bidegree::new(1, 0), 0.3), |c| !c.is_zero());
    write(&dir, "cochain.json", &Document::from_cochain(&g));

    // deformations of `pair`
    let zero = DeformationDatum::zero(&pair);
    write(&dir, "deformation_zero.json", &Document::from_deformation(&zero, None));
    let witness = search(
        |r| EquivalenceWitness { n: matrix(2, 2, r), s: matrix(2, 2, r) },
        |w| is_infinitesimal_deformation(&pair, &coboundary_datum(&pair, w).unwrap()).unwrap(),
    );
    let trivial = coboundary_datum(&pair, &witness).unwrap();
    write(&dir, "deformation_trivial.json", &Document::from_deformation(&trivial, None));
    let nilpotent = |r: &mut ChaCha8Rng| {
        let mut m = matrix(2, 2, r).to_rows();
        m[0][0] = int(0);
        m[1][0] = int(0);
        m[1][1] = int(0);
        Matrix::from_rows(2, m).unwrap()
    };
    let equiv = search(
        |r| EquivalenceWitness { n: nilpotent(r), s: nilpotent(r) },
        |w| !(w.n.is_zero() && w.s.is_zero()) && is_equivalence(&pair, &zero, &coboundary_datum(&pair, w).unwrap(), w).unwrap(),
    );
    let equiv_datum = coboundary_datum(&pair, &equiv).unwrap();
    write(&dir, "deformation_equivalent.json", &Document::from_deformation(&equiv_datum, Some(&equiv)));
    // a deformation whose class is not that of zero
    let cx = Complex::Pair(&pair);
    let b = cx.differential_matrix(1).unwrap();
    let z = cx.differential_matrix(2).unwrap().kernel_basis();
    // single cocycles and sums of two, in a fixed order
    let candidates = (0..z.len()).flat_map(|i| (i..z.len()).map(move |j| (i, j))).map(|(i, j)| {
        let mut v = z[i].clone();
        if j != i {
            axpy(&mut v, &int(1), &z[j]);
        }
        v
    });
    let class = candidates
        .filter(|v| b.solve(v).is_none())
        .map(|v| {
            let parts = cx.element(2, &v);
            let c = DerPairCochain { f: parts[0].clone(), theta: Some(parts[1].clone()) };
            DeformationDatum::from_pair_cochain(&c, pair.split()).unwrap()
        })
        .find(|d| is_infinitesimal_deformation(&pair, d).unwrap())
        .expect("a non-trivial deformation");
    write(&dir, "deformation_class.json", &Document::from_deformation(&class, None));

    // abelian extensions of (e1e2, D)
    let (module, c1, c3) = search(
        |r| {
            let m = random_pair_representation(r, &base, 2);
            let c1 = random_ext_cocycle(r, &base, &m);
            let c3 = random_ext_cocycle(r, &base, &m);
            (m, c1, c3)
        },
        |(m, c1, c3)| !m.rep.rho_matrices().iter().all(Matrix::is_zero) && !c1.xi.is_zero() && solve_coboundary(&base, m, c1, c3).unwrap().is_none(),
    );
    let phi = matrix(2, 2, &mut rng(7));
    let c2 = c1.add(&coboundary(&base, &module, &phi).unwrap());
    let (m, n) = (2, module.dim_v());
    let only = |c: &ExtensionCocycle| Document::from_extension(m, n, ExtensionParts { module: Some(&module), cocycle: Some(c), ..Default::default() });
    write(&dir, "ext_cocycle.json", &only(&c1));
    write(&dir, "ext_cohomologous.json", &only(&c2));
    write(&dir, "ext_other_class.json", &only(&c3));
    let mut broken = c1.clone();
    broken.xi = &broken.xi + &Matrix::from_i64(&[&[1, 0], &[0, 0]]);
    write(&dir, "ext_not_cocycle.json", &only(&broken));
    let ext = build_extension(&base, &module, &c1).unwrap();
    let section = &ext.canonical_section().unwrap() + &(&ext.inject * &phi);
    let total = Document::from_extension(m, n, ExtensionParts { total: Some(&ext), section: Some(&section), ..Default::default() });
    write(&dir, "ext_total.json", &total);
}
