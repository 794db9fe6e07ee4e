//! Deterministic random generators for cochains and structures.
//!
//! Everything takes an explicit RNG so corpora are reproducible from a seed.

use rand::Rng;

use num_traits::Zero;

use crate::cochain::{bidegree_component, Bidegree, Cochain};
use crate::cohomology::{Complex, RegPairCochain};
use crate::extension::{DerPairRepresentation, ExtensionCocycle};
use crate::linalg::{int, Matrix, Scalar};
use crate::prelie::{is_prelie, is_representation, regular_representation, DerPair, PreLieAlgebra, Representation};
use crate::spaces::{wedge_tail_basis, Split};

/// Small integer scalar in `[-2, 2]`.
pub fn small_scalar<R: Rng>(rng: &mut R) -> Scalar {
    int(rng.gen_range(-2..=2))
}

pub fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_scalar(rng)).collect()
}

/// Random cochain in `Hom(Λ^{arity-1}W ⊗ W, U)`; each canonical index is filled with probability `density`.
pub fn random_map<R: Rng>(rng: &mut R, arity: usize, dom: usize, cod: usize, density: f64) -> Cochain {
    let mut c = Cochain::zero(arity, dom, cod);
    for (w, t) in wedge_tail_basis(dom, arity - 1) {
        if rng.gen_bool(density) {
            c.set(&w, t, random_vec(rng, cod));
        }
    }
    c
}

/// Random endomorphism cochain in `C^{arity}(W;W)` with `dim W = dim`.
pub fn random_cochain<R: Rng>(rng: &mut R, arity: usize, dim: usize, density: f64) -> Cochain {
    random_map(rng, arity, dim, dim, density)
}

/// Random homogeneous cochain of the given bidegree on `g ⊕ V`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, split: Split, b: Bidegree, density: f64) -> Cochain {
    let full = random_cochain(rng, b.arity(), split.total(), density);
    bidegree_component(&full, split, b)
}

/// Random invertible integer matrix with integer inverse (unit triangular factors, possibly permuted).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    let mut lo = lower.to_rows();
    let mut up = upper.to_rows();
    for i in 0..n {
        for j in 0..i {
            lo[i][j] = int(rng.gen_range(-1..=1));
            up[j][i] = int(rng.gen_range(-1..=1));
        }
    }
    lower = Matrix::from_rows(n, lo).expect("square");
    upper = Matrix::from_rows(n, up).expect("square");
    &lower * &upper
}

/// Random pre-Lie algebra of dimension `dim`, by rejection over sparse tables and
/// then a random unimodular change of basis. Roughly one draw in three is abelian.
pub fn random_prelie<R: Rng>(rng: &mut R, dim: usize) -> PreLieAlgebra {
    if rng.gen_bool(0.15) {
        return PreLieAlgebra::zero(dim);
    }
    loop {
        let entries: Vec<(usize, usize, usize, Scalar)> = (0..rng.gen_range(1..=3))
            .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim), int(if rng.gen_bool(0.5) { 1 } else { -1 })))
            .collect();
        let a = PreLieAlgebra::from_entries(dim, &entries);
        if !a.is_abelian() && is_prelie(&a) {
            return a.transform(&random_unimodular(rng, dim)).expect("unimodular");
        }
    }
}

/// All one-dimensional representations with `ρ(e_i), μ(e_i) ∈ {−1, 0, 1}`.
pub fn line_representations(a: &PreLieAlgebra) -> Vec<Representation> {
    let m = a.dim();
    let mut out = Vec::new();
    for code in 0..3usize.pow(2 * m as u32) {
        let mut c = code;
        let mut digit = || {
            let d = (c % 3) as i64 - 1;
            c /= 3;
            Matrix::from_i64(&[&[d]])
        };
        let rho: Vec<Matrix> = (0..m).map(|_| digit()).collect();
        let mu: Vec<Matrix> = (0..m).map(|_| digit()).collect();
        let r = Representation::new(1, rho, mu).expect("1x1 matrices");
        if is_representation(a, &r).expect("same algebra") {
            out.push(r);
        }
    }
    out
}

/// Block-diagonal sum of two representations of the same algebra.
pub fn direct_sum(a: &Representation, b: &Representation) -> Representation {
    let (p, q) = (a.dim_v(), b.dim_v());
    let block = |x: &Matrix, y: &Matrix| {
        let mut rows = vec![vec![Scalar::zero(); p + q]; p + q];
        for i in 0..p {
            for j in 0..p {
                rows[i][j] = x[(i, j)].clone();
            }
        }
        for i in 0..q {
            for j in 0..q {
                rows[p + i][p + j] = y[(i, j)].clone();
            }
        }
        Matrix::from_rows(p + q, rows).expect("square")
    };
    let rho = a.rho_matrices().iter().zip(b.rho_matrices()).map(|(x, y)| block(x, y)).collect();
    let mu = a.mu_matrices().iter().zip(b.mu_matrices()).map(|(x, y)| block(x, y)).collect();
    Representation::new(p + q, rho, mu).expect("block sizes agree")
}

/// Random valid representation of dimension `dim_v`: the regular one when the
/// dimensions allow, otherwise sums of line representations, conjugated.
pub fn random_representation<R: Rng>(rng: &mut R, a: &PreLieAlgebra, dim_v: usize) -> Representation {
    if dim_v == a.dim() && rng.gen_bool(0.4) {
        return regular_representation(a).conjugate(&random_unimodular(rng, dim_v)).expect("unimodular");
    }
    let lines = line_representations(a);
    let mut r = lines[rng.gen_range(0..lines.len())].clone();
    for _ in 1..dim_v {
        r = direct_sum(&r, &lines[rng.gen_range(0..lines.len())]);
    }
    r.conjugate(&random_unimodular(rng, dim_v)).expect("unimodular")
}

/// Basis of the space of derivations `D: g → V` for the given coefficients,
/// each a `dim V × dim g` matrix.
pub fn derivation_space(a: &PreLieAlgebra, r: &Representation) -> Vec<Matrix> {
    let (m, n) = (a.dim(), r.dim_v());
    // unknown D[p][q] at column p*m + q; one equation per (i, j, output p)
    let mut rows = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for p in 0..n {
                let mut row = vec![Scalar::zero(); n * m];
                for (q, c) in a.basis_product(i, j).iter().enumerate() {
                    row[p * m + q] += c;
                }
                for s in 0..n {
                    row[s * m + j] -= &r.rho_basis(i)[(p, s)];
                    row[s * m + i] -= &r.mu_basis(j)[(p, s)];
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(n * m, rows).expect("rectangular");
    sys.kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_vec(n, m, v).expect("sizes"))
        .collect()
}

/// Random element of the derivation space with small integer weights.
pub fn random_derivation<R: Rng>(rng: &mut R, a: &PreLieAlgebra, r: &Representation) -> Matrix {
    let mut d = Matrix::zeros(r.dim_v(), a.dim());
    for basis in derivation_space(a, r) {
        d = &d + &basis.scale(&small_scalar(rng));
    }
    d
}

/// Random valid pre-LieDer pair with the given dimensions.
pub fn random_derpair<R: Rng>(rng: &mut R, dim_g: usize, dim_v: usize) -> DerPair {
    let a = random_prelie(rng, dim_g);
    let r = random_representation(rng, &a, dim_v);
    let d = random_derivation(rng, &a, &r);
    DerPair::new(a, r, d).expect("generated dimensions agree")
}

/// Random valid regular pre-LieDer pair.
pub fn random_regular_pair<R: Rng>(rng: &mut R, dim_g: usize) -> DerPair {
    let a = random_prelie(rng, dim_g);
    let r = regular_representation(&a);
    let d = random_derivation(rng, &a, &r);
    DerPair::new(a, r, d).expect("generated dimensions agree")
}

/// Solutions `K` of `Kρ̃(x) − ρ̃(x)K = ρ̃(Dx)` and the `μ̃` analogue: a particular
/// solution and a basis of the homogeneous solutions, or `None` if inconsistent.
pub fn compatible_k(base: &DerPair, rep: &Representation) -> Option<(Matrix, Vec<Matrix>)> {
    let n = rep.dim_v();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..base.dim_g() {
        let dx = base.d.column(i);
        for (op, target) in [(rep.rho_basis(i), rep.rho(&dx)), (rep.mu_basis(i), rep.mu(&dx))] {
            for p in 0..n {
                for q in 0..n {
                    let mut row = vec![Scalar::zero(); n * n];
                    for b in 0..n {
                        row[p * n + b] += &op[(b, q)];
                        row[b * n + q] -= &op[(p, b)];
                    }
                    rows.push(row);
                    rhs.push(target[(p, q)].clone());
                }
            }
        }
    }
    let sys = Matrix::from_rows(n * n, rows).expect("rectangular");
    let particular = sys.solve(&rhs)?;
    let kernel = sys.kernel_basis().into_iter().map(|v| Matrix::from_vec(n, n, v).expect("sizes")).collect();
    Some((Matrix::from_vec(n, n, particular).expect("sizes"), kernel))
}

/// Random representation `(V, K, ρ̃, μ̃)` of a regular pair, retrying until the
/// `K`-compatibility system is consistent. Falls back to the regular one, or to
/// the trivial action with a random `K`.
pub fn random_pair_representation<R: Rng>(rng: &mut R, base: &DerPair, dim_v: usize) -> DerPairRepresentation {
    for _ in 0..20 {
        let rep = random_representation(rng, &base.algebra, dim_v);
        if let Some((mut k, kernel)) = compatible_k(base, &rep) {
            for b in kernel {
                k = &k + &b.scale(&small_scalar(rng));
            }
            return DerPairRepresentation::new(k, rep).expect("square K");
        }
    }
    if dim_v == base.dim_g() {
        return DerPairRepresentation::regular(base);
    }
    // ρ̃ = μ̃ = 0 is compatible with every K
    let k = Matrix::from_vec(dim_v, dim_v, random_vec(rng, dim_v * dim_v)).expect("sizes");
    DerPairRepresentation::new(k, Representation::zero(base.dim_g(), dim_v)).expect("square K")
}

/// Random 2-cocycle `(θ, ξ)` with coefficients in `r`: a random combination of a
/// kernel basis of `𝒟_{(ρ̃,μ̃)}` in degree two.
pub fn random_ext_cocycle<R: Rng>(rng: &mut R, base: &DerPair, r: &DerPairRepresentation) -> ExtensionCocycle {
    let cx = Complex::Rep { base, module: r };
    let dim = cx.dim(2);
    let mut v = vec![Scalar::zero(); dim];
    for z in cx.differential_matrix(2).expect("valid complex").kernel_basis() {
        crate::linalg::axpy(&mut v, &small_scalar(rng), &z);
    }
    let parts = cx.element(2, &v);
    ExtensionCocycle::from_cochain(&RegPairCochain { f: parts[0].clone(), theta: Some(parts[1].clone()) })
}

/// Which structure map a perturbation touched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbed {
    Product,
    Rho,
    Mu,
    Derivation,
}

/// Add `±1` to one random structure constant of `p`. The result may or may not be valid.
pub fn perturb_derpair<R: Rng>(rng: &mut R, p: &DerPair) -> (DerPair, Perturbed) {
    let (m, r) = (p.dim_g(), p.dim_v());
    let delta = int(if rng.gen_bool(0.5) { 1 } else { -1 });
    let bump = |mat: &Matrix, i: usize, j: usize| {
        let mut rows = mat.to_rows();
        rows[i][j] += &delta;
        Matrix::from_rows(mat.cols(), rows).expect("same shape")
    };
    let which = [Perturbed::Product, Perturbed::Rho, Perturbed::Mu, Perturbed::Derivation][rng.gen_range(0..4)];
    let mut out = p.clone();
    match which {
        Perturbed::Product => {
            let (i, j, k) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
            let mut table = p.algebra.table().to_vec();
            table[i][j][k] += &delta;
            out.algebra = PreLieAlgebra::new(m, table).expect("same shape");
        }
        Perturbed::Rho | Perturbed::Mu => {
            let (x, i, j) = (rng.gen_range(0..m), rng.gen_range(0..r), rng.gen_range(0..r));
            let mut rho = p.rep.rho_matrices().to_vec();
            let mut mu = p.rep.mu_matrices().to_vec();
            if which == Perturbed::Rho {
                rho[x] = bump(&rho[x], i, j);
            } else {
                mu[x] = bump(&mu[x], i, j);
            }
            out.rep = Representation::new(r, rho, mu).expect("same shape");
        }
        Perturbed::Derivation => {
            out.d = bump(&p.d, rng.gen_range(0..r), rng.gen_range(0..m));
        }
    }
    (out, which)
}
