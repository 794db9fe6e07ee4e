//! Test-side oracles, independent of the library's explicit differentials and
//! of its row reduction.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use prelieder::cochain::Cochain;
use prelieder::cohomology::{d_prelie_bracket, embed_regular, hua_d_bracket, partial_bracket, DerPairCochain, RegPairCochain};
use prelieder::extension::{semidirect_product, DerPairRepresentation};
use prelieder::linalg::{unit_vec, Matrix, Scalar};
use prelieder::prelie::{DerPair, PreLieAlgebra, Representation};
use prelieder::spaces::{wedge_tail_basis, Split, Tag};

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Run the CLI in-process from the corpus directory's point of view.
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let resolved: Vec<String> =
        args.iter().map(|a| if a.ends_with(".json") { corpus(a).display().to_string() } else { a.to_string() }).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = prelieder::cli::run(std::iter::once("prelieder".to_string()).chain(resolved), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// All values on the full slot basis, as one flat vector.
pub fn flatten(c: &Cochain) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (w, t) in wedge_tail_basis(c.dom(), c.arity() - 1) {
        match c.eval_basis(&w, t) {
            Some((s, v)) => out.extend(v.iter().map(|x| if s < 0 { -x } else { x.clone() })),
            None => out.extend(std::iter::repeat_n(Scalar::zero(), c.cod())),
        }
    }
    out
}

/// Unit cochains `dom^{⊗arity} → cod` on the full basis, filtered by a slot predicate.
fn units(arity: usize, dom: usize, cod: usize, keep: impl Fn(&[usize], usize, usize) -> bool) -> Vec<Cochain> {
    let mut out = Vec::new();
    for (w, t) in wedge_tail_basis(dom, arity - 1) {
        for k in 0..cod {
            if keep(&w, t, k) {
                let mut c = Cochain::zero(arity, dom, cod);
                c.set(&w, t, unit_vec(cod, k));
                out.push(c);
            }
        }
    }
    out
}

/// Units of bidegree `(n−1)|0` on `g ⊕ V`, counted from the slot types.
fn lifted_units(split: Split, n: usize) -> Vec<Cochain> {
    units(n, split.total(), split.total(), |w, t, k| {
        let vs = w.iter().chain(std::iter::once(&t)).filter(|&&i| i >= split.g).count();
        // (n−1)|0: zero V-arguments with a g value, or exactly one with a V value
        if k < split.g {
            vs == 0
        } else {
            vs == 1
        }
    })
}

pub enum OracleComplex<'a> {
    Prelie(&'a DerPair),
    Partial(&'a DerPair),
    Pair(&'a DerPair),
    Regular(&'a DerPair),
    Rep(&'a DerPair, &'a DerPairRepresentation),
}

fn pair_units(f: Vec<Cochain>, theta: Vec<Cochain>, zero_f: Cochain, zero_theta: Option<Cochain>) -> Vec<(Cochain, Option<Cochain>)> {
    let mut out: Vec<(Cochain, Option<Cochain>)> = f.into_iter().map(|f| (f, zero_theta.clone())).collect();
    out.extend(theta.into_iter().map(|t| (zero_f.clone(), Some(t))));
    out
}

impl OracleComplex<'_> {
    /// A basis of `C^n` and the images of its elements, flattened.
    fn images(&self, n: usize) -> (usize, Vec<Vec<Scalar>>) {
        match self {
            OracleComplex::Prelie(p) => {
                let basis = units(n, p.dim_g(), p.dim_v(), |_, _, _| true);
                let imgs = basis.iter().map(|f| flatten(&d_prelie_bracket(f, &p.algebra, &p.rep).unwrap())).collect();
                (basis.len(), imgs)
            }
            OracleComplex::Partial(p) => {
                let basis = lifted_units(p.split(), n);
                let imgs = basis.iter().map(|f| flatten(&partial_bracket(f, &p.algebra, &p.rep).unwrap())).collect();
                (basis.len(), imgs)
            }
            OracleComplex::Pair(p) => {
                let split = p.split();
                let theta = if n >= 2 { units(n - 1, split.g, split.v, |_, _, _| true) } else { Vec::new() };
                let zt = (n >= 2).then(|| Cochain::zero(n - 1, split.g, split.v));
                let basis = pair_units(lifted_units(split, n), theta, Cochain::zero(n, split.total(), split.total()), zt);
                let imgs = basis
                    .iter()
                    .map(|(f, t)| {
                        let out = hua_d_bracket(&DerPairCochain { f: f.clone(), theta: t.clone() }, p).unwrap();
                        let mut v = flatten(&out.f);
                        v.extend(flatten(out.theta.as_ref().unwrap()));
                        v
                    })
                    .collect();
                (basis.len(), imgs)
            }
            OracleComplex::Regular(p) => {
                let m = p.dim_g();
                let theta = if n >= 2 { units(n - 1, m, m, |_, _, _| true) } else { Vec::new() };
                let zt = (n >= 2).then(|| Cochain::zero(n - 1, m, m));
                let basis = pair_units(units(n, m, m, |_, _, _| true), theta, Cochain::zero(n, m, m), zt);
                let imgs = basis.iter().map(|(f, t)| via_pair(&RegPairCochain { f: f.clone(), theta: t.clone() }, p)).collect();
                (basis.len(), imgs)
            }
            OracleComplex::Rep(base, r) => {
                // lift into the regular complex of g ⋉ V
                let big = semidirect_product(base, r).unwrap();
                let split = Split::new(base.dim_g(), r.dim_v());
                let (m, k) = (split.g, split.v);
                let theta = if n >= 2 { units(n - 1, m, k, |_, _, _| true) } else { Vec::new() };
                let zt = (n >= 2).then(|| Cochain::zero(n - 1, m, k));
                let basis = pair_units(units(n, m, k, |_, _, _| true), theta, Cochain::zero(n, m, k), zt);
                let imgs = basis
                    .iter()
                    .map(|(f, t)| {
                        let lift = |c: &Cochain| c.embed_g(split, Tag::V);
                        via_pair(&RegPairCochain { f: lift(f), theta: t.as_ref().map(lift) }, &big)
                    })
                    .collect();
                (basis.len(), imgs)
            }
        }
    }

    /// Whether `v`, in the flattened layout of the images, is a coboundary `d(C^{n−1})`.
    pub fn is_coboundary(&self, n: usize, v: &[Scalar]) -> bool {
        if n < 2 {
            return v.iter().all(Zero::is_zero);
        }
        let mut imgs = self.images(n - 1).1;
        let r = bareiss_rank(&imgs);
        imgs.push(v.to_vec());
        bareiss_rank(&imgs) == r
    }

    /// `(dim C^n, z, b, h)`.
    pub fn cohomology(&self, n: usize) -> (usize, usize, usize, usize) {
        let (dim, imgs) = self.images(n);
        let rank_out = bareiss_rank(&imgs);
        let rank_in = if n >= 2 { bareiss_rank(&self.images(n - 1).1) } else { 0 };
        let z = dim - rank_out;
        (dim, z, rank_in, z - rank_in)
    }
}

/// A pair cochain in the flattened layout of [`OracleComplex::Pair`] images.
pub fn pair_vector(c: &DerPairCochain) -> Vec<Scalar> {
    let mut v = flatten(&c.f);
    if let Some(t) = &c.theta {
        v.extend(flatten(t));
    }
    v
}

/// A rep-complex cochain `(f, θ)` in the flattened layout of [`OracleComplex::Rep`] images.
pub fn rep_vector(c: &RegPairCochain, split: Split) -> Vec<Scalar> {
    let lift = |x: &Cochain| x.embed_g(split, Tag::V);
    pair_vector(&embed_regular(&RegPairCochain { f: lift(&c.f), theta: c.theta.as_ref().map(lift) }))
}

/// The regular differential through the embedding into the pair complex and the bracket path.
fn via_pair(c: &RegPairCochain, p: &DerPair) -> Vec<Scalar> {
    let out = hua_d_bracket(&embed_regular(c), p).unwrap();
    let mut v = flatten(&out.f);
    v.extend(flatten(out.theta.as_ref().unwrap()));
    v
}

/// Frozen CLI runs over the shipped corpus: golden file name and arguments.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("validate_abelian", &["validate", "abelian.json"]),
    ("validate_e1e2", &["validate", "e1e2.json"]),
    ("validate_bad_derivation", &["validate", "bad_derivation.json"]),
    ("validate_representation", &["validate", "representation.json"]),
    ("validate_pair", &["validate", "pair.json"]),
    ("validate_pair_json", &["--json", "validate", "pair.json"]),
    ("validate_regular3", &["validate", "regular3.json"]),
    ("validate_deformation", &["validate", "deformation_trivial.json", "--base", "pair.json"]),
    ("validate_extension", &["validate", "ext_total.json", "--base", "e1e2.json"]),
    ("bracket_pi_pi", &["bracket", "pi.json", "pi.json"]),
    ("bracket_pi_cochain", &["bracket", "pi.json", "cochain.json"]),
    ("bracket_json", &["--json", "bracket", "cochain.json", "cochain.json"]),
    ("cohomology_pair", &["cohomology", "pair.json"]),
    ("cohomology_pair_json", &["--json", "cohomology", "pair.json"]),
    ("cohomology_prelie", &["cohomology", "pair.json", "--complex", "prelie"]),
    ("cohomology_partial", &["cohomology", "pair.json", "--complex", "partial"]),
    ("cohomology_regular", &["cohomology", "regular3.json", "--complex", "regular"]),
    ("cohomology_regular_degree", &["cohomology", "e1e2.json", "--complex", "regular", "--degree", "2"]),
    ("cohomology_rep", &["cohomology", "e1e2.json", "--complex", "rep", "--module", "ext_cocycle.json"]),
    ("cohomology_abelian", &["cohomology", "abelian.json", "--complex", "regular"]),
    ("cohomology_bad_complex", &["cohomology", "pair.json", "--complex", "bogus"]),
    ("mc_pair", &["mc", "pair.json"]),
    ("mc_bad_derivation", &["mc", "bad_derivation.json"]),
    ("mc_json", &["--json", "mc", "e1e2.json"]),
    ("deform_check_trivial", &["deform", "check", "pair.json", "deformation_trivial.json"]),
    ("deform_check_class", &["deform", "check", "pair.json", "deformation_class.json"]),
    ("deform_check_equivalence", &["deform", "check", "pair.json", "deformation_zero.json", "deformation_equivalent.json"]),
    ("deform_class_trivial", &["deform", "class", "pair.json", "deformation_trivial.json"]),
    ("deform_class_distinct", &["deform", "class", "pair.json", "deformation_class.json"]),
    ("deform_class_json", &["--json", "deform", "class", "pair.json", "deformation_equivalent.json", "deformation_zero.json"]),
    ("ext_build", &["ext", "build", "e1e2.json", "ext_cocycle.json"]),
    ("ext_build_not_cocycle", &["ext", "build", "e1e2.json", "ext_not_cocycle.json"]),
    ("ext_extract", &["ext", "extract", "e1e2.json", "ext_total.json"]),
    ("ext_extract_json", &["--json", "ext", "extract", "e1e2.json", "ext_total.json"]),
    ("ext_classify_isomorphic", &["ext", "classify", "e1e2.json", "ext_cocycle.json", "ext_cohomologous.json"]),
    ("ext_classify_distinct", &["ext", "classify", "e1e2.json", "ext_cocycle.json", "ext_other_class.json"]),
    ("les_pair", &["les", "pair.json"]),
    ("les_regular3", &["les", "regular3.json"]),
    ("les_json", &["--json", "les", "e1e2.json"]),
];

/// `exit: N`, stdout and (when present) stderr, as frozen in the golden files.
pub fn golden_render(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    let mut s = format!("exit: {code}\n{out}");
    if !err.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(&err);
    }
    s
}

/// Names of golden cases whose output differs from the frozen file.
/// With `PRELIEDER_BLESS=1` the files are rewritten instead.
pub fn golden_mismatches() -> Vec<String> {
    let bless = std::env::var_os("PRELIEDER_BLESS").is_some_and(|v| v == "1");
    let dir = golden_dir();
    let mut bad = Vec::new();
    for (name, args) in GOLDEN_CASES {
        let got = golden_render(args);
        let path = dir.join(format!("{name}.txt"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => bad.push(name.to_string()),
        }
    }
    bad
}

// Axioms written out from the structure constants.

fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| &m[(i, j)] * &v[j]).sum()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = (0..a.rows())
        .map(|i| (0..b.cols()).map(|j| (0..a.cols()).map(|k| &a[(i, k)] * &b[(k, j)]).sum()).collect())
        .collect();
    Matrix::from_rows(b.cols(), rows).unwrap()
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = (0..a.rows()).map(|i| (0..a.cols()).map(|j| &a[(i, j)] - &b[(i, j)]).collect()).collect();
    Matrix::from_rows(a.cols(), rows).unwrap()
}

fn combo(ms: &[Matrix], x: &[Scalar]) -> Matrix {
    let (r, c) = (ms[0].rows(), ms[0].cols());
    let rows = (0..r).map(|i| (0..c).map(|j| ms.iter().zip(x).map(|(m, t)| &m[(i, j)] * t).sum()).collect()).collect();
    Matrix::from_rows(c, rows).unwrap()
}

/// `e_i · e_j` as a coordinate vector.
fn prod(a: &PreLieAlgebra, i: usize, j: usize) -> Vec<Scalar> {
    a.table()[i][j].clone()
}

fn prod_vec(a: &PreLieAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = a.dim();
    let mut out = vec![Scalar::zero(); n];
    for i in 0..n {
        for j in 0..n {
            let c = &x[i] * &y[j];
            if !c.is_zero() {
                for (o, t) in out.iter_mut().zip(prod(a, i, j)) {
                    *o += &c * t;
                }
            }
        }
    }
    out
}

/// `(x·y)·z − x·(y·z) = (y·x)·z − y·(x·z)` on basis triples.
pub fn oracle_prelie(a: &PreLieAlgebra) -> bool {
    let n = a.dim();
    let e = |i| unit_vec(n, i);
    let assoc = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| -> Vec<Scalar> {
        let l = prod_vec(a, &prod_vec(a, x, y), z);
        let r = prod_vec(a, x, &prod_vec(a, y, z));
        l.iter().zip(&r).map(|(p, q)| p - q).collect()
    };
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| assoc(&e(i), &e(j), &e(k)) == assoc(&e(j), &e(i), &e(k)))))
}

/// `ρ([x,y]) = [ρ(x),ρ(y)]` and `μ(y)μ(x) − μ(x·y) = μ(y)ρ(x) − ρ(x)μ(y)`.
pub fn oracle_rep(a: &PreLieAlgebra, r: &Representation) -> bool {
    let n = a.dim();
    let (rho, mu) = (r.rho_matrices(), r.mu_matrices());
    (0..n).all(|i| {
        (0..n).all(|j| {
            let br: Vec<Scalar> = prod(a, i, j).iter().zip(prod(a, j, i)).map(|(p, q)| p - q).collect();
            let first = combo(rho, &br) == mat_sub(&mat_mul(&rho[i], &rho[j]), &mat_mul(&rho[j], &rho[i]));
            let lhs = mat_sub(&mat_mul(&mu[j], &mu[i]), &combo(mu, &prod(a, i, j)));
            let rhs = mat_sub(&mat_mul(&mu[j], &rho[i]), &mat_mul(&rho[i], &mu[j]));
            first && lhs == rhs
        })
    })
}

/// `D(x·y) = ρ(x)D(y) + μ(y)D(x)`.
pub fn oracle_derivation(p: &DerPair) -> bool {
    let n = p.dim_g();
    let d_col = |i: usize| (0..p.d.rows()).map(|k| p.d[(k, i)].clone()).collect::<Vec<_>>();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = mat_vec(&p.d, &prod(&p.algebra, i, j));
            let a = mat_vec(&p.rep.rho_matrices()[i], &d_col(j));
            let b = mat_vec(&p.rep.mu_matrices()[j], &d_col(i));
            lhs == a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>()
        })
    })
}

pub fn oracle_pair(p: &DerPair) -> bool {
    oracle_prelie(&p.algebra) && oracle_rep(&p.algebra, &p.rep) && oracle_derivation(p)
}

/// A representation of a regular pair: `Kρ(x) = ρ(x)K + ρ(Dx)`, the same for `μ`.
pub fn oracle_module(base: &DerPair, r: &DerPairRepresentation) -> bool {
    let n = base.dim_g();
    let k = &r.k;
    let compatible = |ms: &[Matrix]| {
        (0..n).all(|i| {
            let dx: Vec<Scalar> = (0..n).map(|c| base.d[(c, i)].clone()).collect();
            mat_sub(&mat_mul(k, &ms[i]), &mat_mul(&ms[i], k)) == combo(ms, &dx)
        })
    };
    oracle_rep(&base.algebra, &r.rep) && compatible(r.rep.rho_matrices()) && compatible(r.rep.mu_matrices())
}

/// `(f_g, f_v)` is a morphism `src → dst`.
pub fn oracle_morphism(f_g: &Matrix, f_v: &Matrix, src: &DerPair, dst: &DerPair) -> bool {
    let m = src.dim_g();
    let col = |f: &Matrix, i: usize| (0..f.rows()).map(|k| f[(k, i)].clone()).collect::<Vec<_>>();
    let alg = (0..m).all(|i| {
        (0..m).all(|j| mat_vec(f_g, &prod(&src.algebra, i, j)) == prod_vec(&dst.algebra, &col(f_g, i), &col(f_g, j)))
    });
    let reps = (0..m).all(|i| {
        mat_mul(f_v, &src.rep.rho_matrices()[i]) == mat_mul(&combo(dst.rep.rho_matrices(), &col(f_g, i)), f_v)
            && mat_mul(f_v, &src.rep.mu_matrices()[i]) == mat_mul(&combo(dst.rep.mu_matrices(), &col(f_g, i)), f_v)
    });
    alg && reps && mat_mul(f_v, &src.d) == mat_mul(&dst.d, f_g)
}
