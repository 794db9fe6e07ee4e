//! Pre-Lie algebras, their representations, derivations and pre-LieDer pairs.
//!
//! Constructors accept arbitrary structure constants; validity is always a
//! separate query, since deformation candidates need not be valid.

use num_traits::{One, Zero};

use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Scalar};
use crate::report::Report;
use crate::spaces::{Split, Tag};

/// Structure constants `table[i][j] = e_i · e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLieAlgebra {
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl PreLieAlgebra {
    pub fn new(dim: usize, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::Dimension(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        Ok(PreLieAlgebra { dim, table })
    }

    pub fn zero(dim: usize) -> Self {
        PreLieAlgebra { dim, table: vec![vec![zero_vec(dim); dim]; dim] }
    }

    /// Build from `(i, j, k, c)` entries meaning `e_i · e_j` has `c` in coordinate `k`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut a = PreLieAlgebra::zero(dim);
        for (i, j, k, c) in entries {
            a.table[*i][*j][*k] += c;
        }
        a
    }

    /// Read the product off a bilinear cochain on `g`.
    pub fn from_cochain(pi: &Cochain) -> Result<Self> {
        if pi.arity() != 2 || pi.dom() != pi.cod() {
            return Err(Error::Arity("a multiplication is a binary map g x g -> g".into()));
        }
        let n = pi.dom();
        let mut a = PreLieAlgebra::zero(n);
        for i in 0..n {
            for j in 0..n {
                if let Some((s, v)) = pi.eval_basis(&[i], j) {
                    a.table[i][j] = if s < 0 { v.iter().map(|x| -x).collect() } else { v.clone() };
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(xi * yj), &self.table[i][j]);
            }
        }
        out
    }

    /// `[e_i, e_j]_C = e_i·e_j − e_j·e_i`.
    pub fn commutator(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.table[i][j].iter().zip(&self.table[j][i]).map(|(a, b)| a - b).collect()
    }

    pub fn add(&self, other: &PreLieAlgebra) -> PreLieAlgebra {
        self.combine(other, &Scalar::one())
    }

    /// `self + t·other`.
    pub fn combine(&self, other: &PreLieAlgebra, t: &Scalar) -> PreLieAlgebra {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                axpy(&mut out.table[i][j], t, &other.table[i][j]);
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(|v| is_zero_vec(v))
    }

    /// The multiplication as a cochain in `C^2(g;g)`.
    pub fn to_cochain(&self) -> Cochain {
        Cochain::from_table(self.dim, self.dim, &self.table)
    }

    /// Left multiplication matrix `L_{e_i}`.
    pub fn left(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.dim, &self.table[i])
    }

    /// Right multiplication matrix `R_{e_i}`.
    pub fn right(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.table[j][i].clone()).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Change of basis: the product transported along an invertible `p` (new basis `p e_i`).
    pub fn transform(&self, p: &Matrix) -> Result<PreLieAlgebra> {
        let inv = p.inverse().ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
        let n = self.dim;
        let mut out = PreLieAlgebra::zero(n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.product(&p.column(i), &p.column(j));
                out.table[i][j] = inv.mul_vec(&prod);
            }
        }
        Ok(out)
    }
}

/// Left-symmetry of the associator on all basis triples.
pub fn check_prelie(a: &PreLieAlgebra) -> Report {
    let n = a.dim;
    let mut report = Report::new();
    let failure = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            let (x, y, z) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
            associator(a, &x, &y, &z) != associator(a, &y, &x, &z)
        })
        .map(|(i, j, k)| format!("associator not left-symmetric at (e{}, e{}, e{})", i + 1, j + 1, k + 1));
    report.push("prelie", failure);
    report
}

/// `(x·y)·z − x·(y·z)`.
pub fn associator(a: &PreLieAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    let lhs = a.product(&a.product(x, y), z);
    let rhs = a.product(x, &a.product(y, z));
    lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect()
}

pub fn is_prelie(a: &PreLieAlgebra) -> bool {
    check_prelie(a).ok()
}

/// Lie bracket constants `[e_i, e_j]_C` of the sub-adjacent Lie algebra.
pub fn subadjacent_lie(a: &PreLieAlgebra) -> Result<Vec<Vec<Vec<Scalar>>>> {
    if !is_prelie(a) {
        return Err(Error::Invalid("not a pre-Lie algebra".into()));
    }
    let n = a.dim;
    Ok((0..n).map(|i| (0..n).map(|j| a.commutator(i, j)).collect()).collect())
}

/// Antisymmetry and Jacobi for bracket constants.
pub fn is_lie(bracket: &[Vec<Vec<Scalar>>]) -> bool {
    let n = bracket.len();
    let br = |x: &[Scalar], y: &[Scalar]| {
        let mut out = zero_vec(n);
        for i in 0..n {
            for j in 0..n {
                let c = &x[i] * &y[j];
                if !c.is_zero() {
                    axpy(&mut out, &c, &bracket[i][j]);
                }
            }
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            let s: Vec<Scalar> = bracket[i][j].iter().zip(&bracket[j][i]).map(|(a, b)| a + b).collect();
            if !is_zero_vec(&s) {
                return false;
            }
            for k in 0..n {
                let (x, y, z) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                let mut total = br(&br(&x, &y), &z);
                axpy(&mut total, &Scalar::one(), &br(&br(&y, &z), &x));
                axpy(&mut total, &Scalar::one(), &br(&br(&z, &x), &y));
                if !is_zero_vec(&total) {
                    return false;
                }
            }
        }
    }
    true
}

/// A representation `(V; ρ, μ)`: `rho[i] = ρ(e_i)` and `mu[i] = μ(e_i)` as `dim V × dim V` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim_v: usize,
    rho: Vec<Matrix>,
    mu: Vec<Matrix>,
}

impl Representation {
    pub fn new(dim_v: usize, rho: Vec<Matrix>, mu: Vec<Matrix>) -> Result<Self> {
        if rho.len() != mu.len() {
            return Err(Error::Dimension("rho and mu need one matrix per basis vector of g".into()));
        }
        if rho.iter().chain(&mu).any(|m| m.rows() != dim_v || m.cols() != dim_v) {
            return Err(Error::Dimension(format!("representation matrices must be {dim_v}x{dim_v}")));
        }
        Ok(Representation { dim_v, rho, mu })
    }

    pub fn zero(dim_g: usize, dim_v: usize) -> Self {
        Representation { dim_v, rho: vec![Matrix::zeros(dim_v, dim_v); dim_g], mu: vec![Matrix::zeros(dim_v, dim_v); dim_g] }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_g(&self) -> usize {
        self.rho.len()
    }

    pub fn rho_basis(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn mu_basis(&self, i: usize) -> &Matrix {
        &self.mu[i]
    }

    pub fn rho_matrices(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn mu_matrices(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn rho(&self, x: &[Scalar]) -> Matrix {
        combine_matrices(&self.rho, x, self.dim_v)
    }

    pub fn mu(&self, x: &[Scalar]) -> Matrix {
        combine_matrices(&self.mu, x, self.dim_v)
    }

    /// `ρ(x)u` for a vector `x ∈ g` and `u ∈ V`.
    pub fn rho_apply(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        apply_combination(&self.rho, x, u, self.dim_v)
    }

    pub fn mu_apply(&self, x: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        apply_combination(&self.mu, x, u, self.dim_v)
    }

    /// `self + t·other`.
    pub fn combine(&self, other: &Representation, t: &Scalar) -> Representation {
        let add = |a: &Matrix, b: &Matrix| a + &b.scale(t);
        Representation {
            dim_v: self.dim_v,
            rho: self.rho.iter().zip(&other.rho).map(|(a, b)| add(a, b)).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| add(a, b)).collect(),
        }
    }

    /// Conjugate by an invertible `q ∈ GL(V)`: `ρ'(x) = q^{-1} ρ(x) q`.
    pub fn conjugate(&self, q: &Matrix) -> Result<Representation> {
        let inv = q.inverse().ok_or_else(|| Error::Invalid("conjugating matrix is singular".into()))?;
        let conj = |m: &Matrix| &(&inv * m) * q;
        Ok(Representation {
            dim_v: self.dim_v,
            rho: self.rho.iter().map(conj).collect(),
            mu: self.mu.iter().map(conj).collect(),
        })
    }
}

fn combine_matrices(ms: &[Matrix], x: &[Scalar], n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for (m, c) in ms.iter().zip(x) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

fn apply_combination(ms: &[Matrix], x: &[Scalar], u: &[Scalar], n: usize) -> Vec<Scalar> {
    let mut out = zero_vec(n);
    for (m, c) in ms.iter().zip(x) {
        if !c.is_zero() {
            axpy(&mut out, c, &m.mul_vec(u));
        }
    }
    out
}

/// The regular representation `(g; L, R)`.
pub fn regular_representation(a: &PreLieAlgebra) -> Representation {
    let n = a.dim;
    Representation { dim_v: n, rho: (0..n).map(|i| a.left(i)).collect(), mu: (0..n).map(|i| a.right(i)).collect() }
}

fn check_dims(a: &PreLieAlgebra, r: &Representation) -> Result<()> {
    if r.dim_g() != a.dim {
        return Err(Error::Dimension(format!("representation is indexed by {} vectors, algebra has dimension {}", r.dim_g(), a.dim)));
    }
    Ok(())
}

/// Both representation axioms on basis pairs, tagged `rep-rho` and `rep-mu`.
pub fn check_representation(a: &PreLieAlgebra, r: &Representation) -> Result<Report> {
    check_dims(a, r)?;
    let n = a.dim;
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let mut report = Report::new();
    let rho_fail = pairs().find(|&(i, j)| {
        let lhs = r.rho(&a.commutator(i, j));
        let rhs = &(&r.rho[i] * &r.rho[j]) - &(&r.rho[j] * &r.rho[i]);
        lhs != rhs
    });
    report.push("rep-rho", rho_fail.map(|(i, j)| format!("rho([e{},e{}]) != [rho(e{}),rho(e{})]", i + 1, j + 1, i + 1, j + 1)));
    // μ(y)μ(x) − μ(x·y) = μ(y)ρ(x) − ρ(x)μ(y) with x = e_i, y = e_j
    let mu_fail = pairs().find(|&(i, j)| {
        let lhs = &(&r.mu[j] * &r.mu[i]) - &r.mu(a.basis_product(i, j));
        let rhs = &(&r.mu[j] * &r.rho[i]) - &(&r.rho[i] * &r.mu[j]);
        lhs != rhs
    });
    report.push("rep-mu", mu_fail.map(|(i, j)| format!("mu axiom fails at x = e{}, y = e{}", i + 1, j + 1)));
    Ok(report)
}

pub fn is_representation(a: &PreLieAlgebra, r: &Representation) -> Result<bool> {
    Ok(check_representation(a, r)?.ok())
}

/// A pre-LieDer pair `(g, D, ρ, μ)`; `d` is the `dim V × dim g` matrix of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerPair {
    pub algebra: PreLieAlgebra,
    pub rep: Representation,
    pub d: Matrix,
}

impl DerPair {
    pub fn new(algebra: PreLieAlgebra, rep: Representation, d: Matrix) -> Result<Self> {
        check_dims(&algebra, &rep)?;
        if d.rows() != rep.dim_v() || d.cols() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "derivation must be {}x{}, got {}x{}",
                rep.dim_v(),
                algebra.dim(),
                d.rows(),
                d.cols()
            )));
        }
        Ok(DerPair { algebra, rep, d })
    }

    /// The regular pair `(g, D)` with `(L, R)` coefficients.
    pub fn regular(algebra: PreLieAlgebra, d: Matrix) -> Result<Self> {
        let rep = regular_representation(&algebra);
        DerPair::new(algebra, rep, d)
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }

    pub fn split(&self) -> Split {
        Split::new(self.dim_g(), self.dim_v())
    }

    /// Whether the coefficients are the regular representation of the algebra.
    pub fn is_regular(&self) -> bool {
        self.rep == regular_representation(&self.algebra)
    }

    /// `π + ρ + μ` lifted to `g ⊕ V`.
    pub fn structure_cochain(&self) -> Cochain {
        structure_cochain(&self.algebra, &self.rep)
    }

    /// `D` lifted to `g ⊕ V`.
    pub fn derivation_cochain(&self) -> Cochain {
        derivation_cochain(&self.d, self.split())
    }
}

/// Lift of `π + ρ + μ`: `π` on `(e_i; e_j)`, `ρ(x)u` on `(x; u)` and `μ(y)u` on `(u; y)`.
pub fn structure_cochain(a: &PreLieAlgebra, r: &Representation) -> Cochain {
    let split = Split::new(a.dim(), r.dim_v());
    let total = split.total();
    let mut c = Cochain::zero(2, total, total);
    let place = |tag: Tag, v: &[Scalar]| {
        let mut w = zero_vec(total);
        w[split.range(tag)].clone_from_slice(v);
        w
    };
    for i in 0..split.g {
        for j in 0..split.g {
            c.set(&[i], j, place(Tag::G, a.basis_product(i, j)));
        }
        for u in 0..split.v {
            let vu = split.global(Tag::V, u);
            c.set(&[i], vu, place(Tag::V, &r.rho_basis(i).column(u)));
            c.set(&[vu], i, place(Tag::V, &r.mu_basis(i).column(u)));
        }
    }
    c
}

/// Lift of a linear map `D: g → V` (`dim V × dim g` matrix).
pub fn derivation_cochain(d: &Matrix, split: Split) -> Cochain {
    let total = split.total();
    let mut c = Cochain::zero(1, total, total);
    for i in 0..split.g {
        let mut w = zero_vec(total);
        w[split.range(Tag::V)].clone_from_slice(&d.column(i));
        c.set(&[], i, w);
    }
    c
}

/// `D(x·y) = ρ(x)D(y) + μ(y)D(x)` on basis pairs, tagged `derivation`.
pub fn check_derivation(p: &DerPair) -> Report {
    let n = p.dim_g();
    let mut report = Report::new();
    let fail = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| {
        let lhs = p.d.mul_vec(p.algebra.basis_product(i, j));
        let mut rhs = p.rep.rho_basis(i).mul_vec(&p.d.column(j));
        axpy(&mut rhs, &Scalar::one(), &p.rep.mu_basis(j).mul_vec(&p.d.column(i)));
        lhs != rhs
    });
    report.push("derivation", fail.map(|(i, j)| format!("D(e{}.e{}) != rho(e{})D(e{}) + mu(e{})D(e{})", i + 1, j + 1, i + 1, j + 1, j + 1, i + 1)));
    report
}

pub fn is_derivation(p: &DerPair) -> bool {
    check_derivation(p).ok()
}

/// All pre-LieDer pair axioms: `prelie`, `rep-rho`, `rep-mu`, `derivation`.
pub fn check_derpair(p: &DerPair) -> Report {
    let mut report = check_prelie(&p.algebra);
    report.extend(check_representation(&p.algebra, &p.rep).expect("dimensions checked on construction"));
    report.extend(check_derivation(p));
    report
}

pub fn is_derpair(p: &DerPair) -> bool {
    check_derpair(p).ok()
}

/// Morphism of pre-LieDer pairs: `algebra-morphism` and the three compatibility squares `mor-1..3`.
pub fn check_morphism(f_g: &Matrix, f_v: &Matrix, src: &DerPair, dst: &DerPair) -> Result<Report> {
    let (m, r) = (src.dim_g(), src.dim_v());
    let (m2, r2) = (dst.dim_g(), dst.dim_v());
    if f_g.rows() != m2 || f_g.cols() != m || f_v.rows() != r2 || f_v.cols() != r {
        return Err(Error::Dimension("morphism matrices do not match the pairs".into()));
    }
    let mut report = Report::new();
    let alg_fail = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| {
        f_g.mul_vec(src.algebra.basis_product(i, j)) != dst.algebra.product(&f_g.column(i), &f_g.column(j))
    });
    report.push("algebra-morphism", alg_fail.map(|(i, j)| format!("f(e{}.e{}) != f(e{}).f(e{})", i + 1, j + 1, i + 1, j + 1)));
    let rho_fail = (0..m).find(|&i| (f_v * src.rep.rho_basis(i)) != (&dst.rep.rho(&f_g.column(i)) * f_v));
    report.push("mor-1", rho_fail.map(|i| format!("fails at e{}", i + 1)));
    let mu_fail = (0..m).find(|&i| (f_v * src.rep.mu_basis(i)) != (&dst.rep.mu(&f_g.column(i)) * f_v));
    report.push("mor-2", mu_fail.map(|i| format!("fails at e{}", i + 1)));
    let d_ok = (f_v * &src.d) == (&dst.d * f_g);
    report.push("mor-3", (!d_ok).then(|| "f_V D != D' f_g".to_string()));
    Ok(report)
}

pub fn is_morphism(f_g: &Matrix, f_v: &Matrix, src: &DerPair, dst: &DerPair) -> Result<bool> {
    Ok(check_morphism(f_g, f_v, src, dst)?.ok())
}
