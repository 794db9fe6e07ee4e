//! Representations of regular pre-LieDer pairs, semidirect products and abelian extensions.

use num_traits::Zero;

use crate::cochain::{Arg, Cochain};
use crate::cohomology::{hua_d_rep, Complex, RegPairCochain};
use crate::error::{Error, Result};
use crate::linalg::{axpy, int, is_zero_vec, unit_vec, zero_vec, Matrix, Scalar};
use crate::prelie::{
    check_derpair, check_morphism, check_representation, regular_representation, DerPair, PreLieAlgebra, Representation,
};
use crate::report::Report;

/// `(V, K, ρ̃, μ̃)`: a representation of a regular pre-LieDer pair `(g, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerPairRepresentation {
    pub k: Matrix,
    pub rep: Representation,
}

impl DerPairRepresentation {
    pub fn new(k: Matrix, rep: Representation) -> Result<Self> {
        if k.rows() != rep.dim_v() || k.cols() != rep.dim_v() {
            return Err(Error::Dimension(format!("K must be {0}x{0}", rep.dim_v())));
        }
        Ok(DerPairRepresentation { k, rep })
    }

    /// `(g, D, L̃, R̃)` with `K = D`.
    pub fn regular(base: &DerPair) -> Self {
        DerPairRepresentation { k: base.d.clone(), rep: regular_representation(&base.algebra) }
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }
}

fn check_regular_base(base: &DerPair) -> Result<()> {
    if !base.is_regular() {
        return Err(Error::Invalid("representations are defined for regular pairs only".into()));
    }
    Ok(())
}

/// `rep-rho`, `rep-mu` for `(V; ρ̃, μ̃)` and the two `K`-compatibilities `extension-rep-1`, `extension-rep-2`.
pub fn check_derpair_representation(base: &DerPair, r: &DerPairRepresentation) -> Result<Report> {
    check_regular_base(base)?;
    let mut report = check_representation(&base.algebra, &r.rep)?;
    let m = base.dim_g();
    let k = &r.k;
    // K ρ̃(x) = ρ̃(x) K + ρ̃(D x)
    let rho_fail = (0..m).find(|&i| {
        let rho = r.rep.rho_basis(i);
        (k * rho) != (&(rho * k) + &r.rep.rho(&base.d.column(i)))
    });
    report.push("extension-rep-1", rho_fail.map(|i| format!("K rho(e{0}) != rho(e{0}) K + rho(D e{0})", i + 1)));
    let mu_fail = (0..m).find(|&i| {
        let mu = r.rep.mu_basis(i);
        (k * mu) != (&(mu * k) + &r.rep.mu(&base.d.column(i)))
    });
    report.push("extension-rep-2", mu_fail.map(|i| format!("K mu(e{0}) != mu(e{0}) K + mu(D e{0})", i + 1)));
    Ok(report)
}

pub fn is_derpair_representation(base: &DerPair, r: &DerPairRepresentation) -> Result<bool> {
    Ok(check_derpair_representation(base, r)?.ok())
}

/// `g ⋉ V` with `(x+u)·(y+v) = x·y + ρ̃(x)v + μ̃(y)u` and derivation `D + K`.
pub fn semidirect_product(base: &DerPair, r: &DerPairRepresentation) -> Result<DerPair> {
    let c = ExtensionCocycle::zero(base.dim_g(), r.dim_v());
    total_pair(base, r, &c)
}

/// `(θ, ξ)` with `θ: g ⊗ g → V` and `ξ: g → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCocycle {
    pub theta: Cochain,
    pub xi: Matrix,
}

impl ExtensionCocycle {
    pub fn zero(dim_g: usize, dim_v: usize) -> Self {
        ExtensionCocycle { theta: Cochain::zero(2, dim_g, dim_v), xi: Matrix::zeros(dim_v, dim_g) }
    }

    pub fn new(theta: Cochain, xi: Matrix) -> Result<Self> {
        if theta.arity() != 2 || theta.dom() != xi.cols() || theta.cod() != xi.rows() {
            return Err(Error::Dimension("theta must be g x g -> V and xi g -> V".into()));
        }
        Ok(ExtensionCocycle { theta, xi })
    }

    pub fn dim_g(&self) -> usize {
        self.xi.cols()
    }

    pub fn dim_v(&self) -> usize {
        self.xi.rows()
    }

    pub fn theta_at(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.theta.eval_args(&[Arg::Basis(i), Arg::Basis(j)])
    }

    pub fn to_cochain(&self) -> RegPairCochain {
        RegPairCochain { f: self.theta.clone(), theta: Some(Cochain::from_matrix(&self.xi)) }
    }

    pub fn from_cochain(c: &RegPairCochain) -> Self {
        let t = c.theta.as_ref().expect("degree two");
        let cols: Vec<Vec<Scalar>> = (0..t.dom()).map(|i| t.eval_args(&[Arg::Basis(i)])).collect();
        ExtensionCocycle { theta: c.f.clone(), xi: Matrix::from_columns(t.cod(), &cols) }
    }

    pub fn add(&self, other: &ExtensionCocycle) -> ExtensionCocycle {
        ExtensionCocycle { theta: self.theta.add(&other.theta), xi: &self.xi + &other.xi }
    }

    pub fn sub(&self, other: &ExtensionCocycle) -> ExtensionCocycle {
        ExtensionCocycle { theta: self.theta.sub(&other.theta), xi: &self.xi - &other.xi }
    }
}

/// `𝒟_{(ρ̃,μ̃)}(θ, ξ)`; zero exactly for 2-cocycles.
pub fn cocycle_residual(base: &DerPair, r: &DerPairRepresentation, c: &ExtensionCocycle) -> Result<RegPairCochain> {
    check_shapes(base, r, c)?;
    hua_d_rep(&c.to_cochain(), &base.algebra, &base.d, &r.rep, &r.k)
}

pub fn is_cocycle(base: &DerPair, r: &DerPairRepresentation, c: &ExtensionCocycle) -> Result<bool> {
    Ok(cocycle_residual(base, r, c)?.is_zero())
}

/// `𝒟_{(ρ̃,μ̃)}(φ) = (dM φ, Ω φ)` for `φ: g → V`.
pub fn coboundary(base: &DerPair, r: &DerPairRepresentation, phi: &Matrix) -> Result<ExtensionCocycle> {
    let c = RegPairCochain { f: Cochain::from_matrix(phi), theta: None };
    Ok(ExtensionCocycle::from_cochain(&hua_d_rep(&c, &base.algebra, &base.d, &r.rep, &r.k)?))
}

fn check_shapes(base: &DerPair, r: &DerPairRepresentation, c: &ExtensionCocycle) -> Result<()> {
    check_regular_base(base)?;
    if r.rep.dim_g() != base.dim_g() || c.dim_g() != base.dim_g() || c.dim_v() != r.dim_v() {
        return Err(Error::Dimension("representation and cocycle must match the pair".into()));
    }
    Ok(())
}

/// The pair `(g ⊕ V, ⋄, D + ξ + K)` without any validity check.
fn total_pair(base: &DerPair, r: &DerPairRepresentation, c: &ExtensionCocycle) -> Result<DerPair> {
    check_shapes(base, r, c)?;
    let (m, n) = (base.dim_g(), r.dim_v());
    let mut entries = Vec::new();
    let mut put = |i: usize, j: usize, offset: usize, v: &[Scalar]| {
        for (k, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            entries.push((i, j, offset + k, x.clone()));
        }
    };
    for i in 0..m {
        for j in 0..m {
            put(i, j, 0, base.algebra.basis_product(i, j));
            put(i, j, m, &c.theta_at(i, j));
        }
        for u in 0..n {
            put(i, m + u, m, &r.rep.rho_basis(i).column(u));
            put(m + u, i, m, &r.rep.mu_basis(i).column(u));
        }
    }
    let algebra = PreLieAlgebra::from_entries(m + n, &entries);
    let mut d = Matrix::zeros(m + n, m + n).to_rows();
    for (row, out) in d.iter_mut().enumerate() {
        for (col, x) in out.iter_mut().enumerate() {
            *x = match (row < m, col < m) {
                (true, true) => base.d[(row, col)].clone(),
                (false, true) => c.xi[(row - m, col)].clone(),
                (false, false) => r.k[(row - m, col - m)].clone(),
                (true, false) => Scalar::zero(),
            };
        }
    }
    DerPair::regular(algebra, Matrix::from_rows(m + n, d)?)
}

/// `0 → V → ĝ → g → 0` with explicit `ι` and `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianExtension {
    /// `(ĝ, D̂)`, a regular pair.
    pub total: DerPair,
    /// `dim ĝ × dim V`.
    pub inject: Matrix,
    /// `dim g × dim ĝ`.
    pub project: Matrix,
}

impl AbelianExtension {
    pub fn dim_g(&self) -> usize {
        self.project.rows()
    }

    pub fn dim_v(&self) -> usize {
        self.inject.cols()
    }

    /// `K` with `D̂ ι = ι K`, if it exists.
    pub fn k(&self) -> Option<Matrix> {
        let di = &self.total.d * &self.inject;
        let cols: Option<Vec<Vec<Scalar>>> = (0..self.dim_v()).map(|u| self.inject.solve(&di.column(u))).collect();
        Some(Matrix::from_columns(self.dim_v(), &cols?))
    }

    /// `s` with `s(e_i)` the least-index solution of `p s = Id`.
    pub fn canonical_section(&self) -> Result<Matrix> {
        let m = self.dim_g();
        let cols: Option<Vec<Vec<Scalar>>> = (0..m).map(|i| self.project.solve(&unit_vec(m, i))).collect();
        let cols = cols.ok_or_else(|| Error::Invalid("projection is not surjective".into()))?;
        Ok(Matrix::from_columns(self.total.dim_g(), &cols))
    }

    fn pull_back(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        self.inject.solve(w).ok_or_else(|| Error::Invalid("value does not lie in the image of iota".into()))
    }
}

/// Tags `extension-exact`, `extension-abelian`, `extension-total`, `extension-iota`, `extension-p`.
pub fn check_extension(base: &DerPair, k: &Matrix, ext: &AbelianExtension) -> Result<Report> {
    check_regular_base(base)?;
    let (m, n, big) = (base.dim_g(), k.rows(), ext.total.dim_g());
    if ext.inject.rows() != big || ext.inject.cols() != n || ext.project.rows() != m || ext.project.cols() != big || k.cols() != n {
        return Err(Error::Dimension("iota, p and K do not match the pair".into()));
    }
    let mut report = Report::new();
    let exact = (&ext.project * &ext.inject).is_zero() && ext.inject.rank() == n && ext.project.rank() == m && big == m + n;
    report.push("extension-exact", (!exact).then(|| "0 -> V -> g^ -> g -> 0 is not exact".into()));
    let abelian = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).find(|&(u, v)| {
        !is_zero_vec(&ext.total.algebra.product(&ext.inject.column(u), &ext.inject.column(v)))
    });
    report.push("extension-abelian", abelian.map(|(u, v)| format!("iota(u{}).iota(u{}) != 0", u + 1, v + 1)));
    let total = check_derpair(&ext.total);
    report.push("extension-total", (!total.ok()).then(|| format!("total pair fails {}", total.failed().join(", "))));
    let iota = (&ext.total.d * &ext.inject) == (&ext.inject * k);
    report.push("extension-iota", (!iota).then(|| "D^ iota != iota K".into()));
    let p_alg = (0..big).flat_map(|i| (0..big).map(move |j| (i, j))).find(|&(i, j)| {
        ext.project.mul_vec(ext.total.algebra.basis_product(i, j))
            != base.algebra.product(&ext.project.column(i), &ext.project.column(j))
    });
    let p_der = (&ext.project * &ext.total.d) == (&base.d * &ext.project);
    let p_fail = p_alg.map(|(i, j)| format!("p(e{}.e{}) != p(e{}).p(e{})", i + 1, j + 1, i + 1, j + 1));
    report.push("extension-p", p_fail.or_else(|| (!p_der).then(|| "p D^ != D p".into())));
    Ok(report)
}

/// `(g ⊕ V, ⋄, D + ξ + K)` with coordinate `ι` and `p`.
///
/// Fails with the violated axioms of the total pair when `(θ, ξ)` is not a cocycle.
pub fn build_extension(base: &DerPair, r: &DerPairRepresentation, c: &ExtensionCocycle) -> Result<AbelianExtension> {
    let total = total_pair(base, r, c)?;
    let report = check_derpair(&total);
    if !report.ok() {
        return Err(Error::Invalid(format!("not an extension, total pair fails {}", report.failed().join(", "))));
    }
    let (m, n) = (base.dim_g(), r.dim_v());
    let inject = Matrix::from_columns(m + n, &(0..n).map(|u| unit_vec(m + n, m + u)).collect::<Vec<_>>());
    let project = Matrix::from_columns(m, &(0..m + n).map(|i| if i < m { unit_vec(m, i) } else { zero_vec(m) }).collect::<Vec<_>>());
    Ok(AbelianExtension { total, inject, project })
}

/// `θ(x,y) = s(x)·s(y) − s(x·y)`, `ξ(x) = D̂ s(x) − s(D x)`, `ρ̃(x)u = s(x)·u`, `μ̃(x)u = u·s(x)`
/// and `K` from `D̂ ι = ι K`, all read back through `ι`.
pub fn extract_cocycle(base: &DerPair, ext: &AbelianExtension, s: &Matrix) -> Result<(ExtensionCocycle, DerPairRepresentation)> {
    check_regular_base(base)?;
    let (m, n) = (base.dim_g(), ext.dim_v());
    if s.rows() != ext.total.dim_g() || s.cols() != m || ext.dim_g() != m {
        return Err(Error::Dimension("section must be dim g^ x dim g".into()));
    }
    if &ext.project * s != Matrix::identity(m) {
        return Err(Error::Invalid("not a section: p s != Id".into()));
    }
    let hat = &ext.total.algebra;
    let mut theta = Cochain::zero(2, m, n);
    for i in 0..m {
        for j in 0..m {
            let mut w = hat.product(&s.column(i), &s.column(j));
            axpy(&mut w, &int(-1), &s.mul_vec(base.algebra.basis_product(i, j)));
            theta.set(&[i], j, ext.pull_back(&w)?);
        }
    }
    let sd = s * &base.d;
    let ds = &ext.total.d * s;
    let xi: Result<Vec<Vec<Scalar>>> = (0..m)
        .map(|i| {
            let mut w = ds.column(i);
            axpy(&mut w, &int(-1), &sd.column(i));
            ext.pull_back(&w)
        })
        .collect();
    let block = |f: &dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>, i: usize| -> Result<Matrix> {
        let cols: Result<Vec<Vec<Scalar>>> = (0..n).map(|u| ext.pull_back(&f(&s.column(i), &ext.inject.column(u)))).collect();
        Ok(Matrix::from_columns(n, &cols?))
    };
    let rho: Result<Vec<Matrix>> = (0..m).map(|i| block(&|x, u| hat.product(x, u), i)).collect();
    let mu: Result<Vec<Matrix>> = (0..m).map(|i| block(&|x, u| hat.product(u, x), i)).collect();
    let k = ext.k().ok_or_else(|| Error::Invalid("iota(V) is not D^-stable".into()))?;
    let r = DerPairRepresentation::new(k, Representation::new(n, rho?, mu?)?)?;
    Ok((ExtensionCocycle { theta, xi: Matrix::from_columns(n, &xi?) }, r))
}

/// `φ: g → V` with `𝒟_{(ρ̃,μ̃)}(φ) = c1 − c2`, if any.
pub fn solve_coboundary(base: &DerPair, r: &DerPairRepresentation, c1: &ExtensionCocycle, c2: &ExtensionCocycle) -> Result<Option<Matrix>> {
    check_shapes(base, r, c1)?;
    check_shapes(base, r, c2)?;
    let cx = Complex::Rep { base, module: r };
    let diff = c1.sub(c2).to_cochain();
    let target = cx.coords(2, &[diff.f, diff.theta.expect("degree two")]);
    let Some(sol) = cx.differential_matrix(1)?.solve(&target) else {
        return Ok(None);
    };
    let phi = &cx.element(1, &sol)[0];
    let cols: Vec<Vec<Scalar>> = (0..base.dim_g()).map(|i| phi.eval_args(&[Arg::Basis(i)])).collect();
    Ok(Some(Matrix::from_columns(r.dim_v(), &cols)))
}

/// `ζ = Id + φ` on `g ⊕ V`, an isomorphism from the extension of `c1` to that of `c2`,
/// when `c1 − c2` is a coboundary.
pub fn classify(base: &DerPair, r: &DerPairRepresentation, c1: &ExtensionCocycle, c2: &ExtensionCocycle) -> Result<Option<Matrix>> {
    let Some(phi) = solve_coboundary(base, r, c1, c2)? else {
        return Ok(None);
    };
    let (m, n) = (base.dim_g(), r.dim_v());
    let mut rows = Matrix::identity(m + n).to_rows();
    for (u, row) in rows.iter_mut().skip(m).enumerate() {
        row[..m].clone_from_slice(phi.row(u));
    }
    let zeta = Matrix::from_rows(m + n, rows)?;
    let (e1, e2) = (build_extension(base, r, c1)?, build_extension(base, r, c2)?);
    let report = check_isomorphism(&zeta, &e1, &e2)?;
    if !report.ok() {
        return Err(Error::Invalid(format!("solved map is not an isomorphism: {}", report.failed().join(", "))));
    }
    Ok(Some(zeta))
}

/// `ζ` is a pre-LieDer pair isomorphism `ĝ1 → ĝ2` with `ζ ι1 = ι2` and `p2 ζ = p1`.
pub fn check_isomorphism(zeta: &Matrix, e1: &AbelianExtension, e2: &AbelianExtension) -> Result<Report> {
    let mut report = check_morphism(zeta, zeta, &e1.total, &e2.total)?;
    report.push("invertible", zeta.inverse().is_none().then(|| "zeta is singular".into()));
    report.push("iso-iota", ((zeta * &e1.inject) != e2.inject).then(|| "zeta iota1 != iota2".into()));
    report.push("iso-p", ((&e2.project * zeta) != e1.project).then(|| "p2 zeta != p1".into()));
    Ok(report)
}
