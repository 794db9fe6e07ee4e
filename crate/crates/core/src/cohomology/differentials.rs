//! Explicit coboundary formulas, evaluated on basis tuples.
//!
//! These are the authoritative implementations. Cochains in the `∂` and `𝒟`
//! complexes are lifted to `g ⊕ V`, so a component such as `f_ρ(x_1,…,u)` is
//! the lifted cochain evaluated with `u` placed in the `V` block.

use crate::bracket::parity;
use crate::cochain::{has_bidegree, Arg, Bidegree, Cochain};
use crate::error::{Error, Result};
use crate::linalg::{axpy, zero_vec, Matrix, Scalar};
use crate::prelie::{regular_representation, DerPair, PreLieAlgebra, Representation};
use crate::spaces::{combinations, wedge_tail_basis, Split, Tag};

fn without(xs: &[usize], i: usize) -> Vec<usize> {
    xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect()
}

fn without2(xs: &[usize], i: usize, j: usize) -> Vec<usize> {
    xs.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect()
}

fn basis_args(xs: &[usize]) -> Vec<Arg<'static>> {
    xs.iter().map(|&x| Arg::Basis(x)).collect()
}

fn with_tail<'a>(xs: &[usize], tail: Arg<'a>) -> Vec<Arg<'a>> {
    let mut args: Vec<Arg<'a>> = xs.iter().map(|&x| Arg::Basis(x)).collect();
    args.push(tail);
    args
}

/// `dM f` for `f ∈ C^n(g;V)`, coefficients `(V; ρ, μ)`.
pub fn d_prelie(f: &Cochain, a: &PreLieAlgebra, r: &Representation) -> Result<Cochain> {
    let m = a.dim();
    let rv = r.dim_v();
    if f.dom() != m || f.cod() != rv {
        return Err(Error::Dimension(format!("expected a cochain g -> V with dims {m} -> {rv}")));
    }
    let n = f.arity();
    let mut out = Cochain::zero(n + 1, m, rv);
    if f.is_zero() {
        return Ok(out);
    }
    for (wedge, tail) in wedge_tail_basis(m, n) {
        let mut x = wedge.clone();
        x.push(tail);
        let last = x[n];
        let mut acc = zero_vec(rv);
        for i in 0..n {
            let s = parity(i as i64);
            let v = f.eval_args(&basis_args(&without(&x, i)));
            axpy(&mut acc, &s, &r.rho_basis(x[i]).mul_vec(&v));

            let mut args = without(&x[..n], i);
            args.push(x[i]);
            let v = f.eval_args(&basis_args(&args));
            axpy(&mut acc, &s, &r.mu_basis(last).mul_vec(&v));

            let prod = a.basis_product(x[i], last);
            f.accumulate(&with_tail(&without(&x[..n], i), Arg::vec(prod)), &-s, &mut acc);
        }
        for i in 0..n {
            for j in i + 1..n {
                let br = a.commutator(x[i], x[j]);
                let mut args = vec![Arg::vec(&br)];
                args.extend(basis_args(&without2(&x, i, j)));
                f.accumulate(&args, &parity((i + j) as i64), &mut acc);
            }
        }
        out.set(&wedge, tail, acc);
    }
    Ok(out)
}

fn check_k0(f: &Cochain, split: Split) -> Result<usize> {
    let n = f.arity();
    if f.dom() != split.total() || f.cod() != split.total() {
        return Err(Error::Dimension("expected a cochain on g ⊕ V".into()));
    }
    if !has_bidegree(f, split, Bidegree::new(n as i64 - 1, 0)) {
        return Err(Error::Bidegree(format!("an arity-{n} cochain of this complex must have bidegree {}|0", n - 1)));
    }
    Ok(n)
}

fn mu_args<'a>(rest: &[usize], mid: Arg<'a>, tail: Arg<'a>) -> Vec<Arg<'a>> {
    let mut args = basis_args(rest);
    args.push(mid);
    args.push(tail);
    args
}

fn add_v(acc: &mut [Scalar], split: Split, s: &Scalar, v: &[Scalar]) {
    axpy(&mut acc[split.range(Tag::V)], s, v);
}

/// `∂f` for a lifted `f = (f_g, f_ρ, f_μ)` of bidegree `(n−1)|0`, coefficients `(V; ρ, μ)`.
pub fn partial(f: &Cochain, a: &PreLieAlgebra, r: &Representation) -> Result<Cochain> {
    let split = Split::new(a.dim(), r.dim_v());
    let n = check_k0(f, split)?;
    let (m, rv) = (split.g, split.v);
    let g_part = d_prelie(&f.restrict_g(split, Tag::G), a, &regular_representation(a))?;
    let mut out = g_part.embed_g(split, Tag::G);
    if f.is_zero() {
        return Ok(out);
    }
    let gvec = |v: Vec<Scalar>| v[split.range(Tag::G)].to_vec();
    let vvec = |v: Vec<Scalar>| v[split.range(Tag::V)].to_vec();

    // (∂f)_ρ(x_1,…,x_n,u)
    for x in combinations(m, n) {
        for u in 0..rv {
            let big_u = split.global(Tag::V, u);
            let mut acc = zero_vec(split.total());
            for i in 0..n {
                let s = parity(i as i64);
                let rest = without(&x, i);
                let fg = gvec(f.eval_args(&with_tail(&rest, Arg::Basis(x[i]))));
                let e_u = crate::linalg::unit_vec(rv, u);
                add_v(&mut acc, split, &s, &r.rho_apply(&fg, &e_u));

                let fr = vvec(f.eval_args(&with_tail(&rest, Arg::Basis(big_u))));
                add_v(&mut acc, split, &s, &r.rho_basis(x[i]).mul_vec(&fr));

                let w = r.rho_basis(x[i]).column(u);
                f.accumulate(&with_tail(&rest, Arg::at(m, &w)), &-s, &mut acc);
            }
            for i in 0..n {
                for j in i + 1..n {
                    let br = a.commutator(x[i], x[j]);
                    let mut args = vec![Arg::vec(&br)];
                    args.extend(basis_args(&without2(&x, i, j)));
                    args.push(Arg::Basis(big_u));
                    f.accumulate(&args, &parity((i + j) as i64), &mut acc);
                }
            }
            out.set(&x, big_u, acc);
        }
    }

    // (∂f)_μ(x_1,…,x_{n-1},u,x_n)
    let sn = parity(n as i64 - 1);
    for xs in combinations(m, n - 1) {
        for u in 0..rv {
            let big_u = split.global(Tag::V, u);
            let e_u = crate::linalg::unit_vec(rv, u);
            for t in 0..m {
                let mut acc = zero_vec(split.total());
                let fg = gvec(f.eval_args(&with_tail(&xs, Arg::Basis(t))));
                add_v(&mut acc, split, &sn, &r.mu_apply(&fg, &e_u));
                let fr = vvec(f.eval_args(&with_tail(&xs, Arg::Basis(big_u))));
                add_v(&mut acc, split, &sn, &r.mu_basis(t).mul_vec(&fr));
                let w = r.mu_basis(t).column(u);
                f.accumulate(&with_tail(&xs, Arg::at(m, &w)), &-sn.clone(), &mut acc);

                for i in 0..n - 1 {
                    let s = parity(i as i64);
                    let rest = without(&xs, i);
                    let prod = a.basis_product(xs[i], t);
                    f.accumulate(&mu_args(&rest, Arg::Basis(big_u), Arg::vec(prod)), &-s.clone(), &mut acc);

                    let v = vvec(f.eval_args(&mu_args(&rest, Arg::Basis(big_u), Arg::Basis(t))));
                    add_v(&mut acc, split, &s, &r.rho_basis(xs[i]).mul_vec(&v));

                    let w = r.rho_basis(xs[i]).column(u);
                    f.accumulate(&mu_args(&rest, Arg::at(m, &w), Arg::Basis(t)), &-s.clone(), &mut acc);

                    let v = vvec(f.eval_args(&mu_args(&rest, Arg::Basis(big_u), Arg::Basis(xs[i]))));
                    add_v(&mut acc, split, &s, &r.mu_basis(t).mul_vec(&v));

                    let w = r.mu_basis(xs[i]).column(u);
                    f.accumulate(&mu_args(&rest, Arg::at(m, &w), Arg::Basis(t)), &s, &mut acc);
                }
                for i in 0..n.saturating_sub(1) {
                    for j in i + 1..n - 1 {
                        let br = a.commutator(xs[i], xs[j]);
                        let mut args = vec![Arg::vec(&br)];
                        args.extend(basis_args(&without2(&xs, i, j)));
                        args.push(Arg::Basis(big_u));
                        args.push(Arg::Basis(t));
                        f.accumulate(&args, &parity((i + j) as i64), &mut acc);
                    }
                }
                let mut wedge = xs.clone();
                wedge.push(big_u);
                out.set(&wedge, t, acc);
            }
        }
    }
    Ok(out)
}

/// `δf ∈ C^n(g;V)` for a lifted `f` of bidegree `(n−1)|0`.
pub fn delta(f: &Cochain, p: &DerPair) -> Result<Cochain> {
    let split = p.split();
    let n = check_k0(f, split)?;
    let (m, rv) = (split.g, split.v);
    let mut out = Cochain::zero(n, m, rv);
    if f.is_zero() {
        return Ok(out);
    }
    let sn2 = parity(n as i64 - 2);
    for (wedge, tail) in wedge_tail_basis(m, n - 1) {
        let mut acc = zero_vec(split.total());
        for i in 0..n - 1 {
            let dx = p.d.column(wedge[i]);
            let mut args = basis_args(&without(&wedge, i));
            args.push(Arg::at(m, &dx));
            args.push(Arg::Basis(tail));
            f.accumulate(&args, &parity(i as i64), &mut acc);
        }
        let dt = p.d.column(tail);
        f.accumulate(&with_tail(&wedge, Arg::at(m, &dt)), &sn2, &mut acc);
        let fg = f.eval_args(&with_tail(&wedge, Arg::Basis(tail)));
        add_v(&mut acc, split, &-sn2.clone(), &p.d.mul_vec(&fg[split.range(Tag::G)]));
        out.set(&wedge, tail, acc[split.range(Tag::V)].to_vec());
    }
    Ok(out)
}

/// A cochain of the pre-LieDer pair complex: lifted `f` of bidegree `(n−1)|0` and
/// `θ ∈ C^{n−1}(g;V)`, absent in degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerPairCochain {
    pub f: Cochain,
    pub theta: Option<Cochain>,
}

impl DerPairCochain {
    pub fn degree(&self) -> usize {
        self.f.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.theta.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn sub(&self, other: &DerPairCochain) -> DerPairCochain {
        DerPairCochain {
            f: self.f.sub(&other.f),
            theta: match (&self.theta, &other.theta) {
                (Some(a), Some(b)) => Some(a.sub(b)),
                (None, None) => None,
                _ => panic!("degree mismatch"),
            },
        }
    }
}

/// `𝒟(f, θ) = (∂f, dM θ + δf)`.
pub fn hua_d(c: &DerPairCochain, p: &DerPair) -> Result<DerPairCochain> {
    let f = partial(&c.f, &p.algebra, &p.rep)?;
    let mut theta = delta(&c.f, p)?;
    if let Some(t) = &c.theta {
        if t.arity() + 1 != c.f.arity() {
            return Err(Error::Arity("theta must have arity one less than f".into()));
        }
        theta = theta.add(&d_prelie(t, &p.algebra, &p.rep)?);
    } else if c.f.arity() != 1 {
        return Err(Error::Arity("theta may only be absent in degree one".into()));
    }
    Ok(DerPairCochain { f, theta: Some(theta) })
}

/// `Ω f` for `f: Λ^{n−1}g ⊗ g → U`, with `D` on `g` and `K` on `U`.
pub fn omega_rep(f: &Cochain, d: &Matrix, k: &Matrix) -> Result<Cochain> {
    let (m, rv) = (f.dom(), f.cod());
    if d.rows() != m || d.cols() != m || k.rows() != rv || k.cols() != rv {
        return Err(Error::Dimension("D and K must be square on g and on the coefficients".into()));
    }
    let n = f.arity();
    let mut out = Cochain::zero(n, m, rv);
    if f.is_zero() {
        return Ok(out);
    }
    let sign = parity(n as i64 - 2);
    for (wedge, tail) in wedge_tail_basis(m, n - 1) {
        let mut x = wedge.clone();
        x.push(tail);
        let mut acc = zero_vec(rv);
        for i in 0..n {
            let dx = d.column(x[i]);
            let args: Vec<Arg<'_>> =
                x.iter().enumerate().map(|(k, &xk)| if k == i { Arg::vec(&dx) } else { Arg::Basis(xk) }).collect();
            f.accumulate(&args, &crate::linalg::int(1), &mut acc);
        }
        let v = f.eval_args(&basis_args(&x));
        axpy(&mut acc, &crate::linalg::int(-1), &k.mul_vec(&v));
        let acc: Vec<Scalar> = acc.into_iter().map(|s| s * &sign).collect();
        out.set(&wedge, tail, acc);
    }
    Ok(out)
}

/// `Ω` of a regular pair: `K = D`.
pub fn omega(f: &Cochain, d: &Matrix) -> Result<Cochain> {
    omega_rep(f, d, d)
}

/// A cochain `(f, θ)` of the regular-pair complex or of a complex with
/// coefficients in a representation of a regular pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegPairCochain {
    pub f: Cochain,
    pub theta: Option<Cochain>,
}

impl RegPairCochain {
    pub fn degree(&self) -> usize {
        self.f.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.theta.as_ref().is_none_or(Cochain::is_zero)
    }
}

/// `𝒟_{(ρ̃,μ̃)}(f, θ) = (dM f, dM θ + Ω f)` with coefficients `(V; ρ̃, μ̃)` and `K`.
pub fn hua_d_rep(c: &RegPairCochain, a: &PreLieAlgebra, d: &Matrix, r: &Representation, k: &Matrix) -> Result<RegPairCochain> {
    let f = d_prelie(&c.f, a, r)?;
    let mut theta = omega_rep(&c.f, d, k)?;
    if let Some(t) = &c.theta {
        if t.arity() + 1 != c.f.arity() {
            return Err(Error::Arity("theta must have arity one less than f".into()));
        }
        theta = theta.add(&d_prelie(t, a, r)?);
    } else if c.f.arity() != 1 {
        return Err(Error::Arity("theta may only be absent in degree one".into()));
    }
    Ok(RegPairCochain { f, theta: Some(theta) })
}

/// `𝒟̄(f, θ) = (dM_reg f, dM_reg θ + Ω f)`.
pub fn hua_d_reg(c: &RegPairCochain, a: &PreLieAlgebra, d: &Matrix) -> Result<RegPairCochain> {
    hua_d_rep(c, a, d, &regular_representation(a), d)
}

/// The embedding `i(f, θ) = (f, f, f, θ)` of the regular complex into the pair complex.
pub fn embed_regular(c: &RegPairCochain) -> DerPairCochain {
    let m = c.f.dom();
    let split = Split::new(m, m);
    let total = split.total();
    let n = c.f.arity();
    let mut lifted = Cochain::zero(n, total, total);
    for (idx, v) in c.f.terms() {
        let mut gv = zero_vec(total);
        gv[split.range(Tag::G)].clone_from_slice(v);
        lifted.set(&idx.wedge, idx.tail, gv);
        let mut vv = zero_vec(total);
        vv[split.range(Tag::V)].clone_from_slice(v);
        // f_ρ(x_1..x_{n-1}, u): the tail moves to the V copy
        lifted.set(&idx.wedge, split.global(Tag::V, idx.tail), vv.clone());
        // f_μ(x_1..x_{n-2}, u, x): the last wedge slot moves to the V copy
        for (pos, &w) in idx.wedge.iter().enumerate() {
            let mut wedge = idx.wedge.clone();
            wedge.remove(pos);
            wedge.push(split.global(Tag::V, w));
            // moving slot `pos` to the end of the wedge costs (len-1-pos) transpositions
            let s = parity((idx.wedge.len() - 1 - pos) as i64);
            let val: Vec<Scalar> = vv.iter().map(|x| x * &s).collect();
            lifted.add_to(&wedge, idx.tail, &val);
        }
    }
    DerPairCochain { f: lifted, theta: c.theta.clone() }
}

/// Partial inverse of [`embed_regular`]: `Some((f, θ))` when `c` lies in the image.
pub fn project_regular(c: &DerPairCochain) -> Option<RegPairCochain> {
    let m = c.f.dom() / 2;
    let split = Split::new(m, m);
    let f = c.f.restrict_g(split, Tag::G);
    let back = RegPairCochain { f, theta: c.theta.clone() };
    (embed_regular(&back) == *c).then_some(back)
}
