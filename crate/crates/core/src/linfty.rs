//! The L∞-algebra `s⁻¹L′ ⊕ h` built from V-data with `Δ = 0`, its Maurer–Cartan
//! elements and the twist by one.
//!
//! Here `L′ = ⊕ C^{n|0}(g⊕V, g⊕V)` and `h = ⊕ C^{n|−1}(g⊕V, g⊕V)`. An element of
//! degree `d` is a pair `(s⁻¹f, θ)` with `f` of arity `d+2` and `θ` of arity `d+1`.
//! Products are graded symmetric of degree 1; only `l₂` is nonzero.

use crate::bracket::{mn_bracket, parity};
use crate::cochain::{bidegree_component, has_bidegree, Bidegree, Cochain};
use crate::cohomology::DerPairCochain;
use crate::error::{Error, Result};
use crate::linalg::{frac, Scalar};
use crate::prelie::DerPair;
use crate::report::Report;
use crate::spaces::{Split, Tag};

/// A homogeneous element `(s⁻¹f, θ)` of degree `d ≥ −1`; `θ` is absent in degree −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LElement {
    split: Split,
    degree: i64,
    shifted: Cochain,
    h: Option<Cochain>,
}

impl LElement {
    /// Checks that `shifted` has bidegree `(d+1)|0` and `h` bidegree `(d+1)|−1`.
    pub fn new(split: Split, shifted: Cochain, h: Option<Cochain>) -> Result<Self> {
        let d = shifted.arity() as i64 - 2;
        if !has_bidegree(&shifted, split, Bidegree::new(d + 1, 0)) {
            return Err(Error::Bidegree(format!("shifted part must have bidegree {}|0", d + 1)));
        }
        if let Some(t) = &h {
            if d < 0 || !has_bidegree(t, split, Bidegree::new(d + 1, -1)) {
                return Err(Error::Bidegree(format!("h part of a degree-{d} element must have arity {}", d + 1)));
            }
        }
        Ok(LElement { split, degree: d, shifted, h })
    }

    pub fn zero(split: Split, degree: i64) -> Self {
        assert!(degree >= -1);
        let total = split.total();
        let h = (degree >= 0).then(|| Cochain::zero((degree + 1) as usize, total, total));
        LElement { split, degree, shifted: Cochain::zero((degree + 2) as usize, total, total), h }
    }

    /// `α = (s⁻¹(π+ρ+μ), D)`, the candidate Maurer–Cartan element of a pair.
    pub fn from_pair(p: &DerPair) -> Self {
        LElement { split: p.split(), degree: 0, shifted: p.structure_cochain(), h: Some(p.derivation_cochain()) }
    }

    /// `(s⁻¹f, θ)` for a pair-complex cochain of degree `n`, an element of degree `n−2`.
    pub fn from_pair_cochain(c: &DerPairCochain, split: Split) -> Result<Self> {
        let h = c.theta.as_ref().map(|t| t.embed_g(split, Tag::V));
        LElement::new(split, c.f.clone(), h)
    }

    /// The inverse of [`LElement::from_pair_cochain`].
    pub fn to_pair_cochain(&self) -> DerPairCochain {
        DerPairCochain { f: self.shifted.clone(), theta: self.h.as_ref().map(|t| t.restrict_g(self.split, Tag::V)) }
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn shifted(&self) -> &Cochain {
        &self.shifted
    }

    pub fn h(&self) -> Option<&Cochain> {
        self.h.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.shifted.is_zero() && self.h.as_ref().is_none_or(Cochain::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> LElement {
        LElement { split: self.split, degree: self.degree, shifted: self.shifted.scale(s), h: self.h.as_ref().map(|t| t.scale(s)) }
    }

    pub fn add(&self, other: &LElement) -> Result<LElement> {
        if self.degree != other.degree || self.split != other.split {
            return Err(Error::Bidegree("can only add elements of one degree".into()));
        }
        let h = match (&self.h, &other.h) {
            (Some(a), Some(b)) => Some(a.add(b)),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        Ok(LElement { split: self.split, degree: self.degree, shifted: self.shifted.add(&other.shifted), h })
    }
}

/// `P`: projection onto `h`, the `(·|−1)` part.
fn project_h(f: &Cochain, split: Split) -> Cochain {
    bidegree_component(f, split, Bidegree::new(f.arity() as i64, -1))
}

/// `l₂(s⁻¹f, θ) = P[f, θ]`, absent when `θ` is.
fn shifted_with_h(f: &Cochain, theta: Option<&Cochain>, split: Split) -> Result<Option<Cochain>> {
    theta.map(|t| Ok(project_h(&mn_bracket(f, t)?, split))).transpose()
}

/// `l₂`: `(−1)^{|f|} s⁻¹[f,g]` on shifted parts, `P[f,θ]` on mixed parts, zero on `h ⊗ h`.
pub fn l2(x: &LElement, y: &LElement) -> Result<LElement> {
    if x.split != y.split {
        return Err(Error::Dimension("elements live on different spaces".into()));
    }
    let split = x.split;
    let degree = x.degree + y.degree + 1;
    let shifted = mn_bracket(&x.shifted, &y.shifted)?.scale(&parity(x.shifted.degree()));
    let xy = shifted_with_h(&x.shifted, y.h.as_ref(), split)?;
    // l₂(θ, s⁻¹g) = (−1)^{|x||y|} l₂(s⁻¹g, θ)
    let yx = shifted_with_h(&y.shifted, x.h.as_ref(), split)?.map(|c| c.scale(&parity(x.degree * y.degree)));
    let total = split.total();
    let h = (degree >= 0).then(|| {
        let mut acc = Cochain::zero((degree + 1) as usize, total, total);
        for part in [xy, yx].into_iter().flatten() {
            acc = acc.add(&part);
        }
        acc
    });
    Ok(LElement { split, degree, shifted, h })
}

/// `l₁` on the subalgebra: zero (`Δ = 0` and `P` kills `L′`).
pub fn l1(x: &LElement) -> LElement {
    LElement::zero(x.split, x.degree + 1)
}

/// `l_k` for `k ≥ 3`: zero.
pub fn higher_lk(args: &[LElement]) -> Result<LElement> {
    if args.len() < 3 {
        return Err(Error::Arity("higher products take at least three arguments".into()));
    }
    let degree = args.iter().map(|a| a.degree).sum::<i64>() + 1;
    Ok(LElement::zero(args[0].split, degree))
}

/// The Maurer–Cartan residual `(−½ s⁻¹[π+ρ+μ, π+ρ+μ], [π+ρ+μ, D])` of a candidate.
#[derive(Clone, Debug)]
pub struct McCheck {
    pub residual: LElement,
    /// `mc-structure` for the first component, `mc-derivation` for the second.
    pub report: Report,
}

impl McCheck {
    pub fn is_mc(&self) -> bool {
        self.report.ok()
    }
}

/// `l₁(α) + ½ l₂(α, α)` for `α` of degree 0.
fn curvature(alpha: &LElement) -> Result<LElement> {
    l2(alpha, alpha)?.scale(&frac(1, 2)).add(&l1(alpha))
}

/// Maurer–Cartan check of `(s⁻¹(π+ρ+μ), D)`; any structure constants are accepted.
pub fn mc_check(candidate: &DerPair) -> Result<McCheck> {
    let residual = curvature(&LElement::from_pair(candidate))?;
    let mut report = Report::new();
    report.push("mc-structure", (!residual.shifted.is_zero()).then(|| "[pi+rho+mu, pi+rho+mu] != 0".to_string()));
    let h_zero = residual.h.as_ref().is_none_or(Cochain::is_zero);
    report.push("mc-derivation", (!h_zero).then(|| "[pi+rho+mu, D] != 0".to_string()));
    Ok(McCheck { residual, report })
}

/// The twist of the L∞-algebra by a Maurer–Cartan element `α`.
///
/// Because `l_k = 0` for `k ≥ 3` and `l₁ = 0`, `l₁^α = l₂(α, ·)`, `l₂^α = l₂` and the rest vanish.
#[derive(Clone, Debug)]
pub struct Twisted {
    alpha: LElement,
}

pub fn twist(alpha: &LElement) -> Result<Twisted> {
    if alpha.degree != 0 {
        return Err(Error::Bidegree("a Maurer-Cartan element has degree 0".into()));
    }
    if !curvature(alpha)?.is_zero() {
        return Err(Error::Invalid("not a Maurer-Cartan element".into()));
    }
    Ok(Twisted { alpha: alpha.clone() })
}

impl Twisted {
    pub fn alpha(&self) -> &LElement {
        &self.alpha
    }

    pub fn l1(&self, x: &LElement) -> Result<LElement> {
        l2(&self.alpha, x)
    }

    pub fn l2(&self, x: &LElement, y: &LElement) -> Result<LElement> {
        l2(x, y)
    }

    pub fn lk(&self, args: &[LElement]) -> Result<LElement> {
        higher_lk(args)
    }

    /// `l₁^α(α′) + ½ l₂^α(α′, α′)`.
    pub fn curvature(&self, alpha_prime: &LElement) -> Result<LElement> {
        self.l1(alpha_prime)?.add(&self.l2(alpha_prime, alpha_prime)?.scale(&frac(1, 2)))
    }
}

/// Whether `α′` is a Maurer–Cartan element of the twist by `α`.
pub fn mc_twisted_check(alpha: &LElement, alpha_prime: &LElement) -> Result<bool> {
    if alpha_prime.degree != 0 {
        return Err(Error::Bidegree("a Maurer-Cartan element has degree 0".into()));
    }
    Ok(twist(alpha)?.curvature(alpha_prime)?.is_zero())
}

/// `𝒟(f, θ) = (−1)^{n−2} l₁^α(s⁻¹f, θ)` with `α` the pair itself.
pub fn hua_d_via_twist(c: &DerPairCochain, p: &DerPair) -> Result<DerPairCochain> {
    let alpha = LElement::from_pair(p);
    let x = LElement::from_pair_cochain(c, p.split())?;
    let n = c.f.arity() as i64;
    let y = l2(&alpha, &x)?.scale(&parity(n - 2));
    Ok(y.to_pair_cochain())
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cohomology::hua_d;
    use crate::corpus::{perturb_derpair, random_derpair, random_homogeneous, random_map};
    use crate::linalg::{int, Matrix};
    use crate::prelie::{is_derpair, PreLieAlgebra};

    fn e1e2_pair() -> DerPair {
        let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
        DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).unwrap()
    }

    fn random_element(rng: &mut ChaCha8Rng, split: Split, d: i64) -> LElement {
        let f = random_homogeneous(rng, split, Bidegree::new(d + 1, 0), 0.5);
        let h = (d >= 0).then(|| random_homogeneous(rng, split, Bidegree::new(d + 1, -1), 0.5));
        LElement::new(split, f, h).unwrap()
    }

    #[test]
    fn h_with_h_vanishes() {
        let p = e1e2_pair();
        let split = p.split();
        let theta = LElement::new(split, Cochain::zero(2, 4, 4), Some(p.derivation_cochain())).unwrap();
        assert!(l2(&theta, &theta).unwrap().is_zero());
        let zero = LElement::zero(split, 0);
        assert!(l2(&LElement::from_pair(&p), &zero).unwrap().is_zero());
    }

    #[test]
    fn structure_with_derivation() {
        // l₂((s⁻¹Π, 0), (0, D)) = (0, [Π, D])
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_derpair(&mut rng, 2, 2);
        let (mut bad, _) = perturb_derpair(&mut rng, &p);
        bad.d = &bad.d + &Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let split = bad.split();
        let x = LElement::new(split, bad.structure_cochain(), Some(Cochain::zero(1, 4, 4))).unwrap();
        let y = LElement::new(split, Cochain::zero(2, 4, 4), Some(bad.derivation_cochain())).unwrap();
        let out = l2(&x, &y).unwrap();
        assert!(out.shifted().is_zero());
        assert_eq!(out.h().unwrap(), &mn_bracket(&bad.structure_cochain(), &bad.derivation_cochain()).unwrap());
    }

    #[test]
    fn l1_and_higher_products_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let split = Split::new(2, 1);
        let xs: Vec<LElement> = (0..4).map(|i| random_element(&mut rng, split, i % 2)).collect();
        assert!(l1(&xs[0]).is_zero());
        assert!(l1(&LElement::from_pair(&e1e2_pair())).is_zero());
        assert!(higher_lk(&xs[..3]).unwrap().is_zero());
        assert!(higher_lk(&xs).unwrap().is_zero());
        assert!(higher_lk(&xs[..2]).is_err());
    }

    #[test]
    fn graded_symmetry_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let split = Split::new(1, 1);
        for _ in 0..30 {
            let ds: Vec<i64> = (0..3).map(|_| rng.gen_range(-1..=1)).collect();
            let x: Vec<LElement> = ds.iter().map(|&d| random_element(&mut rng, split, d)).collect();
            let xy = l2(&x[0], &x[1]).unwrap();
            let yx = l2(&x[1], &x[0]).unwrap();
            assert_eq!(xy, yx.scale(&parity(ds[0] * ds[1])));
            let t1 = l2(&xy, &x[2]).unwrap();
            let t2 = l2(&l2(&x[0], &x[2]).unwrap(), &x[1]).unwrap().scale(&parity(ds[1] * ds[2]));
            let t3 = l2(&l2(&x[1], &x[2]).unwrap(), &x[0]).unwrap().scale(&parity(ds[0] * (ds[1] + ds[2])));
            assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
        }
    }

    #[test]
    fn mc_iff_derpair() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(mc_check(&DerPair::new(PreLieAlgebra::zero(2), crate::prelie::Representation::zero(2, 1), Matrix::zeros(1, 2)).unwrap())
            .unwrap()
            .is_mc());
        assert!(mc_check(&e1e2_pair()).unwrap().is_mc());
        let mut invalid = 0;
        for _ in 0..30 {
            let (m, r) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let p = random_derpair(&mut rng, m, r);
            assert!(mc_check(&p).unwrap().is_mc());
            let (q, _) = perturb_derpair(&mut rng, &p);
            let valid = is_derpair(&q);
            invalid += usize::from(!valid);
            assert_eq!(mc_check(&q).unwrap().is_mc(), valid);
        }
        assert!(invalid > 10);
        let bad = DerPair::regular(e1e2_pair().algebra, Matrix::identity(2)).unwrap();
        let check = mc_check(&bad).unwrap();
        assert_eq!(check.report.failed(), vec!["mc-derivation"]);
        assert!(!check.residual.h().unwrap().is_zero());
    }

    #[test]
    fn twisted_differential_is_the_pair_differential() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let r = rng.gen_range(1..=2);
            let p = random_derpair(&mut rng, 2, r);
            let split = p.split();
            for n in 1..=4usize {
                let f = random_homogeneous(&mut rng, split, Bidegree::new(n as i64 - 1, 0), 0.5);
                let theta = (n >= 2).then(|| random_map(&mut rng, n - 1, 2, r, 0.5));
                let c = DerPairCochain { f, theta };
                assert_eq!(hua_d_via_twist(&c, &p).unwrap(), hua_d(&c, &p).unwrap());
                let tw = twist(&LElement::from_pair(&p)).unwrap();
                let x = LElement::from_pair_cochain(&c, split).unwrap();
                assert!(tw.l1(&tw.l1(&x).unwrap()).unwrap().is_zero());
            }
        }
        assert!(twist(&LElement::from_pair(&DerPair::regular(e1e2_pair().algebra, Matrix::identity(2)).unwrap())).is_err());
        let zero = LElement::zero(Split::new(2, 2), 0);
        assert!(twist(&zero).unwrap().l1(&random_element(&mut rng, Split::new(2, 2), 1)).unwrap().is_zero());
    }

    #[test]
    fn twisted_mc_iff_sum_is_mc() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut seen = [0; 2];
        for _ in 0..30 {
            let p = random_derpair(&mut rng, 2, 1);
            let alpha = LElement::from_pair(&p);
            let (q, _) = perturb_derpair(&mut rng, &p);
            let sum = LElement::from_pair(&q);
            let prime = sum.add(&alpha.scale(&int(-1))).unwrap();
            let expect = mc_check(&q).unwrap().is_mc();
            seen[expect as usize] += 1;
            assert_eq!(mc_twisted_check(&alpha, &prime).unwrap(), expect);
        }
        assert!(seen[0] > 5 && seen[1] > 0);
        let alpha = LElement::from_pair(&e1e2_pair());
        assert!(mc_twisted_check(&alpha, &LElement::zero(alpha.split(), 0)).unwrap());
    }
}
