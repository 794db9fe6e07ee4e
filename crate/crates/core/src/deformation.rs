//! Infinitesimal deformations `(π+tω, ρ+tσ, μ+tτ, D+tD̂)` of a pre-LieDer pair.

use crate::bracket::mn_bracket;
use crate::cochain::Cochain;
use crate::cohomology::{hua_d, Complex, DerPairCochain};
use crate::error::{Error, Result};
use crate::linalg::{axpy, int, zero_vec, Matrix, Scalar};
use crate::prelie::{derivation_cochain, structure_cochain, DerPair, PreLieAlgebra, Representation};
use crate::report::Report;
use crate::spaces::{Split, Tag};

/// `(ω, σ, τ, D̂)`; no axioms are assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDatum {
    pub omega: PreLieAlgebra,
    /// `σ` as the `ρ` slot and `τ` as the `μ` slot.
    pub sigma_tau: Representation,
    /// `dim V × dim g`.
    pub dhat: Matrix,
}

/// `(N, S)` with `N ∈ gl(g)`, `S ∈ gl(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub n: Matrix,
    pub s: Matrix,
}

impl DeformationDatum {
    pub fn zero(base: &DerPair) -> Self {
        DeformationDatum {
            omega: PreLieAlgebra::zero(base.dim_g()),
            sigma_tau: Representation::zero(base.dim_g(), base.dim_v()),
            dhat: Matrix::zeros(base.dim_v(), base.dim_g()),
        }
    }

    /// The datum whose maps are those of `p`.
    pub fn from_pair(p: &DerPair) -> Self {
        DeformationDatum { omega: p.algebra.clone(), sigma_tau: p.rep.clone(), dhat: p.d.clone() }
    }

    fn check_dims(&self, base: &DerPair) -> Result<()> {
        let ok = self.omega.dim() == base.dim_g()
            && self.sigma_tau.dim_g() == base.dim_g()
            && self.sigma_tau.dim_v() == base.dim_v()
            && self.dhat.rows() == base.dim_v()
            && self.dhat.cols() == base.dim_g();
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension("deformation datum does not match the pair".into()))
        }
    }

    /// `ω+σ+τ` lifted to `g ⊕ V`.
    pub fn structure_cochain(&self) -> Cochain {
        structure_cochain(&self.omega, &self.sigma_tau)
    }

    /// `(ω+σ+τ, D̂)` as a 2-cochain of the pair complex.
    pub fn to_pair_cochain(&self) -> DerPairCochain {
        DerPairCochain { f: self.structure_cochain(), theta: Some(Cochain::from_matrix(&self.dhat)) }
    }

    /// Read a datum back from a 2-cochain of the pair complex.
    pub fn from_pair_cochain(c: &DerPairCochain, split: Split) -> Result<Self> {
        if c.f.arity() != 2 {
            return Err(Error::Arity("a deformation datum is a 2-cochain".into()));
        }
        let (m, r) = (split.g, split.v);
        let omega = PreLieAlgebra::from_cochain(&c.f.restrict_g(split, Tag::G))?;
        let mut sigma = vec![Matrix::zeros(r, r); m];
        let mut tau = vec![Matrix::zeros(r, r); m];
        let v_block = |x: Vec<Scalar>| x[split.range(Tag::V)].to_vec();
        let basis = |i: usize| crate::cochain::Arg::Basis(i);
        for i in 0..m {
            let s_cols: Vec<Vec<Scalar>> =
                (0..r).map(|u| v_block(c.f.eval_args(&[basis(i), basis(split.global(Tag::V, u))]))).collect();
            let t_cols: Vec<Vec<Scalar>> =
                (0..r).map(|u| v_block(c.f.eval_args(&[basis(split.global(Tag::V, u)), basis(i)]))).collect();
            sigma[i] = Matrix::from_columns(r, &s_cols);
            tau[i] = Matrix::from_columns(r, &t_cols);
        }
        let theta = c.theta.as_ref().ok_or_else(|| Error::Arity("missing D-hat component".into()))?;
        let dcols: Vec<Vec<Scalar>> = (0..m).map(|i| theta.eval_args(&[basis(i)])).collect();
        Ok(DeformationDatum { omega, sigma_tau: Representation::new(r, sigma, tau)?, dhat: Matrix::from_columns(r, &dcols) })
    }

    /// `(π+tω, ρ+tσ, μ+tτ, D+tD̂)` at a given `t`.
    pub fn deformed(&self, base: &DerPair, t: &Scalar) -> Result<DerPair> {
        self.check_dims(base)?;
        DerPair::new(
            base.algebra.combine(&self.omega, t),
            base.rep.combine(&self.sigma_tau, t),
            &base.d + &self.dhat.scale(t),
        )
    }

    pub fn sub(&self, other: &DeformationDatum) -> DeformationDatum {
        let neg = int(-1);
        DeformationDatum {
            omega: self.omega.combine(&other.omega, &neg),
            sigma_tau: self.sigma_tau.combine(&other.sigma_tau, &neg),
            dhat: &self.dhat - &other.dhat,
        }
    }
}

/// Tags `deformation-1..4`: `[Π,Ω] = 0`, `[Ω,Ω] = 0`, `[Π,D̂] + [Ω,D] = 0`, `[Ω,D̂] = 0`
/// with `Π = π+ρ+μ` and `Ω = ω+σ+τ`.
pub fn check_infinitesimal_deformation(base: &DerPair, d: &DeformationDatum) -> Result<Report> {
    d.check_dims(base)?;
    let split = base.split();
    let pi = base.structure_cochain();
    let om = d.structure_cochain();
    let dd = base.derivation_cochain();
    let dh = derivation_cochain(&d.dhat, split);
    let mut report = Report::new();
    let nonzero = |c: Cochain, what: &str| (!c.is_zero()).then(|| format!("{what} != 0"));
    report.push("deformation-1", nonzero(mn_bracket(&pi, &om)?, "[pi+rho+mu, omega+sigma+tau]"));
    report.push("deformation-2", nonzero(mn_bracket(&om, &om)?, "[omega+sigma+tau, omega+sigma+tau]"));
    report.push("deformation-3", nonzero(mn_bracket(&pi, &dh)?.add(&mn_bracket(&om, &dd)?), "[pi+rho+mu, D-hat] + [omega+sigma+tau, D]"));
    report.push("deformation-4", nonzero(mn_bracket(&om, &dh)?, "[omega+sigma+tau, D-hat]"));
    Ok(report)
}

pub fn is_infinitesimal_deformation(base: &DerPair, d: &DeformationDatum) -> Result<bool> {
    Ok(check_infinitesimal_deformation(base, d)?.ok())
}

/// The 2-cocycle `(ω+σ+τ, D̂)` of a valid deformation.
pub fn deformation_cocycle(base: &DerPair, d: &DeformationDatum) -> Result<DerPairCochain> {
    let report = check_infinitesimal_deformation(base, d)?;
    if !report.ok() {
        return Err(Error::Invalid(format!("not an infinitesimal deformation: {}", report.failed().join(", "))));
    }
    Ok(d.to_pair_cochain())
}

/// `(N, S)` as a 1-cochain of the pair complex.
pub fn witness_cochain(w: &EquivalenceWitness, split: Split) -> DerPairCochain {
    let total = split.total();
    let mut f = Cochain::from_matrix(&w.n).embed_g(split, Tag::G);
    for u in 0..split.v {
        let mut col = zero_vec(total);
        col[split.range(Tag::V)].clone_from_slice(&w.s.column(u));
        f.set(&[], split.global(Tag::V, u), col);
    }
    DerPairCochain { f, theta: None }
}

fn witness_from_cochain(c: &DerPairCochain, split: Split) -> EquivalenceWitness {
    let basis = |i: usize| crate::cochain::Arg::Basis(i);
    let n_cols: Vec<Vec<Scalar>> = (0..split.g).map(|i| c.f.eval_args(&[basis(i)])[split.range(Tag::G)].to_vec()).collect();
    let s_cols: Vec<Vec<Scalar>> =
        (0..split.v).map(|u| c.f.eval_args(&[basis(split.global(Tag::V, u))])[split.range(Tag::V)].to_vec()).collect();
    EquivalenceWitness { n: Matrix::from_columns(split.g, &n_cols), s: Matrix::from_columns(split.v, &s_cols) }
}

/// `𝒟(N, S)` as a deformation datum.
pub fn coboundary_datum(base: &DerPair, w: &EquivalenceWitness) -> Result<DeformationDatum> {
    let split = base.split();
    DeformationDatum::from_pair_cochain(&hua_d(&witness_cochain(w, split), base)?, split)
}

fn sub(a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let mut a = a;
    axpy(&mut a, &int(-1), b);
    a
}

fn sum(parts: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut acc = zero_vec(n);
    for p in parts {
        axpy(&mut acc, &int(1), p);
    }
    acc
}

/// Whether `(Id + tN, Id + tS)` maps the deformation `d_prime` to `d`, identity by identity
/// (`equi-deformation-1..11`). Then `d_prime − d = 𝒟(N, S)`.
pub fn check_equivalence(base: &DerPair, d: &DeformationDatum, d_prime: &DeformationDatum, w: &EquivalenceWitness) -> Result<Report> {
    d.check_dims(base)?;
    d_prime.check_dims(base)?;
    let (m, r) = (base.dim_g(), base.dim_v());
    if w.n.rows() != m || w.n.cols() != m || w.s.rows() != r || w.s.cols() != r {
        return Err(Error::Dimension("witness must be (dim g x dim g, dim V x dim V)".into()));
    }
    let (a, rep, dd) = (&base.algebra, &base.rep, &base.d);
    let (om, st) = (&d.omega, &d.sigma_tau);
    let (om2, st2) = (&d_prime.omega, &d_prime.sigma_tau);
    let (n, s) = (&w.n, &w.s);
    let e = |i: usize| crate::linalg::unit_vec(m, i);
    let f = |i: usize| crate::linalg::unit_vec(r, i);
    let pairs = || (0..m).flat_map(move |i| (0..m).map(move |j| (i, j)));
    let gv = || (0..m).flat_map(move |i| (0..r).map(move |u| (i, u)));

    let mut report = Report::new();
    let mut push = |tag: &str, fail: Option<String>| report.push(tag, fail);

    // products
    let eq1 = pairs().find(|&(i, j)| {
        let (x, y) = (e(i), e(j));
        let lhs = sub(om2.product(&x, &y), &om.product(&x, &y));
        let rhs = sub(sum(&[a.product(&n.mul_vec(&x), &y), a.product(&x, &n.mul_vec(&y))], m), &n.mul_vec(&a.product(&x, &y)));
        lhs != rhs
    });
    push("equi-deformation-1", eq1.map(|(i, j)| format!("fails at (e{}, e{})", i + 1, j + 1)));
    let eq2 = pairs().find(|&(i, j)| {
        let (x, y, nx, ny) = (e(i), e(j), n.column(i), n.column(j));
        n.mul_vec(&om2.product(&x, &y)) != sum(&[a.product(&nx, &ny), om.product(&x, &ny), om.product(&nx, &y)], m)
    });
    push("equi-deformation-2", eq2.map(|(i, j)| format!("fails at (e{}, e{})", i + 1, j + 1)));
    let eq3 = pairs().find(|&(i, j)| om.product(&n.column(i), &n.column(j)).iter().any(|c| !num_traits::Zero::is_zero(c)));
    push("equi-deformation-3", eq3.map(|(i, j)| format!("fails at (e{}, e{})", i + 1, j + 1)));

    // the ρ and μ slots follow one pattern
    type Slot = fn(&Representation, &[Scalar], &[Scalar]) -> Vec<Scalar>;
    let slots: [(Slot, [&str; 3]); 2] = [
        (Representation::rho_apply, ["equi-deformation-4", "equi-deformation-5", "equi-deformation-6"]),
        (Representation::mu_apply, ["equi-deformation-7", "equi-deformation-8", "equi-deformation-9"]),
    ];
    for (act, tags) in slots {
        let first = gv().find(|&(i, u)| {
            let (x, v, nx) = (e(i), f(u), n.column(i));
            let lhs = sub(act(st2, &x, &v), &act(st, &x, &v));
            let rhs = sub(sum(&[act(rep, &x, &s.mul_vec(&v)), act(rep, &nx, &v)], r), &s.mul_vec(&act(rep, &x, &v)));
            lhs != rhs
        });
        push(tags[0], first.map(|(i, u)| format!("fails at (e{}, u{})", i + 1, u + 1)));
        let second = gv().find(|&(i, u)| {
            let (x, v, nx) = (e(i), f(u), n.column(i));
            let sv = s.mul_vec(&v);
            s.mul_vec(&act(st2, &x, &v)) != sum(&[act(rep, &nx, &sv), act(st, &x, &sv), act(st, &nx, &v)], r)
        });
        push(tags[1], second.map(|(i, u)| format!("fails at (e{}, u{})", i + 1, u + 1)));
        let third =
            gv().find(|&(i, u)| act(st, &n.column(i), &s.mul_vec(&f(u))).iter().any(|c| !num_traits::Zero::is_zero(c)));
        push(tags[2], third.map(|(i, u)| format!("fails at (e{}, u{})", i + 1, u + 1)));
    }

    // derivations
    let eq10 = (0..m).find(|&i| {
        let lhs = sub(d_prime.dhat.column(i), &d.dhat.column(i));
        lhs != sub(dd.mul_vec(&n.column(i)), &s.mul_vec(&dd.column(i)))
    });
    push("equi-deformation-10", eq10.map(|i| format!("fails at e{}", i + 1)));
    let eq11 = (0..m).find(|&i| s.mul_vec(&d_prime.dhat.column(i)) != d.dhat.mul_vec(&n.column(i)));
    push("equi-deformation-11", eq11.map(|i| format!("fails at e{}", i + 1)));
    Ok(report)
}

pub fn is_equivalence(base: &DerPair, d: &DeformationDatum, d_prime: &DeformationDatum, w: &EquivalenceWitness) -> Result<bool> {
    Ok(check_equivalence(base, d, d_prime, w)?.ok())
}

/// Some `(N, S)` with `𝒟(N, S) = d_prime − d` if the two data differ by a coboundary.
///
/// This decides the cohomology class only; the witness need not satisfy the
/// quadratic identities of an equivalence.
pub fn same_cohomology_class(base: &DerPair, d: &DeformationDatum, d_prime: &DeformationDatum) -> Result<Option<EquivalenceWitness>> {
    d.check_dims(base)?;
    d_prime.check_dims(base)?;
    let cx = Complex::Pair(base);
    let diff = d_prime.sub(d).to_pair_cochain();
    let target = cx.coords(2, &[diff.f, diff.theta.expect("degree two")]);
    let Some(sol) = cx.differential_matrix(1)?.solve(&target) else {
        return Ok(None);
    };
    let parts = cx.element(1, &sol);
    let c = DerPairCochain { f: parts[0].clone(), theta: None };
    Ok(Some(witness_from_cochain(&c, base.split())))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::corpus::{random_derpair, small_scalar};
    use crate::prelie::{check_morphism, is_derpair};

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| small_scalar(rng)).collect()).unwrap()
    }

    /// Strictly upper triangular, so nilpotent.
    fn random_nilpotent(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let mut rows = Matrix::zeros(n, n).to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for c in row.iter_mut().skip(i + 1) {
                *c = int(rng.gen_range(-1..=1));
            }
        }
        Matrix::from_rows(n, rows).unwrap()
    }

    /// Oracle: the deformed pair is a pre-LieDer pair at three values of `t`
    /// (every axiom is a polynomial of degree ≤ 2 in `t`).
    fn deformation_oracle(base: &DerPair, d: &DeformationDatum) -> bool {
        (1..=3).all(|t| is_derpair(&d.deformed(base, &int(t)).unwrap()))
    }

    /// Oracle: `(Id+tN, Id+tS)` is a morphism at four values of `t` (degree ≤ 3).
    fn equivalence_oracle(base: &DerPair, d: &DeformationDatum, dp: &DeformationDatum, w: &EquivalenceWitness) -> bool {
        (1..=4).all(|t| {
            let t = int(t);
            let fg = &Matrix::identity(base.dim_g()) + &w.n.scale(&t);
            let fv = &Matrix::identity(base.dim_v()) + &w.s.scale(&t);
            check_morphism(&fg, &fv, &dp.deformed(base, &t).unwrap(), &d.deformed(base, &t).unwrap()).unwrap().ok()
        })
    }

    #[test]
    fn trivial_data_are_deformations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let p = random_derpair(&mut rng, 2, 2);
            assert!(is_infinitesimal_deformation(&p, &DeformationDatum::zero(&p)).unwrap());
            assert!(is_infinitesimal_deformation(&p, &DeformationDatum::from_pair(&p)).unwrap());
            assert!(deformation_cocycle(&p, &DeformationDatum::zero(&p)).unwrap().is_zero());
        }
    }

    #[test]
    fn only_the_last_equation_fails() {
        let base = DerPair::new(PreLieAlgebra::zero(1), Representation::zero(1, 1), Matrix::zeros(1, 1)).unwrap();
        let d = DeformationDatum {
            omega: PreLieAlgebra::from_entries(1, &[(0, 0, 0, int(1))]),
            sigma_tau: Representation::zero(1, 1),
            dhat: Matrix::from_i64(&[&[1]]),
        };
        assert_eq!(check_infinitesimal_deformation(&base, &d).unwrap().failed(), vec!["deformation-4"]);
        assert!(!deformation_oracle(&base, &d));
        assert!(deformation_cocycle(&base, &d).is_err());
    }

    #[test]
    fn validator_agrees_with_sampled_t() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = [0; 2];
        for _ in 0..40 {
            let p = random_derpair(&mut rng, 2, 1);
            // coboundaries, sometimes perturbed
            let w = EquivalenceWitness { n: random_matrix(&mut rng, 2, 2), s: random_matrix(&mut rng, 1, 1) };
            let mut d = coboundary_datum(&p, &w).unwrap();
            if rng.gen_bool(0.5) {
                d.dhat = &d.dhat + &random_matrix(&mut rng, 1, 2);
            }
            let ok = is_infinitesimal_deformation(&p, &d).unwrap();
            seen[ok as usize] += 1;
            assert_eq!(ok, deformation_oracle(&p, &d));
            if ok {
                let c = deformation_cocycle(&p, &d).unwrap();
                assert!(hua_d(&c, &p).unwrap().is_zero());
            }
        }
        assert!(seen[0] > 3 && seen[1] > 3, "{seen:?}");
    }

    #[test]
    fn datum_round_trips_through_cochains() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_derpair(&mut rng, 2, 2);
        let w = EquivalenceWitness { n: random_matrix(&mut rng, 2, 2), s: random_matrix(&mut rng, 2, 2) };
        let d = coboundary_datum(&p, &w).unwrap();
        assert_eq!(DeformationDatum::from_pair_cochain(&d.to_pair_cochain(), p.split()).unwrap(), d);
        assert_eq!(witness_from_cochain(&witness_cochain(&w, p.split()), p.split()), w);
    }

    #[test]
    fn equivalences_found_by_search_agree_with_the_morphism_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut found = 0;
        for _ in 0..60 {
            let p = random_derpair(&mut rng, 2, 2);
            let w = EquivalenceWitness { n: random_nilpotent(&mut rng, 2), s: random_nilpotent(&mut rng, 2) };
            let d = DeformationDatum::zero(&p);
            let dp = coboundary_datum(&p, &w).unwrap();
            let ok = is_equivalence(&p, &d, &dp, &w).unwrap();
            assert_eq!(ok, equivalence_oracle(&p, &d, &dp, &w));
            if ok && (!w.n.is_zero() || !w.s.is_zero()) {
                found += 1;
                assert!(is_infinitesimal_deformation(&p, &dp).unwrap());
                let sol = same_cohomology_class(&p, &d, &dp).unwrap().unwrap();
                assert_eq!(coboundary_datum(&p, &sol).unwrap(), dp);
            }
        }
        assert!(found >= 5, "{found}");
    }

    #[test]
    fn trivial_witness_and_broken_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_derpair(&mut rng, 2, 1);
        let d = DeformationDatum::from_pair(&p);
        let zero = EquivalenceWitness { n: Matrix::zeros(2, 2), s: Matrix::zeros(1, 1) };
        assert!(is_equivalence(&p, &d, &d, &zero).unwrap());
        // base e1·e2 = e2 with D = diag(0,1), N = 0, S = 1: S D̂' = D̂ N fails for D̂' = D
        let a = PreLieAlgebra::from_entries(2, &[(0, 1, 1, int(1))]);
        let base = DerPair::regular(a, Matrix::from_i64(&[&[0, 0], &[0, 1]])).unwrap();
        let w = EquivalenceWitness { n: Matrix::zeros(2, 2), s: Matrix::from_i64(&[&[1, 0], &[0, 1]]) };
        let d = DeformationDatum::zero(&base);
        let dp = coboundary_datum(&base, &w).unwrap();
        let report = check_equivalence(&base, &d, &dp, &w).unwrap();
        assert!(report.failed().contains(&"equi-deformation-11"), "{report}");
        assert!(!equivalence_oracle(&base, &d, &dp, &w));
    }

    #[test]
    fn distinct_classes_are_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut distinct = 0;
        for _ in 0..20 {
            let p = random_derpair(&mut rng, 2, 1);
            let cx = Complex::Pair(&p);
            let h2 = cx.cohomology(2).unwrap();
            if h2.h == 0 {
                continue;
            }
            // a cocycle outside the coboundaries
            let z = cx.differential_matrix(2).unwrap().kernel_basis();
            let b = cx.differential_matrix(1).unwrap();
            let Some(v) = z.into_iter().find(|v| b.solve(v).is_none()) else { continue };
            let parts = cx.element(2, &v);
            let c = DerPairCochain { f: parts[0].clone(), theta: Some(parts[1].clone()) };
            let dp = DeformationDatum::from_pair_cochain(&c, p.split()).unwrap();
            assert!(same_cohomology_class(&p, &DeformationDatum::zero(&p), &dp).unwrap().is_none());
            distinct += 1;
        }
        assert!(distinct >= 3, "{distinct}");
    }
}
