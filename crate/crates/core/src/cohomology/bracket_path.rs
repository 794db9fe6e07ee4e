//! The same operators defined through the MN bracket on `g ⊕ V`.
//!
//! These are slower than the explicit formulas and serve as an independent check of them.

use crate::bracket::{mn_bracket, parity};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::prelie::{structure_cochain, DerPair, PreLieAlgebra, Representation};
use crate::spaces::{Split, Tag};

use super::DerPairCochain;

/// `∂f = (−1)^{n−1}[π+ρ+μ, f]`.
pub fn partial_bracket(f: &Cochain, a: &PreLieAlgebra, r: &Representation) -> Result<Cochain> {
    let pi = structure_cochain(a, r);
    Ok(mn_bracket(&pi, f)?.scale(&parity(f.arity() as i64 - 1)))
}

/// `δf = (−1)^{n−2}[f, D]`, read on `g` with values in `V`.
pub fn delta_bracket(f: &Cochain, p: &DerPair) -> Result<Cochain> {
    let split = p.split();
    let br = mn_bracket(f, &p.derivation_cochain())?;
    Ok(br.scale(&parity(f.arity() as i64 - 2)).restrict_g(split, Tag::V))
}

/// `dM θ = (−1)^{m−1}[π+ρ+μ, θ]` for `θ ∈ C^m(g;V)`, viewed in `C^{m|−1}`.
pub fn d_prelie_bracket(theta: &Cochain, a: &PreLieAlgebra, r: &Representation) -> Result<Cochain> {
    let split = Split::new(a.dim(), r.dim_v());
    if theta.dom() != split.g || theta.cod() != split.v {
        return Err(Error::Dimension("expected a cochain g -> V".into()));
    }
    let lifted = theta.embed_g(split, Tag::V);
    let pi = structure_cochain(a, r);
    Ok(mn_bracket(&pi, &lifted)?.scale(&parity(theta.arity() as i64 - 1)).restrict_g(split, Tag::V))
}

/// `𝒟(f, θ)` assembled from the bracket-defined pieces.
pub fn hua_d_bracket(c: &DerPairCochain, p: &DerPair) -> Result<DerPairCochain> {
    let f = partial_bracket(&c.f, &p.algebra, &p.rep)?;
    let mut theta = delta_bracket(&c.f, p)?;
    if let Some(t) = &c.theta {
        theta = theta.add(&d_prelie_bracket(t, &p.algebra, &p.rep)?);
    }
    Ok(DerPairCochain { f, theta: Some(theta) })
}
