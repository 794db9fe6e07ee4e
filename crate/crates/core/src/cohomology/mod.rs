//! Cochain complexes of pre-Lie algebras and pre-LieDer pairs, their
//! differential matrices and cohomology dimensions.
//!
//! Every complex starts in degree 1 and vanishes above `dim g + 2`.

mod bracket_path;
mod differentials;
mod les;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use bracket_path::{d_prelie_bracket, delta_bracket, hua_d_bracket, partial_bracket};
pub use differentials::{
    d_prelie, delta, embed_regular, hua_d, hua_d_reg, hua_d_rep, omega, omega_rep, partial, project_regular,
    DerPairCochain, RegPairCochain,
};
pub use les::{les_check, LesPosition, LesReport};

use crate::cochain::{Bidegree, Cochain, CochainSpace};
use crate::error::{Error, Result};
use crate::extension::DerPairRepresentation;
use crate::linalg::{int, zero_vec, Matrix, Scalar};
use crate::prelie::{DerPair, PreLieAlgebra, Representation};
use crate::spaces::Split;

/// Which complex a [`Complex`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    /// `(C*(g;V), dM)`
    Prelie,
    /// `(C*(g,π,ρ,μ), ∂)`
    Partial,
    /// `(C*(g,π,ρ,μ,D), 𝒟)`
    Pair,
    /// `(C*(g,D), 𝒟̄)`
    Regular,
    /// `(C*(g,D;V,K,ρ̃,μ̃), 𝒟_{(ρ̃,μ̃)})`
    Rep,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 5] =
        [ComplexKind::Prelie, ComplexKind::Partial, ComplexKind::Pair, ComplexKind::Regular, ComplexKind::Rep];

    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Prelie => "prelie",
            ComplexKind::Partial => "partial",
            ComplexKind::Pair => "pair",
            ComplexKind::Regular => "regular",
            ComplexKind::Rep => "rep",
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComplexKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown complex `{s}` (expected prelie, partial, pair, regular or rep)")))
    }
}

/// A cochain complex together with the data its differential needs.
#[derive(Clone, Copy, Debug)]
pub enum Complex<'a> {
    Prelie { algebra: &'a PreLieAlgebra, rep: &'a Representation },
    Partial { algebra: &'a PreLieAlgebra, rep: &'a Representation },
    Pair(&'a DerPair),
    /// Needs a regular pair (`D: g → g`).
    Regular(&'a DerPair),
    /// Needs a regular pair and a representation of it.
    Rep { base: &'a DerPair, module: &'a DerPairRepresentation },
}

/// `dim Z^n`, `dim B^n` and `dim H^n = z − b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub n: usize,
    pub dim: usize,
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

impl<'a> Complex<'a> {
    /// The complex of kind `kind` attached to a pair (and a module for `rep`).
    pub fn of_pair(kind: ComplexKind, pair: &'a DerPair, module: Option<&'a DerPairRepresentation>) -> Result<Self> {
        let c = match kind {
            ComplexKind::Prelie => Complex::Prelie { algebra: &pair.algebra, rep: &pair.rep },
            ComplexKind::Partial => Complex::Partial { algebra: &pair.algebra, rep: &pair.rep },
            ComplexKind::Pair => Complex::Pair(pair),
            ComplexKind::Regular => Complex::Regular(pair),
            ComplexKind::Rep => Complex::Rep {
                base: pair,
                module: module.ok_or_else(|| Error::Usage("the rep complex needs a representation of the pair".into()))?,
            },
        };
        c.check_shape()?;
        Ok(c)
    }

    pub fn kind(&self) -> ComplexKind {
        match self {
            Complex::Prelie { .. } => ComplexKind::Prelie,
            Complex::Partial { .. } => ComplexKind::Partial,
            Complex::Pair(_) => ComplexKind::Pair,
            Complex::Regular(_) => ComplexKind::Regular,
            Complex::Rep { .. } => ComplexKind::Rep,
        }
    }

    /// Dimension checks that the formulas rely on.
    pub fn check_shape(&self) -> Result<()> {
        match self {
            Complex::Regular(p) | Complex::Rep { base: p, .. } if !p.is_regular() => {
                Err(Error::Invalid(format!("the {} complex needs a regular pair", self.kind())))
            }
            Complex::Rep { base, module } if module.rep.dim_g() != base.dim_g() => {
                Err(Error::Dimension("representation is indexed by a different algebra".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn dim_g(&self) -> usize {
        match self {
            Complex::Prelie { algebra, .. } | Complex::Partial { algebra, .. } => algebra.dim(),
            Complex::Pair(p) | Complex::Regular(p) | Complex::Rep { base: p, .. } => p.dim_g(),
        }
    }

    /// The coefficient space dimension.
    fn dim_coeff(&self) -> usize {
        match self {
            Complex::Prelie { rep, .. } | Complex::Partial { rep, .. } => rep.dim_v(),
            Complex::Pair(p) => p.dim_v(),
            Complex::Regular(p) => p.dim_g(),
            Complex::Rep { module, .. } => module.dim_v(),
        }
    }

    /// Above this degree every cochain space is zero.
    pub fn top_degree(&self) -> usize {
        self.dim_g() + 2
    }

    /// Coordinate spaces of the summands of `C^n`, `n ≥ 1`.
    pub fn spaces(&self, n: usize) -> Vec<CochainSpace> {
        assert!(n >= 1, "complexes start in degree 1");
        let (m, r) = (self.dim_g(), self.dim_coeff());
        let lifted = |split: Split| CochainSpace::homogeneous(split, Bidegree::new(n as i64 - 1, 0));
        let mut out = Vec::with_capacity(2);
        match self {
            Complex::Prelie { .. } => out.push(CochainSpace::full(n, m, r)),
            Complex::Partial { .. } => out.push(lifted(Split::new(m, r))),
            Complex::Pair(_) => out.push(lifted(Split::new(m, r))),
            Complex::Regular(_) | Complex::Rep { .. } => out.push(CochainSpace::full(n, m, r)),
        }
        if n >= 2 && matches!(self, Complex::Pair(_) | Complex::Regular(_) | Complex::Rep { .. }) {
            out.push(CochainSpace::full(n - 1, m, r));
        }
        out
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces(n).iter().map(CochainSpace::dim).sum()
    }

    /// The differential `C^n → C^{n+1}` on a tuple of components.
    pub fn apply(&self, parts: &[Cochain]) -> Result<Vec<Cochain>> {
        let first = parts.first().ok_or_else(|| Error::Arity("a cochain needs at least one component".into()))?;
        let theta = parts.get(1).cloned();
        Ok(match self {
            Complex::Prelie { algebra, rep } => vec![d_prelie(first, algebra, rep)?],
            Complex::Partial { algebra, rep } => vec![partial(first, algebra, rep)?],
            Complex::Pair(p) => {
                let out = hua_d(&DerPairCochain { f: first.clone(), theta }, p)?;
                vec![out.f, out.theta.expect("the image always has a second component")]
            }
            Complex::Regular(p) => {
                let out = hua_d_reg(&RegPairCochain { f: first.clone(), theta }, &p.algebra, &p.d)?;
                vec![out.f, out.theta.expect("the image always has a second component")]
            }
            Complex::Rep { base, module } => {
                let c = RegPairCochain { f: first.clone(), theta };
                let out = hua_d_rep(&c, &base.algebra, &base.d, &module.rep, &module.k)?;
                vec![out.f, out.theta.expect("the image always has a second component")]
            }
        })
    }

    /// Concatenated coordinates of a tuple of components in degree `n`.
    pub fn coords(&self, n: usize, parts: &[Cochain]) -> Vec<Scalar> {
        let spaces = self.spaces(n);
        assert_eq!(spaces.len(), parts.len(), "wrong number of components for degree {n}");
        spaces.iter().zip(parts).flat_map(|(s, f)| s.coords(f)).collect()
    }

    /// The tuple of components with the given concatenated coordinates.
    pub fn element(&self, n: usize, coords: &[Scalar]) -> Vec<Cochain> {
        let mut rest = coords;
        self.spaces(n)
            .iter()
            .map(|s| {
                let (head, tail) = rest.split_at(s.dim());
                rest = tail;
                s.element(head)
            })
            .collect()
    }

    /// Matrix of `C^n → C^{n+1}` in the coordinates of [`Complex::spaces`].
    pub fn differential_matrix(&self, n: usize) -> Result<Matrix> {
        let (dn, dn1) = (self.dim(n), self.dim(n + 1));
        let mut columns = Vec::with_capacity(dn);
        let mut unit = zero_vec(dn);
        for k in 0..dn {
            unit[k] = int(1);
            let image = self.apply(&self.element(n, &unit))?;
            unit[k] = int(0);
            columns.push(self.coords(n + 1, &image));
        }
        Ok(Matrix::from_columns(dn1, &columns))
    }

    /// `z`, `b`, `h` in degree `n ≥ 1`.
    pub fn cohomology(&self, n: usize) -> Result<CohomologyDims> {
        let dim = self.dim(n);
        let z = dim - self.differential_matrix(n)?.rank();
        let b = if n >= 2 { self.differential_matrix(n - 1)?.rank() } else { 0 };
        Ok(CohomologyDims { n, dim, z, b, h: z - b })
    }

    /// Cohomology in degrees `1..=max`; the differential matrices are built on scoped threads.
    pub fn cohomology_table(&self, max: usize) -> Result<Vec<CohomologyDims>> {
        let ranks: Vec<Result<usize>> = std::thread::scope(|s| {
            let handles: Vec<_> =
                (1..=max).map(|n| s.spawn(move || self.differential_matrix(n).map(|d| d.rank()))).collect();
            handles.into_iter().map(|h| h.join().expect("differential worker panicked")).collect()
        });
        let ranks = ranks.into_iter().collect::<Result<Vec<_>>>()?;
        Ok((1..=max)
            .map(|n| {
                let dim = self.dim(n);
                let z = dim - ranks[n - 1];
                let b = if n >= 2 { ranks[n - 2] } else { 0 };
                CohomologyDims { n, dim, z, b, h: z - b }
            })
            .collect())
    }
}
