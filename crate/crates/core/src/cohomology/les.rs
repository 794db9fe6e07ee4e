//! Exactness of `… → H^n(g;V) → H^n(g,π,ρ,μ,D) → H^n(g,π,ρ,μ) → H^{n+1}(g;V) → …`.
//!
//! With `A^n = C^{n−1}(g;V)`, `B^n` the pair complex and `C^n` the `∂` complex,
//! `0 → A → B → C → 0` is split exact at cochain level via `ι(θ) = (0, θ)` and
//! `p(f, θ) = f`; the connecting map is `[f] ↦ [δf]`. Exactness of the induced
//! sequence is checked position by position as an equality of subspaces of
//! cocycles modulo coboundaries.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{span_dim, Echelon, Matrix, Scalar};
use crate::prelie::DerPair;

use super::{delta, Complex};

/// One position of the sequence: `im(incoming) = ker(outgoing)` at `H^n` of `complex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesPosition {
    pub n: usize,
    /// `prelie` (the `A` term, so `H^n` there means `H^{n−1}(g;V)`), `pair` or `partial`.
    pub complex: &'static str,
    /// `dim H` at this position.
    pub h: usize,
    /// Dimension of the kernel of the outgoing map, modulo coboundaries.
    pub kernel: usize,
    /// Dimension of the image of the incoming map, modulo coboundaries.
    pub image: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub positions: Vec<LesPosition>,
}

impl LesReport {
    pub fn ok(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }
}

impl std::fmt::Display for LesReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.positions {
            let label = match p.complex {
                "prelie" => format!("H^{}(g;V)", p.n - 1),
                "pair" => format!("H^{}(pair)", p.n),
                _ => format!("H^{}(partial)", p.n),
            };
            writeln!(
                f,
                "{label:<16} h={:<3} ker={:<3} im={:<3} {}",
                p.h,
                p.kernel,
                p.image,
                if p.exact { "exact" } else { "NOT EXACT" }
            )?;
        }
        if self.ok() {
            writeln!(f, "exact at all checked positions")?;
        }
        Ok(())
    }
}

/// Cocycles and coboundaries of one degree, as coordinate vectors.
struct Level {
    dim: usize,
    z: Vec<Vec<Scalar>>,
    b: Vec<Vec<Scalar>>,
}

impl Level {
    fn zero() -> Self {
        Level { dim: 0, z: Vec::new(), b: Vec::new() }
    }

    fn h(&self) -> usize {
        self.z.len() - span_dim(self.dim, &self.b)
    }
}

/// Levels `1..=top` of a complex, each differential computed once.
fn levels(c: &Complex<'_>, top: usize) -> Result<Vec<Level>> {
    let mats = (1..=top).map(|n| c.differential_matrix(n)).collect::<Result<Vec<_>>>()?;
    Ok((1..=top)
        .map(|n| Level {
            dim: c.dim(n),
            z: mats[n - 1].kernel_basis(),
            b: if n >= 2 { mats[n - 2].column_space() } else { Vec::new() },
        })
        .collect())
}

/// Vectors `z ∈ span(zs)` with `map(z) ∈ span(target)`, as a spanning family.
fn preimage(zs: &[Vec<Scalar>], map: impl Fn(&[Scalar]) -> Vec<Scalar>, target_dim: usize, target: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if zs.is_empty() || target_dim == 0 {
        return zs.to_vec();
    }
    let mut cols: Vec<Vec<Scalar>> = zs.iter().map(|z| map(z)).collect();
    cols.extend(target.iter().cloned());
    let sys = Matrix::from_columns(target_dim, &cols);
    let n = zs[0].len();
    sys.kernel_basis()
        .into_iter()
        .map(|k| {
            let mut v = vec![Scalar::default(); n];
            for (c, z) in k.iter().zip(zs) {
                crate::linalg::axpy(&mut v, c, z);
            }
            v
        })
        .collect()
}

fn position(n: usize, complex: &'static str, lvl: &Level, kernel: Vec<Vec<Scalar>>, image: Vec<Vec<Scalar>>) -> LesPosition {
    let mut b = Echelon::default();
    b.extend(&lvl.b);
    let mut ker = b.clone();
    ker.extend(&kernel);
    let mut im = b.clone();
    im.extend(&image);
    let mut both = ker.clone();
    both.extend(&image);
    LesPosition {
        n,
        complex,
        h: lvl.h(),
        kernel: ker.rank() - b.rank(),
        image: im.rank() - b.rank(),
        exact: ker.rank() == im.rank() && both.rank() == ker.rank(),
    }
}

/// Check exactness at `H^n(pair)`, `H^n(partial)` and `H^n(g;V)` for `n = 1..=n_max`
/// (the last being the `A^{n+1}` slot).
pub fn les_check(pair: &DerPair, n_max: usize) -> Result<LesReport> {
    let a_cx = Complex::Prelie { algebra: &pair.algebra, rep: &pair.rep };
    let b_cx = Complex::Pair(pair);
    let c_cx = Complex::Partial { algebra: &pair.algebra, rep: &pair.rep };
    // A^n = C^{n−1}(g;V); every level is used up to three times
    let a_levels: Vec<Level> = std::iter::once(Level::zero()).chain(levels(&a_cx, n_max)?).collect();
    let b_levels = levels(&b_cx, n_max + 1)?;
    let c_levels = levels(&c_cx, n_max)?;

    let mut report = LesReport::default();
    for n in 1..=n_max {
        let (a_n, a_n1) = (&a_levels[n - 1], &a_levels[n]);
        let (b_n, b_n1) = (&b_levels[n - 1], &b_levels[n]);
        let c_n = &c_levels[n - 1];
        let split_at = c_n.dim;
        debug_assert_eq!(b_n.dim, c_n.dim + a_n.dim);

        let iota = |v: &[Scalar]| {
            let mut out = vec![Scalar::default(); split_at];
            out.extend_from_slice(v);
            out
        };
        let proj = |v: &[Scalar]| v[..split_at].to_vec();
        let connecting = |v: &[Scalar]| -> Vec<Scalar> {
            let parts = c_cx.element(n, v);
            let d = delta(&parts[0], pair).expect("partial-complex cochains have the right bidegree");
            a_cx.coords(n, &[d])
        };

        // at B^n: ker(p*) = im(ι*)
        let ker_p = preimage(&b_n.z, proj, c_n.dim, &c_n.b);
        let im_i: Vec<Vec<Scalar>> = a_n.z.iter().map(|z| iota(z)).collect();
        report.positions.push(position(n, "pair", b_n, ker_p, im_i));

        // at C^n: ker(c^n) = im(p*)
        let ker_c = preimage(&c_n.z, connecting, a_n1.dim, &a_n1.b);
        let im_p: Vec<Vec<Scalar>> = b_n.z.iter().map(|z| proj(z)).collect();
        report.positions.push(position(n, "partial", c_n, ker_c, im_p));

        // at A^{n+1}: ker(ι*) = im(c^n)
        let c_n1_dim = c_cx.dim(n + 1);
        let iota1 = |v: &[Scalar]| {
            let mut out = vec![Scalar::default(); c_n1_dim];
            out.extend_from_slice(v);
            out
        };
        let ker_i = preimage(&a_n1.z, iota1, b_n1.dim, &b_n1.b);
        let im_c: Vec<Vec<Scalar>> = c_n.z.iter().map(|z| connecting(z)).collect();
        report.positions.push(position(n + 1, "prelie", a_n1, ker_i, im_c));
    }
    Ok(report)
}
