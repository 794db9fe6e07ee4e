//! The Matsushima–Nijenhuis bracket on `C*(W;W) = ⊕ Hom(Λ^{n-1}W ⊗ W, W)`.
//!
//! An element of `C^{p+1}` has degree `p`. Both operations work basis-index-wise:
//! for each canonical index of the result the defining unshuffle sums are
//! evaluated on basis vectors.

use num_traits::{One, Zero};

use crate::cochain::{Arg, Cochain};
use crate::error::{Error, Result};
use crate::linalg::{int, zero_vec, Scalar};
use crate::spaces::{unshuffles, wedge_tail_basis, SignedPermutation};

fn check_spaces(p: &Cochain, q: &Cochain) -> Result<usize> {
    let n = p.dom();
    if p.cod() != n || q.dom() != n || q.cod() != n {
        return Err(Error::Dimension(format!(
            "bracket needs endomorphism cochains of one space, got {}->{} and {}->{}",
            p.dom(),
            p.cod(),
            q.dom(),
            q.cod()
        )));
    }
    Ok(n)
}

fn sign_scalar(s: i8) -> Scalar {
    if s < 0 {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// `P ∘ Q` for `P ∈ C^{p+1}`, `Q ∈ C^{q+1}`, a cochain in `C^{p+q+1}`.
pub fn circ(pc: &Cochain, qc: &Cochain) -> Result<Cochain> {
    let n = check_spaces(pc, qc)?;
    let p = pc.arity() - 1;
    let q = qc.arity() - 1;
    let arity = p + q + 1;
    let mut out = Cochain::zero(arity, n, n);
    if pc.is_zero() || qc.is_zero() {
        return Ok(out);
    }
    let first: Vec<SignedPermutation> = if p >= 1 { unshuffles(&[q, 1, p - 1]) } else { Vec::new() };
    let second = unshuffles(&[p, q]);
    let second_sign = if (p * q) % 2 == 1 { -Scalar::one() } else { Scalar::one() };

    for (wedge, tail) in wedge_tail_basis(n, arity - 1) {
        let mut acc = zero_vec(n);
        // P(Q(x_σ(1..q+1)), x_σ(q+2..p+q), x_last)
        for s in &first {
            let q_args: Vec<Arg<'_>> = s.mapping[..=q].iter().map(|&j| Arg::Basis(wedge[j])).collect();
            let inner = qc.eval_args(&q_args);
            if inner.iter().all(Zero::is_zero) {
                continue;
            }
            let mut p_args = Vec::with_capacity(p + 1);
            p_args.push(Arg::vec(&inner));
            p_args.extend(s.mapping[q + 1..].iter().map(|&j| Arg::Basis(wedge[j])));
            p_args.push(Arg::Basis(tail));
            pc.accumulate(&p_args, &sign_scalar(s.sign), &mut acc);
        }
        // (-1)^{pq} P(x_σ(1..p), Q(x_σ(p+1..p+q), x_last))
        for s in &second {
            let mut q_args: Vec<Arg<'_>> = s.mapping[p..].iter().map(|&j| Arg::Basis(wedge[j])).collect();
            q_args.push(Arg::Basis(tail));
            let inner = qc.eval_args(&q_args);
            if inner.iter().all(Zero::is_zero) {
                continue;
            }
            let mut p_args: Vec<Arg<'_>> = s.mapping[..p].iter().map(|&j| Arg::Basis(wedge[j])).collect();
            p_args.push(Arg::vec(&inner));
            pc.accumulate(&p_args, &(&second_sign * sign_scalar(s.sign)), &mut acc);
        }
        out.set(&wedge, tail, acc);
    }
    Ok(out)
}

/// `[P,Q] = P∘Q − (−1)^{pq} Q∘P`.
pub fn mn_bracket(pc: &Cochain, qc: &Cochain) -> Result<Cochain> {
    let p = pc.degree();
    let q = qc.degree();
    let mut out = circ(pc, qc)?;
    let back = circ(qc, pc)?;
    let s = if (p * q) % 2 == 0 { -Scalar::one() } else { Scalar::one() };
    out.add_assign_scaled(&back, &s);
    Ok(out)
}

/// `(−1)^e` as a scalar.
pub fn parity(e: i64) -> Scalar {
    int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}
