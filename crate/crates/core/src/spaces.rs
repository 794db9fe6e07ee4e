//! Basis enumeration and sign bookkeeping for wedge-tensor spaces.
//!
//! Permutations are 0-based: `mapping[i] = σ(i+1) - 1`, so the argument list
//! `(x_σ(1), …, x_σ(n))` is `mapping.iter().map(|&j| x[j])`.

use std::cmp::Ordering;

/// A permutation together with its signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub mapping: Vec<usize>,
    pub sign: i8,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { mapping: (0..n).collect(), sign: 1 }
    }

    /// Wraps a permutation and computes its signature.
    pub fn new(mapping: Vec<usize>) -> Self {
        let sign = signature(&mapping);
        SignedPermutation { mapping, sign }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// `(self ∘ other)(i) = self(other(i))`
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.len(), other.len());
        SignedPermutation {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
            sign: self.sign * other.sign,
        }
    }

    /// Apply to an argument list: returns `(x_σ(1), …, x_σ(n))`.
    pub fn apply<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        self.mapping.iter().map(|&j| xs[j].clone()).collect()
    }
}

/// Signature by inversion count.
pub fn signature(mapping: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..mapping.len() {
        for j in i + 1..mapping.len() {
            if mapping[i] > mapping[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `(i_1, …, i_k)`-unshuffles: permutations increasing inside each consecutive block.
///
/// Empty blocks are allowed; a single block (or all-but-one empty) yields just the identity.
pub fn unshuffles(block_sizes: &[usize]) -> Vec<SignedPermutation> {
    let n: usize = block_sizes.iter().sum();
    let mut out = Vec::new();
    let mut mapping = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fill_blocks(block_sizes, 0, &mut used, &mut mapping, &mut out);
    out
}

fn fill_blocks(
    sizes: &[usize],
    block: usize,
    used: &mut Vec<bool>,
    mapping: &mut Vec<usize>,
    out: &mut Vec<SignedPermutation>,
) {
    if block == sizes.len() {
        out.push(SignedPermutation::new(mapping.clone()));
        return;
    }
    // the last block takes whatever is left, in increasing order
    if block + 1 == sizes.len() {
        let start = mapping.len();
        mapping.extend((0..used.len()).filter(|&i| !used[i]));
        out.push(SignedPermutation::new(mapping.clone()));
        mapping.truncate(start);
        return;
    }
    choose_increasing(sizes, block, sizes[block], 0, used, mapping, out);
}

fn choose_increasing(
    sizes: &[usize],
    block: usize,
    remaining: usize,
    from: usize,
    used: &mut Vec<bool>,
    mapping: &mut Vec<usize>,
    out: &mut Vec<SignedPermutation>,
) {
    if remaining == 0 {
        fill_blocks(sizes, block + 1, used, mapping, out);
        return;
    }
    for i in from..used.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        mapping.push(i);
        choose_increasing(sizes, block, remaining - 1, i + 1, used, mapping, out);
        mapping.pop();
        used[i] = false;
    }
}

/// Koszul sign ε(σ; x_1, …, x_n) for elements of the given degrees:
/// the sign with `x_σ(1) ⋯ x_σ(n) = ε · x_1 ⋯ x_n` in the graded-symmetric algebra.
pub fn koszul_sign(perm: &SignedPermutation, degrees: &[i64]) -> i8 {
    assert_eq!(perm.len(), degrees.len(), "one degree per permuted element");
    let m = &perm.mapping;
    let mut odd = 0usize;
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            if m[a] > m[b] && degrees[m[a]].rem_euclid(2) == 1 && degrees[m[b]].rem_euclid(2) == 1 {
                odd += 1;
            }
        }
    }
    if odd.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sort a wedge tuple. `None` if an index repeats (the alternating value is zero),
/// otherwise the sorted tuple and the sign of the sorting permutation.
pub fn normalize_wedge(tuple: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = tuple.to_vec();
    let mut sign = 1i8;
    // insertion sort; tuples are short
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 {
            match v[j - 1].cmp(&v[j]) {
                Ordering::Greater => {
                    v.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
                Ordering::Equal => return None,
                Ordering::Less => break,
            }
        }
    }
    Some((v, sign))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Strictly increasing `k`-tuples from `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Which factor a tensor slot ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    G,
    V,
}

/// Dimensions of the two summands of `g ⊕ V`. Basis vectors of `g` come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    pub g: usize,
    pub v: usize,
}

impl Split {
    pub fn new(g: usize, v: usize) -> Self {
        Split { g, v }
    }

    pub fn total(&self) -> usize {
        self.g + self.v
    }

    pub fn dim(&self, tag: Tag) -> usize {
        match tag {
            Tag::G => self.g,
            Tag::V => self.v,
        }
    }

    /// Global index of the `i`-th basis vector of the tagged summand.
    pub fn global(&self, tag: Tag, i: usize) -> usize {
        match tag {
            Tag::G => i,
            Tag::V => self.g + i,
        }
    }

    pub fn tag_of(&self, global: usize) -> Tag {
        if global < self.g {
            Tag::G
        } else {
            Tag::V
        }
    }

    pub fn local(&self, global: usize) -> (Tag, usize) {
        if global < self.g {
            (Tag::G, global)
        } else {
            (Tag::V, global - self.g)
        }
    }

    /// Coordinate range of the tagged summand inside a `g ⊕ V` vector.
    pub fn range(&self, tag: Tag) -> std::ops::Range<usize> {
        match tag {
            Tag::G => 0..self.g,
            Tag::V => self.g..self.total(),
        }
    }
}

/// Shape of a summand `Λ^a g ⊗ Λ^b V ⊗ (g or V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedShape {
    pub g_wedge: usize,
    pub v_wedge: usize,
    pub tail: Tag,
}

impl MixedShape {
    pub fn new(g_wedge: usize, v_wedge: usize, tail: Tag) -> Self {
        MixedShape { g_wedge, v_wedge, tail }
    }

    pub fn arity(&self) -> usize {
        self.g_wedge + self.v_wedge + 1
    }

    /// The `(k, l)` with this summand inside `𝒢^{k,l}`.
    pub fn graded_piece(&self) -> (usize, usize) {
        match self.tail {
            Tag::G => (self.g_wedge + 1, self.v_wedge),
            Tag::V => (self.g_wedge, self.v_wedge + 1),
        }
    }
}

/// Basis element of a mixed summand: local indices in each factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedIndex {
    pub g_wedge: Vec<usize>,
    pub v_wedge: Vec<usize>,
    pub tail: (Tag, usize),
}

impl MixedIndex {
    pub fn shape(&self) -> MixedShape {
        MixedShape::new(self.g_wedge.len(), self.v_wedge.len(), self.tail.0)
    }

    /// Position in `g ⊕ V`: the wedge is already sorted because g-indices precede V-indices.
    pub fn to_global(&self, split: Split) -> (Vec<usize>, usize) {
        let mut wedge = self.g_wedge.clone();
        wedge.extend(self.v_wedge.iter().map(|&i| split.g + i));
        (wedge, split.global(self.tail.0, self.tail.1))
    }

    /// Inverse of [`MixedIndex::to_global`] for a sorted wedge.
    pub fn from_global(split: Split, wedge: &[usize], tail: usize) -> Self {
        let (g_wedge, v_wedge): (Vec<usize>, Vec<usize>) = wedge.iter().partition(|&&i| i < split.g);
        MixedIndex {
            g_wedge,
            v_wedge: v_wedge.into_iter().map(|i| i - split.g).collect(),
            tail: split.local(tail),
        }
    }
}

/// All basis indices of a summand, ordered lexicographically by (g-wedge, V-wedge, tail).
pub fn enumerate_basis(shape: MixedShape, split: Split) -> Vec<MixedIndex> {
    let gs = combinations(split.g, shape.g_wedge);
    let vs = combinations(split.v, shape.v_wedge);
    let tails = split.dim(shape.tail);
    let mut out = Vec::with_capacity(gs.len() * vs.len() * tails);
    for gw in &gs {
        for vw in &vs {
            for t in 0..tails {
                out.push(MixedIndex { g_wedge: gw.clone(), v_wedge: vw.clone(), tail: (shape.tail, t) });
            }
        }
    }
    out
}

/// Canonical wedge-and-tail indices of `Λ^k W ⊗ W` for a space of dimension `dim`.
pub fn wedge_tail_basis(dim: usize, wedge: usize) -> Vec<(Vec<usize>, usize)> {
    combinations(dim, wedge)
        .into_iter()
        .flat_map(|w| (0..dim).map(move |t| (w.clone(), t)))
        .collect()
}
