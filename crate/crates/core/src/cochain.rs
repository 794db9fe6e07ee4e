//! Alternating multilinear maps `Λ^{n-1}W ⊗ W → U`, stored sparsely on canonical indices.
//!
//! A [`Cochain`] is the workhorse for both pure cochains on `g` and cochains on
//! `g ⊕ V`. On `g ⊕ V` the basis of `g` precedes the basis of `V`, so a sorted
//! wedge splits as (g-part, V-part). That makes the horizontal lift of a
//! component map a relabelling of coordinates; see [`lift`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, zero_vec, Scalar};
use crate::spaces::{normalize_wedge, MixedIndex, MixedShape, Split, Tag};

/// Canonical basis index of `Λ^{n-1}W ⊗ W`: strictly increasing wedge, free tail.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeIndex {
    pub wedge: Vec<usize>,
    pub tail: usize,
}

/// One argument of a cochain evaluation: a basis vector, or a coefficient
/// vector placed at `offset` inside the source space.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Basis(usize),
    Vector { offset: usize, coeffs: &'a [Scalar] },
}

impl<'a> Arg<'a> {
    pub fn vec(coeffs: &'a [Scalar]) -> Self {
        Arg::Vector { offset: 0, coeffs }
    }

    pub fn at(offset: usize, coeffs: &'a [Scalar]) -> Self {
        Arg::Vector { offset, coeffs }
    }

    fn support(&self) -> Vec<(usize, Scalar)> {
        match *self {
            Arg::Basis(i) => vec![(i, Scalar::one())],
            Arg::Vector { offset, coeffs } => coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (offset + i, c.clone()))
                .collect(),
        }
    }
}

/// Sparse alternating map of the given arity from a `dom`-dimensional space to a `cod`-dimensional one.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    dom: usize,
    cod: usize,
    terms: BTreeMap<WedgeIndex, Vec<Scalar>>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(arity {}, {} -> {}) {{", self.arity, self.dom, self.cod)?;
        for (idx, v) in &self.terms {
            let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, " {:?};{} -> [{}]", idx.wedge, idx.tail, vals.join(","))?;
        }
        write!(f, " }}")
    }
}

impl Cochain {
    pub fn zero(arity: usize, dom: usize, cod: usize) -> Self {
        assert!(arity >= 1, "cochains have arity at least one");
        Cochain { arity, dom, cod, terms: BTreeMap::new() }
    }

    /// Linear map `dom → cod` from a `cod × dom` matrix (arity one).
    pub fn from_matrix(m: &crate::linalg::Matrix) -> Self {
        let mut c = Cochain::zero(1, m.cols(), m.rows());
        for j in 0..m.cols() {
            c.set(&[], j, m.column(j));
        }
        c
    }

    /// Bilinear map from structure constants: `table[i][j]` is the image of `(e_i, e_j)`.
    pub fn from_table(dom: usize, cod: usize, table: &[Vec<Vec<Scalar>>]) -> Self {
        let mut c = Cochain::zero(2, dom, cod);
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                c.set(&[i], j, v.clone());
            }
        }
        c
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    /// Graded-Lie degree: arity minus one.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeIndex, &Vec<Scalar>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn same_space(&self, other: &Cochain) -> bool {
        self.arity == other.arity && self.dom == other.dom && self.cod == other.cod
    }

    fn check_index(&self, wedge: &[usize], tail: usize) {
        assert_eq!(wedge.len() + 1, self.arity, "index length does not match arity");
        assert!(wedge.iter().all(|&i| i < self.dom) && tail < self.dom, "index out of range");
    }

    /// Overwrite the value on `(wedge; tail)`. The wedge may be unsorted; the value
    /// is stored on the sorted index with the sorting sign. Repeated wedge entries
    /// are ignored (the alternating value there is zero).
    pub fn set(&mut self, wedge: &[usize], tail: usize, value: Vec<Scalar>) {
        self.check_index(wedge, tail);
        assert_eq!(value.len(), self.cod, "value length does not match codomain");
        let Some((sorted, sign)) = normalize_wedge(wedge) else { return };
        let key = WedgeIndex { wedge: sorted, tail };
        if is_zero_vec(&value) {
            self.terms.remove(&key);
            return;
        }
        let value = if sign < 0 { value.into_iter().map(|x| -x).collect() } else { value };
        self.terms.insert(key, value);
    }

    /// Add `value` to the entry on `(wedge; tail)`, with the same normalisation as [`Cochain::set`].
    pub fn add_to(&mut self, wedge: &[usize], tail: usize, value: &[Scalar]) {
        self.check_index(wedge, tail);
        if is_zero_vec(value) {
            return;
        }
        let Some((sorted, sign)) = normalize_wedge(wedge) else { return };
        let key = WedgeIndex { wedge: sorted, tail };
        let coef = if sign < 0 { -Scalar::one() } else { Scalar::one() };
        let entry = self.terms.entry(key.clone()).or_insert_with(|| zero_vec(self.cod));
        axpy(entry, &coef, value);
        if is_zero_vec(entry) {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, idx: &WedgeIndex) -> Option<&Vec<Scalar>> {
        self.terms.get(idx)
    }

    /// Value on basis vectors, as a sign and a reference to the stored canonical value.
    pub fn eval_basis(&self, wedge: &[usize], tail: usize) -> Option<(i8, &Vec<Scalar>)> {
        let (sorted, sign) = normalize_wedge(wedge)?;
        self.terms.get(&WedgeIndex { wedge: sorted, tail }).map(|v| (sign, v))
    }

    /// Multilinear evaluation on mixed basis/vector arguments, accumulated as `acc += scale * f(args)`.
    pub fn accumulate(&self, args: &[Arg<'_>], scale: &Scalar, acc: &mut [Scalar]) {
        assert_eq!(args.len(), self.arity, "argument count does not match arity");
        assert_eq!(acc.len(), self.cod);
        if scale.is_zero() || self.terms.is_empty() {
            return;
        }
        if args.iter().all(|a| matches!(a, Arg::Basis(_))) {
            let idx: Vec<usize> = args.iter().map(|a| if let Arg::Basis(i) = a { *i } else { unreachable!() }).collect();
            if let Some((sign, v)) = self.eval_basis(&idx[..self.arity - 1], idx[self.arity - 1]) {
                let c = if sign < 0 { -scale.clone() } else { scale.clone() };
                axpy(acc, &c, v);
            }
            return;
        }
        let supports: Vec<Vec<(usize, Scalar)>> = args.iter().map(Arg::support).collect();
        let mut idx = vec![0usize; self.arity];
        self.expand(&supports, 0, scale.clone(), &mut idx, acc);
    }

    fn expand(&self, supports: &[Vec<(usize, Scalar)>], pos: usize, coef: Scalar, idx: &mut Vec<usize>, acc: &mut [Scalar]) {
        if pos == supports.len() {
            if let Some((sign, v)) = self.eval_basis(&idx[..self.arity - 1], idx[self.arity - 1]) {
                let c = if sign < 0 { -coef } else { coef };
                axpy(acc, &c, v);
            }
            return;
        }
        for (i, c) in &supports[pos] {
            // a repeated wedge index contributes nothing
            if pos < self.arity - 1 && idx[..pos].contains(i) {
                continue;
            }
            idx[pos] = *i;
            self.expand(supports, pos + 1, &coef * c, idx, acc);
        }
    }

    pub fn eval_args(&self, args: &[Arg<'_>]) -> Vec<Scalar> {
        let mut acc = zero_vec(self.cod);
        self.accumulate(args, &Scalar::one(), &mut acc);
        acc
    }

    /// Evaluate on dense vectors of the source space.
    pub fn evaluate(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.arity {
            return Err(Error::Arity(format!("{} arguments for an arity-{} cochain", args.len(), self.arity)));
        }
        if let Some((i, a)) = args.iter().enumerate().find(|(_, a)| a.len() != self.dom) {
            return Err(Error::Dimension(format!("argument {i} has length {}, expected {}", a.len(), self.dom)));
        }
        let args: Vec<Arg<'_>> = args.iter().map(|a| Arg::vec(a)).collect();
        Ok(self.eval_args(&args))
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        if s.is_zero() {
            return Cochain::zero(self.arity, self.dom, self.cod);
        }
        Cochain {
            arity: self.arity,
            dom: self.dom,
            cod: self.cod,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.iter().map(|x| x * s).collect())).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Cochain, s: &Scalar) {
        assert!(self.same_space(other), "cochain spaces differ");
        for (k, v) in &other.terms {
            let entry = self.terms.entry(k.clone()).or_insert_with(|| zero_vec(self.cod));
            axpy(entry, s, v);
            if is_zero_vec(entry) {
                self.terms.remove(k);
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Scalar::one());
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Scalar::one())
    }

    /// View a cochain on `g` (source `g`, values in the tagged summand) as a cochain on `g ⊕ V`.
    pub fn embed_g(&self, split: Split, target: Tag) -> Cochain {
        assert_eq!(self.dom, split.g, "source must be g");
        assert_eq!(self.cod, split.dim(target), "codomain must match the target summand");
        let total = split.total();
        let range = split.range(target);
        let mut out = Cochain::zero(self.arity, total, total);
        for (k, v) in &self.terms {
            let mut w = zero_vec(total);
            w[range.clone()].clone_from_slice(v);
            out.terms.insert(k.clone(), w);
        }
        out
    }

    /// Restrict a cochain on `g ⊕ V` to arguments in `g`, keeping the tagged summand of the values.
    pub fn restrict_g(&self, split: Split, target: Tag) -> Cochain {
        assert_eq!(self.dom, split.total());
        assert_eq!(self.cod, split.total());
        let range = split.range(target);
        let mut out = Cochain::zero(self.arity, split.g, split.dim(target));
        for (k, v) in &self.terms {
            if k.tail >= split.g || k.wedge.iter().any(|&i| i >= split.g) {
                continue;
            }
            let w = v[range.clone()].to_vec();
            if !is_zero_vec(&w) {
                out.terms.insert(k.clone(), w);
            }
        }
        out
    }

    /// Keep only the entries for which `keep(index, target coordinate)` holds.
    pub fn filter(&self, keep: impl Fn(&WedgeIndex, usize) -> bool) -> Cochain {
        let mut out = Cochain::zero(self.arity, self.dom, self.cod);
        for (k, v) in &self.terms {
            let w: Vec<Scalar> =
                v.iter().enumerate().map(|(c, x)| if keep(k, c) { x.clone() } else { Scalar::zero() }).collect();
            if !is_zero_vec(&w) {
                out.terms.insert(k.clone(), w);
            }
        }
        out
    }
}

/// A coordinate system on a subspace of cochains spanned by single entries.
///
/// Each slot is a canonical index plus one coordinate of the value. The slot
/// order is lexicographic in (index, coordinate) and is the basis order used
/// for every differential matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    arity: usize,
    dom: usize,
    cod: usize,
    slots: Vec<(WedgeIndex, usize)>,
}

impl CochainSpace {
    /// All of `Hom(Λ^{arity-1}W ⊗ W, U)`.
    pub fn full(arity: usize, dom: usize, cod: usize) -> Self {
        let slots = crate::spaces::wedge_tail_basis(dom, arity - 1)
            .into_iter()
            .flat_map(|(wedge, tail)| (0..cod).map(move |c| (WedgeIndex { wedge: wedge.clone(), tail }, c)))
            .collect();
        CochainSpace { arity, dom, cod, slots }
    }

    /// Homogeneous cochains of bidegree `b` on `g ⊕ V`.
    pub fn homogeneous(split: Split, b: Bidegree) -> Self {
        let total = split.total();
        let mut space = CochainSpace::full(b.arity(), total, total);
        space.slots.retain(|(idx, c)| entry_bidegree(split, idx, split.tag_of(*c)) == b);
        space
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn slots(&self) -> &[(WedgeIndex, usize)] {
        &self.slots
    }

    pub fn zero(&self) -> Cochain {
        Cochain::zero(self.arity, self.dom, self.cod)
    }

    /// Whether every nonzero entry of `f` lies on a slot.
    pub fn contains(&self, f: &Cochain) -> bool {
        if f.arity() != self.arity || f.dom() != self.dom || f.cod() != self.cod {
            return false;
        }
        let coords: usize = f.terms().map(|(_, v)| v.iter().filter(|x| !x.is_zero()).count()).sum();
        let covered = self.slots.iter().filter(|(idx, c)| f.get(idx).is_some_and(|v| !v[*c].is_zero())).count();
        coords == covered
    }

    pub fn coords(&self, f: &Cochain) -> Vec<Scalar> {
        debug_assert!(self.contains(f), "cochain has entries outside the coordinate space");
        self.slots.iter().map(|(idx, c)| f.get(idx).map_or_else(Scalar::zero, |v| v[*c].clone())).collect()
    }

    pub fn element(&self, coords: &[Scalar]) -> Cochain {
        assert_eq!(coords.len(), self.dim());
        let mut f = self.zero();
        for ((idx, c), x) in self.slots.iter().zip(coords) {
            if x.is_zero() {
                continue;
            }
            let mut v = zero_vec(self.cod);
            v[*c] = x.clone();
            f.add_to(&idx.wedge, idx.tail, &v);
        }
        f
    }

    pub fn unit(&self, k: usize) -> Cochain {
        let (idx, c) = &self.slots[k];
        let mut f = self.zero();
        let mut v = zero_vec(self.cod);
        v[*c] = Scalar::one();
        f.set(&idx.wedge, idx.tail, v);
        f
    }
}

/// Bidegree `k|l` of a homogeneous cochain on `g ⊕ V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub k: i64,
    pub l: i64,
}

impl Bidegree {
    pub fn new(k: i64, l: i64) -> Self {
        assert!(k >= -1 && l >= -1 && k + l >= 0, "invalid bidegree {k}|{l}");
        Bidegree { k, l }
    }

    pub fn arity(&self) -> usize {
        (self.k + self.l + 1) as usize
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.k, self.l)
    }
}

/// The bidegree forced by one nonzero entry: index in `𝒢^{p,q}` with value in `target`.
fn entry_bidegree(split: Split, idx: &WedgeIndex, target: Tag) -> Bidegree {
    let a = idx.wedge.iter().filter(|&&i| i < split.g).count() as i64;
    let b = idx.wedge.len() as i64 - a;
    let (p, q) = match split.tag_of(idx.tail) {
        Tag::G => (a + 1, b),
        Tag::V => (a, b + 1),
    };
    match target {
        Tag::G => Bidegree { k: p - 1, l: q },
        Tag::V => Bidegree { k: p, l: q - 1 },
    }
}

fn entry_bidegrees(f: &Cochain, split: Split) -> BTreeSet<Bidegree> {
    assert_eq!(f.dom(), split.total(), "bidegrees live on g ⊕ V");
    assert_eq!(f.cod(), split.total(), "bidegrees live on g ⊕ V");
    let mut set = BTreeSet::new();
    for (idx, v) in f.terms() {
        for (c, x) in v.iter().enumerate() {
            if !x.is_zero() {
                set.insert(entry_bidegree(split, idx, split.tag_of(c)));
            }
        }
    }
    set
}

/// The bidegree of `f`, if it has exactly one. The zero cochain has every
/// bidegree of its arity and therefore gets `None`; use [`has_bidegree`] for membership.
pub fn bidegree_of(f: &Cochain, split: Split) -> Option<Bidegree> {
    let set = entry_bidegrees(f, split);
    if set.len() == 1 {
        set.into_iter().next()
    } else {
        None
    }
}

pub fn has_bidegree(f: &Cochain, split: Split, b: Bidegree) -> bool {
    f.arity() == b.arity() && entry_bidegrees(f, split).iter().all(|&e| e == b)
}

/// Keep the part of `f` of bidegree `b`.
pub fn bidegree_component(f: &Cochain, split: Split, b: Bidegree) -> Cochain {
    f.filter(|idx, c| entry_bidegree(split, idx, split.tag_of(c)) == b)
}

/// A linear map on one summand `Λ^a g ⊗ Λ^b V ⊗ (g|V) → (g|V)`.
///
/// Arguments are read in the order `(x_1, …, x_a, v_1, …, v_b, tail)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMap {
    shape: MixedShape,
    target: Tag,
    split: Split,
    terms: BTreeMap<MixedIndex, Vec<Scalar>>,
}

impl MixedMap {
    pub fn zero(shape: MixedShape, target: Tag, split: Split) -> Self {
        MixedMap { shape, target, split, terms: BTreeMap::new() }
    }

    pub fn shape(&self) -> MixedShape {
        self.shape
    }

    pub fn target(&self) -> Tag {
        self.target
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedIndex, &Vec<Scalar>)> {
        self.terms.iter()
    }

    /// Set the value on a basis index given in canonical (sorted) form.
    pub fn set(&mut self, idx: MixedIndex, value: Vec<Scalar>) {
        assert_eq!(idx.shape(), self.shape, "index shape mismatch");
        assert_eq!(value.len(), self.split.dim(self.target), "value length mismatch");
        assert!(idx.g_wedge.windows(2).all(|w| w[0] < w[1]) && idx.v_wedge.windows(2).all(|w| w[0] < w[1]));
        if is_zero_vec(&value) {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, value);
        }
    }

    /// Evaluate on vectors: `xs` in `g`, `vs` in `V`, `tail` in the tail summand.
    pub fn evaluate(&self, xs: &[Vec<Scalar>], vs: &[Vec<Scalar>], tail: &[Scalar]) -> Result<Vec<Scalar>> {
        if xs.len() != self.shape.g_wedge || vs.len() != self.shape.v_wedge {
            return Err(Error::Arity(format!(
                "{}+{} wedge arguments for shape {:?}",
                xs.len(),
                vs.len(),
                self.shape
            )));
        }
        let g = self.split.g;
        let v = self.split.v;
        if xs.iter().any(|x| x.len() != g) || vs.iter().any(|x| x.len() != v) || tail.len() != self.split.dim(self.shape.tail) {
            return Err(Error::Dimension("argument does not lie in the expected summand".into()));
        }
        let mut acc = zero_vec(self.split.dim(self.target));
        for (idx, val) in &self.terms {
            let mut coef = tail[idx.tail.1].clone();
            if coef.is_zero() {
                continue;
            }
            coef *= alternating_coefficient(xs, &idx.g_wedge);
            coef *= alternating_coefficient(vs, &idx.v_wedge);
            axpy(&mut acc, &coef, val);
        }
        Ok(acc)
    }
}

/// Coefficient of `e_{w_1} ∧ … ∧ e_{w_k}` in `a_1 ∧ … ∧ a_k`: the minor `det[a_i(w_j)]`.
fn alternating_coefficient(args: &[Vec<Scalar>], wedge: &[usize]) -> Scalar {
    let k = wedge.len();
    if k == 0 {
        return Scalar::one();
    }
    let rows: Vec<Vec<Scalar>> = args.iter().map(|a| wedge.iter().map(|&w| a[w].clone()).collect()).collect();
    let m = crate::linalg::Matrix::from_rows(k, rows).expect("square minor");
    determinant(&m)
}

fn determinant(m: &crate::linalg::Matrix) -> Scalar {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else { return Scalar::zero() };
        if p != col {
            for c in 0..n {
                let tmp = a[(p, c)].clone();
                a[(p, c)] = a[(col, c)].clone();
                a[(col, c)] = tmp;
            }
            det = -det;
        }
        let pivot = a[(col, col)].clone();
        det *= &pivot;
        for r in col + 1..n {
            let f = &a[(r, col)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let x = &f * &a[(col, c)];
                a[(r, c)] -= x;
            }
        }
    }
    det
}

/// Horizontal lift of component maps to a cochain on `g ⊕ V`.
///
/// With the g-before-V ordering, the unshuffle sum defining the lift has a
/// single surviving term on every canonical basis index, with sign `+1`, so the
/// lift places each component value at the matching global index.
pub fn lift(components: &[MixedMap]) -> Result<Cochain> {
    let Some(first) = components.first() else {
        return Err(Error::Arity("lift needs at least one component".into()));
    };
    let split = first.split;
    let arity = first.shape.arity();
    let total = split.total();
    let mut out = Cochain::zero(arity, total, total);
    for c in components {
        if c.split != split {
            return Err(Error::Dimension("components live on different spaces".into()));
        }
        if c.shape.arity() != arity {
            return Err(Error::Arity(format!("component arity {} differs from {arity}", c.shape.arity())));
        }
        let range = split.range(c.target);
        for (idx, v) in &c.terms {
            let (w, t) = idx.to_global(split);
            let mut full = zero_vec(total);
            full[range.clone()].clone_from_slice(v);
            out.add_to(&w, t, &full);
        }
    }
    Ok(out)
}

/// Split a cochain on `g ⊕ V` into its nonzero summand components.
pub fn decompose(f: &Cochain, split: Split) -> Vec<MixedMap> {
    assert_eq!(f.dom(), split.total());
    let mut parts: BTreeMap<(MixedShape, Tag), MixedMap> = BTreeMap::new();
    for (idx, v) in f.terms() {
        let mi = MixedIndex::from_global(split, &idx.wedge, idx.tail);
        for target in [Tag::G, Tag::V] {
            let w = v[split.range(target)].to_vec();
            if is_zero_vec(&w) {
                continue;
            }
            let shape = mi.shape();
            parts
                .entry((shape, target))
                .or_insert_with(|| MixedMap::zero(shape, target, split))
                .terms
                .insert(mi.clone(), w);
        }
    }
    parts.into_values().collect()
}

/// Components of a `k|0` cochain: `(f_g, f_ρ, f_μ)` with `f_μ` absent when `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Parts {
    pub f_g: MixedMap,
    pub f_rho: MixedMap,
    pub f_mu: Option<MixedMap>,
}

impl K0Parts {
    pub fn zero(k: usize, split: Split) -> Self {
        K0Parts {
            f_g: MixedMap::zero(MixedShape::new(k, 0, Tag::G), Tag::G, split),
            f_rho: MixedMap::zero(MixedShape::new(k, 0, Tag::V), Tag::V, split),
            f_mu: (k >= 1).then(|| MixedMap::zero(MixedShape::new(k - 1, 1, Tag::G), Tag::V, split)),
        }
    }

    pub fn lift(&self) -> Cochain {
        let mut comps = vec![self.f_g.clone(), self.f_rho.clone()];
        comps.extend(self.f_mu.clone());
        lift(&comps).expect("k|0 components share arity")
    }
}

pub fn decompose_k0(f: &Cochain, split: Split, k: usize) -> Result<K0Parts> {
    if !has_bidegree(f, split, Bidegree::new(k as i64, 0)) {
        return Err(Error::Bidegree(format!("cochain is not homogeneous of bidegree {k}|0")));
    }
    let mut parts = K0Parts::zero(k, split);
    for comp in decompose(f, split) {
        let slot = match (comp.shape.v_wedge, comp.shape.tail) {
            (0, Tag::G) => &mut parts.f_g,
            (0, Tag::V) => &mut parts.f_rho,
            _ => parts.f_mu.as_mut().expect("k|0 with a V-wedge needs k >= 1"),
        };
        *slot = comp;
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int, unit_vec};
    use crate::spaces::{enumerate_basis, unshuffles};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()
    }

    fn rand_mixed(rng: &mut ChaCha8Rng, shape: MixedShape, target: Tag, split: Split) -> MixedMap {
        let mut m = MixedMap::zero(shape, target, split);
        for idx in enumerate_basis(shape, split) {
            if rng.gen_bool(0.6) {
                m.set(idx, rand_vec(rng, split.dim(target)));
            }
        }
        m
    }

    /// The unshuffle-sum formula for the lift, evaluated literally on `x_i + v_i`.
    fn lift_formula(f: &MixedMap, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let split = f.split();
        let shape = f.shape();
        let n = args.len();
        let xs: Vec<Vec<Scalar>> = args.iter().map(|a| a[..split.g].to_vec()).collect();
        let vs: Vec<Vec<Scalar>> = args.iter().map(|a| a[split.g..].to_vec()).collect();
        let mut acc = zero_vec(split.total());
        let (blocks, tail) = match shape.tail {
            Tag::G => ([shape.g_wedge, shape.v_wedge], xs[n - 1].clone()),
            Tag::V => ([shape.g_wedge, shape.v_wedge], vs[n - 1].clone()),
        };
        for s in unshuffles(&blocks) {
            let g_args: Vec<Vec<Scalar>> = s.mapping[..blocks[0]].iter().map(|&j| xs[j].clone()).collect();
            let v_args: Vec<Vec<Scalar>> = s.mapping[blocks[0]..].iter().map(|&j| vs[j].clone()).collect();
            let val = f.evaluate(&g_args, &v_args, &tail).unwrap();
            let range = split.range(f.target());
            let c = int(s.sign as i64);
            axpy(&mut acc[range], &c, &val);
        }
        acc
    }

    #[test]
    fn lift_matches_unshuffle_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for split in [Split::new(2, 1), Split::new(2, 2), Split::new(3, 2)] {
            for (a, b, tail) in [(1, 0, Tag::G), (0, 1, Tag::G), (1, 1, Tag::G), (2, 1, Tag::V), (1, 2, Tag::G), (0, 0, Tag::V)] {
                if a > split.g || b > split.v {
                    continue;
                }
                for target in [Tag::G, Tag::V] {
                    let f = rand_mixed(&mut rng, MixedShape::new(a, b, tail), target, split);
                    let lifted = lift(std::slice::from_ref(&f)).unwrap();
                    for _ in 0..5 {
                        let args: Vec<Vec<Scalar>> = (0..a + b + 1).map(|_| rand_vec(&mut rng, split.total())).collect();
                        assert_eq!(lifted.evaluate(&args).unwrap(), lift_formula(&f, &args));
                    }
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let z = Cochain::zero(2, 2, 2);
        assert_eq!(z.evaluate(&[unit_vec(2, 0), unit_vec(2, 1)]).unwrap(), zero_vec(2));
        let mut f = Cochain::zero(2, 2, 2);
        f.set(&[0], 1, unit_vec(2, 0));
        assert_eq!(f.evaluate(&[unit_vec(2, 0), unit_vec(2, 1)]).unwrap(), unit_vec(2, 0));
        assert!(f.evaluate(&[unit_vec(2, 0)]).is_err());
        assert!(f.evaluate(&[unit_vec(3, 0), unit_vec(2, 1)]).is_err());

        let mut g = Cochain::zero(3, 3, 1);
        g.set(&[0, 1], 2, vec![int(5)]);
        let e = |i| unit_vec(3, i);
        assert_eq!(g.evaluate(&[e(1), e(0), e(2)]).unwrap(), vec![int(-5)]);
        // unsorted set stores with sign
        let mut h = Cochain::zero(3, 3, 1);
        h.set(&[1, 0], 2, vec![int(5)]);
        assert_eq!(h.evaluate(&[e(0), e(1), e(2)]).unwrap(), vec![int(-5)]);
    }

    #[test]
    fn alternation_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..200 {
            let dom = rng.gen_range(2..=3);
            let arity = rng.gen_range(2..=dom + 1);
            let mut f = Cochain::zero(arity, dom, 2);
            for (w, t) in crate::spaces::wedge_tail_basis(dom, arity - 1) {
                if rng.gen_bool(0.7) {
                    f.set(&w, t, rand_vec(&mut rng, 2));
                }
            }
            let args: Vec<Vec<Scalar>> = (0..arity).map(|_| rand_vec(&mut rng, dom)).collect();
            let base = f.evaluate(&args).unwrap();
            if arity >= 3 {
                let i = case % (arity - 2);
                let mut swapped = args.clone();
                swapped.swap(i, i + 1);
                let neg: Vec<Scalar> = base.iter().map(|x| -x).collect();
                assert_eq!(f.evaluate(&swapped).unwrap(), neg);
            }
        }
    }

    #[test]
    fn bidegrees_of_structure_maps() {
        let split = Split::new(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pi = rand_mixed(&mut rng, MixedShape::new(1, 0, Tag::G), Tag::G, split);
        let rho = rand_mixed(&mut rng, MixedShape::new(1, 0, Tag::V), Tag::V, split);
        let mu = rand_mixed(&mut rng, MixedShape::new(0, 1, Tag::G), Tag::V, split);
        let prm = lift(&[pi.clone(), rho.clone(), mu.clone()]).unwrap();
        assert_eq!(bidegree_of(&prm, split), Some(Bidegree::new(1, 0)));
        let d = rand_mixed(&mut rng, MixedShape::new(0, 0, Tag::G), Tag::V, split);
        let dl = lift(std::slice::from_ref(&d)).unwrap();
        assert_eq!(bidegree_of(&dl, split), Some(Bidegree::new(1, -1)));
        // a 1|0 plus a 0|1 piece of the same arity is not homogeneous
        let other = rand_mixed(&mut rng, MixedShape::new(0, 1, Tag::V), Tag::V, split);
        let mixed = prm.add(&lift(&[other]).unwrap());
        assert_eq!(bidegree_of(&mixed, split), None);
        assert!(has_bidegree(&Cochain::zero(2, 4, 4), split, Bidegree::new(1, 0)));

        let parts = decompose_k0(&prm, split, 1).unwrap();
        assert_eq!(parts.f_g, pi);
        assert_eq!(parts.f_rho, rho);
        assert_eq!(parts.f_mu, Some(mu));
        assert_eq!(parts.lift(), prm);
        assert!(decompose_k0(&dl, split, 0).is_err());
    }

    #[test]
    fn decompose_zero_and_partial() {
        let split = Split::new(2, 1);
        let z = Cochain::zero(2, 3, 3);
        assert_eq!(decompose_k0(&z, split, 1).unwrap(), K0Parts::zero(1, split));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pi = rand_mixed(&mut rng, MixedShape::new(1, 0, Tag::G), Tag::G, split);
        let p = decompose_k0(&lift(std::slice::from_ref(&pi)).unwrap(), split, 1).unwrap();
        assert_eq!(p.f_g, pi);
        assert!(p.f_rho.is_zero() && p.f_mu.as_ref().unwrap().is_zero());
    }

    #[test]
    fn k0_roundtrip_small_dims() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for g in 1..=3 {
            for v in 1..=3 {
                let split = Split::new(g, v);
                for k in 0..=3usize.min(g) {
                    let mut parts = K0Parts::zero(k, split);
                    parts.f_g = rand_mixed(&mut rng, MixedShape::new(k, 0, Tag::G), Tag::G, split);
                    parts.f_rho = rand_mixed(&mut rng, MixedShape::new(k, 0, Tag::V), Tag::V, split);
                    if k >= 1 {
                        parts.f_mu = Some(rand_mixed(&mut rng, MixedShape::new(k - 1, 1, Tag::G), Tag::V, split));
                    }
                    let lifted = parts.lift();
                    assert!(has_bidegree(&lifted, split, Bidegree::new(k as i64, 0)));
                    assert_eq!(decompose_k0(&lifted, split, k).unwrap(), parts);
                }
            }
        }
    }

    #[test]
    fn mixed_evaluate_uses_minors() {
        let split = Split::new(2, 0);
        let mut f = MixedMap::zero(MixedShape::new(2, 0, Tag::G), Tag::G, split);
        f.set(MixedIndex { g_wedge: vec![0, 1], v_wedge: vec![], tail: (Tag::G, 0) }, vec![int(1), int(0)]);
        let x = vec![int(1), int(2)];
        let y = vec![int(3), frac(1, 2)];
        // det [[1,2],[3,1/2]] = 1/2 - 6
        let out = f.evaluate(&[x, y], &[], &[int(1), int(0)]).unwrap();
        assert_eq!(out, vec![frac(-11, 2), int(0)]);
    }
}
