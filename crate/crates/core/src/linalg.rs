//! Exact rational scalars and dense matrices.
//!
//! Every rank in this crate is computed here, by Gauss-Jordan elimination
//! over `BigRational`. There are no tolerances anywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field element. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"n"`, `"-n"` or `"p/q"`. Zero denominators and stray characters are rejected.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let parse_int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            if q.starts_with('-') {
                return Err(bad());
            }
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zero_vec(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Build from rows; all rows must share a length. `cols` is needed for the 0-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| int(x))
            })
            .collect();
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { rows: self.rows, cols, data }
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let x = &m[(row, c)] * &inv;
                m[(row, c)] = x;
            }
            let pivot_row: Vec<Scalar> = m.row(row).to_vec();
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if !pivot_row[c].is_zero() {
                        let x = &factor * &pivot_row[c];
                        m[(r, c)] -= x;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        echelon_rank((0..self.rows).map(|r| self.row(r).to_vec()).collect())
    }

    /// Basis of the null space; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = zero_vec(self.cols);
                v[free] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(r, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hcat(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { reduced, rank, .. } = self.hcat(&Matrix::identity(n)).rref();
        if rank < n || (0..n).any(|i| reduced[(i, i)] != Scalar::one()) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = reduced[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Largest absolute numerator or denominator; used by generators to keep entries small.
    pub fn height(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs().max(x.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Row lists, `[[1, 0], [-1/2, 3]]`.
impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Dimension of the span of `vectors` (all of length `n`).
pub fn span_dim(n: usize, vectors: &[Vec<Scalar>]) -> usize {
    debug_assert!(vectors.iter().all(|v| v.len() == n), "vector length mismatch");
    echelon_rank(vectors.to_vec())
}

/// Rank by forward elimination only; cheaper than a full [`Matrix::rref`].
fn echelon_rank(rows: Vec<Vec<Scalar>>) -> usize {
    let mut e = Echelon::default();
    rows.into_iter().filter(|r| e.insert(r.clone())).count()
}

/// An echelon basis grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// Rows with a leading 1 at the recorded pivot, zero at every earlier row's pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(*p) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            *x *= &inv;
        }
        self.rows.push((p, v));
        true
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a Vec<Scalar>>) {
        for v in vs {
            self.insert(v.clone());
        }
    }
}

/// Whether two families span the same subspace of `K^n`.
pub fn same_span(n: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = span_dim(n, a);
    let rb = span_dim(n, b);
    if ra != rb {
        return false;
    }
    let both: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    span_dim(n, &both) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let r = Matrix::identity(2).rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        let z = Matrix::zeros(3, 3).rref();
        assert_eq!(z.rank, 0);
        assert!(z.pivots.is_empty());
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_cases() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 3).kernel_basis().len(), 3);
        let k = Matrix::from_i64(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * int(-1), &k[0][1] * int(2));
        assert!(!is_zero_vec(&k[0]));
    }

    #[test]
    fn solve_cases() {
        let b = vec![int(3), frac(1, 2)];
        assert_eq!(Matrix::identity(2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(2, 2).solve(&[int(1), int(0)]), None);
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&[int(1), int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1] * int(2), int(1));
        assert_eq!(m.solve(&[int(1), int(3)]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_scalar("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-3").unwrap(), int(-3));
        assert_eq!(parse_scalar("2/4").unwrap().to_string(), "1/2");
        for bad in ["1/0", "", "1/", "/2", "1.5", " 1", "1/-2", "--1", "+1", "a"] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn span_comparison() {
        let a = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        let b = vec![vec![int(0), int(1)], vec![int(2), int(0)]];
        assert!(same_span(2, &a, &b));
        assert!(!same_span(2, &a[..1], &b[..1]));
    }
}
