//! Dense linear algebra over the rationals.
//!
//! Everything is exact: entries are [`BigRational`] and no operation ever
//! rounds. Matrices are small (at most a few thousand columns), so a plain
//! row-major `Vec` and textbook Gauss-Jordan elimination are enough.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The fraction `num/den`. Panics on `den == 0`.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(p, d))
        }
    }
}

/// Dot product of two equally long vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a += s * b`
pub fn axpy(a: &mut [Q], s: &Q, b: &[Q]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += s * y;
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |i, j| q(rows[i][j]))
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Matrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `xᵀ · self · y`
    pub fn bilinear(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        let my = self.mul_vec(y)?;
        if x.len() != my.len() {
            return Err(Error::Dimension(format!(
                "bilinear form of size {} applied to vector of length {}",
                self.rows,
                x.len()
            )));
        }
        Ok(dot(x, &my))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Q, &Q) -> Q) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Outer product `a ⊗ b`.
    pub fn outer(a: &[Q], b: &[Q]) -> Matrix {
        Matrix::from_fn(a.len(), b.len(), |i, j| &a[i] * &b[j])
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut swaps = 0usize;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                swaps += 1;
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            let pivot_row: Vec<Q> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let d = &f * pv;
                        m[(i, c + j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            pivots,
            swaps,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let rref = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in rref.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| pivot_set[c].is_none()) {
            let mut x = vec![Q::zero(); self.cols];
            x[free] = Q::one();
            for (r, &c) in rref.pivots.iter().enumerate() {
                x[c] = -rref.matrix[(r, free)].clone();
            }
            basis.push(x);
        }
        basis
    }

    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        // Fraction-free would be faster; plain elimination is fine at these sizes.
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pv = m[(c, c)].clone();
            det *= &pv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] >= n {
            return Err(Error::Degenerate("matrix is singular".into()));
        }
        Ok(Matrix::from_fn(n, n, |i, j| {
            rref.matrix[(i, n + j)].clone()
        }))
    }

    /// Signature `(positive, negative)` of a symmetric matrix.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let (_, diag) = self.congruence_diagonalize()?;
        let pos = diag.iter().filter(|d| d.is_positive()).count();
        let neg = diag.iter().filter(|d| d.is_negative()).count();
        Ok((pos, neg))
    }

    /// Returns `(P, d)` with `Pᵀ · self · P = diag(d)` for a symmetric matrix.
    pub fn congruence_diagonalize(&self) -> Result<(Matrix, Vec<Q>)> {
        if !self.is_symmetric() {
            return Err(Error::Dimension(
                "congruence diagonalisation of non-symmetric matrix".into(),
            ));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut p = Matrix::identity(n);
        for k in 0..n {
            // bring a nonzero diagonal entry to position k
            if m[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                    m.sym_swap(k, j);
                    p.swap_cols(k, j);
                } else if let Some(j) = (k + 1..n).find(|&i| !m[(k, i)].is_zero()) {
                    // e_k <- e_k + e_j makes the diagonal 2 m[k][j] != 0
                    m.sym_add(k, j, &Q::one());
                    p.add_col(k, j, &Q::one());
                } else {
                    // the whole row vanishes: radical direction
                    continue;
                }
            }
            let pv = m[(k, k)].clone();
            for i in k + 1..n {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let f = -(&m[(i, k)] / &pv);
                m.sym_add(i, k, &f);
                p.add_col(i, k, &f);
            }
        }
        let diag = (0..n).map(|i| m[(i, i)].clone()).collect();
        Ok((p, diag))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `col_target += f · col_src`
    fn add_col(&mut self, target: usize, src: usize, f: &Q) {
        for i in 0..self.rows {
            let d = f * &self[(i, src)];
            self[(i, target)] += d;
        }
    }

    fn sym_swap(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b);
        self.swap_cols(a, b);
    }

    /// Congruence `e_target <- e_target + f e_src` applied to rows and columns.
    fn sym_add(&mut self, target: usize, src: usize, f: &Q) {
        for j in 0..self.cols {
            let d = f * &self[(src, j)];
            self[(target, j)] += d;
        }
        for i in 0..self.rows {
            let d = f * &self[(i, src)];
            self[(i, target)] += d;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;

    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub struct Rref {
    pub matrix: Matrix,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
    swaps: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Parity of the row permutation applied during elimination.
    pub fn odd_permutation(&self) -> bool {
        self.swaps % 2 == 1
    }

    /// Reduces `v` modulo the row space. The result is zero in every pivot
    /// column, so two vectors are congruent iff their reductions agree.
    pub fn reduce(&self, v: &mut [Q]) {
        for (r, &c) in self.pivots.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            let f = -v[c].clone();
            axpy(v, &f, self.matrix.row(r));
        }
    }
}

/// Incrementally grown echelon basis of a subspace of `Q^dim`.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    // (pivot column, row normalised so the pivot entry is 1)
    rows: Vec<(usize, Vec<Q>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after elimination against the current basis.
    pub fn residue(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if !v[*c].is_zero() {
                let f = -v[*c].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.residue(v))
    }

    /// Adds `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match span");
        let mut r = self.residue(v);
        let Some(c) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[c].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((c, r));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &[Q]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), q(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(frac(-2, 4).to_string(), "-1/2");
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), q(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        let sing = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.det().unwrap(), q(0));
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = Matrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v).unwrap()));
        }
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let u = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(u.signature().unwrap(), (1, 1));
        let d = Matrix::from_i64(&[&[-2, 1], &[1, -2]]);
        assert_eq!(d.signature().unwrap(), (0, 2));
    }

    #[test]
    fn congruence_diagonalisation() {
        let g = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 2], &[0, 2, 0]]);
        let (p, d) = g.congruence_diagonalize().unwrap();
        let lhs = p.transpose().mul(&g).unwrap().mul(&p).unwrap();
        assert_eq!(lhs, Matrix::diagonal(&d));
        assert_eq!(g.signature().unwrap(), (1, 1));
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new(3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(1), q(2), q(1)]));
        assert!(s.contains(&[q(2), q(0), q(-2)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn rref_reduce_gives_normal_forms() {
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        let r = m.rref();
        let mut a = vec![q(1), q(0), q(0)];
        let mut b = vec![q(0), q(-1), q(0)];
        r.reduce(&mut a);
        r.reduce(&mut b);
        assert_eq!(a, b);
    }
}
