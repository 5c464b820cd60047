//! Dense matrices over the rationals and exact elimination.
//!
//! Row reduction does its forward pass fraction-free (Bareiss) on an
//! integer-scaled copy to limit coefficient blow-up, then normalizes to
//! reduced row echelon form with rational arithmetic. Pivots are chosen by
//! smallest bit length, ties by smallest row index, so every result is
//! deterministic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{pivot_weight, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(ambient: usize, cols: Vec<Vec<Rational>>) -> Self {
        let ncols = cols.len();
        assert!(cols.iter().all(|c| c.len() == ambient), "ragged columns");
        let mut m = Matrix::zeros(ambient, ncols);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rational> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
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
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True iff the matrix is nilpotent (some power vanishes; degree at most
    /// the dimension, tested by repeated squaring).
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        if self.rows == 0 {
            return true;
        }
        let mut p = self.clone();
        let mut k = 1usize;
        while k < self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(&p);
            k *= 2;
        }
        p.is_zero()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }

    /// Flatten row-major into a single vector (used to treat matrices as
    /// vectors of length rows*cols).
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        // Scale rows to integers so the forward pass is fraction-free.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = num_integer::lcm(lcm, self[(i, j)].denom().clone());
                }
                (0..self.cols)
                    .map(|j| {
                        let x = &self[(i, j)];
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();

        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<(usize, u64)> = None;
            for i in r..self.rows {
                if !m[i][c].is_zero() {
                    let w = m[i][c].magnitude().bits();
                    if best.map_or(true, |(_, bw)| w < bw) {
                        best = Some((i, w));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            m.swap(r, p);
            for i in r + 1..self.rows {
                for j in 0..self.cols {
                    if j == c {
                        continue;
                    }
                    let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    debug_assert!((&t % &prev).is_zero(), "inexact Bareiss division");
                    m[i][j] = t / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }

        // Normalize to RREF with rational arithmetic.
        let mut out = Matrix::zeros(self.rows, self.cols);
        for i in 0..r {
            for j in 0..self.cols {
                out[(i, j)] = Rational::from_integer(m[i][j].clone());
            }
        }
        for t in (0..r).rev() {
            let p = pivots[t];
            let inv = {
                let piv = out[(t, p)].clone();
                piv.recip()
            };
            for j in 0..self.cols {
                let v = &out[(t, j)] * &inv;
                out[(t, j)] = v;
            }
            for s in 0..t {
                let f = out[(s, p)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = &out[(s, j)] - &(&f * &out[(t, j)]);
                    out[(s, j)] = v;
                }
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as columns. The basis is the canonical
    /// one read off the RREF: one column per free variable.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &j) in free.iter().enumerate() {
            out[(j, k)] = Rational::one();
            for (t, &p) in pivots.iter().enumerate() {
                out[(p, k)] = -r[(t, j)].clone();
            }
        }
        out
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(t, &p)| t != p) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// One solution of self * x = b (free variables set to zero), or None if
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len());
        let aug = self.hstack(&Matrix::from_cols(self.rows, vec![b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (t, &p) in pivots.iter().enumerate() {
            x[p] = r[(t, self.cols)].clone();
        }
        Some(x)
    }

    /// For a symmetric matrix G, a congruence transformation S with
    /// S^T G S diagonal; returns (S, diagonal entries).
    pub fn congruence_diagonalize(&self) -> Result<(Matrix, Vec<Rational>)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        let n = self.rows;
        let mut g = self.clone();
        let mut s = Matrix::identity(n);

        let swap = |g: &mut Matrix, s: &mut Matrix, a: usize, b: usize| {
            for j in 0..n {
                let t = g[(a, j)].clone();
                g[(a, j)] = g[(b, j)].clone();
                g[(b, j)] = t;
            }
            for i in 0..n {
                let t = g[(i, a)].clone();
                g[(i, a)] = g[(i, b)].clone();
                g[(i, b)] = t;
                let t = s[(i, a)].clone();
                s[(i, a)] = s[(i, b)].clone();
                s[(i, b)] = t;
            }
        };

        for k in 0..n {
            if g[(k, k)].is_zero() {
                // Prefer a nonzero diagonal entry below; smallest weight wins.
                let mut best: Option<(usize, u64)> = None;
                for i in k + 1..n {
                    let w = pivot_weight(&g[(i, i)]);
                    if w != u64::MAX && best.map_or(true, |(_, bw)| w < bw) {
                        best = Some((i, w));
                    }
                }
                if let Some((i, _)) = best {
                    swap(&mut g, &mut s, k, i);
                } else {
                    // All remaining diagonal entries vanish; use the first
                    // off-diagonal nonzero to create one, or stop if the
                    // whole block is zero.
                    let mut found = None;
                    'outer: for i in k..n {
                        for j in i + 1..n {
                            if !g[(i, j)].is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    let Some((i, j)) = found else { break };
                    // Column op e_i += e_j, mirrored on rows.
                    for t in 0..n {
                        let v = &g[(t, i)] + &g[(t, j)];
                        g[(t, i)] = v;
                    }
                    for t in 0..n {
                        let v = &g[(i, t)] + &g[(j, t)];
                        g[(i, t)] = v;
                    }
                    for t in 0..n {
                        let v = &s[(t, i)] + &s[(t, j)];
                        s[(t, i)] = v;
                    }
                    if i != k {
                        swap(&mut g, &mut s, k, i);
                    }
                }
            }
            let piv = g[(k, k)].clone();
            if piv.is_zero() {
                break;
            }
            for i in k + 1..n {
                let c = &g[(i, k)] / &piv;
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &g[(i, j)] - &(&c * &g[(k, j)]);
                    g[(i, j)] = v;
                }
                for j in 0..n {
                    let v = &g[(j, i)] - &(&c * &g[(j, k)]);
                    g[(j, i)] = v;
                }
                for j in 0..n {
                    let v = &s[(j, i)] - &(&c * &s[(j, k)]);
                    s[(j, i)] = v;
                }
            }
        }
        let d = (0..n).map(|i| g[(i, i)].clone()).collect();
        Ok((s, d))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

/// Maintains the reduced row echelon basis of a growing span. Inserting a
/// vector reports whether it enlarged the span; the rows stay fully reduced
/// so equal spans have identical representations.
#[derive(Clone, Debug)]
pub struct IncrementalSpan {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl IncrementalSpan {
    pub fn new(ambient: usize) -> Self {
        IncrementalSpan { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for j in 0..self.ambient {
                    let t = &v[j] - &(&c * &row[j]);
                    v[j] = t;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Add a vector; returns true iff the span grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone().recip();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            let c = row[p].clone();
            if !c.is_zero() {
                for j in 0..self.ambient {
                    let t = &row[j] - &(&c * &v[j]);
                    row[j] = t;
                }
            }
        }
        let idx = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(idx, v);
        self.pivots.insert(idx, p);
        true
    }

    /// The canonical basis rows (RREF order).
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}
