//! Linear subspaces of Q^n with a canonical basis.
//!
//! The basis is the reduced row echelon basis of the span, so two equal
//! subspaces always have identical representations and every downstream
//! choice that picks "the first basis vector" is deterministic.

use num_traits::Zero;

use crate::matrix::{vec_is_zero, Matrix};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Canonical basis vectors as rows of an RREF matrix (no zero rows).
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_matrix_columns(&Matrix::identity(ambient))
    }

    /// Span of a list of vectors.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let m = Matrix::from_rows(vectors.to_vec());
        let m = if vectors.is_empty() { Matrix::zeros(0, ambient) } else { m };
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row_vec(i)).collect();
        Subspace { ambient, rows, pivots }
    }

    /// Span of the columns of a matrix.
    pub fn from_matrix_columns(m: &Matrix) -> Self {
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|j| m.col_vec(j)).collect();
        Subspace::from_vectors(m.rows(), &cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Canonical basis as the columns of an ambient x dim matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_cols(self.ambient, self.rows.clone())
    }

    /// Residual of v after subtracting its component in the subspace
    /// (coordinates at pivot positions drive the reduction).
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

    /// Coordinates of v in the canonical basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.clone());
        Subspace::from_vectors(self.ambient, &vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // x = U a = V b: kernel of [U | V] gives (a, -b).
        let u = self.basis_matrix();
        let v = other.basis_matrix();
        let k = u.hstack(&v).kernel();
        let vectors: Vec<Vec<Rational>> = (0..k.cols())
            .map(|c| {
                let coeffs: Vec<Rational> = (0..self.dim()).map(|i| k[(i, c)].clone()).collect();
                u.mul_vec(&coeffs)
            })
            .collect();
        Subspace::from_vectors(self.ambient, &vectors)
    }

    /// Coordinate positions not used as pivots; the corresponding standard
    /// basis vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|j| !self.pivots.contains(j)).collect()
    }

    /// Projection onto the coordinate complement along the subspace, as a
    /// (ambient - dim) x ambient matrix. Rows are indexed by the complement
    /// coordinates in increasing order; the kernel of the projection is
    /// exactly this subspace.
    pub fn complement_projection(&self) -> Matrix {
        let comp = self.complement_coordinates();
        Matrix::from_fn(comp.len(), self.ambient, |r, t| {
            let c = comp[r];
            let direct = if t == c { Rational::from_integer(1.into()) } else { Rational::zero() };
            match self.pivots.iter().position(|&p| p == t) {
                Some(idx) => &direct - &self.rows[idx][c],
                None => direct,
            }
        })
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of Q^{})", self.dim(), self.ambient)?;
        for row in &self.rows {
            let v: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "\n  [{}]", v.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat_i64(x)).collect()
    }

    #[test]
    fn canonical_representation_is_equal_for_equal_spans() {
        let a = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 0, 2])]);
        let b = Subspace::from_vectors(3, &[v(&[2, 2, 2]), v(&[1, 1, 3])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::from_vectors(3, &[v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert!(s.contains(&v(&[2, 3, 5])));
        assert_eq!(s.coordinates(&v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.coordinates(&v(&[0, 0, 1])), None);
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert!(a.sum(&b).is_full());
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::from_vectors(3, &[v(&[0, 1, 0])]));
    }

    #[test]
    fn complement_projection_kills_subspace() {
        let s = Subspace::from_vectors(3, &[v(&[1, 2, 3])]);
        let q = s.complement_projection();
        assert_eq!(q.rows(), 2);
        assert!(vec_is_zero(&q.mul_vec(&v(&[1, 2, 3]))));
        // The projection restricted to complement coordinates is the identity.
        assert_eq!(q.mul_vec(&v(&[0, 1, 0])), v(&[1, 0]));
        assert_eq!(q.mul_vec(&v(&[0, 0, 1])), v(&[0, 1]));
    }

    #[test]
    fn zero_and_full() {
        let z = Subspace::zero(4);
        let f = Subspace::full(4);
        assert!(z.is_zero() && f.is_full());
        assert!(f.contains_subspace(&z));
        assert_eq!(f.intersection(&z).dim(), 0);
        assert_eq!(z.complement_projection(), Matrix::identity(4));
    }
}
