//! Lie algebras over Q given by structure constants.
//!
//! Structure constants are stored sparsely as terms `(i, j, k, c)` with
//! `i < j`, meaning `[e_i, e_j] = sum_k c * e_k`. Antisymmetry is implicit;
//! the Jacobi identity is validated on construction and every constructor
//! path goes through that check.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{IncrementalSpan, Matrix};
use crate::rational::Rational;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTerm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// Canonical sparse table: sorted by (i, j, k), all coefficients nonzero.
    brackets: Vec<BracketTerm>,
    /// ad(e_i) for each basis vector.
    ads: Vec<Matrix>,
}

pub fn default_basis_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    pub fn new(dim: usize, basis_names: Vec<String>, mut brackets: Vec<BracketTerm>) -> Result<Self> {
        if basis_names.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} basis names for dimension {dim}",
                basis_names.len()
            )));
        }
        for t in &brackets {
            if t.i >= t.j || t.j >= dim || t.k >= dim {
                return Err(Error::BadBracketIndex { i: t.i, j: t.j, k: t.k });
            }
            if t.c.is_zero() {
                return Err(Error::ZeroBracketCoefficient { i: t.i, j: t.j, k: t.k });
            }
        }
        brackets.sort_by_key(|t| (t.i, t.j, t.k));
        for w in brackets.windows(2) {
            if (w[0].i, w[0].j, w[0].k) == (w[1].i, w[1].j, w[1].k) {
                return Err(Error::DuplicateBracket { i: w[0].i, j: w[0].j, k: w[0].k });
            }
        }

        let mut ads = vec![Matrix::zeros(dim, dim); dim];
        for t in &brackets {
            // [e_i, e_j] = c e_k: ad(e_i) column j and ad(e_j) column i.
            ads[t.i][(t.k, t.j)] += &t.c;
            ads[t.j][(t.k, t.i)] -= &t.c;
        }

        let g = LieAlgebra { dim, basis_names, brackets, ads };
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, default_basis_names(dim), Vec::new()).unwrap()
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                let bij = self.ads[i].col_vec(j);
                for k in j + 1..n {
                    let bjk = self.ads[j].col_vec(k);
                    let bki: Vec<Rational> = self.ads[i].col_vec(k).iter().map(|x| -x.clone()).collect();
                    let mut s = self.ads_apply_bracket(&bij, k);
                    let t = self.ads_apply_bracket(&bjk, i);
                    let u = self.ads_apply_bracket(&bki, j);
                    for idx in 0..n {
                        let v = &s[idx] + &t[idx] + &u[idx];
                        s[idx] = v;
                    }
                    if !s.iter().all(Rational::is_zero) {
                        return Err(Error::JacobiFailure { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// [v, e_m] for a coordinate vector v.
    fn ads_apply_bracket(&self, v: &[Rational], m: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let col = self.ads[i].col_vec(m);
            for (t, x) in col.iter().enumerate() {
                out[t] += c * x;
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn brackets(&self) -> &[BracketTerm] {
        &self.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ads[i]
    }

    pub fn ad(&self, x: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.dim);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.ads[i].scale(c));
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.ad(x).mul_vec(y)
    }

    /// Span of [U, V] over basis pairs.
    pub fn bracket_subspaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in u.basis() {
            for y in v.basis() {
                vectors.push(self.bracket(x, y));
            }
        }
        Subspace::from_vectors(self.dim, &vectors)
    }

    /// g, [g,g], [[g,g],[g,g]], ... down to stabilization (last element
    /// repeats nothing; a solvable algebra ends at 0).
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_subspaces(last, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// g, [g,g], [g,[g,g]], ... down to stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_subspaces(&full, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
    }

    /// {x : [x, s] = 0 for all s in the subspace}.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        if s.is_zero() {
            return Subspace::full(self.dim);
        }
        let mut stacked = Matrix::zeros(0, self.dim);
        for v in s.basis() {
            stacked = stacked.vstack(&self.ad(v));
        }
        Subspace::from_matrix_columns(&stacked.kernel())
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_subspaces(&Subspace::full(self.dim), s))
    }

    /// Smallest ideal containing the subspace.
    pub fn ideal_generated_by(&self, s: &Subspace) -> Subspace {
        let full = Subspace::full(self.dim);
        let mut cur = s.clone();
        loop {
            let next = cur.sum(&self.bracket_subspaces(&full, &cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Nilradical of a solvable algebra: the set of x with ad(x) nilpotent.
    ///
    /// Computed through the associative matrix algebra generated by the
    /// ad(e_i): its radical is the trace-form radical, and x lies in the
    /// nilradical exactly when ad(x) lies in that radical.
    pub fn nilradical(&self) -> Result<Subspace> {
        if !self.is_solvable() {
            return Err(Error::NonSolvable);
        }
        let n = self.dim;
        let mut span = IncrementalSpan::new(n * n);
        let mut elems: Vec<Matrix> = Vec::new();
        for a in &self.ads {
            if span.insert(&a.flatten()) {
                elems.push(a.clone());
            }
        }
        let mut idx = 0;
        while idx < elems.len() {
            let cur = elems[idx].clone();
            let upto = elems.len();
            for b in 0..upto {
                for prod in [cur.mul(&elems[b]), elems[b].mul(&cur)] {
                    if span.insert(&prod.flatten()) {
                        elems.push(prod);
                    }
                }
            }
            idx += 1;
        }
        // x in nilradical <=> tr(ad(x) * b) = 0 for every b in the algebra.
        let t = Matrix::from_fn(elems.len(), n, |m, i| trace_product(&self.ads[i], &elems[m]));
        Ok(Subspace::from_matrix_columns(&t.kernel()))
    }

    /// Quotient by an ideal. Returns the quotient algebra together with the
    /// projection matrix onto the coordinate complement of the ideal; the
    /// quotient basis vectors are the images of the complement coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Matrix)> {
        assert_eq!(ideal.ambient_dim(), self.dim);
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let proj = ideal.complement_projection();
        let comp = ideal.complement_coordinates();
        let m = comp.len();
        let mut terms = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let t = self.ads[comp[a]].col_vec(comp[b]);
                let q = proj.mul_vec(&t);
                for (k, c) in q.into_iter().enumerate() {
                    if !c.is_zero() {
                        terms.push(BracketTerm { i: a, j: b, k, c });
                    }
                }
            }
        }
        let names = comp.iter().map(|&c| self.basis_names[c].clone()).collect();
        let g = LieAlgebra::new(m, names, terms)?;
        Ok((g, proj))
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim;
        let mut terms = self.brackets.clone();
        for t in &other.brackets {
            terms.push(BracketTerm { i: t.i + n, j: t.j + n, k: t.k + n, c: t.c.clone() });
        }
        let mut names = self.basis_names.clone();
        names.extend(other.basis_names.iter().cloned());
        LieAlgebra::new(n + other.dim, names, terms).expect("direct sum of valid algebras is valid")
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for t in &self.brackets {
            write!(
                f,
                ", [{},{}]->{}*{}",
                self.basis_names[t.i], self.basis_names[t.j], t.c, self.basis_names[t.k]
            )?;
        }
        write!(f, ")")
    }
}

pub fn trace_product(a: &Matrix, b: &Matrix) -> Rational {
    assert_eq!(a.cols(), b.rows());
    assert_eq!(a.rows(), b.cols());
    let mut s = Rational::zero();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            s += &a[(i, j)] * &b[(j, i)];
        }
    }
    s
}

#[cfg(test)]
pub(crate) mod test_algebras {
    use super::*;
    use crate::rational::rat_i64;

    pub fn term(i: usize, j: usize, k: usize, c: i64) -> BracketTerm {
        BracketTerm { i, j, k, c: rat_i64(c) }
    }

    /// Heisenberg h3: [X,Y] = Z.
    pub fn h3() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![term(0, 1, 2, 1)],
        )
        .unwrap()
    }

    /// r2: [A,X] = X.
    pub fn r2() -> LieAlgebra {
        LieAlgebra::new(2, vec!["A".into(), "X".into()], vec![term(0, 1, 1, 1)]).unwrap()
    }

    /// Oscillator algebra: [A,X] = Y, [A,Y] = -X, [X,Y] = Z.
    pub fn osc() -> LieAlgebra {
        LieAlgebra::new(
            4,
            vec!["A".into(), "X".into(), "Y".into(), "Z".into()],
            vec![term(0, 1, 2, 1), term(0, 2, 1, -1), term(1, 2, 3, 1)],
        )
        .unwrap()
    }

    /// sl2: [H,E] = 2E, [H,F] = -2F, [E,F] = H.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::new(
            3,
            vec!["H".into(), "E".into(), "F".into()],
            vec![term(0, 1, 1, 2), term(0, 2, 2, -2), term(1, 2, 0, 1)],
        )
        .unwrap()
    }
}
