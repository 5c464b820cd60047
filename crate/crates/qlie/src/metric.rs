//! Lie algebras with a symmetric bilinear form, and the structure theory
//! attached to the form: metric radical, Witt decompositions, the canonical
//! isotropic ideal j0, invariance and nil-invariance.
//!
//! A form is invariant when every ad(x) is skew for it, and nil-invariant
//! when the nilpotent Jordan part of every ad(x) is skew. Invariance is a
//! linear condition and decided exactly; nil-invariance is checked on a
//! deterministic family of test vectors (basis, pairwise sums of basis
//! vectors, and seeded random integer vectors), which is exact for
//! counterexamples and heuristic for certificates.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::jordan::jordan_chevalley;
use crate::lie::LieAlgebra;
use crate::matrix::Matrix;
use crate::rational::{rat_i64, Rational};
use crate::sampling::standard_test_vectors;
use crate::subspace::Subspace;

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(BilinearForm { gram })
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm { gram: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }
}

impl std::fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BilinearForm({:?})", self.gram)
    }
}

/// Sign counts of a diagonalization; `witt_index` is min(plus, minus) of the
/// nondegenerate part, degenerate directions are reported in `null`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
}

impl Signature {
    pub fn witt_index(&self) -> usize {
        self.plus.min(self.minus)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MetricLieAlgebra {
    pub algebra: LieAlgebra,
    pub form: BilinearForm,
}

/// Outcome of the sampled nil-invariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilInvarianceVerdict {
    /// Every tested vector had a skew nilpotent ad-part.
    Certified { samples: u32, seed: u64, vectors_tested: usize },
    /// The nilpotent part of ad(vector) is not skew; the basis pair
    /// witnesses <N x_j, x_k> + <x_j, N x_k> != 0.
    Counterexample { vector: Vec<Rational>, witness_pair: (usize, usize) },
}

impl NilInvarianceVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, NilInvarianceVerdict::Certified { .. })
    }
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, form: BilinearForm) -> Result<Self> {
        if algebra.dim() != form.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra dimension {} vs form dimension {}",
                algebra.dim(),
                form.dim()
            )));
        }
        Ok(MetricLieAlgebra { algebra, form })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn gram(&self) -> &Matrix {
        self.form.gram()
    }

    /// Kernel of the form: {x : <x, y> = 0 for all y}.
    pub fn metric_radical(&self) -> Subspace {
        Subspace::from_matrix_columns(&self.gram().kernel())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.metric_radical().is_zero()
    }

    /// {x : <x, s> = 0 for every s in the subspace}.
    pub fn orthogonal_complement(&self, s: &Subspace) -> Subspace {
        if s.is_zero() {
            return Subspace::full(self.dim());
        }
        let rows: Vec<Vec<Rational>> = s
            .basis()
            .iter()
            .map(|v| self.gram().mul_vec(v))
            .collect();
        Subspace::from_matrix_columns(&Matrix::from_rows(rows).kernel())
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        s.basis().iter().enumerate().all(|(i, x)| {
            s.basis()[i..].iter().all(|y| self.form.apply(x, y).is_zero())
        })
    }

    pub fn signature(&self) -> Signature {
        let (_, d) = self.gram().congruence_diagonalize().expect("gram is symmetric");
        let plus = d.iter().filter(|x| x.is_positive()).count();
        let minus = d.iter().filter(|x| x.is_negative()).count();
        let null = d.len() - plus - minus;
        Signature { plus, minus, null }
    }

    pub fn witt_index(&self) -> usize {
        self.signature().witt_index()
    }

    pub fn is_positive_definite(&self) -> bool {
        let s = self.signature();
        s.minus == 0 && s.null == 0
    }

    /// For a nondegenerate form and totally isotropic u, a pair (a, w) with
    /// a totally isotropic and dually paired with u, and w the orthogonal
    /// complement of both: the whole space is a + w + u.
    ///
    /// Construction: solve <v_i, u_j> = delta_ij with canonical particular
    /// solutions, then make the dual side isotropic by subtracting
    /// u-corrections (a_i = v_i - 1/2 sum_j <v_i, v_j> u_j).
    pub fn witt_decomposition(&self, u: &Subspace) -> Result<(Subspace, Subspace)> {
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        if !self.is_totally_isotropic(u) {
            return Err(Error::NotIsotropic);
        }
        let n = self.dim();
        let k = u.dim();
        if k == 0 {
            return Ok((Subspace::zero(n), Subspace::full(n)));
        }
        // rows: <., u_j> as linear functionals
        let cond = Matrix::from_rows(u.basis().iter().map(|v| self.gram().mul_vec(v)).collect());
        let mut dual_cols = Vec::with_capacity(k);
        for j in 0..k {
            let mut rhs = vec![Rational::zero(); k];
            rhs[j] = rat_i64(1);
            let v = cond
                .solve(&rhs)
                .expect("nondegenerate form pairs independent isotropic vectors onto the dual");
            dual_cols.push(v);
        }
        let vmat = Matrix::from_cols(n, dual_cols);
        // b[i][j] = <v_i, v_j>
        let b = vmat.transpose().mul(self.gram()).mul(&vmat);
        let umat = u.basis_matrix();
        let correction = umat.mul(&b).scale(&Rational::new(1.into(), 2.into()));
        let amat = vmat.sub(&correction);
        let a = Subspace::from_matrix_columns(&amat);

        let w = self.orthogonal_complement(u).intersection(&self.orthogonal_complement(&a));
        debug_assert_eq!(a.dim() + w.dim() + u.dim(), n);
        Ok((a, w))
    }

    /// z(n) and [g, n] intersected: the canonical isotropic ideal candidate
    /// of a solvable metric algebra.
    pub fn j0(&self) -> Result<Subspace> {
        let nil = self.algebra.nilradical()?;
        let zn = self.algebra.centralizer(&nil).intersection(&nil);
        let gn = self.algebra.bracket_subspaces(&Subspace::full(self.dim()), &nil);
        Ok(zn.intersection(&gn))
    }

    /// Largest ideal of the algebra contained in the metric radical.
    /// The form is called reduced when this is zero.
    pub fn reduced_core(&self) -> Subspace {
        let mut cur = self.metric_radical();
        loop {
            // next = {x in cur : [g, x] subset of cur}
            let proj = cur.complement_projection();
            if cur.is_zero() {
                return cur;
            }
            let basis = cur.basis_matrix();
            let mut stacked = Matrix::zeros(0, cur.dim());
            for i in 0..self.dim() {
                stacked = stacked.vstack(&proj.mul(self.algebra.ad_basis(i)).mul(&basis));
            }
            let coeffs = stacked.kernel();
            let vectors: Vec<Vec<Rational>> = (0..coeffs.cols())
                .map(|c| basis.mul_vec(&coeffs.col_vec(c)))
                .collect();
            let next = Subspace::from_vectors(self.dim(), &vectors);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced_core().is_zero()
    }

    /// The subspace inv(g, <.,.>) of elements x whose ad(x) is skew:
    /// <[x,y], z> + <y, [x,z]> = 0 for all y, z.
    pub fn invariance_subspace(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for j in 0..n {
            for k in j..n {
                // row over x-coordinates: <[e_i, e_j], e_k> + <e_j, [e_i, e_k]>
                let row: Vec<Rational> = (0..n)
                    .map(|i| {
                        let bij = self.algebra.ad_basis(i).col_vec(j);
                        let bik = self.algebra.ad_basis(i).col_vec(k);
                        let ej: Vec<Rational> =
                            (0..n).map(|t| if t == j { rat_i64(1) } else { Rational::zero() }).collect();
                        let ek: Vec<Rational> =
                            (0..n).map(|t| if t == k { rat_i64(1) } else { Rational::zero() }).collect();
                        &self.form.apply(&bij, &ek) + &self.form.apply(&ej, &bik)
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Subspace::from_matrix_columns(&Matrix::from_rows(rows).kernel())
    }

    /// True when ad(x) is skew for the form for every x.
    pub fn is_invariant(&self) -> bool {
        self.invariance_subspace().is_full()
    }

    /// First basis triple (i, j, k) with <[e_i,e_j],e_k> + <e_j,[e_i,e_k]>
    /// nonzero, or None when the form is invariant.
    pub fn invariance_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let unit = |t: usize| -> Vec<Rational> {
            (0..n).map(|s| if s == t { rat_i64(1) } else { Rational::zero() }).collect()
        };
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let bij = self.algebra.ad_basis(i).col_vec(j);
                    let bik = self.algebra.ad_basis(i).col_vec(k);
                    let defect = &self.form.apply(&bij, &unit(k)) + &self.form.apply(&unit(j), &bik);
                    if !defect.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether a single operator is skew for the form: m^T G + G m = 0.
    pub fn is_skew_operator(&self, m: &Matrix) -> bool {
        m.transpose().mul(self.gram()).add(&self.gram().mul(m)).is_zero()
    }

    /// Deterministic test vectors: basis, pairwise sums, then `samples`
    /// seeded random vectors with integer entries in [-9, 9].
    pub fn nil_invariance_test_vectors(&self, samples: u32, seed: u64) -> Vec<Vec<Rational>> {
        standard_test_vectors(self.dim(), samples, seed)
    }

    /// Check that the nilpotent Jordan part of ad(x) is skew for every test
    /// vector. A counterexample is exact; a certificate records the sampling
    /// parameters it relied on.
    pub fn nil_invariance_check(&self, samples: u32, seed: u64) -> NilInvarianceVerdict {
        let vectors = self.nil_invariance_test_vectors(samples, seed);
        let tested = vectors.len();
        for v in vectors {
            let jp = jordan_chevalley(&self.algebra.ad(&v));
            if let Some(pair) = self.skew_defect_witness(&jp.nilpotent) {
                return NilInvarianceVerdict::Counterexample { vector: v, witness_pair: pair };
            }
        }
        NilInvarianceVerdict::Certified { samples, seed, vectors_tested: tested }
    }

    /// First basis pair (j, k) where <N e_j, e_k> + <e_j, N e_k> != 0.
    pub fn skew_defect_witness(&self, m: &Matrix) -> Option<(usize, usize)> {
        let defect = m.transpose().mul(self.gram()).add(&self.gram().mul(m));
        for j in 0..self.dim() {
            for k in j..self.dim() {
                if !defect[(j, k)].is_zero() {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Quotient by an ideal contained in the metric radical; the form
    /// descends to the quotient unchanged on representatives.
    pub fn quotient_by_isotropic_ideal_in_radical(&self, ideal: &Subspace) -> Result<(MetricLieAlgebra, Matrix)> {
        if !self.metric_radical().contains_subspace(ideal) {
            return Err(Error::NotIsotropic);
        }
        let (q, proj) = self.algebra.quotient(ideal)?;
        let comp = ideal.complement_coordinates();
        let m = comp.len();
        let gram = Matrix::from_fn(m, m, |a, b| self.gram()[(comp[a], comp[b])].clone());
        let mla = MetricLieAlgebra::new(q, BilinearForm::new(gram)?)?;
        Ok((mla, proj))
    }

    pub fn direct_sum(&self, other: &MetricLieAlgebra) -> MetricLieAlgebra {
        let algebra = self.algebra.direct_sum(&other.algebra);
        let n = self.dim();
        let gram = Matrix::from_fn(n + other.dim(), n + other.dim(), |i, j| {
            if i < n && j < n {
                self.gram()[(i, j)].clone()
            } else if i >= n && j >= n {
                other.gram()[(i - n, j - n)].clone()
            } else {
                Rational::zero()
            }
        });
        MetricLieAlgebra::new(algebra, BilinearForm::new(gram).unwrap()).unwrap()
    }
}

impl std::fmt::Debug for MetricLieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MetricLieAlgebra({:?}, gram {:?})", self.algebra, self.gram())
    }
}

#[cfg(test)]
pub(crate) mod test_metrics {
    use super::*;
    use crate::lie::test_algebras::osc;

    pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_i64(x)).collect()).collect())
    }

    /// Oscillator algebra with its standard invariant form of index one.
    pub fn osc_metric() -> MetricLieAlgebra {
        let gram = int_matrix(&[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]]);
        MetricLieAlgebra::new(osc(), BilinearForm::new(gram).unwrap()).unwrap()
    }
}
