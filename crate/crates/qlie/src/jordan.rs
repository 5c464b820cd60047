//! Additive Jordan decomposition of a square rational matrix into commuting
//! semisimple and nilpotent parts, with witnessing polynomials.
//!
//! The semisimple part is produced as P(A) where P is computed by Newton
//! iteration on the squarefree part of the minimal polynomial, carried out in
//! Q[x] modulo the minimal polynomial. Both witnessing polynomials have zero
//! constant term, so the decomposition restricts to any invariant subspace
//! and is inherited by subalgebras containing A.

use num_traits::Zero;

use crate::matrix::{IncrementalSpan, Matrix};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct JordanPair {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
    /// P with P(input) = semisimple and P(0) = 0.
    pub p_poly: Poly,
    /// Q = x - P, so Q(input) = nilpotent and Q(0) = 0.
    pub q_poly: Poly,
}

/// Monic annihilating polynomial of least degree.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Poly::one();
    }
    let mut span = IncrementalSpan::new(n * n);
    let mut powers: Vec<Matrix> = vec![Matrix::identity(n)];
    span.insert(&powers[0].flatten());
    loop {
        let next = powers.last().unwrap().mul(m);
        let flat = next.flatten();
        if !span.insert(&flat) {
            // next = sum of earlier powers; solve for the coefficients.
            let cols: Vec<Vec<Rational>> = powers.iter().map(Matrix::flatten).collect();
            let basis = Matrix::from_cols(n * n, cols);
            let c = basis
                .solve(&flat)
                .expect("dependent power must lie in the span of earlier powers");
            let k = powers.len();
            let mut coeffs = vec![Rational::zero(); k + 1];
            for (i, ci) in c.into_iter().enumerate() {
                coeffs[i] = -ci;
            }
            coeffs[k] = Rational::from_integer(1.into());
            return Poly::new(coeffs);
        }
        powers.push(next);
    }
}

/// Jordan decomposition `input = semisimple + nilpotent`.
pub fn jordan_chevalley(m: &Matrix) -> JordanPair {
    assert!(m.is_square(), "Jordan decomposition of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return JordanPair {
            semisimple: Matrix::zeros(0, 0),
            nilpotent: Matrix::zeros(0, 0),
            p_poly: Poly::zero(),
            q_poly: Poly::x(),
        };
    }
    let mu = minimal_polynomial(m);
    let f = mu.squarefree_part();
    let fp = f.derivative();

    // Newton iteration in Q[x]/(mu): p <- p - f(p)/f'(p). The derivative
    // stays invertible modulo mu because p is congruent to x modulo every
    // irreducible factor of mu.
    let mut p = Poly::x().rem(&mu);
    let mut guard = 0usize;
    loop {
        let val = f.compose_mod(&p, &mu);
        if val.is_zero() {
            break;
        }
        let der = fp.compose_mod(&p, &mu);
        let (g, s, _) = der.extended_gcd(&mu);
        assert_eq!(g.degree(), Some(0), "derivative not invertible modulo the minimal polynomial");
        let inv = s;
        p = p.sub(&val.mul(&inv).rem(&mu)).rem(&mu);
        guard += 1;
        assert!(guard <= 2 * n + 4, "Newton iteration failed to converge");
    }

    // Force zero constant term. When 0 is an eigenvalue the reduced
    // polynomial already has it; otherwise shift by a multiple of mu.
    let c = p.constant_term();
    if !c.is_zero() {
        let mu0 = mu.constant_term();
        assert!(!mu0.is_zero(), "semisimple polynomial has nonzero constant term with 0 an eigenvalue");
        p = p.sub(&mu.scale(&(&c / &mu0)));
        debug_assert!(p.constant_term().is_zero());
    }

    let semisimple = p.eval_matrix(m);
    let nilpotent = m.sub(&semisimple);
    let q = Poly::x().sub(&p);
    JordanPair { semisimple, nilpotent, p_poly: p, q_poly: q }
}
