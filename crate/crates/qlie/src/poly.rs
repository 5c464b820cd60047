//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored low-to-high with no trailing zeros; the zero
//! polynomial is the empty list.

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rational::one()] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Rational::zero(), Rational::one()] }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().clone().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                quot[k] = c.clone();
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    let t = &rem[k + i] - &(&c * b);
                    rem[k + i] = t;
                }
            }
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divmod(divisor).1
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.clone().recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &Rational::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    /// Extended Euclid: returns (g, s, t) with g monic and s*self + t*other = g.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Poly::one();
        let mut s1 = Poly::zero();
        let mut t0 = Poly::zero();
        let mut t1 = Poly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(l) => {
                let inv = l.clone().recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Largest squarefree divisor: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.divmod(&g).0.make_monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// self(g) reduced modulo h (Horner with polynomial arithmetic).
    pub fn compose_mod(&self, g: &Poly, h: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone())).rem(h);
        }
        acc
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| rat_i64(c)).collect())
    }

    #[test]
    fn divmod_exact() {
        // (x^2 - 3x + 2) = (x - 1)(x - 2)
        let f = p(&[2, -3, 1]);
        let (q, r) = f.divmod(&p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        // f = (x-1)^2 (x+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(f.squarefree_part(), p(&[-1, 1]).mul(&p(&[2, 1])).make_monic());
        assert!(!f.is_squarefree());
        assert!(f.squarefree_part().is_squarefree());
    }

    #[test]
    fn extended_gcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[1, 1]);
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn compose_mod_matches_direct() {
        let f = p(&[1, 2, 3]);
        let g = p(&[0, 1, 1]);
        let h = p(&[1, 0, 0, 1]);
        let direct = f.mul(&Poly::one()).compose_mod(&g, &h);
        // brute force: f(g) then reduce
        let fg = f
            .coeffs()
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, c)| {
                let mut pw = Poly::one();
                for _ in 0..i {
                    pw = pw.mul(&g);
                }
                acc.add(&pw.scale(c))
            });
        assert_eq!(direct, fg.rem(&h));
    }

    #[test]
    fn eval_matrix_horner() {
        use crate::matrix::Matrix;
        let m = Matrix::from_rows(vec![
            vec![rat_i64(1), rat_i64(1)],
            vec![rat_i64(0), rat_i64(1)],
        ]);
        // f = x^2 - 2x: f(m) = m^2 - 2m
        let f = p(&[0, -2, 1]);
        let want = m.mul(&m).sub(&m.scale(&rat_i64(2)));
        assert_eq!(f.eval_matrix(&m), want);
    }
}
