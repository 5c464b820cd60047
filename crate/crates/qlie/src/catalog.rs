//! Named instance families and seeded random generators, plus the linear
//! solvers backing them (invariant symmetric forms, skew derivations).
//!
//! Random solvable instances are built by iterated double extension rather
//! than by random structure constants: Jacobi, invariance, and
//! nondegeneracy then hold by construction. Derivations are drawn with
//! coefficients in {-1, 0, 1} over a basis of the skew-derivation space,
//! which keeps nilradicals spanned by small integer vectors (the brute
//! force grid oracle in the test suite depends on that).

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{BracketTerm, LieAlgebra};
use crate::matrix::Matrix;
use crate::metric::{BilinearForm, MetricLieAlgebra};
use crate::rational::{rat_i64, Rational};
use crate::reduction::double_extension;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Abelian,
    Heisenberg,
    Oscillator,
    R2,
    DoubleExtensionChain,
    RandomSolvable,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Abelian => "abelian",
            Family::Heisenberg => "heisenberg",
            Family::Oscillator => "oscillator",
            Family::R2 => "r2",
            Family::DoubleExtensionChain => "double_extension_chain",
            Family::RandomSolvable => "random_solvable",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "abelian" => Ok(Family::Abelian),
            "heisenberg" => Ok(Family::Heisenberg),
            "oscillator" => Ok(Family::Oscillator),
            "r2" => Ok(Family::R2),
            "double_extension_chain" => Ok(Family::DoubleExtensionChain),
            "random_solvable" => Ok(Family::RandomSolvable),
            other => Err(Error::InvalidParams(format!("unknown family '{}'", other))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<Rational>,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family, params: Vec<Rational>, seed: u64) -> Self {
        FamilySpec { family, params, seed }
    }
}

fn param_usize(params: &[Rational], idx: usize, what: &str, max: usize) -> Result<usize> {
    let p = params
        .get(idx)
        .ok_or_else(|| Error::InvalidParams(format!("missing {}", what)))?;
    if !p.is_integer() || p.is_negative() {
        return Err(Error::InvalidParams(format!("{} must be a nonnegative integer, got {}", what, p)));
    }
    let v = p.to_integer();
    let v: usize = v
        .try_into()
        .map_err(|_| Error::InvalidParams(format!("{} out of range", what)))?;
    if v > max {
        return Err(Error::InvalidParams(format!("{} must be at most {}", what, max)));
    }
    Ok(v)
}

/// Build the instance a spec describes.
pub fn generate(spec: &FamilySpec) -> Result<MetricLieAlgebra> {
    match spec.family {
        Family::Abelian => {
            if spec.params.len() != 1 {
                return Err(Error::InvalidParams("abelian takes one parameter: dim".into()));
            }
            let n = param_usize(&spec.params, 0, "dim", 12)?;
            MetricLieAlgebra::new(LieAlgebra::abelian(n), BilinearForm::identity(n))
        }
        Family::Heisenberg => {
            if spec.params.len() != 1 {
                return Err(Error::InvalidParams("heisenberg takes one parameter: n".into()));
            }
            let n = param_usize(&spec.params, 0, "n", 5)?;
            if n == 0 {
                return Err(Error::InvalidParams("heisenberg needs n >= 1".into()));
            }
            let dim = 2 * n + 1;
            let mut names = Vec::new();
            for t in 1..=n {
                names.push(format!("X{}", t));
                names.push(format!("Y{}", t));
            }
            names.push("Z".into());
            let terms = (0..n)
                .map(|t| BracketTerm { i: 2 * t, j: 2 * t + 1, k: dim - 1, c: rat_i64(1) })
                .collect();
            MetricLieAlgebra::new(LieAlgebra::new(dim, names, terms)?, BilinearForm::identity(dim))
        }
        Family::Oscillator => {
            if spec.params.is_empty() {
                return Err(Error::InvalidParams("oscillator needs at least one frequency".into()));
            }
            if spec.params.len() > 5 {
                return Err(Error::InvalidParams("oscillator takes at most 5 frequencies".into()));
            }
            for l in &spec.params {
                if !l.is_positive() {
                    return Err(Error::InvalidParams(format!("frequencies must be positive, got {}", l)));
                }
            }
            oscillator(&spec.params)
        }
        Family::R2 => {
            if !spec.params.is_empty() {
                return Err(Error::InvalidParams("r2 takes no parameters".into()));
            }
            let alg = LieAlgebra::new(
                2,
                vec!["A".into(), "X".into()],
                vec![BracketTerm { i: 0, j: 1, k: 1, c: rat_i64(1) }],
            )?;
            MetricLieAlgebra::new(alg, BilinearForm::identity(2))
        }
        Family::DoubleExtensionChain => {
            if spec.params.len() != 1 {
                return Err(Error::InvalidParams("double_extension_chain takes one parameter: depth".into()));
            }
            let depth = param_usize(&spec.params, 0, "depth", 5)?;
            let base =
                MetricLieAlgebra::new(LieAlgebra::abelian(2), BilinearForm::identity(2)).unwrap();
            extension_tower(base, depth, spec.seed)
        }
        Family::RandomSolvable => {
            if spec.params.len() != 1 {
                return Err(Error::InvalidParams("random_solvable takes one parameter: depth".into()));
            }
            let depth = param_usize(&spec.params, 0, "depth", 4)?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let n = rng.gen_range(1..=3usize);
            let diag: Vec<Rational> = (0..n).map(|_| rat_i64(rng.gen_range(1..=3))).collect();
            let gram = Matrix::from_fn(n, n, |i, j| {
                if i == j { diag[i].clone() } else { Rational::zero() }
            });
            let base = MetricLieAlgebra::new(LieAlgebra::abelian(n), BilinearForm::new(gram)?)?;
            extension_tower(base, depth, rng.gen())
        }
    }
}

fn oscillator(freqs: &[Rational]) -> Result<MetricLieAlgebra> {
    let n = freqs.len();
    let dim = 2 * n + 2;
    let mut names = vec!["A".to_string()];
    for t in 1..=n {
        names.push(format!("X{}", t));
        names.push(format!("Y{}", t));
    }
    names.push("Z".into());
    let mut terms = Vec::new();
    for (t, l) in freqs.iter().enumerate() {
        let (x, y) = (1 + 2 * t, 2 + 2 * t);
        terms.push(BracketTerm { i: 0, j: x, k: y, c: l.clone() });
        terms.push(BracketTerm { i: 0, j: y, k: x, c: -l.clone() });
        terms.push(BracketTerm { i: x, j: y, k: dim - 1, c: rat_i64(1) });
    }
    let gram = Matrix::from_fn(dim, dim, |i, j| {
        if (i, j) == (0, dim - 1) || (i, j) == (dim - 1, 0) {
            rat_i64(1)
        } else if i == j && i > 0 && i < dim - 1 {
            freqs[(i - 1) / 2].recip()
        } else {
            Rational::zero()
        }
    });
    MetricLieAlgebra::new(LieAlgebra::new(dim, names, terms)?, BilinearForm::new(gram)?)
}

/// Iterate double extensions by seeded random skew derivations.
fn extension_tower(mut m: MetricLieAlgebra, depth: usize, seed: u64) -> Result<MetricLieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..depth {
        let d = random_skew_derivation(&m, &mut rng);
        m = double_extension(&m, &d)?;
    }
    Ok(m)
}

/// Random integer combination (coefficients -1, 0, 1) of a basis of the
/// skew-derivation space; redraws a few times to avoid the zero matrix,
/// which is still returned when the space offers nothing else.
pub fn random_skew_derivation(m: &MetricLieAlgebra, rng: &mut ChaCha8Rng) -> Matrix {
    let basis = skew_derivation_space(m);
    let n = m.dim();
    if basis.is_empty() {
        return Matrix::zeros(n, n);
    }
    for _ in 0..8 {
        let mut d = Matrix::zeros(n, n);
        for b in &basis {
            match rng.gen_range(-1i64..=1) {
                0 => {}
                c => d = d.add(&b.scale(&rat_i64(c))),
            }
        }
        if !d.is_zero() {
            return d;
        }
    }
    Matrix::zeros(n, n)
}

/// Basis of {D : D a derivation of the algebra, D^T G + G D = 0}.
pub fn skew_derivation_space(m: &MetricLieAlgebra) -> Vec<Matrix> {
    let n = m.dim();
    let unknowns = n * n;
    let idx = |t: usize, k: usize| t * n + k;
    let mut rows = Vec::new();
    // derivation condition per bracket pair (i, j), output coordinate t:
    // (D [e_i,e_j])_t - (ad(e_j) D e_i)_t ... sign folded into the sum
    for i in 0..n {
        for j in i + 1..n {
            let adi = m.algebra.ad_basis(i);
            let adj = m.algebra.ad_basis(j);
            let b = adi.col_vec(j);
            for t in 0..n {
                let mut row = vec![Rational::zero(); unknowns];
                for k in 0..n {
                    row[idx(t, k)] = &row[idx(t, k)] + &b[k];
                }
                for u in 0..n {
                    // -[D e_i, e_j] = +ad(e_j) D e_i
                    row[idx(u, i)] = &row[idx(u, i)] + &adj[(t, u)];
                    // -[e_i, D e_j] = -ad(e_i) D e_j
                    row[idx(u, j)] = &row[idx(u, j)] - &adi[(t, u)];
                }
                rows.push(row);
            }
        }
    }
    // skewness: sum_u D_up G_uq + G_pu D_uq = 0 for p <= q
    let g = m.gram();
    for p in 0..n {
        for q in p..n {
            let mut row = vec![Rational::zero(); unknowns];
            for u in 0..n {
                row[idx(u, p)] = &row[idx(u, p)] + &g[(u, q)];
                row[idx(u, q)] = &row[idx(u, q)] + &g[(p, u)];
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        // dimension zero or one and no gram constraints worth stacking
        rows.push(vec![Rational::zero(); unknowns]);
    }
    let kernel = Matrix::from_rows(rows).kernel();
    (0..kernel.cols())
        .map(|c| Matrix::from_fn(n, n, |t, k| kernel[(idx(t, k), c)].clone()))
        .collect()
}

/// Basis of the space of symmetric matrices S with S ad(e_i) + ad(e_i)^T S
/// zero for every i, i.e. forms the bracket leaves invariant.
pub fn solve_invariant_forms(g: &LieAlgebra) -> Vec<Matrix> {
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let unknowns = pairs.len();
    let pos = |u: usize, v: usize| {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let mut rows = Vec::new();
    for i in 0..n {
        let ad = g.ad_basis(i);
        for p in 0..n {
            for q in p..n {
                // (S ad + ad^T S)[p][q] = sum_u s_pu ad_uq + ad_up s_uq
                let mut row = vec![Rational::zero(); unknowns];
                for u in 0..n {
                    row[pos(p, u)] = &row[pos(p, u)] + &ad[(u, q)];
                    row[pos(u, q)] = &row[pos(u, q)] + &ad[(u, p)];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Rational::zero(); unknowns]);
    }
    let kernel = Matrix::from_rows(rows).kernel();
    (0..kernel.cols())
        .map(|c| {
            Matrix::from_fn(n, n, |u, v| kernel[(pos(u, v), c)].clone())
        })
        .collect()
}

/// The shipped corpus: relative path (without extension) and generating
/// spec for each instance. Dimensions stay small enough for the brute
/// force oracles in the test suite.
pub fn standard_corpus() -> Vec<(String, FamilySpec)> {
    use Family::*;
    let fs = |family, params: &[(i64, i64)], seed| FamilySpec {
        family,
        params: params.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect(),
        seed,
    };
    vec![
        ("abelian/dim2".into(), fs(Abelian, &[(2, 1)], 0)),
        ("abelian/dim3".into(), fs(Abelian, &[(3, 1)], 0)),
        ("heisenberg/h3".into(), fs(Heisenberg, &[(1, 1)], 0)),
        ("heisenberg/h5".into(), fs(Heisenberg, &[(2, 1)], 0)),
        ("oscillator/osc1".into(), fs(Oscillator, &[(1, 1)], 0)),
        ("oscillator/osc12".into(), fs(Oscillator, &[(1, 1), (2, 1)], 0)),
        ("oscillator/osc_half_3".into(), fs(Oscillator, &[(1, 2), (3, 1)], 0)),
        ("r2/r2".into(), fs(R2, &[], 0)),
        ("double_extension_chain/depth1_seed3".into(), fs(DoubleExtensionChain, &[(1, 1)], 3)),
        ("double_extension_chain/depth2_seed7".into(), fs(DoubleExtensionChain, &[(2, 1)], 7)),
        ("double_extension_chain/depth3_seed11".into(), fs(DoubleExtensionChain, &[(3, 1)], 11)),
        ("random_solvable/depth1_seed1".into(), fs(RandomSolvable, &[(1, 1)], 1)),
        ("random_solvable/depth2_seed2".into(), fs(RandomSolvable, &[(2, 1)], 2)),
        ("random_solvable/depth2_seed5".into(), fs(RandomSolvable, &[(2, 1)], 5)),
    ]
}
