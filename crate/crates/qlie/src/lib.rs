//! Exact computations for finite-dimensional metric Lie algebras over Q.
//!
//! Everything is done in exact rational arithmetic: linear algebra, Jordan
//! decompositions, structure theory (nilradical, center, series), metric
//! structure (radical, Witt decompositions, invariance), and the reduction
//! of a solvable algebra with invariant symmetric form to its positive
//! definite abelian core, together with double extension as the inverse
//! construction.

pub mod catalog;
pub mod checks;
pub mod error;
pub mod jordan;
pub mod json;
pub mod lie;
pub mod matrix;
pub mod metric;
pub mod pairing;
pub mod poly;
pub mod rational;
pub mod reduction;
pub mod sampling;
pub mod subspace;

pub use catalog::{
    generate, random_skew_derivation, skew_derivation_space, solve_invariant_forms,
    standard_corpus, Family, FamilySpec,
};
pub use checks::{run_checks, CheckResult};
pub use error::{Error, Result};
pub use jordan::{jordan_chevalley, minimal_polynomial, JordanPair};
pub use json::{
    analyze, chain_to_doc, doc_to_metric, metric_to_doc, parse_metric, to_json, AlgebraDoc,
    AnalysisReport, MetaDoc, ReductionChainDoc,
};
pub use lie::{BracketTerm, LieAlgebra};
pub use matrix::{IncrementalSpan, Matrix};
pub use metric::{BilinearForm, MetricLieAlgebra, NilInvarianceVerdict, Signature};
pub use pairing::{PairingAnalysis, SkewPairingModule};
pub use reduction::{
    complete_reduction, double_extension, find_isotropic_central_line, find_isotropic_vector,
    reduce_once, verify_cocycle_derivation_identity, verify_xi_vanishes, RadicalStep,
    ReductionChain, ReductionStep,
};
pub use poly::Poly;
pub use rational::{format_rational, parse_rational, Rational};
pub use subspace::Subspace;
