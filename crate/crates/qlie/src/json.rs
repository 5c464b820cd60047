//! JSON interchange format. Rationals are strings "p/q" (or "p" when the
//! denominator is 1), matrices row-major nested arrays, subspaces lists of
//! basis vectors. Serialization is deterministic: struct field order, two
//! space pretty printing, one trailing newline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{BracketTerm, LieAlgebra};
use crate::matrix::Matrix;
use crate::metric::{BilinearForm, MetricLieAlgebra, NilInvarianceVerdict, Signature};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reduction::{RadicalStep, ReductionChain, ReductionStep};
use crate::subspace::Subspace;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketTermDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MetaDoc {
    pub family: String,
    pub params: Vec<String>,
    pub seed: u64,
}

/// A metric Lie algebra on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub brackets: Vec<BracketTermDoc>,
    pub gram: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<MetaDoc>,
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rational_strings(&m.row_vec(i))).collect()
}

pub fn subspace_to_rows(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| rational_strings(v)).collect()
}

pub fn parse_vector(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn parse_matrix(rows: &[Vec<String>], what: &str) -> Result<Matrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    for row in rows {
        if row.len() != c {
            return Err(Error::Parse(format!("{} rows have inconsistent lengths", what)));
        }
    }
    let mut parsed = Vec::with_capacity(r);
    for row in rows {
        parsed.push(parse_vector(row)?);
    }
    if r == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn metric_to_doc(m: &MetricLieAlgebra, meta: Option<MetaDoc>) -> AlgebraDoc {
    AlgebraDoc {
        dim: m.dim(),
        basis_names: m.algebra.basis_names().to_vec(),
        brackets: m
            .algebra
            .brackets()
            .iter()
            .map(|t| BracketTermDoc { i: t.i, j: t.j, k: t.k, c: format_rational(&t.c) })
            .collect(),
        gram: matrix_to_rows(m.gram()),
        meta,
    }
}

pub fn doc_to_metric(doc: &AlgebraDoc) -> Result<MetricLieAlgebra> {
    let mut terms = Vec::with_capacity(doc.brackets.len());
    for t in &doc.brackets {
        terms.push(BracketTerm { i: t.i, j: t.j, k: t.k, c: parse_rational(&t.c)? });
    }
    let algebra = LieAlgebra::new(doc.dim, doc.basis_names.clone(), terms)?;
    let gram = parse_matrix(&doc.gram, "gram")?;
    if gram.rows() != doc.dim {
        return Err(Error::Parse(format!(
            "gram has {} rows for dimension {}",
            gram.rows(),
            doc.dim
        )));
    }
    let form = BilinearForm::new(gram)?;
    MetricLieAlgebra::new(algebra, form)
}

/// Pretty JSON with a trailing newline, the only rendering the crate emits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse_algebra_doc(s: &str) -> Result<AlgebraDoc> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_metric(s: &str) -> Result<(MetricLieAlgebra, Option<MetaDoc>)> {
    let doc = parse_algebra_doc(s)?;
    let m = doc_to_metric(&doc)?;
    Ok((m, doc.meta))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignatureDoc {
    pub plus: usize,
    pub minus: usize,
    #[serde(rename = "null")]
    pub null_dim: usize,
}

impl From<Signature> for SignatureDoc {
    fn from(s: Signature) -> Self {
        SignatureDoc { plus: s.plus, minus: s.minus, null_dim: s.null }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvarianceWitnessDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub names: [String; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NilInvarianceDoc {
    Certified { samples: u32, seed: u64, vectors_tested: usize },
    Counterexample { vector: Vec<String>, witness_pair: [usize; 2] },
}

/// Everything `analyze` reports about one instance.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_series_dims: Vec<usize>,
    pub center: Vec<Vec<String>>,
    /// None when the algebra is not solvable.
    pub nilradical: Option<Vec<Vec<String>>>,
    pub metric_radical: Vec<Vec<String>>,
    /// z(n) intersected with [g, n]; None when not solvable.
    pub j0: Option<Vec<Vec<String>>>,
    pub reduced_core: Vec<Vec<String>>,
    pub signature: SignatureDoc,
    pub witt_index: usize,
    pub is_invariant: bool,
    pub invariance_witness: Option<InvarianceWitnessDoc>,
    pub nil_invariance: NilInvarianceDoc,
}

pub fn analyze(m: &MetricLieAlgebra, samples: u32, seed: u64) -> AnalysisReport {
    let g = &m.algebra;
    let witness = m.invariance_witness().map(|(i, j, k)| InvarianceWitnessDoc {
        i,
        j,
        k,
        names: [
            g.basis_names()[i].clone(),
            g.basis_names()[j].clone(),
            g.basis_names()[k].clone(),
        ],
    });
    let nil_invariance = match m.nil_invariance_check(samples, seed) {
        NilInvarianceVerdict::Certified { samples, seed, vectors_tested } => {
            NilInvarianceDoc::Certified { samples, seed, vectors_tested }
        }
        NilInvarianceVerdict::Counterexample { vector, witness_pair } => {
            NilInvarianceDoc::Counterexample {
                vector: rational_strings(&vector),
                witness_pair: [witness_pair.0, witness_pair.1],
            }
        }
    };
    AnalysisReport {
        dim: m.dim(),
        basis_names: g.basis_names().to_vec(),
        solvable: g.is_solvable(),
        nilpotent: g.is_nilpotent(),
        derived_series_dims: g.derived_series().iter().map(Subspace::dim).collect(),
        lower_central_series_dims: g.lower_central_series().iter().map(Subspace::dim).collect(),
        center: subspace_to_rows(&g.center()),
        nilradical: g.nilradical().ok().map(|n| subspace_to_rows(&n)),
        metric_radical: subspace_to_rows(&m.metric_radical()),
        j0: m.j0().ok().map(|j| subspace_to_rows(&j)),
        reduced_core: subspace_to_rows(&m.reduced_core()),
        signature: m.signature().into(),
        witt_index: m.witt_index(),
        is_invariant: m.is_invariant(),
        invariance_witness: witness,
        nil_invariance,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RadicalStepDoc {
    pub radical: Vec<Vec<String>>,
    pub quotient: AlgebraDoc,
    pub projection: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReductionStepDoc {
    pub j: Vec<Vec<String>>,
    pub a: Vec<Vec<String>>,
    pub w: Vec<Vec<String>>,
    pub quotient: AlgebraDoc,
    /// omega[p][q] as an ambient vector of the step input.
    pub omega: Vec<Vec<Vec<String>>>,
    pub abar: Vec<Vec<Vec<String>>>,
    pub xi: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReductionChainDoc {
    pub input_dim: usize,
    pub radical_step: Option<RadicalStepDoc>,
    pub steps: Vec<ReductionStepDoc>,
    pub terminal: AlgebraDoc,
    pub step_count: usize,
    pub terminal_dim: usize,
    pub terminal_positive_definite: bool,
}

fn radical_step_to_doc(s: &RadicalStep) -> RadicalStepDoc {
    RadicalStepDoc {
        radical: subspace_to_rows(&s.radical),
        quotient: metric_to_doc(&s.quotient, None),
        projection: matrix_to_rows(&s.projection),
    }
}

fn step_to_doc(s: &ReductionStep) -> ReductionStepDoc {
    ReductionStepDoc {
        j: subspace_to_rows(&s.j),
        a: subspace_to_rows(&s.a),
        w: subspace_to_rows(&s.w),
        quotient: metric_to_doc(&s.quotient, None),
        omega: s
            .omega
            .iter()
            .map(|row| row.iter().map(|v| rational_strings(v)).collect())
            .collect(),
        abar: s.abar.iter().map(matrix_to_rows).collect(),
        xi: s.xi.iter().map(matrix_to_rows).collect(),
    }
}

pub fn chain_to_doc(input_dim: usize, chain: &ReductionChain) -> ReductionChainDoc {
    ReductionChainDoc {
        input_dim,
        radical_step: chain.radical_step.as_ref().map(radical_step_to_doc),
        steps: chain.steps.iter().map(step_to_doc).collect(),
        terminal: metric_to_doc(&chain.terminal, None),
        step_count: chain.step_count(),
        terminal_dim: chain.terminal.dim(),
        terminal_positive_definite: chain.terminal.is_positive_definite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, Family, FamilySpec};
    use crate::metric::test_metrics::osc_metric;
    use crate::rational::rat_i64;
    use crate::reduction::complete_reduction;

    fn osc_spec() -> FamilySpec {
        FamilySpec { family: Family::Oscillator, params: vec![rat_i64(1)], seed: 0 }
    }

    #[test]
    fn round_trip_preserves_instance() {
        let m = generate(&osc_spec()).unwrap();
        let doc = metric_to_doc(&m, None);
        let text = to_json(&doc);
        let (back, meta) = parse_metric(&text).unwrap();
        assert_eq!(back, m);
        assert!(meta.is_none());
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn meta_survives_round_trip() {
        let m = generate(&osc_spec()).unwrap();
        let meta = MetaDoc { family: "oscillator".into(), params: vec!["1".into()], seed: 0 };
        let text = to_json(&metric_to_doc(&m, Some(meta.clone())));
        let (_, back) = parse_metric(&text).unwrap();
        assert_eq!(back, Some(meta));
    }

    #[test]
    fn serialization_is_deterministic() {
        let m = generate(&osc_spec()).unwrap();
        let a = to_json(&metric_to_doc(&m, None));
        let b = to_json(&metric_to_doc(&m, None));
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let m = generate(&osc_spec()).unwrap();
        let text = to_json(&metric_to_doc(&m, None));
        let spiked = text.replace("\"dim\"", "\"extra\": 1,\n  \"dim\"");
        assert!(matches!(parse_metric(&spiked).unwrap_err(), Error::Parse(_)));
    }

    #[test]
    fn asymmetric_gram_is_rejected() {
        let m = generate(&osc_spec()).unwrap();
        let mut doc = metric_to_doc(&m, None);
        doc.gram[0][1] = "5".into();
        let err = parse_metric(&to_json(&doc)).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
    }

    #[test]
    fn jacobi_failure_is_distinguished_from_parse_error() {
        // [e0,e1]=e2, [e0,e2]=e0, [e1,e2]=e1 fails Jacobi
        let text = r#"{
  "dim": 3,
  "basis_names": ["e0", "e1", "e2"],
  "brackets": [
    {"i": 0, "j": 1, "k": 2, "c": "1"},
    {"i": 0, "j": 2, "k": 0, "c": "1"},
    {"i": 1, "j": 2, "k": 1, "c": "1"}
  ],
  "gram": [["1","0","0"],["0","1","0"],["0","0","1"]]
}"#;
        assert!(matches!(parse_metric(text).unwrap_err(), Error::JacobiFailure { .. }));
    }

    #[test]
    fn analysis_report_matches_oscillator_facts() {
        let m = osc_metric();
        let r = analyze(&m, 8, 0);
        assert!(r.solvable && !r.nilpotent);
        assert_eq!((r.signature.plus, r.signature.minus, r.signature.null_dim), (3, 1, 0));
        assert_eq!(r.witt_index, 1);
        assert!(r.is_invariant);
        assert!(r.invariance_witness.is_none());
        assert!(matches!(r.nil_invariance, NilInvarianceDoc::Certified { .. }));
        assert_eq!(r.j0.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn analysis_reports_heisenberg_witness_triple() {
        let m = generate(&FamilySpec {
            family: Family::Heisenberg,
            params: vec![rat_i64(1)],
            seed: 0,
        })
        .unwrap();
        let r = analyze(&m, 8, 0);
        assert!(!r.is_invariant);
        let w = r.invariance_witness.unwrap();
        assert_eq!((w.i, w.j, w.k), (0, 1, 2));
        assert_eq!(w.names, ["X1".to_string(), "Y1".into(), "Z".into()]);
        assert!(matches!(r.nil_invariance, NilInvarianceDoc::Counterexample { .. }));
    }

    #[test]
    fn chain_doc_serializes_oscillator_reduction() {
        let m = osc_metric();
        let chain = complete_reduction(&m).unwrap();
        let doc = chain_to_doc(m.dim(), &chain);
        assert_eq!(doc.step_count, 1);
        assert_eq!(doc.terminal_dim, 2);
        assert!(doc.terminal_positive_definite);
        assert!(doc.radical_step.is_none());
        let text = to_json(&doc);
        let back: ReductionChainDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }
}
