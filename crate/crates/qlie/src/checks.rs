//! Named per-instance consistency checks. Each check verifies one of the
//! structural facts the library promises; `verify` runs every check that
//! applies to the instance and reports a pass/fail table.
//!
//! Checks that only hold under hypotheses (solvable, invariant, reduced)
//! are skipped when the hypothesis fails, not reported as failures.

use num_traits::Zero;

use crate::error::Error;
use crate::jordan::jordan_chevalley;
use crate::metric::{MetricLieAlgebra, NilInvarianceVerdict};
use crate::reduction::{
    complete_reduction, verify_cocycle_derivation_identity, verify_xi_vanishes,
};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn result(name: &'static str, passed: bool, fail_detail: impl Into<String>) -> CheckResult {
    let detail = if passed { "ok".to_string() } else { fail_detail.into() };
    CheckResult { name, passed, detail }
}

/// Run every applicable check. Deterministic given (samples, seed).
pub fn run_checks(m: &MetricLieAlgebra, samples: u32, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let g = &m.algebra;
    let n = m.dim();
    let solvable = g.is_solvable();
    let invariant = m.is_invariant();
    let radical = m.metric_radical();

    let sig = m.signature();
    out.push(result(
        "signature_consistent",
        sig.plus + sig.minus + sig.null == n
            && sig.null == radical.dim()
            && m.witt_index() == sig.plus.min(sig.minus),
        format!("signature ({}, {}, {}) inconsistent with dim {} and radical", sig.plus, sig.minus, sig.null, n),
    ));

    let ds: Vec<usize> = g.derived_series().iter().map(Subspace::dim).collect();
    let lcs: Vec<usize> = g.lower_central_series().iter().map(Subspace::dim).collect();
    let monotone = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
    out.push(result(
        "series_consistent",
        monotone(&ds)
            && monotone(&lcs)
            && (!g.is_nilpotent() || solvable)
            && (solvable == (ds.last() == Some(&0)))
            && (g.is_nilpotent() == (lcs.last() == Some(&0))),
        format!("derived dims {:?}, lower central dims {:?}", ds, lcs),
    ));

    out.push(result(
        "reduced_core_inside_metric_radical",
        radical.contains_subspace(&m.reduced_core()),
        "reduced core not contained in the metric radical",
    ));

    if solvable {
        out.push(nil_invariance_agreement(m, samples, seed));

        let nil = g.nilradical().expect("solvable");
        let nil_ok = g.is_ideal(&nil)
            && (0..nil.dim()).all(|t| g.ad(&nil.basis()[t]).is_nilpotent())
            && nil.contains_subspace(&g.bracket_subspaces(&Subspace::full(n), &Subspace::full(n)));
        out.push(result(
            "nilradical_is_ad_nilpotent_ideal_containing_derived",
            nil_ok,
            "nilradical structure check failed",
        ));
    }

    if invariant {
        out.push(result(
            "metric_radical_is_ideal",
            radical.contains_subspace(&g.bracket_subspaces(&Subspace::full(n), &radical)),
            "[g, r] not contained in r",
        ));
    }

    if solvable && invariant && m.is_reduced() {
        out.push(result(
            "reduced_implies_metric_radical_zero",
            radical.is_zero(),
            "instance is reduced but the metric radical is nonzero",
        ));
        let nil = g.nilradical().expect("solvable");
        let zn = g.centralizer(&nil).intersection(&nil);
        let zg = g.center();
        out.push(result(
            "center_of_nilradical_equals_center",
            zn.contains_subspace(&zg) && zg.contains_subspace(&zn),
            format!("z(n) has dim {}, z(g) has dim {}", zn.dim(), zg.dim()),
        ));
        let j0 = m.j0().expect("solvable");
        out.push(result(
            "j0_vanishes_iff_abelian",
            j0.is_zero() == g.is_abelian(),
            format!("j0 dim {} with abelian = {}", j0.dim(), g.is_abelian()),
        ));
    }

    if solvable && invariant {
        out.push(reduction_chain_check(m));
    }

    out
}

fn nil_invariance_agreement(m: &MetricLieAlgebra, samples: u32, seed: u64) -> CheckResult {
    let name = "invariance_agrees_with_sampled_nil_invariance";
    match m.nil_invariance_check(samples, seed) {
        NilInvarianceVerdict::Certified { .. } => {
            result(name, m.is_invariant(), "certified nil-invariant but the form is not invariant")
        }
        NilInvarianceVerdict::Counterexample { vector, witness_pair: (j, k) } => {
            if m.is_invariant() {
                return result(name, false, "counterexample found for an invariant form");
            }
            // re-verify the witness independently
            let nilpotent = jordan_chevalley(&m.algebra.ad(&vector)).nilpotent;
            let ej = unit_vec(m.dim(), j);
            let ek = unit_vec(m.dim(), k);
            let defect = &m.form.apply(&nilpotent.mul_vec(&ej), &ek)
                + &m.form.apply(&ej, &nilpotent.mul_vec(&ek));
            result(name, !defect.is_zero(), "reported counterexample does not violate skewness")
        }
    }
}

fn unit_vec(n: usize, t: usize) -> Vec<crate::rational::Rational> {
    (0..n).map(|s| if s == t { crate::rational::rat_i64(1) } else { Zero::zero() }).collect()
}

fn reduction_chain_check(m: &MetricLieAlgebra) -> CheckResult {
    let name = "reduction_chain_terminates_correctly";
    let chain = match complete_reduction(m) {
        Ok(c) => c,
        Err(Error::NoRationalIsotropicVector) => {
            // anisotropic over Q: a real limitation, not an inconsistency
            return result(name, true, "");
        }
        Err(e) => return result(name, false, format!("reduction failed: {:?}", e)),
    };
    let after_radical = m.dim() - m.metric_radical().dim();
    let witt = m.witt_index();
    let s = chain.step_count();
    let t = &chain.terminal;
    let ok = s <= witt
        && t.dim() == after_radical - 2 * s
        && t.algebra.is_abelian()
        && t.witt_index() == 0
        && t.is_nondegenerate()
        && chain.steps.iter().all(|step| {
            verify_cocycle_derivation_identity(step) && verify_xi_vanishes(step)
        });
    result(
        name,
        ok,
        format!(
            "chain: {} steps, witt {}, terminal dim {} (expected {})",
            s,
            witt,
            t.dim(),
            after_radical.saturating_sub(2 * s)
        ),
    )
}
