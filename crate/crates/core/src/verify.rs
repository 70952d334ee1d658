//! Instance-level verification: every closed-form claim is recomputed
//! and compared against the exhaustive oracles, producing a list of
//! named checks with explicit statuses instead of one bare boolean.
//!
//! Statuses:
//! - `pass` / `fail`: the claim is established for this instance shape,
//!   so a mismatch is an error (in a formula or in this library);
//! - `report-only`: the comparison ran, but the claim is not
//!   established for this shape; a mismatch is recorded as a
//!   discrepancy, not a failure;
//! - `skipped`: an enumeration refused to run within the budget (or a
//!   hypothesis such as `ell >= 2` is unmet); a skip is never silently
//!   upgraded to a pass.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::SchubertCode;
use crate::error::Error;
use crate::gf::FieldSpec;
use crate::schubert::{
    count_subspaces_bruteforce, count_subspaces_formula, k_alpha, m_alpha_formula, n_alpha, DimSeq,
};
use crate::{Budget, Result};

/// Outcome of one named check.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ReportOnly,
    Skipped,
}

/// One comparison, with both sides rendered as text.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub expected: String,
    pub observed: String,
    /// What the comparison would establish, in words.
    pub claim: &'static str,
    /// True when a report-only comparison came out unequal.
    pub discrepancy: bool,
}

impl Check {
    fn pass_fail(
        name: &'static str,
        claim: &'static str,
        ok: bool,
        expected: String,
        observed: String,
    ) -> Check {
        Check {
            name,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            expected,
            observed,
            claim,
            discrepancy: false,
        }
    }

    fn report(
        name: &'static str,
        claim: &'static str,
        equal: bool,
        expected: String,
        observed: String,
    ) -> Check {
        Check {
            name,
            status: CheckStatus::ReportOnly,
            expected,
            observed,
            claim,
            discrepancy: !equal,
        }
    }

    fn skipped(name: &'static str, claim: &'static str, why: String) -> Check {
        Check {
            name,
            status: CheckStatus::Skipped,
            expected: String::new(),
            observed: why,
            claim,
            discrepancy: false,
        }
    }
}

/// Full result of verifying one instance.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub ell: usize,
    pub m: usize,
    pub alpha: Vec<usize>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub runtime_ms: u128,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn skipped_any(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Skipped)
    }

    /// Report-only checks whose two sides disagreed.
    pub fn discrepancies(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.discrepancy).collect()
    }
}

/// Which check groups to run. The default runs everything.
#[derive(Copy, Clone, Debug)]
pub struct CheckSet {
    pub params: bool,
    pub min_distance: bool,
    pub sd_weight: bool,
    pub census: bool,
    pub span_rank: bool,
    pub ef: bool,
}

impl CheckSet {
    pub fn all() -> CheckSet {
        CheckSet {
            params: true,
            min_distance: true,
            sd_weight: true,
            census: true,
            span_rank: true,
            ef: true,
        }
    }
}

impl Default for CheckSet {
    fn default() -> CheckSet {
        CheckSet::all()
    }
}

/// Instances (q, m, alpha) whose census size has been confirmed equal
/// to the closed-form minimum-word count by an exhaustive run. The
/// completely consecutive case is verified wholesale for every q and is
/// handled by [`census_count_verified`] directly, so it is not listed.
/// Every proper instance we have enumerated disagrees with the closed
/// form (the evaluation pairing has a nonzero kernel, which folds
/// distinct functionals onto equal words), so the table ships empty;
/// entries may be added only on the strength of a new exhaustive run.
pub const VERIFIED_COUNT_INSTANCES: &[(u64, usize, &[usize])] = &[];

/// Whether the closed-form minimum-word count is trusted as an exact
/// census size for this instance (pass/fail), as opposed to being
/// reported alongside the census for comparison (report-only).
pub fn census_count_verified(ds: &DimSeq, q: u64) -> bool {
    ds.is_completely_consecutive()
        || VERIFIED_COUNT_INSTANCES
            .iter()
            .any(|&(vq, vm, va)| vq == q && vm == ds.m() && va == ds.alpha())
}

/// Whether "the minimum-weight words are exactly the pinned-flag words"
/// is established for this shape: one intersection condition, a
/// completely consecutive sequence, or a completely non-consecutive
/// one.
fn set_equality_proven(ds: &DimSeq) -> bool {
    ds.ell() == 2 || ds.is_completely_consecutive() || ds.is_completely_non_consecutive()
}

const CLAIM_N: &str = "length equals the closed-form point-count sum";
const CLAIM_K: &str = "dimension equals the closed-form determinant value";
const CLAIM_D: &str = "exhaustive minimum distance equals q^delta";
const CLAIM_SD_W: &str = "every pinned-flag word has weight exactly q^delta";
const CLAIM_SD_SUB: &str = "every pinned-flag word is a true minimum-weight word";
const CLAIM_SET_EQ: &str = "the minimum-weight words are exactly the pinned-flag words";
const CLAIM_COUNT: &str = "the census size equals the closed-form minimum-word count";
const CLAIM_SPAN: &str = "the span of the census has the predicted rank relative to k";
const CLAIM_EF: &str = "sampled minimum words satisfy the kill-subspace codimension \
                        dichotomy and wedge onto child minimum words";
const CLAIM_BUILD: &str = "the code can be constructed at all";
const CLAIM_SUBSPACES: &str =
    "the fixed-prefix subspace-count formula matches brute-force enumeration";

/// How many census words the structural check samples per instance.
const EF_SAMPLE_CAP: usize = 12;

/// Run the requested checks on one instance. Deterministic given the
/// instance, the budget, and the seed; the seed is echoed in the
/// report.
pub fn verify_instance(
    ds: &DimSeq,
    spec: &FieldSpec,
    budget: &Budget,
    which: &CheckSet,
    seed: u64,
) -> VerifyReport {
    let start = Instant::now();
    let q = spec.q() as u64;
    let mut checks: Vec<Check> = Vec::new();

    match SchubertCode::build(ds, spec, budget) {
        Ok(code) => run_checks(&code, ds, spec, budget, which, seed, &mut checks),
        Err(e @ Error::BudgetExceeded { .. }) => {
            let why = e.to_string();
            for (name, claim) in enabled_check_names(which, ds.ell()) {
                checks.push(Check::skipped(name, claim, why.clone()));
            }
        }
        Err(e) => {
            checks.push(Check::pass_fail(
                "construction",
                CLAIM_BUILD,
                false,
                "a code matching the closed-form dimension".into(),
                e.to_string(),
            ));
        }
    }

    VerifyReport {
        q,
        ell: ds.ell(),
        m: ds.m(),
        alpha: ds.alpha().to_vec(),
        seed,
        checks,
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// The (name, claim) pairs the check set would emit, in contract order.
/// Used to mark everything skipped when construction itself is over
/// budget.
fn enabled_check_names(which: &CheckSet, ell: usize) -> Vec<(&'static str, &'static str)> {
    let mut names = Vec::new();
    if which.params {
        names.push(("params_n", CLAIM_N));
        names.push(("params_k", CLAIM_K));
    }
    if which.min_distance {
        names.push(("min_distance", CLAIM_D));
    }
    if which.sd_weight {
        names.push(("sd_word_weights", CLAIM_SD_W));
    }
    if which.census {
        names.push(("sd_words_subset_census", CLAIM_SD_SUB));
        names.push(("census_equals_sd_words", CLAIM_SET_EQ));
        names.push(("census_count_formula", CLAIM_COUNT));
    }
    if which.span_rank {
        names.push(("span_rank", CLAIM_SPAN));
    }
    if which.ef && ell >= 2 {
        names.push(("min_word_ef_structure", CLAIM_EF));
    }
    names
}

fn run_checks(
    code: &SchubertCode,
    ds: &DimSeq,
    spec: &FieldSpec,
    budget: &Budget,
    which: &CheckSet,
    seed: u64,
    checks: &mut Vec<Check>,
) {
    let q = spec.q() as u64;

    if which.params {
        let expected_n = n_alpha(ds, q);
        checks.push(Check::pass_fail(
            "params_n",
            CLAIM_N,
            BigUint::from(code.n()) == expected_n,
            expected_n.to_string(),
            code.n().to_string(),
        ));
        let expected_k = k_alpha(ds);
        checks.push(Check::pass_fail(
            "params_k",
            CLAIM_K,
            BigUint::from(code.k()) == expected_k,
            expected_k.to_string(),
            code.k().to_string(),
        ));
    }

    if which.min_distance {
        let want = code.min_distance_formula();
        match code.min_distance(budget) {
            Ok((d, _)) => checks.push(Check::pass_fail(
                "min_distance",
                CLAIM_D,
                d == want,
                format!("{want} = {q}^{}", ds.delta()),
                d.to_string(),
            )),
            Err(e @ Error::BudgetExceeded { .. }) => {
                checks.push(Check::skipped("min_distance", CLAIM_D, e.to_string()))
            }
            Err(e) => checks.push(Check::pass_fail(
                "min_distance",
                CLAIM_D,
                false,
                format!("{want} = {q}^{}", ds.delta()),
                e.to_string(),
            )),
        }
    }

    let sd = if which.sd_weight || which.census {
        Some(code.schubert_decomposable_codewords(budget))
    } else {
        None
    };
    let census = if which.census || which.span_rank || which.ef {
        Some(code.min_weight_census(budget))
    } else {
        None
    };

    if which.sd_weight {
        match sd.as_ref().unwrap() {
            Ok(sd) => {
                let want = code.min_distance_formula();
                let weights: BTreeSet<usize> = sd.words.iter().map(|w| w.weight()).collect();
                let ok = weights.iter().all(|&w| w == want);
                checks.push(Check::pass_fail(
                    "sd_word_weights",
                    CLAIM_SD_W,
                    ok,
                    format!("every weight equals {want}"),
                    format!(
                        "{} words from {} pinned subspaces, weights {:?}",
                        sd.words.len(),
                        sd.lambda_count,
                        weights
                    ),
                ));
            }
            Err(e @ Error::BudgetExceeded { .. }) => {
                checks.push(Check::skipped("sd_word_weights", CLAIM_SD_W, e.to_string()))
            }
            Err(e) => checks.push(Check::pass_fail(
                "sd_word_weights",
                CLAIM_SD_W,
                false,
                "a pinned-flag word set".into(),
                e.to_string(),
            )),
        }
    }

    if which.census {
        // the two set comparisons need both enumerations; the count
        // comparison needs only the census
        match (sd.as_ref().unwrap(), census.as_ref().unwrap()) {
            (Ok(sd), Ok(census)) => {
                let census_set: BTreeSet<_> = census.words.iter().cloned().collect();
                let hits = sd.words.iter().filter(|w| census_set.contains(w)).count();
                let subset_ok = hits == sd.words.len();
                checks.push(Check::pass_fail(
                    "sd_words_subset_census",
                    CLAIM_SD_SUB,
                    subset_ok,
                    format!(
                        "all {} pinned-flag words have weight {}",
                        sd.words.len(),
                        census.d
                    ),
                    format!(
                        "{} of {} found among the {} census words",
                        hits,
                        sd.words.len(),
                        census.words.len()
                    ),
                ));

                let equal = subset_ok && sd.words.len() == census.words.len();
                let expected = format!("{} census words", census.words.len());
                let observed = format!(
                    "{} pinned-flag words ({})",
                    sd.words.len(),
                    if equal {
                        "identical sets"
                    } else {
                        "sets differ"
                    }
                );
                checks.push(if set_equality_proven(ds) {
                    Check::pass_fail(
                        "census_equals_sd_words",
                        CLAIM_SET_EQ,
                        equal,
                        expected,
                        observed,
                    )
                } else {
                    Check::report(
                        "census_equals_sd_words",
                        CLAIM_SET_EQ,
                        equal,
                        expected,
                        observed,
                    )
                });
            }
            (sd_res, census_res) => {
                for (name, claim) in [
                    ("sd_words_subset_census", CLAIM_SD_SUB),
                    ("census_equals_sd_words", CLAIM_SET_EQ),
                ] {
                    let why = sd_res
                        .as_ref()
                        .err()
                        .or(census_res.as_ref().err())
                        .expect("at least one side failed")
                        .to_string();
                    checks.push(Check::skipped(name, claim, why));
                }
            }
        }

        match census.as_ref().unwrap() {
            Ok(census) => {
                let formula = m_alpha_formula(ds, q);
                let equal = BigUint::from(census.count()) == formula;
                let expected = formula.to_string();
                let observed = census.count().to_string();
                checks.push(if census_count_verified(ds, q) {
                    Check::pass_fail(
                        "census_count_formula",
                        CLAIM_COUNT,
                        equal,
                        expected,
                        observed,
                    )
                } else {
                    Check::report(
                        "census_count_formula",
                        CLAIM_COUNT,
                        equal,
                        expected,
                        observed,
                    )
                });
            }
            Err(e) => checks.push(Check::skipped(
                "census_count_formula",
                CLAIM_COUNT,
                e.to_string(),
            )),
        }
    }

    if which.span_rank {
        match census.as_ref().unwrap() {
            Ok(census) => {
                let rank = code.span_rank(&census.words);
                let k = code.k();
                let u = ds.u();
                let p1 = ds.jumps_padded()[1];
                let observed = format!("rank {rank} of k = {k}");
                checks.push(if u == 0 {
                    Check::pass_fail(
                        "span_rank",
                        CLAIM_SPAN,
                        rank == k,
                        format!("rank {k} (the whole code)"),
                        observed,
                    )
                } else if u > 1 || ds.alpha_at(p1) > p1 {
                    Check::pass_fail(
                        "span_rank",
                        CLAIM_SPAN,
                        rank < k,
                        format!("rank strictly below k = {k}"),
                        observed,
                    )
                } else {
                    Check::report(
                        "span_rank",
                        CLAIM_SPAN,
                        true,
                        "no prediction for this shape".into(),
                        observed,
                    )
                });
            }
            Err(e) => checks.push(Check::skipped("span_rank", CLAIM_SPAN, e.to_string())),
        }
    }

    // the structural check has an ell >= 2 hypothesis; it is omitted
    // (not skipped: skips are reserved for budget refusals) when unmet
    if which.ef && ds.ell() >= 2 {
        push_ef_check(
            code,
            ds,
            spec,
            budget,
            seed,
            census.as_ref().unwrap(),
            checks,
        );
    }
}

fn push_ef_check(
    code: &SchubertCode,
    ds: &DimSeq,
    spec: &FieldSpec,
    budget: &Budget,
    seed: u64,
    census: &crate::Result<crate::code::MinWeightCensus>,
    checks: &mut Vec<Check>,
) {
    let census = match census {
        Ok(c) => c,
        Err(e) => {
            checks.push(Check::skipped(
                "min_word_ef_structure",
                CLAIM_EF,
                e.to_string(),
            ));
            return;
        }
    };
    let child = match code.child_code(budget) {
        Ok(c) => c,
        Err(e @ Error::BudgetExceeded { .. }) => {
            checks.push(Check::skipped(
                "min_word_ef_structure",
                CLAIM_EF,
                e.to_string(),
            ));
            return;
        }
        Err(e) => {
            checks.push(Check::pass_fail(
                "min_word_ef_structure",
                CLAIM_EF,
                false,
                "a constructible child code".into(),
                e.to_string(),
            ));
            return;
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..census.words.len()).collect();
    let take = idx.len().min(EF_SAMPLE_CAP);
    for i in 0..take {
        let j = rng.gen_range(i..idx.len());
        idx.swap(i, j);
    }

    let mut all_ok = true;
    let mut detail = String::new();
    let mut t_values: BTreeSet<usize> = BTreeSet::new();
    for &i in &idx[..take] {
        match code.ef_analysis(&child, &census.words[i]) {
            Ok(a) => {
                t_values.insert(a.t);
                // the flag member indexed ell - t must sit inside the
                // kill subspace E
                let lo = ds.alpha_at(ds.ell().saturating_sub(a.t));
                let contained = a.e_space.dim_intersect_prefix(spec, lo) == lo;
                if !(a.dichotomy_holds && a.f_words_min_in_child && contained) {
                    all_ok = false;
                    detail = format!(
                        "word {i}: t={} t'={} dichotomy={} child-min={} containment={}",
                        a.t, a.t_prime, a.dichotomy_holds, a.f_words_min_in_child, contained
                    );
                    break;
                }
            }
            Err(e) => {
                all_ok = false;
                detail = format!("word {i}: {e}");
                break;
            }
        }
    }
    let observed = if all_ok {
        format!("{take} sampled words pass; codimension values {t_values:?}")
    } else {
        detail
    };
    checks.push(Check::pass_fail(
        "min_word_ef_structure",
        CLAIM_EF,
        all_ok,
        format!("{take} sampled words satisfy the dichotomy, containment, and child minimality"),
        observed,
    ));
}

/// Verify every legal dimension sequence with ambient dimension at most
/// `max_m`, over each listed field order, with the full check set.
/// Over-budget enumerations surface as skipped checks in the affected
/// reports. An empty field list yields an empty result.
pub fn verify_sweep(
    max_m: usize,
    qs: &[u64],
    budget: &Budget,
    seed: u64,
) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for &qv in qs {
        let spec = FieldSpec::from_order(qv)?;
        for m in 2..=max_m {
            for ell in 1..m {
                each_alpha(m, ell, &mut |alpha| {
                    let ds = DimSeq::new(m, alpha).expect("sorted subsets of 1..=m are legal");
                    out.push(verify_instance(&ds, &spec, budget, &CheckSet::all(), seed));
                });
            }
        }
    }
    Ok(out)
}

/// Call `f` with every strictly increasing `ell`-tuple from 1..=m, in
/// lexicographic order.
fn each_alpha(m: usize, ell: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(m: usize, ell: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == ell {
            f(cur);
            return;
        }
        let remaining = ell - cur.len();
        for v in start..=m + 1 - remaining {
            cur.push(v);
            rec(m, ell, v + 1, cur, f);
            cur.pop();
        }
    }
    rec(m, ell, 1, &mut Vec::new(), f);
}

/// One aggregated check: the fixed-prefix subspace-count formula versus
/// brute-force enumeration, over every legal shape with ambient
/// dimension at most `max_b`.
pub fn verify_subspace_counts(spec: &FieldSpec, max_b: usize, budget: &Budget) -> Check {
    let q = spec.q() as u64;
    let mut tried = 0u64;
    for b in 0..=max_b {
        for a in 0..=b {
            for r in 0..=a {
                for udim in r..=b {
                    let formula =
                        count_subspaces_formula(b, a, r, udim, q).expect("shape is legal");
                    match count_subspaces_bruteforce(spec, b, a, r, udim, budget.subspaces) {
                        Ok(got) if BigUint::from(got) == formula => tried += 1,
                        Ok(got) => {
                            return Check::pass_fail(
                                "count_subspaces",
                                CLAIM_SUBSPACES,
                                false,
                                format!("{formula} for b={b} a={a} r={r} u={udim} q={q}"),
                                got.to_string(),
                            )
                        }
                        Err(e @ Error::BudgetExceeded { .. }) => {
                            return Check::skipped(
                                "count_subspaces",
                                CLAIM_SUBSPACES,
                                e.to_string(),
                            )
                        }
                        Err(e) => {
                            return Check::pass_fail(
                                "count_subspaces",
                                CLAIM_SUBSPACES,
                                false,
                                format!("{formula} for b={b} a={a} r={r} u={udim} q={q}"),
                                e.to_string(),
                            )
                        }
                    }
                }
            }
        }
    }
    Check::pass_fail(
        "count_subspaces",
        CLAIM_SUBSPACES,
        true,
        format!("formula value for every shape with ambient <= {max_b}"),
        format!("all {tried} shapes agree"),
    )
}
