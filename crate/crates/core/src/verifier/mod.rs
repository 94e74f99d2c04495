//! Randomized verification of the catalog against the series oracle.
//!
//! Cases are sampled deterministically from a seed with SplitMix64 (the
//! `rand_xoshiro` implementation, published constants
//! `0x9E3779B97F4A7C15`, `0xBF58476D1CE4E5B9`, `0x94D049BB133111EB`). The
//! stream for case `i` of entry `id` is derived from `(seed, id, i)` only,
//! so case lists do not depend on how many entries or cases are requested
//! alongside them.

mod sampling;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::numeric::rel_diff;
use crate::reductions::{lhs_spec, reduce, ReductionId, ReductionRequest, ToleranceClass};
use crate::series::{eval_pfq, EvalResult, SeriesStatus, DEFAULT_MAX_TERMS};

pub use sampling::{LIST_SPACING, MIN_UNITY_MARGIN, ORACLE_BUDGET, POLE_GAP};

/// Oracle tolerance inside the unit disc.
pub const ORACLE_TOL_INTERIOR: f64 = 1e-15;
/// Oracle tolerance at `z = 1`, where the tail-corrected sum is used.
pub const ORACLE_TOL_UNITY: f64 = 1e-11;
/// Redraws allowed per case before giving up.
pub const MAX_ATTEMPTS: u32 = 500;

/// One sampled identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub case_id: String,
    pub request: ReductionRequest,
    pub tol_rel: f64,
    pub tol_abs: f64,
}

impl VerificationCase {
    /// A case with the default tolerances for its argument.
    pub fn new(case_id: impl Into<String>, request: ReductionRequest) -> Self {
        let (tol_rel, tol_abs) = ToleranceClass::for_z(request.z).tolerances();
        Self {
            case_id: case_id.into(),
            request,
            tol_rel,
            tol_abs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureKind {
    Mismatch,
    OracleNonConvergent,
    DomainRejected,
}

/// A parameter value as it appears in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Shift(u32),
    Scalar(f64),
    List(Vec<f64>),
}

impl ParamValue {
    fn render(&self) -> String {
        match self {
            ParamValue::Shift(n) => n.to_string(),
            ParamValue::Scalar(x) => format!("{x}"),
            ParamValue::List(v) => v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join("|"),
        }
    }
}

/// Non-finite numbers are written as `null` and read back as NaN.
fn nan_from_null<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// Outcome of one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case_id: String,
    pub id: ReductionId,
    pub params: BTreeMap<String, ParamValue>,
    #[serde(deserialize_with = "nan_from_null")]
    pub z: f64,
    /// Oracle value.
    #[serde(deserialize_with = "nan_from_null")]
    pub lhs: f64,
    /// Closed-form value.
    #[serde(deserialize_with = "nan_from_null")]
    pub rhs: f64,
    #[serde(deserialize_with = "nan_from_null")]
    pub rel_err: f64,
    pub pass: bool,
    pub failure_kind: Option<FailureKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CaseResult {
    pub fn is_skipped(&self) -> bool {
        self.failure_kind == Some(FailureKind::OracleNonConvergent)
    }

    pub fn is_failure(&self) -> bool {
        !self.pass && !self.is_skipped()
    }
}

fn params_of(req: &ReductionRequest) -> BTreeMap<String, ParamValue> {
    let mut out: BTreeMap<String, ParamValue> = req
        .scalars
        .iter()
        .map(|(k, &v)| (k.clone(), ParamValue::Scalar(v)))
        .collect();
    out.extend(req.shifts.iter().map(|(k, &v)| (k.clone(), ParamValue::Shift(v))));
    if !req.a_list.is_empty() {
        out.insert("a".into(), ParamValue::List(req.a_list.clone()));
    }
    out
}

fn case_rng(seed: u64, id: ReductionId, index: u32) -> SplitMix64 {
    let pos = ReductionId::ALL.iter().position(|&x| x == id).unwrap() as u64;
    let mut root = SplitMix64::seed_from_u64(seed);
    let a = root.next_u64();
    let mut per_id = SplitMix64::seed_from_u64(a ^ (pos + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let b = per_id.next_u64();
    SplitMix64::seed_from_u64(b ^ (index as u64 + 1).wrapping_mul(0xBF58_476D_1CE4_E5B9))
}

/// Deterministic in-domain cases for one entry.
pub fn sample_cases(id: ReductionId, count: u32, seed: u64) -> Result<Vec<VerificationCase>> {
    if count == 0 {
        return Err(Error::Domain("sample_cases: count must be at least 1".into()));
    }
    (0..count)
        .map(|index| {
            let mut rng = case_rng(seed, id, index);
            for _ in 0..MAX_ATTEMPTS {
                let req = sampling::draw(id, &mut rng);
                if sampling::admissible(&req) {
                    return Ok(VerificationCase::new(format!("{id}-s{seed}-{index:04}"), req));
                }
            }
            Err(Error::UnsatisfiableDomain {
                id: id.to_string(),
                attempts: MAX_ATTEMPTS,
            })
        })
        .collect()
}

/// Runs the oracle for a request's left-hand side.
pub fn oracle(req: &ReductionRequest, max_terms: u64) -> Result<EvalResult> {
    let spec = lhs_spec(req)?;
    let tol = if spec.z == 1.0 { ORACLE_TOL_UNITY } else { ORACLE_TOL_INTERIOR };
    eval_pfq(&spec, max_terms, tol)
}

/// Compares the oracle against an arbitrary closed-form evaluator.
pub fn run_case_with<F>(case: &VerificationCase, max_terms: u64, closed_form: F) -> CaseResult
where
    F: Fn(&ReductionRequest) -> Result<EvalResult>,
{
    let req = &case.request;
    let mut out = CaseResult {
        case_id: case.case_id.clone(),
        id: req.id,
        params: params_of(req),
        z: req.z,
        lhs: f64::NAN,
        rhs: f64::NAN,
        rel_err: f64::NAN,
        pass: false,
        failure_kind: None,
        detail: None,
    };
    match oracle(req, max_terms) {
        Ok(r) if r.status == SeriesStatus::MaxTermsReached => {
            out.lhs = r.value;
            out.failure_kind = Some(FailureKind::OracleNonConvergent);
            out.detail = Some(format!("oracle stopped after {} terms", r.terms_used));
            return out;
        }
        Ok(r) => out.lhs = r.value,
        Err(e) => {
            out.failure_kind = Some(FailureKind::DomainRejected);
            out.detail = Some(format!("oracle: {e}"));
            return out;
        }
    }
    match closed_form(req) {
        Ok(r) => out.rhs = r.value,
        Err(e) => {
            out.failure_kind = Some(FailureKind::DomainRejected);
            out.detail = Some(format!("closed form: {e}"));
            return out;
        }
    }
    let diff = (out.lhs - out.rhs).abs();
    out.rel_err = rel_diff(out.rhs, out.lhs);
    out.pass = out.lhs.is_finite()
        && out.rhs.is_finite()
        && diff <= (case.tol_rel * out.lhs.abs()).max(case.tol_abs);
    if !out.pass {
        out.failure_kind = Some(FailureKind::Mismatch);
    }
    out
}

/// Checks one case: oracle via the series, closed form via [`reduce`].
pub fn run_case(case: &VerificationCase) -> CaseResult {
    run_case_with(case, DEFAULT_MAX_TERMS, reduce)
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub max_terms: u64,
    pub parallel: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            max_terms: DEFAULT_MAX_TERMS,
            parallel: true,
        }
    }
}

/// Per-entry counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub id: ReductionId,
    pub cases: u32,
    pub passed: u32,
    pub failed: u32,
    pub skipped: u32,
    /// Largest relative error among cases where both sides were computed.
    #[serde(deserialize_with = "nan_from_null")]
    pub worst_rel_err: f64,
    /// Sum of the per-case run times, in milliseconds.
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub cases: u32,
    pub passed: u32,
    pub failed: u32,
    pub skipped: u32,
}

/// Aggregate of a verification sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub cases_per_entry: u32,
    pub entries: Vec<EntrySummary>,
    /// Every case, sorted by case id.
    pub results: Vec<CaseResult>,
}

/// The summary document written after the per-case rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub seed: u64,
    pub cases_per_entry: u32,
    pub totals: Totals,
    pub entries: Vec<EntrySummary>,
    pub failures: Vec<String>,
    pub skipped: Vec<String>,
}

impl Report {
    pub fn totals(&self) -> Totals {
        totals_of(&self.results)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.results.iter().filter(|r| r.is_failure())
    }

    pub fn skipped(&self) -> impl Iterator<Item = &CaseResult> {
        self.results.iter().filter(|r| r.is_skipped())
    }

    pub fn summary(&self) -> Summary {
        Summary {
            seed: self.seed,
            cases_per_entry: self.cases_per_entry,
            totals: self.totals(),
            entries: self.entries.clone(),
            failures: self.failures().map(|r| r.case_id.clone()).collect(),
            skipped: self.skipped().map(|r| r.case_id.clone()).collect(),
        }
    }

    /// One JSON object per case, then `{"summary": ...}` on the last line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&serde_json::to_string(r).expect("case rows serialize"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary() });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// CSV with the same columns as the JSON rows; numbers carry 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("case_id,id,params,z,lhs,rhs,rel_err,pass,failure_kind\n");
        for r in &self.results {
            let params = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={}", v.render()))
                .collect::<Vec<_>>()
                .join(" ");
            let kind = r.failure_kind.map(|k| format!("{k:?}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.case_id,
                r.id,
                params,
                sci17(r.z),
                sci17(r.lhs),
                sci17(r.rhs),
                sci17(r.rel_err),
                r.pass,
                kind
            );
        }
        out
    }

    /// Human-readable summary with 10 significant digits.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18} {:>6} {:>6} {:>6} {:>7} {:>17} {:>10}",
            "id", "cases", "pass", "fail", "skipped", "worst rel err", "time ms"
        );
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:<18} {:>6} {:>6} {:>6} {:>7} {:>17} {:>10.1}",
                e.id.to_string(),
                e.cases,
                e.passed,
                e.failed,
                e.skipped,
                sci10(e.worst_rel_err),
                e.wall_time_ms
            );
        }
        let t = self.totals();
        let _ = writeln!(
            out,
            "total: {} cases, {} passed, {} failed, {} skipped (seed {})",
            t.cases, t.passed, t.failed, t.skipped, self.seed
        );
        for r in self.failures().chain(self.skipped()) {
            let _ = writeln!(
                out,
                "  {} {:?}: lhs {} rhs {} rel_err {}{}",
                r.case_id,
                r.failure_kind.unwrap(),
                sci10(r.lhs),
                sci10(r.rhs),
                sci10(r.rel_err),
                r.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
            );
        }
        out
    }
}

fn sci17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

fn sci10(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.9e}")
    } else {
        "-".into()
    }
}

/// Recomputes totals from case rows.
pub fn totals_of(results: &[CaseResult]) -> Totals {
    let mut t = Totals {
        cases: 0,
        passed: 0,
        failed: 0,
        skipped: 0,
    };
    for r in results {
        t.cases += 1;
        if r.pass {
            t.passed += 1;
        } else if r.is_skipped() {
            t.skipped += 1;
        } else {
            t.failed += 1;
        }
    }
    t
}

/// Samples and checks `cases_per_entry` cases for each entry.
pub fn run_suite(entries: &[ReductionId], cases_per_entry: u32, seed: u64) -> Result<Report> {
    run_suite_with(entries, cases_per_entry, seed, SuiteOptions::default())
}

/// Same as [`run_suite`] on the calling thread only.
pub fn run_suite_serial(entries: &[ReductionId], cases_per_entry: u32, seed: u64) -> Result<Report> {
    run_suite_with(
        entries,
        cases_per_entry,
        seed,
        SuiteOptions {
            parallel: false,
            ..SuiteOptions::default()
        },
    )
}

pub fn run_suite_with(
    entries: &[ReductionId],
    cases_per_entry: u32,
    seed: u64,
    opts: SuiteOptions,
) -> Result<Report> {
    if entries.is_empty() {
        return Err(Error::Domain("run_suite: no entries selected".into()));
    }
    let mut ids = entries.to_vec();
    ids.sort();
    ids.dedup();

    let mut cases = Vec::new();
    for &id in &ids {
        cases.extend(sample_cases(id, cases_per_entry, seed)?);
    }
    let run = |case: &VerificationCase| {
        let t0 = Instant::now();
        let r = run_case_with(case, opts.max_terms, reduce);
        (r, t0.elapsed().as_secs_f64() * 1e3)
    };
    let mut timed: Vec<(CaseResult, f64)> = if opts.parallel {
        cases.par_iter().map(run).collect()
    } else {
        cases.iter().map(run).collect()
    };
    timed.sort_by(|a, b| a.0.case_id.cmp(&b.0.case_id));

    let entries = ids
        .iter()
        .map(|&id| {
            let rows: Vec<&(CaseResult, f64)> = timed.iter().filter(|(r, _)| r.id == id).collect();
            let owned: Vec<CaseResult> = rows.iter().map(|(r, _)| r.clone()).collect();
            let t = totals_of(&owned);
            let worst = owned
                .iter()
                .map(|r| r.rel_err)
                .filter(|e| e.is_finite())
                .fold(f64::NAN, f64::max);
            EntrySummary {
                id,
                cases: t.cases,
                passed: t.passed,
                failed: t.failed,
                skipped: t.skipped,
                worst_rel_err: worst,
                wall_time_ms: rows.iter().map(|(_, ms)| ms).sum(),
            }
        })
        .collect();

    Ok(Report {
        seed,
        cases_per_entry,
        entries,
        results: timed.into_iter().map(|(r, _)| r).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_cases(ReductionId::F21Contiguous, 5, 42).unwrap();
        let b = sample_cases(ReductionId::F21Contiguous, 5, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[3].case_id, "F21Contiguous-s42-0003");
        let c = sample_cases(ReductionId::F21Contiguous, 5, 43).unwrap();
        assert_ne!(a, c);
        assert!(sample_cases(ReductionId::F21Contiguous, 0, 1).is_err());
    }

    #[test]
    fn constrained_samplers() {
        for case in sample_cases(ReductionId::Pp3Fp2Unity, 10, 7).unwrap() {
            let r = &case.request;
            let cap = r.shifts["n"].max(r.shifts["m"]) as f64;
            assert!(r.scalars["b"] < 1.0 - cap);
        }
        for case in sample_cases(ReductionId::F43Unity, 10, 1).unwrap() {
            let r = &case.request;
            assert!((r.scalars["b"] - r.scalars["c"]).abs() >= 0.05);
        }
    }

    #[test]
    fn trivial_and_corrupted_cases() {
        let req = ReductionRequest::new(ReductionId::F21Contiguous)
            .scalar("b", 0.7)
            .scalar("c", 1.4)
            .shift("n", 0)
            .at(0.3);
        let case = VerificationCase::new("t", req);
        let r = run_case(&case);
        assert!(r.pass && r.rel_err <= 1e-13, "{r:?}");

        let req = ReductionRequest::new(ReductionId::F12BesselI)
            .scalar("b", 1.5)
            .scalar("c", 2.0)
            .shift("n", 1)
            .at(0.4);
        let case = VerificationCase::new("b", req);
        assert!(run_case(&case).pass);

        let bad = run_case_with(&case, DEFAULT_MAX_TERMS, |r| {
            let mut v = reduce(r)?;
            v.value += 1e-3;
            Ok(v)
        });
        assert!(!bad.pass);
        assert_eq!(bad.failure_kind, Some(FailureKind::Mismatch));
    }

    #[test]
    fn oracle_cap_counts_as_skip() {
        let req = ReductionRequest::new(ReductionId::F21Contiguous)
            .scalar("b", 0.7)
            .scalar("c", 1.4)
            .shift("n", 2)
            .at(0.7);
        let case = VerificationCase::new("cap", req);
        let r = run_case_with(&case, 5, reduce);
        assert!(r.is_skipped() && !r.is_failure());
    }

    #[test]
    fn report_serializations() {
        let report = run_suite(&[ReductionId::F32P0], 4, 3).unwrap();
        assert_eq!(report.totals().cases, 4);
        let jsonl = report.to_jsonl();
        assert_eq!(jsonl.lines().count(), 5);
        let rows: Vec<CaseResult> = jsonl
            .lines()
            .take(4)
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(totals_of(&rows), report.totals());
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(report.to_table().contains("F32P0"));
    }
}
