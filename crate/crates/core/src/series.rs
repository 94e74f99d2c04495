//! Direct truncated summation of the generalized hypergeometric series
//!
//! ```text
//! pFq(a_1..a_p; b_1..b_q; z) = sum_k (a_1)_k ... (a_p)_k z^k / (k! (b_1)_k ... (b_q)_k)
//! ```
//!
//! This is the ground-truth oracle every reduction formula is checked
//! against. It only sums the series inside its domain of convergence; there
//! is no analytic continuation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{nonpositive_integer_near, CompensatedSum, POLE_TOL};

pub const DEFAULT_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_TERMS: u64 = 200_000;

/// Number of consecutive negligible terms required before stopping.
const SMALL_TERMS_TO_STOP: u32 = 3;

/// Upper/lower parameter lists plus the argument of one pFq value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PfqSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub z: f64,
}

impl PfqSpec {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>, z: f64) -> Self {
        Self { upper, lower, z }
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// `sum(lower) - sum(upper)`; a `p = q + 1` series converges at
    /// `z = 1` iff this is positive.
    pub fn unity_margin(&self) -> f64 {
        self.lower.iter().sum::<f64>() - self.upper.iter().sum::<f64>()
    }

    /// Index of the last non-zero term when some upper parameter is a
    /// non-positive integer.
    pub fn terminating_index(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter_map(|&a| nonpositive_integer_near(a, POLE_TOL))
            .min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesStatus {
    Converged,
    Terminated,
    MaxTermsReached,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub terms_used: u64,
    pub status: SeriesStatus,
}

impl EvalResult {
    pub fn is_reliable(&self) -> bool {
        self.status != SeriesStatus::MaxTermsReached
    }
}

/// Convergence margin `sum(lower) - sum(upper)` of a spec.
pub fn eval_pfq_unity_margin(spec: &PfqSpec) -> f64 {
    spec.unity_margin()
}

/// Evaluates the series with the default tolerance and term cap.
pub fn eval_pfq_default(spec: &PfqSpec) -> Result<EvalResult> {
    eval_pfq(spec, DEFAULT_MAX_TERMS, DEFAULT_TOL)
}

/// Evaluates a pFq by direct summation.
///
/// Terms are updated through the ratio
/// `t_{k+1} = t_k * prod(a_i + k) / (prod(b_j + k) (k + 1)) * z`. Summation
/// stops when
///
/// * an upper parameter is a non-positive integer `-N` and term `N` has
///   been added (`Terminated`, the sum is exact up to rounding);
/// * three consecutive terms are below `tol * |sum|`, all parameters have
///   become positive and the term ratio is below one (`Converged`);
/// * `max_terms` terms have been summed (`MaxTermsReached`).
///
/// At `z = 1` the terms only decay algebraically, like `k^-(1+s)` with `s`
/// the convergence margin. There the returned value carries the asymptotic
/// tail `t_K K^(1+s) (K + 1/2)^-s / s`, and the stopping test is applied to
/// the residual error of that corrected sum instead of the bare term.
pub fn eval_pfq(spec: &PfqSpec, max_terms: u64, tol: f64) -> Result<EvalResult> {
    if spec.upper.iter().chain(&spec.lower).any(|x| !x.is_finite()) || !spec.z.is_finite() {
        return Err(Error::Domain("non-finite series parameter".into()));
    }
    if max_terms == 0 || !(tol > 0.0) {
        return Err(Error::Domain("max_terms and tol must be positive".into()));
    }

    let terminating = spec.terminating_index();
    for &b in &spec.lower {
        if let Some(m) = nonpositive_integer_near(b, POLE_TOL) {
            // (b)_k vanishes from k = m + 1 on; the terms that are summed
            // stop at the terminating index.
            if terminating.is_none_or(|n| n > m) {
                return Err(Error::LowerPoleBeforeTermination { lower: b });
            }
        }
    }

    let (p, q, z) = (spec.p(), spec.q(), spec.z);
    if z == 0.0 {
        return Ok(EvalResult {
            value: 1.0,
            abs_err_est: 0.0,
            terms_used: 1,
            status: SeriesStatus::Converged,
        });
    }

    let mut unity_margin = None;
    if terminating.is_none() {
        if p > q + 1 {
            return Err(Error::DivergentSeries { p, q, z });
        }
        if p == q + 1 {
            if z.abs() > 1.0 {
                return Err(Error::DivergentSeries { p, q, z });
            }
            if z.abs() == 1.0 {
                let margin = spec.unity_margin();
                if margin <= 0.0 {
                    return Err(Error::NonConvergentAtUnity { margin });
                }
                if z == 1.0 {
                    unity_margin = Some(margin);
                }
            }
        }
    }

    match terminating {
        Some(n) => Ok(sum_terminating(spec, n, max_terms)),
        None => Ok(sum_infinite(spec, max_terms, tol, unity_margin)),
    }
}

fn term_ratio(spec: &PfqSpec, k: f64) -> f64 {
    let num: f64 = spec.upper.iter().map(|a| a + k).product();
    let den: f64 = spec.lower.iter().map(|b| b + k).product::<f64>() * (k + 1.0);
    num / den * spec.z
}

fn sum_terminating(spec: &PfqSpec, last: u64, max_terms: u64) -> EvalResult {
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    let mut k = 0u64;
    while k < last {
        if k + 1 >= max_terms {
            return EvalResult {
                value: acc.value(),
                abs_err_est: term.abs() + acc.rounding_error(),
                terms_used: k + 1,
                status: SeriesStatus::MaxTermsReached,
            };
        }
        term *= term_ratio(spec, k as f64);
        acc.add(term);
        k += 1;
    }
    EvalResult {
        value: acc.value(),
        abs_err_est: acc.rounding_error(),
        terms_used: last + 1,
        status: SeriesStatus::Terminated,
    }
}

/// Asymptotic model of the terms of a `p = q + 1` series at `z = 1`:
/// `t_k ~ A k^(-sigma) (1 + e1/k + e2/k^2)` with `sigma = 1 + margin`,
/// the coefficients fitted to the expansion of `ln(t_{k+1}/t_k)`.
#[derive(Debug, Clone, Copy)]
struct UnityTail {
    sigma: f64,
    e1: f64,
    e2: f64,
}

impl UnityTail {
    fn new(spec: &PfqSpec, margin: f64) -> Self {
        let power = |m: i32| {
            spec.upper.iter().map(|a| a.powi(m)).sum::<f64>()
                - spec.lower.iter().map(|b| b.powi(m)).sum::<f64>()
                - 1.0
        };
        let sigma = 1.0 + margin;
        let g1 = 0.5 * (sigma + power(2));
        let g2 = 0.5 * (g1 - sigma / 3.0 - power(3) / 3.0);
        Self {
            sigma,
            e1: g1,
            e2: g2 + 0.5 * g1 * g1,
        }
    }

    /// `sum_{j>k} j^(-a)` by Euler-Maclaurin.
    fn zeta_tail(k: f64, a: f64) -> f64 {
        k.powf(1.0 - a) / (a - 1.0) - 0.5 * k.powf(-a) + a / 12.0 * k.powf(-a - 1.0)
    }

    /// Tail sum beyond index `k` given `t_k`, with an error estimate.
    fn tail(&self, term: f64, k: f64) -> (f64, f64) {
        let Self { sigma, e1, e2 } = *self;
        let amp = term * k.powf(sigma) / (1.0 + e1 / k + e2 / (k * k));
        let first = Self::zeta_tail(k, sigma) + e1 * Self::zeta_tail(k, sigma + 1.0);
        let second = e2 * Self::zeta_tail(k, sigma + 2.0);
        let tail = amp * (first + second);
        // The dropped terms are one order smaller than `second`; charging
        // the whole of `second` keeps the estimate honest at small `k`,
        // where the expansion is still rough.
        let err = (amp * second).abs() + (amp * k.powf(-sigma - 2.0)).abs();
        if tail.is_finite() && err.is_finite() {
            (tail, err)
        } else {
            (0.0, f64::INFINITY)
        }
    }
}

/// Bound on `sum_{j>k} |t_j|` given `t_k`, from the larger of the next
/// term ratio and its limit (`|z|` when `p = q + 1`, else 0). Past the
/// guard index the ratios approach that limit monotonically.
fn geometric_tail(spec: &PfqSpec, term: f64, k: u64) -> f64 {
    let limit = if spec.p() == spec.q() + 1 { spec.z.abs() } else { 0.0 };
    let rho = term_ratio(spec, k as f64).abs().max(limit);
    if rho < 1.0 {
        term.abs() * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    }
}

fn sum_infinite(
    spec: &PfqSpec,
    max_terms: u64,
    tol: f64,
    unity_margin: Option<f64>,
) -> EvalResult {
    // Beyond this index every a_i + k and b_j + k is positive, so the term
    // ratio no longer changes sign or passes through small values.
    let lowest = spec
        .upper
        .iter()
        .chain(&spec.lower)
        .fold(0.0f64, |m, &x| m.min(x));
    let guard = (-lowest).ceil() as u64 + 1;
    let model = unity_margin.map(|s| UnityTail::new(spec, s));

    let mut acc = CompensatedSum::new();
    let mut term = 1.0f64;
    acc.add(term);
    let mut small_run = 0u32;
    let mut k = 0u64;
    let mut ratio;

    loop {
        if k + 1 >= max_terms {
            let (tail, err) = match model {
                Some(m) if k > guard => m.tail(term, k as f64),
                _ => (0.0, geometric_tail(spec, term, k)),
            };
            return EvalResult {
                value: acc.value() + tail,
                abs_err_est: err + acc.rounding_error(),
                terms_used: k + 1,
                status: SeriesStatus::MaxTermsReached,
            };
        }
        ratio = term_ratio(spec, k as f64);
        term *= ratio;
        k += 1;
        acc.add(term);

        let negligible = match model {
            Some(m) => {
                let (tail, err) = m.tail(term, k as f64);
                err <= tol * (acc.value() + tail).abs()
            }
            None => term.abs() <= tol * acc.value().abs(),
        };
        small_run = if negligible { small_run + 1 } else { 0 };
        if small_run >= SMALL_TERMS_TO_STOP && k > guard && ratio.abs() < 1.0 {
            break;
        }
    }

    match model {
        Some(m) => {
            let (tail, err) = m.tail(term, k as f64);
            EvalResult {
                value: acc.value() + tail,
                abs_err_est: err + acc.rounding_error(),
                terms_used: k + 1,
                status: SeriesStatus::Converged,
            }
        }
        None => {
            EvalResult {
                value: acc.value(),
                abs_err_est: geometric_tail(spec, term, k) + acc.rounding_error(),
                terms_used: k + 1,
                status: SeriesStatus::Converged,
            }
        }
    }
}
