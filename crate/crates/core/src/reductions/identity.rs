//! The contiguous-pair expansion and its reduction corollary, evaluated as
//! finite sums of series values.

use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, POLE_TOL};
use crate::series::{eval_pfq_default, EvalResult, PfqSpec, SeriesStatus};
use crate::special::{binomial, pochhammer};

/// `Π (x_i)_k` over a parameter list.
fn poch_product(xs: &[f64], k: u32) -> Result<f64> {
    xs.iter().try_fold(1.0, |acc, &x| Ok(acc * pochhammer(x, k as i64)?))
}

fn shifted(xs: &[f64], k: u32) -> Vec<f64> {
    xs.iter().map(|x| x + k as f64).collect()
}

/// Sum of `coef_k * inner_k` with an error estimate that propagates the
/// inner series' own estimates.
struct WeightedSeriesSum {
    sum: CompensatedSum,
    err: f64,
    terms: u64,
    truncated: bool,
}

impl WeightedSeriesSum {
    fn new() -> Self {
        Self {
            sum: CompensatedSum::new(),
            err: 0.0,
            terms: 0,
            truncated: false,
        }
    }

    fn add(&mut self, coef: f64, inner: EvalResult) {
        self.sum.add(coef * inner.value);
        self.err += coef.abs() * inner.abs_err_est;
        self.terms += inner.terms_used;
        self.truncated |= inner.status == SeriesStatus::MaxTermsReached;
    }

    fn finish(self) -> EvalResult {
        EvalResult {
            value: self.sum.value(),
            abs_err_est: self.err + self.sum.rounding_error(),
            terms_used: self.terms,
            status: if self.truncated {
                SeriesStatus::MaxTermsReached
            } else {
                SeriesStatus::Converged
            },
        }
    }
}

/// Right-hand side of the main expansion: for any `c` and `n`,
///
/// ```text
/// pFq(a; b; z) = Σ_k C(n,k) Π(a)_k z^k / (Π(b)_k (c+n)_k)
///                  · (p+1)F(q+1)(a+k, c+k; b+k, c+n+k; z)
/// ```
///
/// with each inner function evaluated by the series oracle.
pub fn expand_main(spec: &PfqSpec, c: f64, n: u32) -> Result<EvalResult> {
    let z = spec.z;
    let mut acc = WeightedSeriesSum::new();
    for k in 0..=n {
        let den = poch_product(&spec.lower, k)? * pochhammer(c + n as f64, k as i64)?;
        if den == 0.0 {
            return Err(Error::DivisionByZero(format!(
                "lower Pochhammer product vanishes at k = {k}"
            )));
        }
        let coef = binomial(n as u64, k as u64) * poch_product(&spec.upper, k)? * z.powi(k as i32) / den;
        if coef == 0.0 {
            continue;
        }
        let mut upper = shifted(&spec.upper, k);
        upper.push(c + k as f64);
        let mut lower = shifted(&spec.lower, k);
        lower.push(c + (n + k) as f64);
        acc.add(coef, eval_pfq_default(&PfqSpec::new(upper, lower, z))?);
    }
    Ok(acc.finish())
}

/// Builds the `(p+1)F(q+1)` with the contiguous pair `c+n` (upper) and `c`
/// (lower) appended to a base spec.
pub fn with_contiguous_pair(base: &PfqSpec, c: f64, n: u32) -> PfqSpec {
    let mut upper = base.upper.clone();
    upper.push(c + n as f64);
    let mut lower = base.lower.clone();
    lower.push(c);
    PfqSpec::new(upper, lower, base.z)
}

/// Reduction of a pFq containing the pair `c+n` / `c`:
///
/// ```text
/// (p+1)F(q+1)(a, c+n; b, c; z) = Σ_k C(n,k) Π(a)_k z^k / (Π(b)_k (c)_k) · pFq(a+k; b+k; z)
/// ```
///
/// The pair is located in `spec_with_pair` and removed; the remaining
/// inner functions come from the series oracle.
pub fn reduce_corollary(spec_with_pair: &PfqSpec, c: f64, n: u32) -> Result<EvalResult> {
    let target = c + n as f64;
    let tol = |x: f64| POLE_TOL.max(1e-12 * x.abs());
    let ui = spec_with_pair
        .upper
        .iter()
        .position(|&u| (u - target).abs() <= tol(target))
        .ok_or_else(|| Error::Domain(format!("no upper parameter equals c + n = {target}")))?;
    let li = spec_with_pair
        .lower
        .iter()
        .position(|&l| (l - c).abs() <= tol(c))
        .ok_or_else(|| Error::Domain(format!("no lower parameter equals c = {c}")))?;
    let mut upper = spec_with_pair.upper.clone();
    upper.remove(ui);
    let mut lower = spec_with_pair.lower.clone();
    lower.remove(li);
    let z = spec_with_pair.z;

    let mut acc = WeightedSeriesSum::new();
    for k in 0..=n {
        let den = poch_product(&lower, k)? * pochhammer(c, k as i64)?;
        if den == 0.0 {
            return Err(Error::DivisionByZero(format!(
                "lower Pochhammer product vanishes at k = {k}"
            )));
        }
        let coef = binomial(n as u64, k as u64) * poch_product(&upper, k)? * z.powi(k as i32) / den;
        if coef == 0.0 {
            continue;
        }
        let inner = PfqSpec::new(shifted(&upper, k), shifted(&lower, k), z);
        acc.add(coef, eval_pfq_default(&inner)?);
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rel_diff;

    fn oracle(spec: &PfqSpec) -> f64 {
        eval_pfq_default(spec).unwrap().value
    }

    #[test]
    fn expand_main_with_zero_shift_is_the_series() {
        let spec = PfqSpec::new(vec![0.8, 1.1], vec![1.7], 0.4);
        let r = expand_main(&spec, 2.3, 0).unwrap();
        assert!(rel_diff(r.value, oracle(&spec)) < 1e-14);
    }

    #[test]
    fn expand_main_examples() {
        let spec = PfqSpec::new(vec![0.8], vec![1.7], 0.6);
        assert!(rel_diff(expand_main(&spec, 1.2, 2).unwrap().value, oracle(&spec)) < 1e-10);
        let spec = PfqSpec::new(vec![0.5, 1.5], vec![2.5], -0.3);
        assert!(rel_diff(expand_main(&spec, 0.9, 3).unwrap().value, oracle(&spec)) < 1e-10);
    }

    #[test]
    fn corollary_examples() {
        let base = PfqSpec::new(vec![0.7], vec![1.9], 0.5);
        let zero = reduce_corollary(&with_contiguous_pair(&base, 1.3, 0), 1.3, 0).unwrap();
        assert!(rel_diff(zero.value, oracle(&base)) < 1e-15);

        let c = 1.1;
        let full = with_contiguous_pair(&base, c, 1);
        assert!(rel_diff(reduce_corollary(&full, c, 1).unwrap().value, oracle(&full)) < 1e-11);

        let base = PfqSpec::new(vec![0.4, 1.6], vec![2.2], -0.6);
        let full = with_contiguous_pair(&base, 0.8, 2);
        assert!(rel_diff(reduce_corollary(&full, 0.8, 2).unwrap().value, oracle(&full)) < 1e-11);
    }

    #[test]
    fn corollary_requires_the_pair() {
        let spec = PfqSpec::new(vec![0.7, 2.0], vec![1.9, 1.5], 0.5);
        assert!(reduce_corollary(&spec, 1.5, 1).is_err());
    }
}
