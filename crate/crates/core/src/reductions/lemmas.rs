//! Scalar lemmas that the reductions rest on: finite digamma sums, the
//! Bateman G recursion, the H^n derivative operator, the derivative of
//! `z^α (1-z)^-β`, and the polynomial structure of `e^-z pFp`.

use crate::error::{Error, Result};
use crate::numeric::{parity_sign, CompensatedSum};
use crate::series::{eval_pfq_default, EvalResult, PfqSpec, SeriesStatus};
use crate::special::{
    bateman_g, binomial, digamma, gamma_ratio, incomplete_beta, pochhammer,
};

fn poch(x: f64, k: u32) -> Result<f64> {
    pochhammer(x, k as i64)
}

fn binom(n: u32, k: u32) -> f64 {
    binomial(n as u64, k as u64)
}

/// Closed form of `Σ_k C(n,k) (-1)^k (b)_k/(c)_k ψ(b+k)`:
/// `((c-b)_n/(c)_n) [ψ(1+b-c) + ψ(b) − ψ(1+b-c-n)]`.
pub fn psi_sum_closed(b: f64, c: f64, n: u32) -> Result<f64> {
    if b == c {
        return Err(Error::Domain("psi_sum_closed requires b != c".into()));
    }
    let ratio = poch(c - b, n)? / poch(c, n)?;
    if n == 0 {
        return digamma(b);
    }
    Ok(ratio * (digamma(1.0 + b - c)? + digamma(b)? - digamma(1.0 + b - c - n as f64)?))
}

/// Closed form of `Σ_k C(n,k) (-1)^k ψ(b+k) = −(n−1)!/(b)_n`, `n >= 1`.
pub fn psi_sum_alternating(b: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("psi_sum_alternating requires n >= 1".into()));
    }
    let bn = poch(b, n)?;
    if bn == 0.0 {
        return Err(Error::DivisionByZero(format!("(b)_n vanishes at b = {b}")));
    }
    let fact: f64 = (1..n).map(f64::from).product();
    Ok(-fact / bn)
}

/// Bateman G at `a+n+1` from the values at `a, ..., a+n`:
/// `Σ_k C(n,k) [1/(a+k) − (n+1)/(n+1−k) β(a+k)]`.
pub fn bateman_next(a: f64, n: u32) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for k in 0..=n {
        let x = a + k as f64;
        let w = (n + 1) as f64 / (n + 1 - k) as f64;
        acc.add(binom(n, k) * (1.0 / x - w * bateman_g(x)?));
    }
    Ok(acc.value())
}

/// `2F1(-n, a; a+1; -1)` summed directly as `a Σ_k C(n,k)/(a+k)`.
pub fn f21_neg_unit_direct(a: f64, n: u32) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for k in 0..=n {
        let x = a + k as f64;
        if x == 0.0 {
            return Err(Error::DivisionByZero(format!("a + {k} = 0")));
        }
        acc.add(binom(n, k) / x);
    }
    Ok(a * acc.value())
}

/// Terminating `2F1(-m, β; γ; z) = Σ_l C(m,l) (β)_l (−z)^l / (γ)_l`,
/// summed exactly.
pub(crate) fn terminating_2f1(m: u32, beta: f64, gamma: f64, z: f64) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for l in 0..=m {
        let g = poch(gamma, l)?;
        if g == 0.0 {
            return Err(Error::DivisionByZero(format!(
                "(γ)_{l} vanishes at γ = {gamma}"
            )));
        }
        acc.add(binom(m, l) * poch(beta, l)? * (-z).powi(l as i32) / g);
    }
    Ok(acc.value())
}

/// `2F1(a, b; c; z)` for `0 < z <= 1`, using Gauss's sum at unity.
fn f21_on_unit_interval(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z == 1.0 {
        // Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)); a pole in the denominator gives 0.
        return gamma_ratio(&[c, c - a - b], &[c - a, c - b]);
    }
    let r = eval_pfq_default(&PfqSpec::new(vec![a, b], vec![c], z))?;
    if r.status == SeriesStatus::MaxTermsReached {
        return Err(Error::NoConvergence {
            max_terms: r.terms_used,
        });
    }
    Ok(r.value)
}

/// `H^n(α, β, γ; z) = d^n/dz^n [z^γ B_z(α, β)]` in closed form:
///
/// ```text
/// (−1)^n z^(γ−n) { (−γ)_n B_z(α,β)
///     − z^α Σ_{k<n} C(n,k+1) (−γ)_{n−k−1} (1−α)_k 2F1(α, 1−β; α−k; z) }
/// ```
///
/// At `z = 1` with `β > n` the correction sum vanishes term by term.
pub fn h_derivative(n: u32, alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::Domain(format!("h_derivative: z = {z} outside (0, 1]")));
    }
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("h_derivative: alpha = {alpha} must be > 0")));
    }
    if z == 1.0 && !(beta > n as f64) {
        return Err(Error::Domain(format!(
            "h_derivative: beta = {beta} must exceed n = {n} at z = 1"
        )));
    }
    let mut acc = CompensatedSum::new();
    acc.add(poch(-gamma, n)? * incomplete_beta(z, alpha, beta)?);
    let za = z.powf(alpha);
    for k in 0..n {
        let w = poch(1.0 - alpha, k)?;
        if w == 0.0 {
            continue;
        }
        let f = f21_on_unit_interval(alpha, 1.0 - beta, alpha - k as f64, z)?;
        acc.add(-za * binom(n, k + 1) * poch(-gamma, n - k - 1)? * w * f);
    }
    Ok(parity_sign(n as u64) * z.powf(gamma - n as f64) * acc.value())
}

/// `d^m/dz^m [z^α / (1−z)^β]` for `0 < z < 1`, as
/// `z^(α−m) (1−z)^(−β−m) Σ_l C(m,l) (1−m+α−β)_l (−z)^l (α−m+1+l)_{m−l}`,
/// which is the terminating-2F1 closed form with the Pochhammer ratio
/// cancelled so that no pole can appear.
pub fn ratio_derivative(m: u32, alpha: f64, beta: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("ratio_derivative: z = {z} outside (0, 1)")));
    }
    let mf = m as f64;
    let mut acc = CompensatedSum::new();
    for l in 0..=m {
        let lf = l as f64;
        acc.add(
            binom(m, l)
                * poch(1.0 - mf + alpha - beta, l)?
                * (-z).powi(l as i32)
                * poch(alpha - mf + 1.0 + lf, m - l)?,
        );
    }
    Ok(z.powf(alpha - mf) * (1.0 - z).powf(-beta - mf) * acc.value())
}

/// The four readings of the one-half `3F2(a, b−m, c+n; (a+b+1)/2, c)`
/// reduction that arise from its two printed forms: whether the inner sum
/// carries `(−1)^s`, and whether the prefactor includes
/// `Γ((b−a+1)/2 − m)/Γ((b−a+1)/2)` or a ratio that cancels to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfMinusVariant {
    /// No sign factor, gamma-ratio prefactor.
    Stated,
    /// Sign factor, self-cancelling prefactor.
    Quoted,
    /// Sign factor and gamma-ratio prefactor.
    StatedSigned,
    /// No sign factor, self-cancelling prefactor.
    QuotedUnsigned,
}

impl HalfMinusVariant {
    pub const ALL: [HalfMinusVariant; 4] = [
        HalfMinusVariant::Stated,
        HalfMinusVariant::Quoted,
        HalfMinusVariant::StatedSigned,
        HalfMinusVariant::QuotedUnsigned,
    ];

    /// The reading that agrees with the series; the catalog uses it.
    pub const VALIDATED: HalfMinusVariant = HalfMinusVariant::StatedSigned;

    fn alternating(self) -> bool {
        matches!(self, HalfMinusVariant::Quoted | HalfMinusVariant::StatedSigned)
    }

    fn gamma_prefactor(self) -> bool {
        matches!(self, HalfMinusVariant::Stated | HalfMinusVariant::StatedSigned)
    }
}

/// Evaluates one reading of the one-half `3F2` with upper `b − m`.
pub fn half_minus_variant(
    variant: HalfMinusVariant,
    a: f64,
    b: f64,
    c: f64,
    n: u32,
    m: u32,
) -> Result<EvalResult> {
    let mf = m as f64;
    let h = (a + b + 1.0) / 2.0;
    let g = (b - a + 1.0) / 2.0;
    let mut acc = CompensatedSum::new();
    let mut terms = 0;
    for k in 0..=n {
        let outer = binom(n, k) * poch(b - mf, k)? / poch(c, k)?;
        for s in 0..=m {
            let (kf, sf) = (k as f64, s as f64);
            let mut num = vec![h, (a + kf + sf) / 2.0];
            let mut den = vec![a, (1.0 + b + kf + sf) / 2.0 - mf];
            if variant.gamma_prefactor() {
                num.push(g - mf);
                den.push(g);
            }
            let sign = if variant.alternating() { parity_sign(s as u64) } else { 1.0 };
            acc.add(outer * binom(m, s) * sign * gamma_ratio(&num, &den)?);
            terms += 1;
        }
    }
    let factor = 2f64.powf(a - 1.0);
    let value = factor * acc.value();
    if !value.is_finite() {
        return Err(Error::Overflow {
            function: "half_minus_variant",
            arg: a,
        });
    }
    Ok(EvalResult {
        value,
        abs_err_est: factor * acc.rounding_error(),
        terms_used: terms,
        status: SeriesStatus::Converged,
    })
}

fn check_pfp_inputs(a: &[f64], n: &[u32], nodes: &[f64]) -> Result<usize> {
    if a.is_empty() || a.len() > 3 || a.len() != n.len() {
        return Err(Error::Domain(format!(
            "pFp check needs 1..=3 parameters with matching shifts, got {} and {}",
            a.len(),
            n.len()
        )));
    }
    let deg: usize = n.iter().map(|&x| x as usize).sum();
    if nodes.len() != deg + 2 {
        return Err(Error::DegenerateNodes(format!(
            "expected {} nodes, got {}",
            deg + 2,
            nodes.len()
        )));
    }
    for i in 0..nodes.len() {
        if !nodes[i].is_finite() {
            return Err(Error::DegenerateNodes(format!("node {} is not finite", nodes[i])));
        }
        for j in 0..i {
            if (nodes[i] - nodes[j]).abs() <= 1e-12 * (1.0 + nodes[i].abs()) {
                return Err(Error::DegenerateNodes(format!(
                    "nodes {} and {} coincide",
                    nodes[j], nodes[i]
                )));
            }
        }
    }
    Ok(deg)
}

/// Samples `e^-z pFp(a+n; a; z)` at the nodes.
fn pfp_samples(a: &[f64], n: &[u32], nodes: &[f64]) -> Result<Vec<f64>> {
    let upper: Vec<f64> = a.iter().zip(n).map(|(&ai, &ni)| ai + ni as f64).collect();
    nodes
        .iter()
        .map(|&z| {
            let r = eval_pfq_default(&PfqSpec::new(upper.clone(), a.to_vec(), z))?;
            if r.status == SeriesStatus::MaxTermsReached {
                return Err(Error::NoConvergence {
                    max_terms: r.terms_used,
                });
            }
            Ok((-z).exp() * r.value)
        })
        .collect()
}

/// Newton divided-difference table, returning `f[x_0], f[x_0,x_1], ...`.
fn divided_differences(x: &[f64], f: &[f64]) -> Vec<f64> {
    let mut d = f.to_vec();
    for j in 1..x.len() {
        for i in (j..x.len()).rev() {
            d[i] = (d[i] - d[i - 1]) / (x[i] - x[i - j]);
        }
    }
    d
}

/// Fits `e^-z pFp(a+n; a; z)` through the first `Σn + 1` nodes and returns
/// the monomial coefficients `c_0, c_1, ..., c_{Σn}`. The polynomial
/// structure predicts an exact fit; the extra node is there for
/// [`pfp_top_divided_difference`].
pub fn pfp_polynomial_coeffs(a: &[f64], n: &[u32], nodes: &[f64]) -> Result<Vec<f64>> {
    let deg = check_pfp_inputs(a, n, nodes)?;
    let x = &nodes[..=deg];
    let f = pfp_samples(a, n, x)?;
    let d = divided_differences(x, &f);
    // Horner expansion of the Newton form into monomials.
    let mut coeffs = vec![d[deg]];
    for i in (0..deg).rev() {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= x[i] * c;
        }
        next[0] += d[i];
        coeffs = next;
    }
    Ok(coeffs)
}

/// The `(Σn + 1)`-th divided difference of `e^-z pFp(a+n; a; z)` over all
/// `Σn + 2` nodes, together with the largest sampled magnitude. For a
/// polynomial of degree `Σn` the divided difference vanishes.
pub fn pfp_top_divided_difference(a: &[f64], n: &[u32], nodes: &[f64]) -> Result<(f64, f64)> {
    check_pfp_inputs(a, n, nodes)?;
    let f = pfp_samples(a, n, nodes)?;
    let max = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let d = divided_differences(nodes, &f);
    Ok((*d.last().unwrap(), max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{bateman_g, beta_fn, laguerre};

    fn direct_psi_sum(b: f64, c: f64, n: u32) -> f64 {
        (0..=n)
            .map(|k| {
                binom(n, k) * parity_sign(k as u64) * poch(b, k).unwrap() / poch(c, k).unwrap()
                    * digamma(b + k as f64).unwrap()
            })
            .sum()
    }

    #[test]
    fn psi_sum_closed_examples() {
        let b = 0.8;
        assert!((psi_sum_closed(b, 2.0, 0).unwrap() - digamma(b).unwrap()).abs() < 1e-15);
        for (b, c, n, tol) in [(0.9, 2.3, 3, 1e-11), (1.4, 0.6, 5, 1e-10)] {
            let d = (psi_sum_closed(b, c, n).unwrap() - direct_psi_sum(b, c, n)).abs();
            assert!(d < tol, "{b} {c} {n}: {d}");
        }
    }

    #[test]
    fn psi_sum_alternating_examples() {
        assert!((psi_sum_alternating(1.0, 1).unwrap() + 1.0).abs() < 1e-15);
        assert!(psi_sum_alternating(1.0, 0).is_err());
        for (b, n) in [(0.7, 4), (2.2, 6)] {
            let direct: f64 = (0..=n)
                .map(|k| binom(n, k) * parity_sign(k as u64) * digamma(b + k as f64).unwrap())
                .sum();
            assert!((psi_sum_alternating(b, n).unwrap() - direct).abs() < 1e-11);
        }
    }

    #[test]
    fn bateman_next_examples() {
        let ln2 = std::f64::consts::LN_2;
        assert!((bateman_next(1.0, 0).unwrap() - (1.0 - ln2)).abs() < 1e-15);
        assert!((bateman_next(0.8, 3).unwrap() - bateman_g(4.8).unwrap()).abs() < 1e-10);
        assert!((bateman_next(2.5, 5).unwrap() - bateman_g(8.5).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn h_derivative_examples() {
        // n = 0: z^γ B_z(α, β)
        let (al, be, ga, z) = (1.3, 0.6, 0.4, 0.45);
        let v = h_derivative(0, al, be, ga, z).unwrap();
        assert!((v - z.powf(ga) * incomplete_beta(z, al, be).unwrap()).abs() < 1e-15);
        // unity: (−1)^n (−γ)_n B(α, β)
        let v = h_derivative(2, 1.3, 3.5, 0.4, 1.0).unwrap();
        let expect = (-0.4) * (-0.4 + 1.0) * beta_fn(1.3, 3.5).unwrap();
        assert!((v / expect - 1.0).abs() < 1e-13);
        assert!(h_derivative(3, 1.3, 2.5, 0.4, 1.0).is_err());
        // n = 1, α = β = 2, γ = 1: d/dz [z (z²/2 − z³/3)] = 3z²/2 − 4z³/3
        let z: f64 = 0.5;
        let v = h_derivative(1, 2.0, 2.0, 1.0, z).unwrap();
        assert!((v - (1.5 * z * z - 4.0 / 3.0 * z.powi(3))).abs() < 1e-14);
    }

    #[test]
    fn ratio_derivative_examples() {
        let (al, be, z) = (1.7, 0.9, 0.35);
        let v = ratio_derivative(0, al, be, z).unwrap();
        assert!((v - z.powf(al) / (1.0 - z).powf(be)).abs() < 1e-15);
        assert!((ratio_derivative(1, 2.0, 1.0, 0.5).unwrap() - 3.0).abs() < 1e-14);
        assert!(ratio_derivative(1, 2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn half_minus_variants_differ_only_when_m_positive() {
        let vals: Vec<f64> = HalfMinusVariant::ALL
            .iter()
            .map(|&v| half_minus_variant(v, 0.7, 1.3, 1.9, 2, 0).unwrap().value)
            .collect();
        for w in vals.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn pfp_coefficients() {
        let c = pfp_polynomial_coeffs(&[1.0], &[1], &[-0.5, 0.2, 0.7]).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - 1.0).abs() < 1e-12);

        // e^-z 1F1(a+2; a; z) = (2!/(a)_2) L_2^(a-1)(-z)
        let a = 2.0;
        let nodes = [-1.0, -0.3, 0.4, 0.9];
        let c = pfp_polynomial_coeffs(&[a], &[2], &nodes).unwrap();
        let scale = 2.0 / (a * (a + 1.0));
        for &z in &[-0.8f64, 0.1, 0.6] {
            let poly: f64 = c.iter().enumerate().map(|(i, ci)| ci * z.powi(i as i32)).sum();
            assert!((poly - scale * laguerre(2, a - 1.0, -z)).abs() < 1e-11);
        }

        let nodes = [-1.0, -0.5, 0.0, 0.5, 1.0];
        let (dd, max) = pfp_top_divided_difference(&[1.3, 2.1], &[1, 2], &nodes).unwrap();
        assert!(dd.abs() <= 1e-8 * max);

        assert!(matches!(
            pfp_polynomial_coeffs(&[1.0], &[1], &[0.1, 0.1, 0.5]),
            Err(Error::DegenerateNodes(_))
        ));
        assert!(matches!(
            pfp_polynomial_coeffs(&[1.0], &[1], &[0.1, 0.5]),
            Err(Error::DegenerateNodes(_))
        ));
    }
}
