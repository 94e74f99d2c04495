//! Oracles that share no code with the library: tanh-sinh quadrature,
//! Richardson-extrapolated finite differences and plain direct sums.
#![allow(dead_code)]

use hyperreduce::reductions::ReductionRequest;

/// `∫_a^b f` by double-exponential quadrature.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    quadrature::double_exponential::integrate(f, a, b, 1e-15).integral
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Central difference for the `n`-th derivative, O(h^2).
fn central(f: &impl Fn(f64) -> f64, x: f64, n: u32, h: f64) -> f64 {
    let mut s = 0.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * binomial(n, j) * f(x + (n as f64 / 2.0 - j as f64) * h);
    }
    s / h.powi(n as i32)
}

/// `n`-th derivative by central differences with three Richardson steps.
pub fn derivative(f: impl Fn(f64) -> f64, x: f64, n: u32, h: f64) -> f64 {
    if n == 0 {
        return f(x);
    }
    let mut table: Vec<f64> = (0..4).map(|i| central(&f, x, n, h / 2f64.powi(i))).collect();
    let mut factor = 4.0;
    for level in 1..4 {
        for i in (level..4).rev() {
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    table[3]
}

/// Rising factorial as a plain product.
pub fn rising(x: f64, k: u32) -> f64 {
    (0..k).map(|j| x + j as f64).product()
}

/// `Σ_{k<terms}` of the hypergeometric terms, no acceleration or tail.
pub fn pfq_direct(upper: &[f64], lower: &[f64], z: f64, terms: u32) -> f64 {
    let mut t = 1.0;
    let mut s = 1.0;
    for k in 0..terms {
        let kf = k as f64;
        let num: f64 = upper.iter().map(|a| a + kf).product();
        let den: f64 = lower.iter().map(|b| b + kf).product::<f64>() * (kf + 1.0);
        t *= num / den * z;
        s += t;
    }
    s
}

/// `Σ_k C(n,k) (-1)^k (b)_k/(c)_k ψ(b+k)` with `ψ` supplied.
pub fn psi_sum_direct(psi: impl Fn(f64) -> f64, b: f64, c: f64, n: u32) -> f64 {
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(n, k) * rising(b, k) / rising(c, k) * psi(b + k as f64)
        })
        .sum()
}

pub fn binom(n: u32, k: u32) -> f64 {
    binomial(n, k)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// A request with every named argument copied from `src` except the ones
/// overridden afterwards.
pub fn clone_as(src: &ReductionRequest, id: hyperreduce::reductions::ReductionId) -> ReductionRequest {
    let mut r = ReductionRequest::new(id);
    r.scalars = src.scalars.clone();
    r.shifts = src.shifts.clone();
    r.a_list = src.a_list.clone();
    r.z = src.z;
    r
}

use hyperreduce::numeric::pole_distance;
use hyperreduce::reductions::ReductionId as Id;
use hyperreduce::series::PfqSpec;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

fn off_poles(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    loop {
        let x = rng.random_range(lo..hi);
        if pole_distance(x) >= 0.05 {
            return x;
        }
    }
}

/// A random convergent `pFq` with `p, q <= 3`, `|z| <= 0.8`, plus a
/// contiguous-pair parameter `c` and shift `n <= 6`.
pub fn random_pair_case(rng: &mut SplitMix64) -> (PfqSpec, f64, u32) {
    let q = rng.random_range(0..=3usize);
    let p = rng.random_range(0..=(q + 1).min(3));
    let upper = (0..p).map(|_| rng.random_range(-2.5..4.0)).collect();
    let lower = (0..q).map(|_| off_poles(rng, 0.3, 4.0)).collect();
    let z = rng.random_range(-0.8..0.8);
    let c = off_poles(rng, 0.3, 4.0);
    (PfqSpec::new(upper, lower, z), c, rng.random_range(0..=6))
}

/// Pairs of requests for two independent closed forms of the same value.
pub fn cross_form_pairs(which: CrossForm, count: usize, seed: u64) -> Vec<(ReductionRequest, ReductionRequest)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pair = match which {
            CrossForm::HVersusIncBeta => {
                let p = rng.random_range(1..=3usize);
                let list = spaced_list(&mut rng, p);
                let h = ReductionRequest::new(Id::Pp3Fp2H)
                    .list(&list)
                    .scalar("b", off_poles(&mut rng, -2.5, 2.5))
                    .scalar("c", off_poles(&mut rng, 0.3, 4.0))
                    .scalar("d", off_poles(&mut rng, 0.3, 4.0))
                    .shift("n", rng.random_range(0..=4))
                    .shift("m", rng.random_range(0..=4))
                    .at(rng.random_range(0.05..0.9));
                // The H form evaluates Γ at a_l + k - j for j < m.
                let m = h.shifts["m"] as f64;
                if list.iter().any(|&a| (0..=h.shifts["n"]).any(|k| {
                    (0..m as u32).any(|j| pole_distance(a + k as f64 - j as f64) < 0.05)
                })) {
                    continue;
                }
                let ib = clone_as(&h, Id::Pp3Fp2IncBeta);
                (h, ib)
            }
            CrossForm::IncBetaAtUnity => {
                let p = rng.random_range(1..=3usize);
                let list = spaced_list(&mut rng, p);
                let n = rng.random_range(0..=5u32);
                let top = (1.0 - n as f64 - 0.05).min(p as f64 - n as f64 - 1.5);
                let unity = ReductionRequest::new(Id::Pp2Fp1Unity)
                    .list(&list)
                    .scalar("b", off_poles(&mut rng, top - 3.0, top))
                    .scalar("c", off_poles(&mut rng, 0.3, 4.0))
                    .shift("n", n);
                let ib = clone_as(&unity, Id::Pp2Fp1IncBeta);
                (ib, unity)
            }
            CrossForm::P0WithEqualParameters => {
                let b = off_poles(&mut rng, 0.3, 3.0);
                let m = rng.random_range(0..=5u32);
                let p0 = ReductionRequest::new(Id::F32P0)
                    .scalar("b", b)
                    .scalar("c", off_poles(&mut rng, 0.3, 4.0))
                    .scalar("d", b)
                    .shift("n", rng.random_range(0..=6))
                    .shift("m", m)
                    .at(rng.random_range(-0.8..0.8));
                let contiguous = ReductionRequest::new(Id::F21Contiguous)
                    .scalar("b", b + m as f64)
                    .scalar("c", p0.scalars["c"])
                    .shift("n", p0.shifts["n"])
                    .at(p0.z);
                (p0, contiguous)
            }
            CrossForm::UnityNmVersusList => {
                let (b, c) = (off_poles(&mut rng, 0.3, 4.0), off_poles(&mut rng, 0.3, 4.0));
                let m = rng.random_range(0..=4u32);
                let top = 0.5 - (1 + m) as f64;
                let a = rng.random_range(top - 3.0..top);
                if pole_distance(1.0 - a) < 0.05 {
                    continue;
                }
                let nm = ReductionRequest::new(Id::F43UnityNM)
                    .scalar("a", a)
                    .scalar("b", b)
                    .scalar("c", c)
                    .shift("n", 1)
                    .shift("m", m);
                let list = ReductionRequest::new(Id::Pp2Fp1Unity)
                    .list(&[b])
                    .scalar("b", a)
                    .scalar("c", c)
                    .shift("n", m);
                (nm, list)
            }
        };
        out.push(pair);
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub enum CrossForm {
    /// Pp3Fp2H and Pp3Fp2IncBeta on the same arguments.
    HVersusIncBeta,
    /// Pp2Fp1IncBeta at z = 1 and Pp2Fp1Unity.
    IncBetaAtUnity,
    /// F32P0 with d = b and F21Contiguous with b + m.
    P0WithEqualParameters,
    /// F43UnityNM with n = 1 and Pp2Fp1Unity with the single list entry b.
    UnityNmVersusList,
}

fn spaced_list(rng: &mut SplitMix64, p: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..p).map(|_| rng.random_range(0.2..4.0)).collect();
        let ok = (0..p).all(|i| (i + 1..p).all(|j| (v[i] - v[j]).abs() >= 0.25));
        if ok {
            return v;
        }
    }
}

/// `f^(n)(x)` from Cauchy's integral on a circle of radius `r`, by the
/// trapezoid rule. `f` must be analytic on the closed disc.
pub fn cauchy_derivative(
    f: impl Fn(num_complex::Complex64) -> num_complex::Complex64,
    x: f64,
    n: u32,
    r: f64,
) -> f64 {
    use num_complex::Complex64;
    const POINTS: usize = 128;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..POINTS {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / POINTS as f64;
        let w = Complex64::from_polar(1.0, theta);
        s += f(x + r * w) * w.powi(-(n as i32));
    }
    rising(1.0, n) * s.re / (POINTS as f64 * r.powi(n as i32))
}

/// [`psi_sum_direct`] with `ψ(b+k) = ψ(b) + Σ_{j<k} 1/(b+j)` and the
/// rational parts carried in double-double, so `psi(b)` enters once and the
/// large alternating terms cancel without losing digits.
pub fn psi_sum_direct_dd(psi_b: f64, b: f64, c: f64, n: u32) -> f64 {
    use twofloat::TwoFloat;
    let (b2, c2) = (TwoFloat::from(b), TwoFloat::from(c));
    let mut ratio = TwoFloat::from(1.0);
    let mut harmonic = TwoFloat::from(0.0);
    let mut weight = TwoFloat::from(0.0);
    let mut shifted = TwoFloat::from(0.0);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t = ratio * (sign * binomial(n, k));
        weight += t;
        shifted += t * harmonic;
        let j = TwoFloat::from(k as f64);
        ratio = ratio * (b2 + j) / (c2 + j);
        harmonic += TwoFloat::from(1.0) / (b2 + j);
    }
    f64::from(weight * psi_b + shifted)
}
