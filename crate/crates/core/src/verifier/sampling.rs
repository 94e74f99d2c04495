//! Per-entry sampling domains.
//!
//! Every entry draws its parameters from fixed ranges chosen so that gamma
//! and digamma arguments stay in a moderate range, all of them at least
//! [`POLE_GAP`] away from the poles, and unit-argument series keep a
//! convergence margin of at least [`MIN_UNITY_MARGIN`]. Draws that violate
//! a constraint are rejected and redrawn.

use rand::Rng;
use rand_xoshiro::SplitMix64;

use crate::numeric::pole_distance;
use crate::reductions::{lhs_spec, ReductionId as Id, ReductionRequest, ToleranceClass};
use crate::series::{SeriesStatus, DEFAULT_MAX_TERMS};

/// Minimum distance from any gamma/digamma pole.
pub const POLE_GAP: f64 = 0.05;
/// Minimum `sum(lower) - sum(upper)` for unit-argument cases.
pub const MIN_UNITY_MARGIN: f64 = 1.5;
/// Minimum spacing between entries of an `a` list.
pub const LIST_SPACING: f64 = 0.25;
/// Fraction of the comparison tolerance the oracle's own error estimate may
/// use. Draws where cancellation in the series eats more are redrawn.
pub const ORACLE_BUDGET: f64 = 0.01;

fn u(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

fn shift(rng: &mut SplitMix64, lo: u32, hi: u32) -> u32 {
    rng.random_range(lo..=hi)
}

fn a_list(rng: &mut SplitMix64, max_p: usize) -> Vec<f64> {
    let p = rng.random_range(1..=max_p);
    (0..p).map(|_| u(rng, 0.2, 4.0)).collect()
}

/// Draws one candidate request; it may still violate constraints.
pub(super) fn draw(id: Id, rng: &mut SplitMix64) -> ReductionRequest {
    let r = ReductionRequest::new(id);
    match id {
        Id::F32HalfBateman => r
            .scalar("a", u(rng, 0.2, 4.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 6)),
        Id::F21HalfBateman => r.scalar("a", u(rng, 0.2, 4.0)).shift("n", shift(rng, 0, 6)),
        Id::F21NegUnit => r.scalar("a", u(rng, 0.3, 4.0)).shift("n", shift(rng, 0, 6)),
        Id::F32HalfPlusM => r
            .scalar("a", u(rng, 0.2, 4.0))
            .scalar("b", u(rng, -1.5, 4.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 5))
            .shift("m", shift(rng, 0, 5)),
        Id::F32HalfMinusM => r
            .scalar("a", u(rng, 0.2, 4.0))
            .scalar("b", u(rng, -1.0, 5.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 5))
            .shift("m", shift(rng, 0, 5)),
        Id::F32UnityJL => r.scalar("a", u(rng, -3.0, 0.5)).scalar("b", u(rng, 0.3, 4.0)),
        Id::F43Unity => {
            let n = shift(rng, 0, 4);
            let top = 0.5 - n as f64;
            r.scalar("a", u(rng, top - 3.0, top))
                .scalar("b", u(rng, 0.3, 4.0))
                .scalar("c", u(rng, 0.3, 4.0))
                .shift("n", n)
        }
        Id::F32UnityBB => {
            let n = shift(rng, 1, 5);
            let top = 0.5 - n as f64;
            r.scalar("a", u(rng, top - 3.0, top))
                .scalar("b", u(rng, 0.3, 4.0))
                .shift("n", n)
        }
        Id::F43UnityNM => {
            let (n, m) = (shift(rng, 1, 4), shift(rng, 0, 4));
            let top = 0.5 - (n + m) as f64;
            r.scalar("a", u(rng, top - 3.0, top))
                .scalar("b", u(rng, 0.3, 4.0))
                .scalar("c", u(rng, 0.3, 4.0))
                .shift("n", n)
                .shift("m", m)
        }
        Id::F01Bessel => r.scalar("b", u(rng, 0.3, 6.0)).at(u(rng, 0.05, 10.0)),
        Id::F12BesselI | Id::F12BesselJ => {
            let z = u(rng, 0.05, if id == Id::F12BesselI { 10.0 } else { 8.0 });
            r.scalar("b", u(rng, 0.3, 6.0))
                .scalar("c", u(rng, 0.3, 4.0))
                .shift("n", shift(rng, 0, 6))
                .at(if id == Id::F12BesselI { z } else { -z })
        }
        Id::F23BesselI | Id::F23BesselJ => {
            let z = u(rng, 0.05, if id == Id::F23BesselI { 10.0 } else { 8.0 });
            r.scalar("b", u(rng, 0.3, 6.0))
                .scalar("c", u(rng, 0.3, 4.0))
                .scalar("d", u(rng, 0.3, 4.0))
                .shift("n", shift(rng, 0, 6))
                .shift("m", shift(rng, 0, 6))
                .at(if id == Id::F23BesselI { z } else { -z })
        }
        Id::F11IncGamma => r.scalar("a", u(rng, 0.2, 4.0)).at(-u(rng, 0.05, 8.0)),
        Id::F22IncGamma => r
            .scalar("a", u(rng, 0.2, 4.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 6))
            .at(-u(rng, 0.05, 8.0)),
        Id::F11Laguerre => r
            .scalar("a", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 6))
            .at(u(rng, -3.0, 3.0)),
        Id::F22Laguerre => r
            .scalar("a", u(rng, 0.3, 4.0))
            .scalar("b", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 5))
            .shift("m", shift(rng, 0, 5))
            .at(u(rng, -3.0, 3.0)),
        Id::F33Laguerre => r
            .scalar("a", u(rng, 0.3, 4.0))
            .scalar("b", u(rng, 0.3, 4.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 4))
            .shift("m", shift(rng, 0, 4))
            .shift("k", shift(rng, 0, 4))
            .at(u(rng, -3.0, 3.0)),
        Id::Mp1FmIncBeta => r
            .list(&a_list(rng, 4))
            .scalar("b", u(rng, -2.5, 2.5))
            .at(u(rng, 0.05, 0.9)),
        Id::Pp2Fp1IncBeta => r
            .list(&a_list(rng, 4))
            .scalar("b", u(rng, -2.5, 2.5))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 6))
            .at(u(rng, 0.05, 0.9)),
        Id::Pp2Fp1Literature => r
            .list(&a_list(rng, 4))
            .scalar("b", u(rng, -2.5, 2.5))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 4))
            .at(u(rng, 0.05, 0.9)),
        Id::F21Contiguous => r
            .scalar("b", u(rng, -2.5, 3.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 6))
            .at(u(rng, -0.8, 0.8)),
        Id::Pp2Fp1Unity => {
            let list = a_list(rng, 4);
            let n = shift(rng, 0, 5);
            let p = list.len() as f64;
            let top = (1.0 - n as f64 - POLE_GAP).min(p - n as f64 - MIN_UNITY_MARGIN);
            r.list(&list)
                .scalar("b", u(rng, top - 3.0, top))
                .scalar("c", u(rng, 0.3, 4.0))
                .shift("n", n)
        }
        Id::Pp3Fp2H | Id::Pp3Fp2IncBeta => r
            .list(&a_list(rng, 3))
            .scalar("b", u(rng, -2.5, 2.5))
            .scalar("c", u(rng, 0.3, 4.0))
            .scalar("d", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 4))
            .shift("m", shift(rng, 0, 4))
            .at(u(rng, 0.05, 0.9)),
        Id::Pp3Fp2Unity => {
            let list = a_list(rng, 4);
            let (n, m) = (shift(rng, 0, 4), shift(rng, 0, 4));
            let p = list.len() as f64;
            let top = (1.0 - n.max(m) as f64 - POLE_GAP).min(p - (n + m) as f64 - MIN_UNITY_MARGIN);
            r.list(&list)
                .scalar("b", u(rng, top - 3.0, top))
                .scalar("c", u(rng, 0.3, 4.0))
                .scalar("d", u(rng, 0.3, 4.0))
                .shift("n", n)
                .shift("m", m)
        }
        Id::F32P0 => r
            .scalar("b", u(rng, -2.5, 3.0))
            .scalar("c", u(rng, 0.3, 4.0))
            .scalar("d", u(rng, 0.3, 4.0))
            .shift("n", shift(rng, 0, 5))
            .shift("m", shift(rng, 0, 5))
            .at(u(rng, -0.8, 0.8)),
    }
}

/// Gamma/digamma arguments and lower parameters that the closed form or
/// the oracle divides by or evaluates at, beyond the left-hand side's lower
/// parameters.
fn critical_arguments(req: &ReductionRequest) -> Vec<f64> {
    let s = |k: &str| req.scalars[k];
    let sh = |k: &str| req.shifts[k];
    let mut out = Vec::new();
    match req.id {
        Id::F32HalfPlusM => {
            let (a, b) = (s("a"), s("b"));
            for k in 0..=sh("n") {
                for j in 0..=sh("m") {
                    out.push((1.0 + b + (k + j) as f64) / 2.0);
                }
            }
            out.push(a);
        }
        Id::F32HalfMinusM => {
            let (a, b, m) = (s("a"), s("b"), sh("m") as f64);
            let g = (b - a + 1.0) / 2.0;
            out.extend([a, g, g - m]);
            for k in 0..=sh("n") {
                for j in 0..=sh("m") {
                    out.push((1.0 + b + (k + j) as f64) / 2.0 - m);
                }
            }
        }
        Id::F32UnityJL => {
            let (a, b) = (s("a"), s("b"));
            out.extend([1.0 - a, b, 1.0 + b - a]);
        }
        Id::F43Unity => {
            let (a, b, c) = (s("a"), s("b"), s("c"));
            out.extend([1.0 - a, b, 1.0 + b - a, 1.0 + b - c, 1.0 + b - c - sh("n") as f64]);
        }
        Id::F32UnityBB | Id::F43UnityNM => {
            out.extend([1.0 - s("a"), s("b")]);
        }
        Id::Pp2Fp1Literature => {
            for &al in &req.a_list {
                for j in 0..sh("n") {
                    out.push(al - j as f64);
                }
            }
        }
        Id::Pp3Fp2H => {
            for &al in &req.a_list {
                for k in 0..=sh("n") {
                    for j in 0..sh("m") {
                        out.push(al + k as f64 - j as f64);
                    }
                }
            }
        }
        Id::Pp2Fp1Unity | Id::Pp3Fp2Unity => {
            out.push(1.0 - s("b"));
        }
        _ => {}
    }
    out
}

/// Whether a drawn request lies inside the entry's sampling domain.
pub(super) fn admissible(req: &ReductionRequest) -> bool {
    let Ok(spec) = lhs_spec(req) else {
        return false;
    };
    if spec.lower.iter().any(|&b| pole_distance(b) < POLE_GAP) {
        return false;
    }
    if critical_arguments(req).iter().any(|&x| pole_distance(x) < POLE_GAP) {
        return false;
    }
    if spec.z == 1.0 && spec.unity_margin() < MIN_UNITY_MARGIN {
        return false;
    }
    let a = &req.a_list;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (a[i] - a[j]).abs() < LIST_SPACING {
                return false;
            }
        }
    }
    if req.id == Id::F43Unity && (req.scalars["b"] - req.scalars["c"]).abs() < POLE_GAP {
        return false;
    }
    oracle_well_conditioned(req)
}

fn oracle_well_conditioned(req: &ReductionRequest) -> bool {
    let Ok(r) = super::oracle(req, DEFAULT_MAX_TERMS) else {
        return false;
    };
    let (rel, abs) = ToleranceClass::for_z(req.z).tolerances();
    r.status != SeriesStatus::MaxTermsReached
        && r.value.is_finite()
        && r.abs_err_est <= ORACLE_BUDGET * (rel * r.value.abs()).max(abs)
}
