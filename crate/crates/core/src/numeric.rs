//! Small numerical helpers shared by every module.

/// Distance below which a parameter is treated as sitting on a pole
/// (a non-positive integer).
pub const POLE_TOL: f64 = 1e-12;

/// If `x` lies within `tol` of a non-positive integer `-m`, returns `m`.
pub fn nonpositive_integer_near(x: f64, tol: f64) -> Option<u64> {
    if !x.is_finite() || x > tol {
        return None;
    }
    let r = x.round();
    if (x - r).abs() <= tol && r <= 0.0 {
        Some((-r) as u64)
    } else {
        None
    }
}

/// Distance from `x` to the nearest non-positive integer.
pub fn pole_distance(x: f64) -> f64 {
    if x >= 0.0 {
        x
    } else {
        (x - x.round()).abs()
    }
}

/// Neumaier-compensated accumulator that also tracks the sum of absolute
/// values, which bounds the rounding error of the result.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs_sum: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    /// Rounding-error estimate: a few ulps of the largest magnitude summed.
    pub fn rounding_error(&self) -> f64 {
        4.0 * f64::EPSILON * self.abs_sum
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `(-1)^k` as a float.
pub fn parity_sign(k: u64) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Relative difference `|a - b| / |b|`, falling back to the absolute
/// difference when `b` is zero.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if b == 0.0 {
        d
    } else {
        d / b.abs()
    }
}
