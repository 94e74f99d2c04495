//! Closed-form reduction formulas for generalized hypergeometric functions.
//!
//! Every formula is a catalog entry keyed by [`ReductionId`]. A
//! [`ReductionRequest`] names an entry together with its parameters;
//! [`reduce`] evaluates the closed form and [`lhs_spec`] builds the pFq it
//! claims to equal, so the two can be compared against the series oracle.
//!
//! The submodules hold the identity-level machinery ([`identity`]) and the
//! scalar lemmas used or implied by the catalog ([`lemmas`]).

mod formulas;
pub mod identity;
pub mod lemmas;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{EvalResult, PfqSpec};

pub use identity::{expand_main, reduce_corollary, with_contiguous_pair};
pub use lemmas::{
    bateman_next, f21_neg_unit_direct, h_derivative, half_minus_variant, pfp_polynomial_coeffs,
    pfp_top_divided_difference, psi_sum_alternating, psi_sum_closed, ratio_derivative,
    HalfMinusVariant,
};

/// Minimum separation between entries of an `a` list.
pub const DISTINCT_TOL: f64 = 1e-6;

macro_rules! reduction_ids {
    ($($name:ident),+ $(,)?) => {
        /// Identifier of one catalog formula.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum ReductionId {
            $($name),+
        }

        impl ReductionId {
            pub const ALL: &'static [ReductionId] = &[$(ReductionId::$name),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(ReductionId::$name => stringify!($name)),+
                }
            }
        }
    };
}

reduction_ids!(
    F32HalfBateman,
    F21HalfBateman,
    F21NegUnit,
    F32HalfPlusM,
    F32HalfMinusM,
    F32UnityJL,
    F43Unity,
    F32UnityBB,
    F43UnityNM,
    F01Bessel,
    F12BesselI,
    F23BesselI,
    F12BesselJ,
    F23BesselJ,
    F11IncGamma,
    F22IncGamma,
    F11Laguerre,
    F22Laguerre,
    F33Laguerre,
    Mp1FmIncBeta,
    Pp2Fp1IncBeta,
    Pp2Fp1Literature,
    F21Contiguous,
    Pp2Fp1Unity,
    Pp3Fp2H,
    Pp3Fp2IncBeta,
    Pp3Fp2Unity,
    F32P0,
);

impl fmt::Display for ReductionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Signature(format!("unknown reduction id `{s}`")))
    }
}

/// How an entry constrains the argument `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ZPolicy {
    /// The formula only holds at this argument.
    Fixed(f64),
    /// `z` is a free parameter within the stated range.
    Free,
}

/// Which default tolerances apply when comparing against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ToleranceClass {
    Interior,
    Unity,
}

impl ToleranceClass {
    /// `(tol_rel, tol_abs)`.
    pub fn tolerances(self) -> (f64, f64) {
        match self {
            ToleranceClass::Interior => (1e-9, 1e-12),
            ToleranceClass::Unity => (1e-6, 1e-9),
        }
    }

    pub fn for_z(z: f64) -> Self {
        if z == 1.0 {
            ToleranceClass::Unity
        } else {
            ToleranceClass::Interior
        }
    }
}

/// Static description of one catalog formula.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: ReductionId,
    /// Names of the real parameters.
    pub scalars: &'static [&'static str],
    /// Names of the non-negative integer shifts.
    pub shifts: &'static [&'static str],
    /// Whether the formula takes a list `a_1..a_p` of distinct parameters.
    pub takes_list: bool,
    pub z: ZPolicy,
    /// The pFq on the left-hand side, written out.
    pub lhs: &'static str,
    /// Domain constraints in words.
    pub constraints: &'static str,
    /// Short description of where the formula comes from.
    pub anchor: &'static str,
}

impl CatalogEntry {
    /// Human-readable parameter signature such as `a=[..] b c; n m; z`.
    pub fn signature(&self) -> String {
        let mut parts = Vec::new();
        let mut scalars = Vec::new();
        if self.takes_list {
            scalars.push("a=[a_1..a_p]".to_string());
        }
        scalars.extend(self.scalars.iter().map(|s| s.to_string()));
        parts.push(scalars.join(" "));
        if !self.shifts.is_empty() {
            parts.push(self.shifts.join(" "));
        }
        parts.push(match self.z {
            ZPolicy::Fixed(z) => format!("z={z}"),
            ZPolicy::Free => "z".to_string(),
        });
        parts.join("; ")
    }

    pub fn tolerance_class(&self) -> ToleranceClass {
        match self.z {
            ZPolicy::Fixed(z) => ToleranceClass::for_z(z),
            ZPolicy::Free => ToleranceClass::Interior,
        }
    }
}

const HALF: ZPolicy = ZPolicy::Fixed(0.5);
const ONE: ZPolicy = ZPolicy::Fixed(1.0);

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: ReductionId::F32HalfBateman,
        scalars: &["a", "c"],
        shifts: &["n"],
        takes_list: false,
        z: HALF,
        lhs: "3F2(a, a, c+n; a+1, c; 1/2)",
        constraints: "a, a+1, c off the poles",
        anchor: "3F2 at one half as a binomial sum of Bateman G values",
    },
    CatalogEntry {
        id: ReductionId::F21HalfBateman,
        scalars: &["a"],
        shifts: &["n"],
        takes_list: false,
        z: HALF,
        lhs: "2F1(a, a+n; a+1; 1/2)",
        constraints: "a off the poles",
        anchor: "c = a collapse of the one-half Bateman reduction",
    },
    CatalogEntry {
        id: ReductionId::F21NegUnit,
        scalars: &["a"],
        shifts: &["n"],
        takes_list: false,
        z: ZPolicy::Fixed(-1.0),
        lhs: "2F1(-n, a; a+1; -1)",
        constraints: "a, a+1, ..., a+n+1 off the poles",
        anchor: "terminating 2F1 at minus one via Bateman G, source of the Bateman recursion",
    },
    CatalogEntry {
        id: ReductionId::F32HalfPlusM,
        scalars: &["a", "b", "c"],
        shifts: &["n", "m"],
        takes_list: false,
        z: HALF,
        lhs: "3F2(a, b+m, c+n; (a+b+1)/2, c; 1/2)",
        constraints: "(a+b+1)/2 and c off the poles",
        anchor: "3F2 at one half with upper b+m, built on a Gauss second-summation type 2F1",
    },
    CatalogEntry {
        id: ReductionId::F32HalfMinusM,
        scalars: &["a", "b", "c"],
        shifts: &["n", "m"],
        takes_list: false,
        z: HALF,
        lhs: "3F2(a, b-m, c+n; (a+b+1)/2, c; 1/2)",
        constraints: "(a+b+1)/2, c, (b-a+1)/2 and (b-a+1)/2-m off the poles",
        anchor: "3F2 at one half with upper b-m (oracle-validated sign and prefactor)",
    },
    CatalogEntry {
        id: ReductionId::F32UnityJL,
        scalars: &["a", "b"],
        shifts: &[],
        takes_list: false,
        z: ONE,
        lhs: "3F2(a, b, b; b+1, b+1; 1)",
        constraints: "2 - a > 0 (convergence at unity); b, 1-a, 1+b-a off the poles",
        anchor: "literature 3F2 at unity with a digamma difference",
    },
    CatalogEntry {
        id: ReductionId::F43Unity,
        scalars: &["a", "b", "c"],
        shifts: &["n"],
        takes_list: false,
        z: ONE,
        lhs: "4F3(a, b, b, c+n; b+1, b+1, c; 1)",
        constraints: "b != c; 2 - a - n > 0; 1+b-c and 1+b-c-n off the poles",
        anchor: "4F3 at unity with a repeated parameter, digamma form",
    },
    CatalogEntry {
        id: ReductionId::F32UnityBB,
        scalars: &["a", "b"],
        shifts: &["n"],
        takes_list: false,
        z: ONE,
        lhs: "3F2(a, b, b+n; b+1, b+1; 1)",
        constraints: "n >= 1; 2 - a - n > 0",
        anchor: "b = c limit of the digamma 4F3, a pure beta-function value",
    },
    CatalogEntry {
        id: ReductionId::F43UnityNM,
        scalars: &["a", "b", "c"],
        shifts: &["n", "m"],
        takes_list: false,
        z: ONE,
        lhs: "4F3(a, b, b+n, c+m; b+1, b+1, c; 1)",
        constraints: "n >= 1; 2 - a - n - m > 0",
        anchor: "4F3 at unity with two contiguous pairs, rational times beta",
    },
    CatalogEntry {
        id: ReductionId::F01Bessel,
        scalars: &["b"],
        shifts: &[],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "0F1(; b; z)",
        constraints: "z > 0; b off the poles",
        anchor: "0F1 as a modified Bessel function of the first kind",
    },
    CatalogEntry {
        id: ReductionId::F12BesselI,
        scalars: &["b", "c"],
        shifts: &["n"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "1F2(c+n; b, c; z)",
        constraints: "z > 0; b, c off the poles",
        anchor: "1F2 as a finite sum of the modified Bessel function of the first kind",
    },
    CatalogEntry {
        id: ReductionId::F23BesselI,
        scalars: &["b", "c", "d"],
        shifts: &["n", "m"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "2F3(c+n, d+m; b, c, d; z)",
        constraints: "z > 0; b, c, d off the poles",
        anchor: "2F3 as a double sum of modified Bessel functions",
    },
    CatalogEntry {
        id: ReductionId::F12BesselJ,
        scalars: &["b", "c"],
        shifts: &["n"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "1F2(c+n; b, c; z)",
        constraints: "z < 0; b, c off the poles",
        anchor: "1F2 at negative argument as a sum of ordinary Bessel functions",
    },
    CatalogEntry {
        id: ReductionId::F23BesselJ,
        scalars: &["b", "c", "d"],
        shifts: &["n", "m"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "2F3(c+n, d+m; b, c, d; z)",
        constraints: "z < 0; b, c, d off the poles",
        anchor: "2F3 at negative argument as a double sum of ordinary Bessel functions",
    },
    CatalogEntry {
        id: ReductionId::F11IncGamma,
        scalars: &["a"],
        shifts: &[],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "1F1(a; a+1; z)",
        constraints: "z < 0; a > 0",
        anchor: "1F1 with contiguous parameters as a lower incomplete gamma function",
    },
    CatalogEntry {
        id: ReductionId::F22IncGamma,
        scalars: &["a", "c"],
        shifts: &["n"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "2F2(a, c+n; a+1, c; z)",
        constraints: "z < 0; a > 0; c off the poles",
        anchor: "2F2 as a binomial sum of lower incomplete gamma functions",
    },
    CatalogEntry {
        id: ReductionId::F11Laguerre,
        scalars: &["a"],
        shifts: &["n"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "1F1(a+n; a; z)",
        constraints: "a off the poles",
        anchor: "1F1 with a contiguous pair as exp times a generalized Laguerre polynomial",
    },
    CatalogEntry {
        id: ReductionId::F22Laguerre,
        scalars: &["a", "b"],
        shifts: &["n", "m"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "2F2(a+n, b+m; a, b; z)",
        constraints: "a, b off the poles",
        anchor: "2F2 with two contiguous pairs via generalized Laguerre polynomials",
    },
    CatalogEntry {
        id: ReductionId::F33Laguerre,
        scalars: &["a", "b", "c"],
        shifts: &["n", "m", "k"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "3F3(a+n, b+m, c+k; a, b, c; z)",
        constraints: "a, b, c off the poles",
        anchor: "3F3 with three contiguous pairs via generalized Laguerre polynomials",
    },
    CatalogEntry {
        id: ReductionId::Mp1FmIncBeta,
        scalars: &["b"],
        shifts: &[],
        takes_list: true,
        z: ZPolicy::Free,
        lhs: "(p+1)Fp(a_1..a_p, b; a_1+1..a_p+1; z)",
        constraints: "0 < z < 1; a_i > 0 and pairwise distinct",
        anchor: "literature building block: (p+1)Fp with unit-shifted pairs as incomplete beta functions",
    },
    CatalogEntry {
        id: ReductionId::Pp2Fp1IncBeta,
        scalars: &["b", "c"],
        shifts: &["n"],
        takes_list: true,
        z: ZPolicy::Free,
        lhs: "(p+2)F(p+1)(a_1..a_p, b, c+n; a_1+1..a_p+1, c; z)",
        constraints: "0 < z <= 1; a_i > 0 and pairwise distinct; b < 1-n when z = 1",
        anchor: "(p+2)F(p+1) as a double sum of incomplete beta functions",
    },
    CatalogEntry {
        id: ReductionId::Pp2Fp1Literature,
        scalars: &["b", "c"],
        shifts: &["n"],
        takes_list: true,
        z: ZPolicy::Free,
        lhs: "(p+2)F(p+1)(a_1..a_p, b, c+n; a_1+1..a_p+1, c; z)",
        constraints: "0 < z < 1; a_i > 0 and pairwise distinct; a_i - j off the poles for j < n",
        anchor: "earlier literature form of the (p+2)F(p+1) reduction through the H^n operator",
    },
    CatalogEntry {
        id: ReductionId::F21Contiguous,
        scalars: &["b", "c"],
        shifts: &["n"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "2F1(b, c+n; c; z)",
        constraints: "|z| < 1; c off the poles",
        anchor: "p = 0 companion: 2F1 with a contiguous pair as a finite sum",
    },
    CatalogEntry {
        id: ReductionId::Pp2Fp1Unity,
        scalars: &["b", "c"],
        shifts: &["n"],
        takes_list: true,
        z: ONE,
        lhs: "(p+2)F(p+1)(a_1..a_p, b, c+n; a_1+1..a_p+1, c; 1)",
        constraints: "b < 1-n; p - b - n > 0; a_i > 0 and pairwise distinct",
        anchor: "unit-argument value of the (p+2)F(p+1) reduction",
    },
    CatalogEntry {
        id: ReductionId::Pp3Fp2H,
        scalars: &["b", "c", "d"],
        shifts: &["n", "m"],
        takes_list: true,
        z: ZPolicy::Free,
        lhs: "(p+3)F(p+2)(a_1..a_p, b, c+n, d+m; a_1+1..a_p+1, c, d; z)",
        constraints: "0 < z < 1; a_i > 0 and pairwise distinct; a_i + k - j off the poles",
        anchor: "(p+3)F(p+2) through derivatives of z^g B_z (H^m operator form)",
    },
    CatalogEntry {
        id: ReductionId::Pp3Fp2IncBeta,
        scalars: &["b", "c", "d"],
        shifts: &["n", "m"],
        takes_list: true,
        z: ZPolicy::Free,
        lhs: "(p+3)F(p+2)(a_1..a_p, b, c+n, d+m; a_1+1..a_p+1, c, d; z)",
        constraints: "0 < z < 1; a_i > 0 and pairwise distinct",
        anchor: "(p+3)F(p+2) as a triple sum of incomplete beta functions",
    },
    CatalogEntry {
        id: ReductionId::Pp3Fp2Unity,
        scalars: &["b", "c", "d"],
        shifts: &["n", "m"],
        takes_list: true,
        z: ONE,
        lhs: "(p+3)F(p+2)(a_1..a_p, b, c+n, d+m; a_1+1..a_p+1, c, d; 1)",
        constraints: "b < 1 - max(n, m); p - b - n - m > 0; a_i > 0 and pairwise distinct",
        anchor: "unit-argument value of the (p+3)F(p+2) reduction",
    },
    CatalogEntry {
        id: ReductionId::F32P0,
        scalars: &["b", "c", "d"],
        shifts: &["n", "m"],
        takes_list: false,
        z: ZPolicy::Free,
        lhs: "3F2(b, c+n, d+m; c, d; z)",
        constraints: "|z| < 1 (formula needs z != 1); c, d off the poles",
        anchor: "p = 0 case of the (p+3)F(p+2) reduction via a derivative lemma",
    },
];

/// The full catalog, one entry per [`ReductionId`], in declaration order.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn catalog_entry(id: ReductionId) -> &'static CatalogEntry {
    CATALOG
        .iter()
        .find(|e| e.id == id)
        .expect("every id has a catalog entry")
}

/// One named evaluation of a catalog formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionRequest {
    pub id: ReductionId,
    pub scalars: BTreeMap<String, f64>,
    pub shifts: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a_list: Vec<f64>,
    pub z: f64,
}

impl ReductionRequest {
    /// Starts a request; fixed-argument entries get their `z` filled in.
    pub fn new(id: ReductionId) -> Self {
        let z = match catalog_entry(id).z {
            ZPolicy::Fixed(z) => z,
            ZPolicy::Free => f64::NAN,
        };
        Self {
            id,
            scalars: BTreeMap::new(),
            shifts: BTreeMap::new(),
            a_list: Vec::new(),
            z,
        }
    }

    pub fn scalar(mut self, name: &str, v: f64) -> Self {
        self.scalars.insert(name.to_string(), v);
        self
    }

    pub fn shift(mut self, name: &str, v: u32) -> Self {
        self.shifts.insert(name.to_string(), v);
        self
    }

    pub fn list(mut self, a: &[f64]) -> Self {
        self.a_list = a.to_vec();
        self
    }

    pub fn at(mut self, z: f64) -> Self {
        self.z = z;
        self
    }

    pub fn entry(&self) -> &'static CatalogEntry {
        catalog_entry(self.id)
    }

    /// Checks names against the entry's signature and the argument against
    /// its z policy.
    pub fn validate_signature(&self) -> Result<()> {
        let e = self.entry();
        let id = self.id;
        for name in e.scalars {
            match self.scalars.get(*name) {
                None => return Err(Error::Signature(format!("{id}: missing parameter `{name}`"))),
                Some(v) if !v.is_finite() => {
                    return Err(Error::Signature(format!("{id}: parameter `{name}` is not finite")))
                }
                Some(_) => {}
            }
        }
        if let Some(extra) = self.scalars.keys().find(|k| !e.scalars.contains(&k.as_str())) {
            return Err(Error::Signature(format!("{id}: unexpected parameter `{extra}`")));
        }
        for name in e.shifts {
            if !self.shifts.contains_key(*name) {
                return Err(Error::Signature(format!("{id}: missing shift `{name}`")));
            }
        }
        if let Some(extra) = self.shifts.keys().find(|k| !e.shifts.contains(&k.as_str())) {
            return Err(Error::Signature(format!("{id}: unexpected shift `{extra}`")));
        }
        if e.takes_list {
            if self.a_list.is_empty() {
                return Err(Error::Signature(format!("{id}: missing list `a`")));
            }
            if self.a_list.iter().any(|v| !v.is_finite()) {
                return Err(Error::Signature(format!("{id}: list `a` has non-finite entries")));
            }
        } else if !self.a_list.is_empty() {
            return Err(Error::Signature(format!("{id}: unexpected list `a`")));
        }
        if !self.z.is_finite() {
            return Err(Error::Signature(format!("{id}: missing argument `z`")));
        }
        if let ZPolicy::Fixed(z) = e.z {
            if self.z != z {
                return Err(Error::Signature(format!(
                    "{id}: formula holds only at z = {z}, got {}",
                    self.z
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn s(&self, name: &str) -> f64 {
        self.scalars[name]
    }

    pub(crate) fn n(&self, name: &str) -> u32 {
        self.shifts[name]
    }
}

/// Evaluates the closed-form right-hand side of the requested formula.
///
/// The error estimate is the rounding bound `4 eps sum|terms|` of the
/// outermost sum; the status is always `Converged`.
pub fn reduce(req: &ReductionRequest) -> Result<EvalResult> {
    req.validate_signature()?;
    formulas::check_domain(req)?;
    formulas::evaluate(req)
}

/// The pFq that the requested formula reduces.
pub fn lhs_spec(req: &ReductionRequest) -> Result<PfqSpec> {
    req.validate_signature()?;
    formulas::check_domain(req)?;
    Ok(formulas::lhs(req))
}
