use thiserror::Error;

/// Errors raised by the special functions, the series oracle, the reduction
/// catalog and the verifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: pole at {arg}")]
    Pole { function: &'static str, arg: f64 },

    #[error("{function}: result overflows at {arg}")]
    Overflow { function: &'static str, arg: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("series diverges: {p}F{q} at z = {z}")]
    DivergentSeries { p: usize, q: usize, z: f64 },

    #[error("lower parameter {lower} is a pole reached before the series terminates")]
    LowerPoleBeforeTermination { lower: f64 },

    #[error("series does not converge at |z| = 1: convergence margin {margin} <= 0")]
    NonConvergentAtUnity { margin: f64 },

    #[error("series did not converge within {max_terms} terms")]
    NoConvergence { max_terms: u64 },

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("degenerate interpolation nodes: {0}")]
    DegenerateNodes(String),

    #[error("bad request signature: {0}")]
    Signature(String),

    #[error("could not sample an in-domain case for {id} after {attempts} attempts")]
    UnsatisfiableDomain { id: String, attempts: u32 },
}

impl Error {
    /// True when the error reports a violated precondition of the caller
    /// (wrong parameter names, constraint violation, coincident parameters)
    /// rather than a numerical failure.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Signature(_)
                | Error::DegenerateParameters(_)
                | Error::DegenerateNodes(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
