use num_complex::Complex64;
use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MbError {
    #[error("pole of the gamma function at {at}")]
    Pole { at: Complex64 },

    #[error("overflow: log-magnitude {log_magnitude} exceeds the binary64 range")]
    Overflow { log_magnitude: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-admissible parameter: {0}")]
    NonAdmissible(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("no convergence after {iterations} iterations (last difference {last_difference:e})")]
    NoConvergence {
        iterations: usize,
        last_difference: f64,
    },

    #[error("integrand does not decay (rate up {rate_up}, rate down {rate_down})")]
    DivergentIntegrand { rate_up: f64, rate_down: f64 },

    #[error(
        "cannot separate pole families (left max {left_max}, right min {right_min}): {detail}"
    )]
    SeparationImpossible {
        left_max: f64,
        right_min: f64,
        detail: String,
    },
}

impl MbError {
    /// Coarse classification used for exit codes and serialized error objects.
    pub fn kind(&self) -> ErrorKind {
        match self {
            MbError::Pole { .. }
            | MbError::Domain(_)
            | MbError::NonAdmissible(_)
            | MbError::Degenerate(_)
            | MbError::SeparationImpossible { .. } => ErrorKind::Domain,
            MbError::Overflow { .. }
            | MbError::NoConvergence { .. }
            | MbError::DivergentIntegrand { .. } => ErrorKind::Numerical,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MbError::Pole { .. } => "pole",
            MbError::Overflow { .. } => "overflow",
            MbError::Domain(_) => "domain",
            MbError::NonAdmissible(_) => "non_admissible",
            MbError::Degenerate(_) => "degenerate",
            MbError::NoConvergence { .. } => "no_convergence",
            MbError::DivergentIntegrand { .. } => "divergent_integrand",
            MbError::SeparationImpossible { .. } => "separation_impossible",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: outside the domain, at a pole, or not admissible.
    Domain,
    /// The numerics failed on otherwise valid input.
    Numerical,
}

pub type Result<T> = std::result::Result<T, MbError>;
