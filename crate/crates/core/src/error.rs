use thiserror::Error;

use crate::solver::Feasibility;

/// Errors produced by the exact algebra, the parametrizations and the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GionError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("interval endpoint {endpoint} is a root of the polynomial")]
    EndpointRoot { endpoint: String },

    #[error("no sign change on [{lo}, {hi}]")]
    Bracketing { lo: f64, hi: f64 },

    #[error("no convergence after {iterations} iterations, final bracket [{lo}, {hi}]")]
    Convergence { lo: f64, hi: f64, iterations: usize },

    #[error("prime {prime} divides a leading coefficient or a denominator")]
    BadPrime { prime: u64 },

    #[error("{name} = {value} lies outside the feasible range {range}")]
    Infeasible {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("negative radicand {value} in {context}")]
    NegativeRadicand { context: &'static str, value: f64 },

    #[error("no solution: {0}")]
    NoSolution(Feasibility),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, GionError>;
