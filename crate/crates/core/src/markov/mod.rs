//! Finite-state continuous-time Markov chains: validated generators,
//! stationary states, entropy production, tilted generators, scaled cumulant
//! generating functions, Legendre transforms and symmetry checks.

mod cumulants;
mod entropy;
mod generator;
mod legendre;
mod onsager;
mod spectral;

pub use cumulants::{cumulant_rates, scgf_derivative_exact, scgf_derivatives};
pub use entropy::{entropy_production_rate, gc_symmetry_defect, with_entropy_observable};
pub use generator::{build_generator, stationary_distribution, MarkovGenerator, Transition};
pub use legendre::{rate_function, scgf_curve, CurveKind, RateCurve, RatePoint};
pub use onsager::{onsager_response_matrix, two_level_multi_bath, OnsagerResponse};
pub use spectral::{scgf, scgf_with_method, EigenMethod, SpectralResult, TiltedGenerator};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MarkovError {
    #[error("chain is not irreducible over its positive-rate transitions")]
    NonIrreducible,
    #[error("transition {from} -> {to} has nonpositive rate {rate}")]
    NegativeRate { from: usize, to: usize, rate: f64 },
    #[error("state index {index} out of range for {n_states} states")]
    IndexOutOfRange { index: usize, n_states: usize },
    #[error("self-loop on state {0} is not allowed (the diagonal is implicit)")]
    SelfLoop(usize),
    #[error("increment vector has length {got}, expected {expected} (one per observable)")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear solve for the stationary state is singular")]
    SingularSystem,
    #[error("transition {from} -> {to} has no reverse channel; entropy observable undefined")]
    IrreversibleTransition { from: usize, to: usize },
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("requested q = {q} outside the reachable current range ({min}, {max}) on the lambda window")]
    QOutOfRange { q: f64, min: f64, max: f64 },
    #[error("Onsager response needs at least two registered observables, found {0}")]
    NotMultiBath(usize),
    #[error("invalid generator document: {0}")]
    InvalidDocument(String),
}
