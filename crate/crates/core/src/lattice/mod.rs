//! Concrete lattice-gas models: SSEP/ASEP open chains and rings, the quantum
//! dot, the zero-range process, and the transport-coefficient catalogue.

mod ssep;
mod transport;
mod zrp;

pub use ssep::{
    boundary_symmetry_defect, occupation_moments, quantum_dot_generator, quantum_dot_scgf,
    ssep_correlations_exact, ssep_generator, ssep_steady_statistics, OccupationMoments,
    SsepGeometry, SsepParams,
};
pub use transport::{transport_catalogue, CatalogueModel, TransportModel};
pub use zrp::{zrp_canonical_partition_log, zrp_thermodynamics, ZrpModel, ZrpPoint};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("lattice of {l} sites exceeds the supported maximum {max}")]
    TooLarge { l: usize, max: usize },
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("correlation indices must satisfy 1 <= i < j (< k) <= L")]
    IndexOrder,
    #[error("density {rho} is outside the convergence region of the zero-range series")]
    OutsideConvergence { rho: f64 },
    #[error("unknown transport model `{0}`")]
    UnknownModel(String),
    #[error(transparent)]
    Markov(#[from] crate::markov::MarkovError),
}
