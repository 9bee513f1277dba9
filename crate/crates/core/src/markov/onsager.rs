//! Onsager reciprocity from the two-parameter SCGF.

use super::{scgf_derivative_exact, MarkovError, MarkovGenerator};
use crate::markov::{build_generator, Transition};

/// Linear-response matrix M_ij = (1 / 2 k_B T^2) d^2 mu / dalpha_i dalpha_j
/// at alpha = 0, with k_B T = 1, for the first two registered observables.
#[derive(Debug, Clone)]
pub struct OnsagerResponse {
    pub matrix: [[f64; 2]; 2],
    /// |M_12 - M_21|
    pub symmetry_defect: f64,
}

pub fn onsager_response_matrix(gen: &MarkovGenerator) -> Result<OnsagerResponse, MarkovError> {
    onsager_response_for(gen, 0, 1)
}

/// Same, for an explicit pair of observable indices.
pub fn onsager_response_for(
    gen: &MarkovGenerator,
    obs_i: usize,
    obs_j: usize,
) -> Result<OnsagerResponse, MarkovError> {
    let n_obs = gen.observable_names().len();
    if n_obs < 2 {
        return Err(MarkovError::NotMultiBath(n_obs));
    }
    if obs_i >= n_obs || obs_j >= n_obs || obs_i == obs_j {
        return Err(MarkovError::DimensionMismatch { expected: n_obs, got: obs_i.max(obs_j) + 1 });
    }
    let h = 1e-3;
    // Hessian of mu from Richardson central differences of the exact gradient
    let hess = |a: usize, b: usize| -> Result<f64, MarkovError> {
        let grad_component = |alpha_b: f64| -> Result<f64, MarkovError> {
            let mut lambda = vec![0.0; n_obs];
            lambda[b] = alpha_b;
            let mut dir = vec![0.0; n_obs];
            dir[a] = 1.0;
            scgf_derivative_exact(gen, &lambda, &dir)
        };
        let d = |h: f64| -> Result<f64, MarkovError> {
            Ok((grad_component(h)? - grad_component(-h)?) / (2.0 * h))
        };
        Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
    };
    let m11 = 0.5 * hess(obs_i, obs_i)?;
    let m22 = 0.5 * hess(obs_j, obs_j)?;
    let m12 = 0.5 * hess(obs_i, obs_j)?;
    let m21 = 0.5 * hess(obs_j, obs_i)?;
    Ok(OnsagerResponse {
        matrix: [[m11, m12], [m21, m22]],
        symmetry_defect: (m12 - m21).abs(),
    })
}

/// Two-level system with energy gap `gap`, each bath exchanging the quantum
/// with Arrhenius rates exp(-gap / 2 T_i) up and exp(+gap / 2 T_i) down, so
/// every bath separately satisfies detailed balance at its own temperature.
/// Observables are the heats received from the first two baths.
pub fn two_level_multi_bath(gap: f64, temperatures: &[f64]) -> Result<MarkovGenerator, MarkovError> {
    let mut transitions = Vec::new();
    let n_obs = 2.min(temperatures.len());
    for (i, &t) in temperatures.iter().enumerate() {
        let mut up_inc = vec![0.0; n_obs];
        let mut down_inc = vec![0.0; n_obs];
        if i < n_obs {
            up_inc[i] = gap;
            down_inc[i] = -gap;
        }
        transitions.push(Transition {
            from: 0,
            to: 1,
            rate: (-gap / (2.0 * t)).exp(),
            increments: up_inc,
        });
        transitions.push(Transition {
            from: 1,
            to: 0,
            rate: (gap / (2.0 * t)).exp(),
            increments: down_inc,
        });
    }
    let names = (0..n_obs).map(|i| format!("heat_bath_{}", i + 1)).collect();
    build_generator(2, transitions, names)
}
