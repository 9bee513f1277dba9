//! Cumulant rates of counting observables from derivatives of the SCGF.
//!
//! The first derivative is exact: mu'(lambda) = L (dM/dlambda) R with the
//! normalization L.R = 1 (first-order perturbation identity). Orders 2-4 use
//! Richardson-extrapolated central differences of mu' with base step 1e-3.

use super::{scgf, MarkovError, MarkovGenerator, TiltedGenerator};

const FD_STEP: f64 = 1e-3;

/// Exact directional derivative of mu at tilt `lambda` along `direction`.
pub fn scgf_derivative_exact(
    gen: &MarkovGenerator,
    lambda: &[f64],
    direction: &[f64],
) -> Result<f64, MarkovError> {
    let tilted = TiltedGenerator::new(gen, lambda)?;
    if direction.len() != lambda.len() {
        return Err(MarkovError::DimensionMismatch { expected: lambda.len(), got: direction.len() });
    }
    let r = scgf(&tilted)?;
    let dm = tilted.matrix_derivative(direction);
    Ok(r.left_vector.dot(&(&dm * &r.right_vector)))
}

/// Derivatives of t -> mu(lambda0 + t * direction) at t = 0, up to `order`
/// (1 <= order <= 4). Index k of the result holds the (k+1)-th derivative,
/// i.e. the (k+1)-th cumulant rate when lambda0 = 0.
pub fn scgf_derivatives(
    gen: &MarkovGenerator,
    lambda0: &[f64],
    direction: &[f64],
    order: usize,
) -> Result<Vec<f64>, MarkovError> {
    assert!((1..=4).contains(&order), "order must be in 1..=4");
    let phi_prime = |t: f64| -> Result<f64, MarkovError> {
        let lambda: Vec<f64> =
            lambda0.iter().zip(direction).map(|(l0, d)| l0 + t * d).collect();
        scgf_derivative_exact(gen, &lambda, direction)
    };
    let mut out = vec![phi_prime(0.0)?];
    if order >= 2 {
        let d = |h: f64| -> Result<f64, MarkovError> {
            Ok((phi_prime(h)? - phi_prime(-h)?) / (2.0 * h))
        };
        out.push(richardson(d(FD_STEP)?, d(FD_STEP / 2.0)?));
    }
    if order >= 3 {
        let p0 = out[0];
        let s = |h: f64| -> Result<f64, MarkovError> {
            Ok((phi_prime(h)? - 2.0 * p0 + phi_prime(-h)?) / (h * h))
        };
        out.push(richardson(s(FD_STEP)?, s(FD_STEP / 2.0)?));
    }
    if order >= 4 {
        let t3 = |h: f64| -> Result<f64, MarkovError> {
            Ok((phi_prime(2.0 * h)? - 2.0 * phi_prime(h)? + 2.0 * phi_prime(-h)?
                - phi_prime(-2.0 * h)?)
                / (2.0 * h * h * h))
        };
        out.push(richardson(t3(FD_STEP)?, t3(FD_STEP / 2.0)?));
    }
    Ok(out)
}

fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Cumulant rates (mean, variance, ...) of observable `obs` at zero tilt.
pub fn cumulant_rates(
    gen: &MarkovGenerator,
    obs: usize,
    order: usize,
) -> Result<Vec<f64>, MarkovError> {
    let n_obs = gen.observable_names().len();
    if obs >= n_obs {
        return Err(MarkovError::DimensionMismatch { expected: n_obs, got: obs + 1 });
    }
    let lambda0 = vec![0.0; n_obs];
    let mut dir = vec![0.0; n_obs];
    dir[obs] = 1.0;
    scgf_derivatives(gen, &lambda0, &dir, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{quantum_dot_generator, ssep_generator, SsepParams};

    #[test]
    fn quantum_dot_mean_current() {
        // mu'(0) = (alpha beta - gamma delta) / (alpha + beta + gamma + delta)
        let gen = quantum_dot_generator(1.0, 0.0, 1.0, 0.0).unwrap();
        let obs = gen.observable_index("left_flux").unwrap();
        let c = cumulant_rates(&gen, obs, 1).unwrap();
        assert!((c[0] - 0.5).abs() < 1e-12, "{}", c[0]);
    }

    #[test]
    fn detailed_balance_has_zero_mean_current() {
        let gen = quantum_dot_generator(1.0, 1.0, 1.0, 1.0).unwrap();
        let obs = gen.observable_index("left_flux").unwrap();
        let c = cumulant_rates(&gen, obs, 1).unwrap();
        assert!(c[0].abs() < 1e-12);
    }

    #[test]
    fn ssep_l4_mean_current_is_one_fifth() {
        let gen = ssep_generator(&SsepParams::open(4, [1.0, 0.0, 1.0, 0.0])).unwrap();
        let obs = gen.observable_index("left_flux").unwrap();
        let c = cumulant_rates(&gen, obs, 1).unwrap();
        assert!((c[0] - 0.2).abs() < 1e-11, "{}", c[0]);
    }

    #[test]
    fn derivatives_match_quantum_dot_closed_form() {
        // mu(l) = e^{l/2} - 1 for (1,0,1,0): derivatives at 0 are 1/2, 1/4, 1/8, 1/16
        let gen = quantum_dot_generator(1.0, 0.0, 1.0, 0.0).unwrap();
        let obs = gen.observable_index("left_flux").unwrap();
        let c = cumulant_rates(&gen, obs, 4).unwrap();
        for (k, expect) in [0.5, 0.25, 0.125, 0.0625].iter().enumerate() {
            assert!((c[k] - expect).abs() < 1e-8, "order {}: {} vs {}", k + 1, c[k], expect);
        }
    }
}
