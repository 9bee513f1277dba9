//! Sampled rate curves and the Legendre transform of the SCGF.
//!
//! The transform exploits convexity: mu'(lambda) is monotone, so
//! I(q) = lambda* q - mu(lambda*) with mu'(lambda*) = q solved by bisection
//! on the exact eigenvector-sandwich derivative. No grid supremum is taken.

use super::{scgf, scgf_derivative_exact, MarkovError, MarkovGenerator, TiltedGenerator};
use crate::numerics::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Scgf,
    RateFunction,
}

#[derive(Debug, Clone)]
pub struct RatePoint {
    pub x: f64,
    pub y: f64,
    pub branch: Option<String>,
}

/// Ordered samples of mu(lambda) or I(q). SCGF curves are validated convex
/// up to tolerance (second differences >= -1e-9).
#[derive(Debug, Clone)]
pub struct RateCurve {
    pub kind: CurveKind,
    pub samples: Vec<RatePoint>,
}

impl RateCurve {
    pub fn new(kind: CurveKind, samples: Vec<RatePoint>) -> Result<Self, MarkovError> {
        for w in samples.windows(2) {
            if !(w[1].x > w[0].x) {
                return Err(MarkovError::InvalidDocument(
                    "curve abscissae must be strictly increasing".into(),
                ));
            }
        }
        if kind == CurveKind::Scgf {
            for w in samples.windows(3) {
                let h1 = w[1].x - w[0].x;
                let h2 = w[2].x - w[1].x;
                if (h1 - h2).abs() < 1e-9 * h1.max(h2) {
                    let second = w[2].y - 2.0 * w[1].y + w[0].y;
                    if second < -1e-9 {
                        return Err(MarkovError::InvalidDocument(format!(
                            "SCGF samples not convex at x = {} (second difference {second:e})",
                            w[1].x
                        )));
                    }
                }
            }
        }
        Ok(RateCurve { kind, samples })
    }
}

/// Sample mu(lambda) for one observable over a uniform lambda grid.
pub fn scgf_curve(
    gen: &MarkovGenerator,
    obs: usize,
    lambda_min: f64,
    lambda_max: f64,
    step: f64,
) -> Result<RateCurve, MarkovError> {
    let n_obs = gen.observable_names().len();
    let mut samples = Vec::new();
    let mut lambda = lambda_min;
    while lambda <= lambda_max + 1e-12 * step {
        let mut tilt = vec![0.0; n_obs];
        tilt[obs] = lambda;
        let mu = scgf(&TiltedGenerator::new(gen, &tilt)?)?.eigenvalue;
        samples.push(RatePoint { x: lambda, y: mu, branch: None });
        lambda += step;
    }
    RateCurve::new(CurveKind::Scgf, samples)
}

/// Legendre transform I(q) = sup_lambda (lambda q - mu(lambda)) for each
/// requested q, by monotone bisection of mu'(lambda) = q on the window.
pub fn rate_function(
    gen: &MarkovGenerator,
    obs: usize,
    qs: &[f64],
    lambda_window: (f64, f64),
) -> Result<RateCurve, MarkovError> {
    let n_obs = gen.observable_names().len();
    let tilt = |l: f64| {
        let mut v = vec![0.0; n_obs];
        v[obs] = l;
        v
    };
    let dir = {
        let mut v = vec![0.0; n_obs];
        v[obs] = 1.0;
        v
    };
    let (lo, hi) = lambda_window;
    let q_min = scgf_derivative_exact(gen, &tilt(lo), &dir)?;
    let q_max = scgf_derivative_exact(gen, &tilt(hi), &dir)?;
    let mut points: Vec<(f64, RatePoint)> = Vec::with_capacity(qs.len());
    for &q in qs {
        if q < q_min || q > q_max {
            return Err(MarkovError::QOutOfRange { q, min: q_min, max: q_max });
        }
        let lambda_star = bisect(
            |l| scgf_derivative_exact(gen, &tilt(l), &dir).unwrap_or(f64::NAN) - q,
            lo,
            hi,
            1e-13,
            200,
        )
        .map_err(|_| MarkovError::QOutOfRange { q, min: q_min, max: q_max })?;
        let mu = scgf(&TiltedGenerator::new(gen, &tilt(lambda_star))?)?.eigenvalue;
        points.push((q, RatePoint { x: q, y: lambda_star * q - mu, branch: None }));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    RateCurve::new(CurveKind::RateFunction, points.into_iter().map(|(_, p)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quantum_dot_generator;

    fn dot_gen() -> (MarkovGenerator, usize) {
        let gen = quantum_dot_generator(1.0, 0.0, 1.0, 0.0).unwrap();
        let obs = gen.observable_index("left_flux").unwrap();
        (gen, obs)
    }

    #[test]
    fn zero_at_typical_current() {
        let (gen, obs) = dot_gen();
        let curve = rate_function(&gen, obs, &[0.5], (-6.0, 6.0)).unwrap();
        assert!(curve.samples[0].y.abs() < 1e-10);
    }

    #[test]
    fn analytic_inversion_at_q_one() {
        // mu'(l) = e^{l/2}/2 = 1 at l* = 2 ln 2, I(1) = 2 ln 2 - 1
        let (gen, obs) = dot_gen();
        let curve = rate_function(&gen, obs, &[1.0], (-6.0, 6.0)).unwrap();
        let expect = 2.0 * 2.0f64.ln() - 1.0;
        assert!((curve.samples[0].y - expect).abs() < 1e-9, "{}", curve.samples[0].y);
    }

    #[test]
    fn q_out_of_window_is_reported() {
        let (gen, obs) = dot_gen();
        let r = rate_function(&gen, obs, &[50.0], (-2.0, 2.0));
        assert!(matches!(r, Err(MarkovError::QOutOfRange { .. })));
    }

    #[test]
    fn scgf_curve_is_convex_and_vanishes_at_zero() {
        let (gen, obs) = dot_gen();
        let curve = scgf_curve(&gen, obs, -2.0, 2.0, 0.1).unwrap();
        let at_zero = curve
            .samples
            .iter()
            .find(|p| p.x.abs() < 1e-9)
            .expect("grid contains lambda = 0");
        assert!(at_zero.y.abs() < 1e-12);
    }
}
