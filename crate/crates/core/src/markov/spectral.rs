//! Tilted generators and their dominant eigenpair.
//!
//! Two independent routes are provided. The dense route runs the QR
//! algorithm (real Schur form) for the dominant eigenvalue and polishes the
//! eigenvectors by inverse iteration. The iterative route is a shifted power
//! iteration on M + sI with s = max|diagonal| + 1, which makes the iteration
//! matrix elementwise nonnegative so Perron-Frobenius guarantees convergence
//! to a positive eigenpair.

use super::{MarkovError, MarkovGenerator};
use nalgebra::{DMatrix, DVector};

/// Generator with off-diagonal entries reweighted by exp(lambda . q); the
/// diagonal is untouched since q(C,C) = 0.
#[derive(Debug, Clone)]
pub struct TiltedGenerator<'a> {
    base: &'a MarkovGenerator,
    lambda: Vec<f64>,
}

impl<'a> TiltedGenerator<'a> {
    pub fn new(base: &'a MarkovGenerator, lambda: &[f64]) -> Result<Self, MarkovError> {
        if lambda.len() != base.observable_names().len() {
            return Err(MarkovError::DimensionMismatch {
                expected: base.observable_names().len(),
                got: lambda.len(),
            });
        }
        Ok(TiltedGenerator { base, lambda: lambda.to_vec() })
    }

    pub fn base(&self) -> &MarkovGenerator {
        self.base
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    fn weight(&self, increments: &[f64]) -> f64 {
        let dot: f64 = self.lambda.iter().zip(increments).map(|(l, q)| l * q).sum();
        dot.exp()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.base.n_states();
        let mut m = DMatrix::zeros(n, n);
        for t in self.base.transitions() {
            m[(t.to, t.from)] += t.rate * self.weight(&t.increments);
        }
        for (c, d) in self.base.diagonal().iter().enumerate() {
            m[(c, c)] = *d;
        }
        m
    }

    /// Derivative of the tilted matrix along `direction` in tilt space.
    pub fn matrix_derivative(&self, direction: &[f64]) -> DMatrix<f64> {
        let n = self.base.n_states();
        let mut m = DMatrix::zeros(n, n);
        for t in self.base.transitions() {
            let q: f64 = direction.iter().zip(&t.increments).map(|(d, q)| d * q).sum();
            m[(t.to, t.from)] += q * t.rate * self.weight(&t.increments);
        }
        m
    }

    /// y = M_lambda x without assembling the matrix.
    fn apply(&self, x: &DVector<f64>, y: &mut DVector<f64>) {
        for (c, d) in self.base.diagonal().iter().enumerate() {
            y[c] = d * x[c];
        }
        for t in self.base.transitions() {
            y[t.to] += t.rate * self.weight(&t.increments) * x[t.from];
        }
    }

    fn apply_transpose(&self, x: &DVector<f64>, y: &mut DVector<f64>) {
        for (c, d) in self.base.diagonal().iter().enumerate() {
            y[c] = d * x[c];
        }
        for t in self.base.transitions() {
            y[t.from] += t.rate * self.weight(&t.increments) * x[t.to];
        }
    }
}

/// Dominant eigenpair of a tilted generator. The left and right vectors are
/// strictly positive, normalized so that sum(R) = 1 and sum(L R) = 1.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub eigenvalue: f64,
    pub left_vector: DVector<f64>,
    pub right_vector: DVector<f64>,
    pub iterations: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    Dense,
    PowerIteration,
}

const DENSE_LIMIT: usize = 1024;
const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 500_000;

/// Largest-real-part eigenvalue with positive eigenvectors; dense solver up
/// to 1024 states, shifted power iteration beyond.
pub fn scgf(tilted: &TiltedGenerator) -> Result<SpectralResult, MarkovError> {
    let method = if tilted.base().n_states() <= DENSE_LIMIT {
        EigenMethod::Dense
    } else {
        EigenMethod::PowerIteration
    };
    scgf_with_method(tilted, method)
}

pub fn scgf_with_method(tilted: &TiltedGenerator, method: EigenMethod) -> Result<SpectralResult, MarkovError> {
    match method {
        EigenMethod::Dense => dense_dominant(tilted),
        EigenMethod::PowerIteration => power_dominant(tilted),
    }
}

fn finalize(
    tilted: &TiltedGenerator,
    mut left: DVector<f64>,
    mut right: DVector<f64>,
    iterations: usize,
) -> Result<SpectralResult, MarkovError> {
    let n = right.len();
    if right.iter().sum::<f64>() < 0.0 {
        right = -right;
    }
    if left.iter().sum::<f64>() < 0.0 {
        left = -left;
    }
    if right.iter().any(|&v| v <= 0.0) || left.iter().any(|&v| v <= 0.0) {
        return Err(MarkovError::NoConvergence { iterations, residual: f64::NAN });
    }
    right /= right.iter().sum::<f64>();
    let lr: f64 = left.dot(&right);
    left /= lr;
    // eigenvector-sandwich polish of the eigenvalue
    let mut mv = DVector::zeros(n);
    tilted.apply(&right, &mut mv);
    let eigenvalue = left.dot(&mv);
    let residual = (&mv - eigenvalue * &right).amax();
    Ok(SpectralResult { eigenvalue, left_vector: left, right_vector: right, iterations, residual })
}

fn dense_dominant(tilted: &TiltedGenerator) -> Result<SpectralResult, MarkovError> {
    let n = tilted.base().n_states();
    if n == 1 {
        let one = DVector::from_element(1, 1.0);
        return finalize(tilted, one.clone(), one, 0);
    }
    let m = tilted.matrix();
    let shift = tilted.base().diagonal().iter().fold(0.0f64, |a, d| a.max(d.abs())) + 1.0;
    let eigs = m.clone().complex_eigenvalues();
    let mu = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    // inverse iteration on the shifted nonnegative matrix B = M + shift I
    let scale = (mu.abs() + shift).max(1.0);
    let target = mu + 1e-9 * scale;
    let mut shifted = m.clone();
    for c in 0..n {
        shifted[(c, c)] -= target;
    }
    let lu = shifted.clone().lu();
    let lu_t = shifted.transpose().lu();
    let mut right = DVector::from_element(n, 1.0 / n as f64);
    let mut left = DVector::from_element(n, 1.0 / n as f64);
    let mut iterations = 0;
    for _ in 0..60 {
        iterations += 1;
        let mut r = lu.solve(&right).ok_or(MarkovError::SingularSystem)?;
        r /= r.amax().max(f64::MIN_POSITIVE);
        let mut l = lu_t.solve(&left).ok_or(MarkovError::SingularSystem)?;
        l /= l.amax().max(f64::MIN_POSITIVE);
        let mut mv = DVector::zeros(n);
        tilted.apply(&r, &mut mv);
        let mu_r = r.dot(&mv) / r.dot(&r);
        let resid = (&mv - mu_r * &r).amax();
        right = r;
        left = l;
        if resid <= 1e-13 * scale {
            break;
        }
    }
    finalize(tilted, left, right, iterations)
}

fn power_dominant(tilted: &TiltedGenerator) -> Result<SpectralResult, MarkovError> {
    let n = tilted.base().n_states();
    let shift = tilted.base().diagonal().iter().fold(0.0f64, |a, d| a.max(d.abs())) + 1.0;
    let mut right = DVector::from_element(n, 1.0 / n as f64);
    let mut left = DVector::from_element(n, 1.0 / n as f64);
    let mut buf = DVector::zeros(n);
    let mut iterations = 0;
    let mut prev = f64::INFINITY;
    for _ in 0..POWER_MAX_ITER {
        iterations += 1;
        tilted.apply(&right, &mut buf);
        buf.axpy(shift, &right, 1.0); // buf = (M + shift I) r
        let norm: f64 = buf.iter().sum();
        let est = norm - shift; // since sum(r) = 1 and est = sum(B r) - shift
        buf /= norm;
        std::mem::swap(&mut right, &mut buf);
        if (est - prev).abs() <= POWER_TOL * est.abs().max(1.0) {
            // confirm with the true residual before stopping
            tilted.apply(&right, &mut buf);
            let resid = (&buf - est * &right).amax();
            if resid <= 1e-11 * shift.max(1.0) {
                break;
            }
        }
        prev = est;
        if iterations == POWER_MAX_ITER {
            tilted.apply(&right, &mut buf);
            let resid = (&buf - est * &right).amax();
            return Err(MarkovError::NoConvergence { iterations, residual: resid });
        }
    }
    // left vector by the same iteration on the transpose
    for _ in 0..POWER_MAX_ITER {
        iterations += 1;
        tilted.apply_transpose(&left, &mut buf);
        buf.axpy(shift, &left, 1.0);
        let norm: f64 = buf.iter().sum();
        buf /= norm;
        let diff = (&buf - &left).amax();
        std::mem::swap(&mut left, &mut buf);
        if diff <= 1e-14 {
            break;
        }
    }
    finalize(tilted, left, right, iterations)
}
