//! Bracketing root finders for monotone inversions.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {flo:e}, f(hi) = {fhi:e}")]
    NotBracketed { lo: f64, hi: f64, flo: f64, fhi: f64 },
    #[error("bisection did not reach tolerance after {0} iterations")]
    NoConvergence(usize),
}

/// Bisection on a bracketing interval; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Result<f64, RootError> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NotBracketed { lo, hi, flo, fhi });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || (hi - lo).abs() <= xtol {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(RootError::NoConvergence(max_iter))
}

/// Grow `hi` geometrically until `f` changes sign, starting from [lo, hi0].
pub fn expand_bracket<F: Fn(f64) -> f64>(f: &F, lo: f64, hi0: f64, max_expand: usize) -> Option<(f64, f64)> {
    let flo = f(lo);
    let mut hi = hi0;
    for _ in 0..max_expand {
        if f(hi).signum() != flo.signum() {
            return Some((lo, hi));
        }
        hi = lo + (hi - lo) * 2.0;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let r = bisect(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100),
            Err(RootError::NotBracketed { .. })
        ));
    }
}
