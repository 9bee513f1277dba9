//! Composite Simpson rules on uniform grids, including a tensor-product rule
//! for space-time action integrals.

/// Composite Simpson over `values` sampled on a uniform grid with spacing `h`.
/// The sample count must be odd (an even number of panels).
pub fn simpson_samples(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "simpson needs an odd sample count, got {n}");
    let mut sum = values[0] + values[n - 1];
    for (k, v) in values.iter().enumerate().take(n - 1).skip(1) {
        sum += if k % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

/// Composite Simpson of `f` over [a, b] with `n` panels (`n` even).
pub fn simpson_fn<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2 && n % 2 == 0);
    let h = (b - a) / n as f64;
    let values: Vec<f64> = (0..=n).map(|k| f(a + k as f64 * h)).collect();
    simpson_samples(&values, h)
}

/// Tensor-product Simpson over a (rows x cols) grid of samples with spacings
/// `hx` (across a row) and `hy` (down a column). Both dimensions must hold an
/// odd number of samples.
pub fn simpson_tensor(values: &[Vec<f64>], hx: f64, hy: f64) -> f64 {
    let rows: Vec<f64> = values.iter().map(|row| simpson_samples(row, hx)).collect();
    simpson_samples(&rows, hy)
}
