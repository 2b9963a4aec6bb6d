//! Chebyshev series on `[-1, 1]`.

use std::f64::consts::PI;

/// Chebyshev–Lobatto points `cos(πi/n)`, `i = 0..=n`.
pub(crate) fn lobatto_points(n: usize) -> Vec<f64> {
    (0..=n).map(|i| (PI * i as f64 / n as f64).cos()).collect()
}

/// Coefficients `c_0..=c_n` of the interpolant through values sampled at
/// [`lobatto_points`], so that `f(x) ≈ Σ c_j T_j(x)`.
pub(crate) fn coefficients(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = 0.0;
        for (i, &v) in values.iter().enumerate() {
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * v * (PI * (i * j) as f64 / n as f64).cos();
        }
        let scale = if j == 0 || j == n { 1.0 } else { 2.0 };
        out.push(acc * scale / n as f64);
    }
    out
}

/// Clenshaw evaluation of `Σ c_j T_j(x)`.
pub(crate) fn eval(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &cj in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + cj;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c.first().copied().unwrap_or(0.0)
}

/// Antiderivative in `x`, one degree higher, vanishing at `x = -1`.
pub(crate) fn integrate(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    let at = |j: usize| c.get(j).copied().unwrap_or(0.0);
    let mut out = vec![0.0; n + 1];
    for j in 1..=n {
        let lower = if j == 1 { 2.0 * at(0) } else { at(j - 1) };
        out[j] = (lower - at(j + 1)) / (2.0 * j as f64);
    }
    // T_j(-1) = (-1)^j
    let at_minus_one: f64 = out
        .iter()
        .enumerate()
        .map(|(j, &v)| if j % 2 == 0 { v } else { -v })
        .sum();
    out[0] = -at_minus_one;
    out
}

/// `Σ c_j (-1)^j`, the series at `x = -1`.
pub(crate) fn at_minus_one(c: &[f64]) -> f64 {
    c.iter()
        .enumerate()
        .map(|(j, &v)| if j % 2 == 0 { v } else { -v })
        .sum()
}
