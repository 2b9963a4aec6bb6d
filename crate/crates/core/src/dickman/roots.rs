//! Threshold constants `θ1`, `θ2` as roots of
//!
//! ```text
//! f(θ) = θ - 4 ∫_{1/θ-1}^{1/θ} ρ(t)/t dt      (θ1)
//! g(θ) = θ - 4 ρ(1/θ)                         (θ2)
//! ```
//!
//! found by a bracketing solver that mixes secant and bisection steps and
//! never leaves the current bracket.

use serde::{Deserialize, Serialize};

use super::{DickmanError, DickmanTable};

/// Initial bracket for both thresholds.
pub const THRESHOLD_BRACKET: (f64, f64) = (0.2, 0.5);

/// Final bracket width.
pub const BRACKET_WIDTH: f64 = 1e-10;

const MAX_EVALUATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSolution {
    pub theta: f64,
    /// Function value at `theta`.
    pub residual: f64,
    /// Final bracket; `lo < theta < hi` and `hi - lo <= width`.
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

/// Root of `f` in `[lo, hi]` to bracket width `width`.
///
/// Regula falsi with the Illinois weighting, falling back to the midpoint
/// whenever a step shrinks the bracket by less than half. Once the secant
/// estimate sits within `width / 2` of the last point, a probe on the far
/// side of the estimate usually collapses the bracket in one evaluation.
pub fn solve_bracketed<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    width: f64,
) -> Result<ThresholdSolution, DickmanError>
where
    F: FnMut(f64) -> Result<f64, DickmanError>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    let mut evaluations = 2;
    if fa == 0.0 || fb == 0.0 {
        let root = if fa == 0.0 { a } else { b };
        return Ok(ThresholdSolution {
            theta: root,
            residual: 0.0,
            bracket: (root - width / 2.0, root + width / 2.0),
            evaluations,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(DickmanError::Bracketing {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    // weights on fa, fb for the Illinois modification
    let (mut wa, mut wb) = (1.0, 1.0);
    let mut last_side = 0i8;
    let mut force_bisect = false;
    while b - a > width && evaluations < MAX_EVALUATIONS {
        let before = b - a;
        let (ga, gb) = (wa * fa, wb * fb);
        let secant = b - gb * (b - a) / (gb - ga);
        let x = if force_bisect || !(secant > a && secant < b) {
            0.5 * (a + b)
        } else {
            secant
        };
        let fx = f(x)?;
        evaluations += 1;
        if fx == 0.0 {
            return Ok(ThresholdSolution {
                theta: x,
                residual: 0.0,
                bracket: (x - width / 4.0, x + width / 4.0),
                evaluations,
            });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            wa = 1.0;
            if last_side == 1 {
                wb *= 0.5;
            }
            last_side = 1;
        } else {
            b = x;
            fb = fx;
            wb = 1.0;
            if last_side == -1 {
                wa *= 0.5;
            }
            last_side = -1;
        }
        if b - a > width {
            let estimate = b - fb * (b - a) / (fb - fa);
            if (estimate - x).abs() < 0.5 * width {
                let step = if estimate >= x { width } else { -width };
                let probe = (estimate + 0.5 * step).clamp(a, b);
                if probe > a && probe < b {
                    let fp = f(probe)?;
                    evaluations += 1;
                    if fp.signum() == fa.signum() {
                        a = probe;
                        fa = fp;
                    } else {
                        b = probe;
                        fb = fp;
                    }
                    wa = 1.0;
                    wb = 1.0;
                    last_side = 0;
                }
            }
        }
        force_bisect = (b - a) > 0.5 * before;
    }

    // interpolate inside the final bracket; fall back to the midpoint
    let secant = b - fb * (b - a) / (fb - fa);
    let theta = if secant > a && secant < b { secant } else { 0.5 * (a + b) };
    let residual = f(theta)?;
    evaluations += 1;
    Ok(ThresholdSolution {
        theta,
        residual,
        bracket: (a, b),
        evaluations,
    })
}

/// `θ - 4 ∫_{1/θ-1}^{1/θ} ρ(t)/t dt`.
pub fn theta1_equation(table: &DickmanTable, theta: f64) -> Result<f64, DickmanError> {
    let u = 1.0 / theta;
    Ok(theta - 4.0 * table.rho_over_t_integral(u - 1.0, u)?)
}

/// `θ - 4 ρ(1/θ)`.
pub fn theta2_equation(table: &DickmanTable, theta: f64) -> Result<f64, DickmanError> {
    Ok(theta - 4.0 * table.rho(1.0 / theta)?)
}

fn check_coverage(table: &DickmanTable) -> Result<(), DickmanError> {
    let needed = 1.0 / THRESHOLD_BRACKET.0;
    if table.u_max() < needed {
        return Err(DickmanError::Domain(format!(
            "table reaches u = {}, threshold search needs {needed}",
            table.u_max()
        )));
    }
    Ok(())
}

pub fn solve_theta1(table: &DickmanTable) -> Result<ThresholdSolution, DickmanError> {
    check_coverage(table)?;
    let (lo, hi) = THRESHOLD_BRACKET;
    solve_bracketed(|t| theta1_equation(table, t), lo, hi, BRACKET_WIDTH)
}

pub fn solve_theta2(table: &DickmanTable) -> Result<ThresholdSolution, DickmanError> {
    check_coverage(table)?;
    let (lo, hi) = THRESHOLD_BRACKET;
    solve_bracketed(|t| theta2_equation(table, t), lo, hi, BRACKET_WIDTH)
}
