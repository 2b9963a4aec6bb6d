//! The Dickman function `ρ`, defined by `ρ(u) = 1` on `[0, 1]` and
//! `u ρ'(u) = -ρ(u - 1)` for `u > 1`.
//!
//! [`DickmanTable`] holds `ρ` on `[0, u_max]` as one Chebyshev series per
//! unit interval `[k, k+1]` in the shifted variable `s = u - k`. Piece `k` is
//! built from piece `k - 1` through the integrated form
//!
//! ```text
//! ρ(k + s) = ρ(k) - ∫_0^s ρ(k - 1 + σ) / (k + σ) dσ
//! ```
//!
//! by sampling the integrand at Chebyshev–Lobatto nodes, converting to a
//! Chebyshev series, and integrating that series term by term. The integrand
//! is analytic with its nearest singularity at `σ = -k`, so coefficients
//! decay at least like `(3 + 2√2)^{-j}` and degree 30 reaches rounding level.
//!
//! The table carries an error bound accumulated piece by piece from series
//! truncation, sampling, propagation of the previous piece's error and
//! floating-point rounding.

mod cheb;
pub mod io;
pub mod roots;

use gauss_quad::GaussLegendre;
use thiserror::Error;

pub use roots::{solve_bracketed, solve_theta1, solve_theta2, ThresholdSolution};

pub const DEFAULT_U_MAX: f64 = 10.0;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_DEGREE: usize = 30;

/// Gauss–Legendre nodes per unit piece in [`DickmanTable::rho_over_t_integral`].
const QUADRATURE_NODES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DickmanError {
    #[error("{0}")]
    Domain(String),
    #[error("requested tolerance {requested:e} not reachable at degree {degree}; achieved {achieved:e}")]
    Precision {
        requested: f64,
        achieved: f64,
        degree: usize,
    },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracketing { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
}

/// Piecewise-Chebyshev representation of `ρ` on `[0, u_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DickmanTable {
    u_max: f64,
    degree: usize,
    /// `pieces[k]` holds the series for `[k, k+1]`; `pieces[0]` is `[1.0]`
    /// padded with zeros.
    pieces: Vec<Vec<f64>>,
    tol: f64,
    error_bound: f64,
}

impl DickmanTable {
    /// Builds with the default degree.
    pub fn build(u_max: f64, tol: f64) -> Result<Self, DickmanError> {
        Self::build_with_degree(u_max, tol, DEFAULT_DEGREE)
    }

    pub fn build_with_degree(u_max: f64, tol: f64, degree: usize) -> Result<Self, DickmanError> {
        if !(u_max >= 2.0 && u_max.is_finite()) {
            return Err(DickmanError::Domain(format!("u_max must be >= 2, got {u_max}")));
        }
        if !(1e-15..=1e-6).contains(&tol) {
            return Err(DickmanError::Domain(format!(
                "tol must lie in [1e-15, 1e-6], got {tol:e}"
            )));
        }
        if degree < 2 {
            return Err(DickmanError::Domain("degree must be at least 2".into()));
        }
        let piece_count = u_max.ceil() as usize;
        let samples = 2 * degree.max(16);
        let nodes = cheb::lobatto_points(samples);

        let mut constant = vec![0.0; degree + 1];
        constant[0] = 1.0;
        let mut pieces = vec![constant];
        let mut bound = 0.0f64;

        for k in 1..piece_count {
            let prev = &pieces[k - 1];
            let rho_k = cheb::eval(prev, 1.0);
            let kf = k as f64;
            // integrand ρ(k - 1 + σ) / (k + σ) at σ = (x + 1) / 2
            let values: Vec<f64> = nodes
                .iter()
                .map(|&x| cheb::eval(prev, x) / (kf + 0.5 * (x + 1.0)))
                .collect();
            let f = cheb::coefficients(&values);
            let sampling = 2.0 * (f[samples - 1].abs() + f[samples].abs());

            let mut piece: Vec<f64> = cheb::integrate(&f).into_iter().map(|c| -0.5 * c).collect();
            piece[0] += rho_k;
            let truncation: f64 = piece[degree + 1..].iter().map(|c| c.abs()).sum();
            piece.truncate(degree + 1);
            // pin the left knot exactly to ρ(k)
            piece[0] += rho_k - cheb::at_minus_one(&piece);

            let rounding = 4.0 * (degree + 1) as f64 * f64::EPSILON
                * piece.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
            bound = bound * (1.0 + (1.0 + 1.0 / kf).ln()) + sampling + 2.0 * truncation + rounding;
            pieces.push(piece);
        }

        if bound > tol {
            return Err(DickmanError::Precision {
                requested: tol,
                achieved: bound,
                degree,
            });
        }
        Ok(Self {
            u_max,
            degree,
            pieces,
            tol,
            error_bound: bound,
        })
    }

    pub(crate) fn from_parts(
        u_max: f64,
        degree: usize,
        pieces: Vec<Vec<f64>>,
        tol: f64,
        error_bound: f64,
    ) -> Self {
        Self {
            u_max,
            degree,
            pieces,
            tol,
            error_bound,
        }
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Requested absolute tolerance; [`Self::rho`] is within it.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Accumulated absolute error bound actually achieved, `<= tol`.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    fn check_u(&self, u: f64) -> Result<(), DickmanError> {
        if !(0.0..=self.u_max).contains(&u) {
            return Err(DickmanError::Domain(format!(
                "u = {u} outside table range [0, {}]",
                self.u_max
            )));
        }
        Ok(())
    }

    /// `ρ(u)` for `0 <= u <= u_max`.
    pub fn rho(&self, u: f64) -> Result<f64, DickmanError> {
        self.check_u(u)?;
        Ok(self.rho_unchecked(u))
    }

    fn rho_unchecked(&self, u: f64) -> f64 {
        if u <= 1.0 {
            return 1.0;
        }
        let k = (u.floor() as usize).min(self.pieces.len() - 1);
        let s = u - k as f64;
        cheb::eval(&self.pieces[k], 2.0 * s - 1.0)
    }

    /// `∫_a^b ρ(t) / t dt` for `0 < a <= b <= u_max`.
    pub fn rho_over_t_integral(&self, a: f64, b: f64) -> Result<f64, DickmanError> {
        if !(a > 0.0) {
            return Err(DickmanError::Domain(format!(
                "lower limit must be positive, got {a}"
            )));
        }
        if !(a <= b) {
            return Err(DickmanError::Domain(format!("need a <= b, got a = {a}, b = {b}")));
        }
        self.check_u(b)?;
        let quad = GaussLegendre::new(QUADRATURE_NODES).expect("node count is valid");
        let mut total = 0.0;
        let mut lo = a;
        while lo < b {
            let hi = (lo.floor() + 1.0).min(b);
            total += if hi <= 1.0 {
                (hi / lo).ln()
            } else {
                quad.integrate(lo, hi, |t| self.rho_unchecked(t) / t)
            };
            lo = hi;
        }
        Ok(total)
    }

    /// `∫_a^b ρ(t) dt` for `0 <= a <= b <= u_max`.
    pub fn rho_integral(&self, a: f64, b: f64) -> Result<f64, DickmanError> {
        self.check_u(a)?;
        self.check_u(b)?;
        if a > b {
            return Err(DickmanError::Domain(format!("need a <= b, got a = {a}, b = {b}")));
        }
        let quad = GaussLegendre::new(QUADRATURE_NODES).expect("node count is valid");
        let mut total = 0.0;
        let mut lo = a;
        while lo < b {
            let hi = (lo.floor() + 1.0).min(b);
            total += quad.integrate(lo, hi, |t| self.rho_unchecked(t));
            lo = hi;
        }
        Ok(total)
    }

    /// Writes `u,rho(u)` rows for `u = 0, h, 2h, … <= u_max`.
    pub fn dump_csv<W: std::io::Write>(&self, step: f64, mut out: W) -> Result<(), DumpError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(DumpError::Dickman(DickmanError::Domain(format!(
                "step must be positive, got {step}"
            ))));
        }
        writeln!(out, "u,rho(u)")?;
        let mut i = 0u64;
        loop {
            let u = i as f64 * step;
            if u > self.u_max {
                break;
            }
            writeln!(out, "{},{}", u, self.rho_unchecked(u))?;
            i += 1;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DumpError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Dickman(#[from] DickmanError),
}

/// Table with the default range, tolerance and degree.
pub fn default_table() -> DickmanTable {
    DickmanTable::build(DEFAULT_U_MAX, DEFAULT_TOL).expect("default Dickman table builds")
}

pub fn build_rho_table(u_max: f64, tol: f64) -> Result<DickmanTable, DickmanError> {
    DickmanTable::build(u_max, tol)
}

pub fn rho_eval(table: &DickmanTable, u: f64) -> Result<f64, DickmanError> {
    table.rho(u)
}

pub fn rho_over_t_integral(table: &DickmanTable, a: f64, b: f64) -> Result<f64, DickmanError> {
    table.rho_over_t_integral(a, b)
}
