//! Counting functions over shifted primes.
//!
//! `T_c(x)` counts primes `p <= x` with `P+(p-1) >= p^c`; `T'_c(x)` uses the
//! fixed threshold `x^c` instead. Goldfeld's weighted sum
//! `L(x; u, v) = Σ_{u<m<=v} Λ(m) π(x; m, 1)` and the diagnostics built on it
//! live in [`lsum`]; the equidistribution scan over moduli `m ∈ (Q, 2Q]`
//! lives in [`scan`].
//!
//! Every quantity here is computed from one ascending pass of the factored
//! sieve. Progression counts are never evaluated modulus by modulus: each
//! prime `p` instead credits the divisors of `p - 1` that a query cares
//! about.

pub mod lsum;
pub mod scan;

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{exact_geq_fractional_power, log_margin, RationalExponent};
use crate::sieve::{FactoredShiftedPrime, Sieve, SieveError};

pub use lsum::{LSumReport, LemmaReport, TailReport};
pub use scan::{EquidistScan, RatioHistogram};

#[derive(Debug, Error)]
pub enum CountingError {
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error("{0}")]
    Domain(String),
}

/// `T_c(x)`, `T'_c(x)` and `π(x)` over a grid of checkpoints and cutoffs.
///
/// Rows follow `x_checkpoints`, columns follow `c_values`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub x_checkpoints: Vec<u64>,
    pub c_values: Vec<RationalExponent>,
    pub t_counts: Vec<Vec<u64>>,
    pub t_prime_counts: Vec<Vec<u64>>,
    pub pi_counts: Vec<u64>,
}

impl CountReport {
    pub fn t(&self, xi: usize, ci: usize) -> u64 {
        self.t_counts[xi][ci]
    }

    pub fn t_prime(&self, xi: usize, ci: usize) -> u64 {
        self.t_prime_counts[xi][ci]
    }

    /// Writes `x,c_num,c_den,pi_x,T,T_prime,gap`, one row per cell.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,c_num,c_den,pi_x,T,T_prime,gap")?;
        for (xi, &x) in self.x_checkpoints.iter().enumerate() {
            for (ci, c) in self.c_values.iter().enumerate() {
                let t = self.t(xi, ci);
                let tp = self.t_prime(xi, ci);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    x,
                    c.num(),
                    c.den(),
                    self.pi_counts[xi],
                    t,
                    tp,
                    t - tp
                )?;
            }
        }
        Ok(())
    }
}

/// Running `T`/`T'` counters that snapshot at each checkpoint.
pub(crate) struct GridAccumulator {
    checkpoints: Vec<u64>,
    cutoffs: Vec<RationalExponent>,
    /// `ceil(x_j^c)` per checkpoint and cutoff: `P+(p-1) >= x_j^c` iff
    /// `P+(p-1) >= fixed_thresholds[j][c]`.
    fixed_thresholds: Vec<Vec<u64>>,
    running_t: Vec<u64>,
    running_pi: u64,
    t_rows: Vec<Vec<u64>>,
    t_prime: Vec<Vec<u64>>,
    pi_rows: Vec<u64>,
    /// First checkpoint not yet snapshotted.
    next: usize,
}

impl GridAccumulator {
    pub fn new(checkpoints: &[u64], cutoffs: &[RationalExponent]) -> Result<Self, CountingError> {
        validate_grid(checkpoints, cutoffs)?;
        let fixed_thresholds = checkpoints
            .iter()
            .map(|&x| cutoffs.iter().map(|c| c.ceil_power(x)).collect())
            .collect();
        Ok(Self {
            checkpoints: checkpoints.to_vec(),
            cutoffs: cutoffs.to_vec(),
            fixed_thresholds,
            running_t: vec![0; cutoffs.len()],
            running_pi: 0,
            t_rows: Vec::with_capacity(checkpoints.len()),
            t_prime: vec![vec![0; cutoffs.len()]; checkpoints.len()],
            pi_rows: Vec::with_capacity(checkpoints.len()),
            next: 0,
        })
    }

    fn snapshot_through(&mut self, p: u64) {
        while self.next < self.checkpoints.len() && self.checkpoints[self.next] < p {
            self.t_rows.push(self.running_t.clone());
            self.pi_rows.push(self.running_pi);
            self.next += 1;
        }
    }

    pub fn feed(&mut self, rec: &FactoredShiftedPrime) {
        let p = rec.p;
        self.snapshot_through(p);
        if self.next == self.checkpoints.len() {
            return;
        }
        self.running_pi += 1;
        let ln_p = (p as f64).ln();
        let ln_q = (rec.lpf as f64).ln();
        for (ci, c) in self.cutoffs.iter().enumerate() {
            if meets_cutoff(rec.lpf, p, ln_q, ln_p, *c) {
                self.running_t[ci] += 1;
            }
        }
        for j in self.next..self.checkpoints.len() {
            let row = &mut self.t_prime[j];
            for (ci, &t) in self.fixed_thresholds[j].iter().enumerate() {
                if rec.lpf >= t {
                    row[ci] += 1;
                }
            }
        }
    }

    pub fn finish(mut self) -> CountReport {
        self.snapshot_through(u64::MAX);
        CountReport {
            x_checkpoints: self.checkpoints,
            c_values: self.cutoffs,
            t_counts: self.t_rows,
            t_prime_counts: self.t_prime,
            pi_counts: self.pi_rows,
        }
    }
}

/// `lpf >= p^c`, with `ln lpf` and `ln p` precomputed.
#[inline]
fn meets_cutoff(lpf: u64, p: u64, ln_lpf: f64, ln_p: f64, c: RationalExponent) -> bool {
    match log_margin(c.den() as f64 * ln_lpf, c.num() as f64 * ln_p) {
        Some(decision) => decision,
        None => exact_geq_fractional_power(lpf, p, c),
    }
}

fn validate_grid(checkpoints: &[u64], cutoffs: &[RationalExponent]) -> Result<(), CountingError> {
    if checkpoints.iter().any(|&x| x < 2) {
        return Err(CountingError::Domain("every checkpoint x must be at least 2".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CountingError::Domain("checkpoints must be strictly ascending".into()));
    }
    if let Some(c) = cutoffs.iter().find(|c| !c.is_cutoff()) {
        return Err(CountingError::Domain(format!("cutoff {c} is not in (0, 1)")));
    }
    Ok(())
}

/// Counting front end bound to one sieve configuration.
#[derive(Debug, Clone, Default)]
pub struct Counter {
    sieve: Sieve,
}

impl Counter {
    pub fn new(sieve: Sieve) -> Self {
        Self { sieve }
    }

    pub fn sieve(&self) -> &Sieve {
        &self.sieve
    }

    /// Fills the whole `(x, c)` grid from a single pass to the largest
    /// checkpoint.
    pub fn count_grid(
        &self,
        checkpoints: &[u64],
        cutoffs: &[RationalExponent],
    ) -> Result<CountReport, CountingError> {
        let mut acc = GridAccumulator::new(checkpoints, cutoffs)?;
        if let Some(&max) = checkpoints.last() {
            for rec in self.sieve.factored(max)? {
                acc.feed(&rec);
            }
        }
        Ok(acc.finish())
    }

    pub fn count_t(&self, x: u64, c: RationalExponent) -> Result<u64, CountingError> {
        Ok(self.count_grid(&[x], &[c])?.t(0, 0))
    }

    pub fn count_t_prime(&self, x: u64, c: RationalExponent) -> Result<u64, CountingError> {
        Ok(self.count_grid(&[x], &[c])?.t_prime(0, 0))
    }

    /// `T_c(x) - T'_c(x)`, never negative.
    pub fn lemma3_gap(&self, x: u64, c: RationalExponent) -> Result<u64, CountingError> {
        let r = self.count_grid(&[x], &[c])?;
        Ok(r.t(0, 0) - r.t_prime(0, 0))
    }
}

pub fn count_t(x: u64, c: RationalExponent) -> Result<u64, CountingError> {
    Counter::default().count_t(x, c)
}

pub fn count_t_prime(x: u64, c: RationalExponent) -> Result<u64, CountingError> {
    Counter::default().count_t_prime(x, c)
}

pub fn lemma3_gap(x: u64, c: RationalExponent) -> Result<u64, CountingError> {
    Counter::default().lemma3_gap(x, c)
}
