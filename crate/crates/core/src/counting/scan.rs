//! Empirical equidistribution of primes `p ≡ 1 (mod m)` over moduli
//! `m ∈ (Q, 2Q]`, `Q = x^θ`.
//!
//! For each such `m` the scan measures `r(m) = π(x; m, 1) φ(m) / π(x)` and
//! counts how many fall outside caller-supplied bounds `[K1, K2]`. No
//! formula for `K1(θ)`, `K2(θ)` is known, so they are inputs.

use serde::{Deserialize, Serialize};

use super::{Counter, CountingError};
use crate::arith::euler_phi;

/// Upper end (exclusive) of the admissible level `θ`.
pub const MAX_THETA: f64 = 17.0 / 32.0;

/// Default `ε` for the bounds `K1 = 1 - ε`, `K2 = 1 + ε`.
pub const DEFAULT_EPSILON: f64 = 0.1;

pub const DEFAULT_BIN_WIDTH: f64 = 0.05;
pub const DEFAULT_BIN_COUNT: usize = 60;

/// Fixed-width histogram on `[0, bins·width)` with an overflow bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioHistogram {
    pub bin_width: f64,
    pub counts: Vec<u64>,
    pub overflow: u64,
}

impl RatioHistogram {
    pub fn new(bin_width: f64, bins: usize) -> Self {
        Self {
            bin_width,
            counts: vec![0; bins],
            overflow: 0,
        }
    }

    pub fn add(&mut self, r: f64) {
        let idx = (r / self.bin_width).floor();
        if idx >= 0.0 && (idx as usize) < self.counts.len() {
            self.counts[idx as usize] += 1;
        } else {
            self.overflow += 1;
        }
    }

    pub fn mass(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquidistScan {
    pub x: u64,
    pub theta: f64,
    /// `Q = x^θ`.
    pub q: f64,
    pub k1: f64,
    pub k2: f64,
    pub pi_x: u64,
    /// Moduli scanned: `m_lo < m <= m_hi`.
    pub m_lo: u64,
    pub m_hi: u64,
    /// `(m, r(m))` in ascending `m`.
    pub ratios: Vec<(u64, f64)>,
    pub histogram: RatioHistogram,
    pub exceptions_below: u64,
    pub exceptions_above: u64,
}

impl EquidistScan {
    pub fn moduli(&self) -> u64 {
        self.m_hi - self.m_lo
    }

    pub fn exception_fraction(&self) -> f64 {
        (self.exceptions_below + self.exceptions_above) as f64 / self.moduli() as f64
    }
}

impl Counter {
    pub fn equidistribution_scan(
        &self,
        x: u64,
        theta: f64,
        k1: f64,
        k2: f64,
    ) -> Result<EquidistScan, CountingError> {
        if !(theta > 0.0 && theta < MAX_THETA) {
            return Err(CountingError::Domain(format!(
                "theta must lie in (0, 17/32), got {theta}"
            )));
        }
        if !(k1 > 0.0 && k1 < k2) {
            return Err(CountingError::Domain(format!(
                "bounds must satisfy 0 < K1 < K2, got K1 = {k1}, K2 = {k2}"
            )));
        }
        let q = (x as f64).powf(theta);
        if q < 10.0 {
            return Err(CountingError::Domain(format!(
                "x^theta = {q} is below 10"
            )));
        }
        let m_lo = q.floor() as u64;
        let m_hi = (2.0 * q).floor() as u64;
        let mut progression = vec![0u64; (m_hi - m_lo) as usize];
        let mut pi_x = 0u64;
        let mut divisors = Vec::new();
        for rec in self.sieve.factored(x)? {
            pi_x += 1;
            divisors.clear();
            rec.divisors_in(m_lo, m_hi, &mut divisors);
            for &d in &divisors {
                progression[(d - m_lo - 1) as usize] += 1;
            }
        }

        let mut histogram = RatioHistogram::new(DEFAULT_BIN_WIDTH, DEFAULT_BIN_COUNT);
        let mut ratios = Vec::with_capacity(progression.len());
        let (mut below, mut above) = (0, 0);
        for (i, &count) in progression.iter().enumerate() {
            let m = m_lo + 1 + i as u64;
            let r = count as f64 * euler_phi(m) as f64 / pi_x as f64;
            histogram.add(r);
            if r < k1 {
                below += 1;
            } else if r > k2 {
                above += 1;
            }
            ratios.push((m, r));
        }
        Ok(EquidistScan {
            x,
            theta,
            q,
            k1,
            k2,
            pi_x,
            m_lo,
            m_hi,
            ratios,
            histogram,
            exceptions_below: below,
            exceptions_above: above,
        })
    }
}

pub fn equidistribution_scan(
    x: u64,
    theta: f64,
    k1: f64,
    k2: f64,
) -> Result<EquidistScan, CountingError> {
    Counter::default().equidistribution_scan(x, theta, k1, k2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::primes_in_progression_count;

    #[test]
    fn ratios_match_direct_progression_counts() {
        let scan = equidistribution_scan(50_000, 0.3, 0.5, 1.5).unwrap();
        let pi = scan.pi_x as f64;
        for &(m, r) in &scan.ratios {
            let direct = primes_in_progression_count(50_000, m).unwrap();
            assert_eq!(r, direct as f64 * euler_phi(m) as f64 / pi, "m = {m}");
        }
    }

    #[test]
    fn mass_and_exceptions_are_consistent() {
        let scan = equidistribution_scan(200_000, 0.45, 0.9, 1.1).unwrap();
        let q = (200_000f64).powf(0.45);
        let expected = (2.0 * q).floor() as u64 - q.floor() as u64;
        assert_eq!(scan.histogram.mass(), expected);
        assert_eq!(scan.ratios.len() as u64, expected);
        let below = scan.ratios.iter().filter(|(_, r)| *r < 0.9).count() as u64;
        let above = scan.ratios.iter().filter(|(_, r)| *r > 1.1).count() as u64;
        assert_eq!((below, above), (scan.exceptions_below, scan.exceptions_above));
    }

    #[test]
    fn domain_errors() {
        assert!(equidistribution_scan(1_000_000, 0.0, 0.5, 1.5).is_err());
        assert!(equidistribution_scan(1_000_000, 17.0 / 32.0, 0.5, 1.5).is_err());
        assert!(equidistribution_scan(1_000_000, 0.3, 1.5, 0.5).is_err());
        assert!(equidistribution_scan(100, 0.3, 0.5, 1.5).is_err());
    }

    #[test]
    fn empty_progressions_are_low_exceptions() {
        // m = 17: none of 18, 35, 52, 69, 86 is prime
        let scan = equidistribution_scan(100, 0.5, 0.5, 1e300).unwrap();
        assert_eq!(scan.exceptions_above, 0);
        for &(m, r) in &scan.ratios {
            if primes_in_progression_count(100, m).unwrap() == 0 {
                assert_eq!(r, 0.0);
            }
        }
        let zeros = scan.ratios.iter().filter(|(_, r)| *r == 0.0).count() as u64;
        assert!(zeros > 0);
        assert!(scan.exceptions_below >= zeros);
    }
}
