//! Goldfeld's weighted sum `L(x; u, v)` and the quantities derived from it.
//!
//! `L` is evaluated with the order of summation swapped:
//!
//! ```text
//! Σ_{u<m<=v} Λ(m) π(x; m, 1) = Σ_{p<=x} Σ_{q^k | p-1, u < q^k <= v} ln q
//! ```
//!
//! so one pass over the factored primes serves any number of windows.

use serde::{Deserialize, Serialize};

use super::{Counter, CountingError, GridAccumulator};
use crate::arith::{geq_fractional_power, RationalExponent};
use crate::sieve::FactoredShiftedPrime;
use crate::sum::CompensatedSum;

/// `L(x; u, v)` with natural logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LSumReport {
    pub x: u64,
    pub u: f64,
    pub v: f64,
    pub value: f64,
}

/// `L(x; 1, x) / x`, `L(x; 1, sqrt x) / (x/2)` and `T_c(x) - T'_c(x)` for
/// a list of cutoffs, from one pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub x: u64,
    pub l_full: f64,
    pub l_sqrt: f64,
    pub lemma1_ratio: f64,
    pub lemma2_ratio: f64,
    pub pi_x: u64,
    pub gaps: Vec<(RationalExponent, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub x: u64,
    pub c: RationalExponent,
    pub value: f64,
    /// Whether `3/4 < c < 1`, the range in which the trivial bound
    /// `x^{3/4} (ln x)^2` was derived.
    pub c_in_bound_range: bool,
}

/// Per-window compensated sums over `(u, v]`.
pub(crate) struct LAccumulator {
    windows: Vec<(f64, f64)>,
    sums: Vec<CompensatedSum>,
}

impl LAccumulator {
    pub fn new(windows: &[(f64, f64)]) -> Self {
        Self {
            windows: windows.to_vec(),
            sums: vec![CompensatedSum::new(); windows.len()],
        }
    }

    pub fn feed(&mut self, rec: &FactoredShiftedPrime) {
        for pp in &rec.factors {
            let ln_q = (pp.q as f64).ln();
            let mut power = 1u64;
            for _ in 0..pp.k {
                power *= pp.q;
                let m = power as f64;
                for (sum, &(u, v)) in self.sums.iter_mut().zip(&self.windows) {
                    if u < m && m <= v {
                        sum.add(ln_q);
                    }
                }
            }
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.sums.iter().map(CompensatedSum::value).collect()
    }
}

fn check_window(x: u64, u: f64, v: f64) -> Result<(), CountingError> {
    if !(0.0 <= u && u < v && v <= x as f64) {
        return Err(CountingError::Domain(format!(
            "window must satisfy 0 <= u < v <= x, got u = {u}, v = {v}, x = {x}"
        )));
    }
    Ok(())
}

fn check_lemma_x(x: u64) -> Result<(), CountingError> {
    if x < 1000 {
        return Err(CountingError::Domain(format!(
            "lemma ratios need x >= 1000, got {x}"
        )));
    }
    Ok(())
}

impl Counter {
    /// `L(x; u, v)` for several windows from one pass.
    pub fn weighted_sums_l(
        &self,
        x: u64,
        windows: &[(f64, f64)],
    ) -> Result<Vec<LSumReport>, CountingError> {
        for &(u, v) in windows {
            check_window(x, u, v)?;
        }
        let mut acc = LAccumulator::new(windows);
        for rec in self.sieve.factored(x)? {
            acc.feed(&rec);
        }
        Ok(windows
            .iter()
            .zip(acc.values())
            .map(|(&(u, v), value)| LSumReport { x, u, v, value })
            .collect())
    }

    pub fn weighted_sum_l(&self, x: u64, u: f64, v: f64) -> Result<LSumReport, CountingError> {
        Ok(self.weighted_sums_l(x, &[(u, v)])?[0])
    }

    /// Lemma diagnostics and `T - T'` gaps for `cutoffs`, in one pass.
    pub fn lemmas(&self, x: u64, cutoffs: &[RationalExponent]) -> Result<LemmaReport, CountingError> {
        check_lemma_x(x)?;
        let xf = x as f64;
        let mut lacc = LAccumulator::new(&[(1.0, xf), (1.0, xf.sqrt())]);
        let mut grid = GridAccumulator::new(&[x], cutoffs)?;
        for rec in self.sieve.factored(x)? {
            lacc.feed(&rec);
            grid.feed(&rec);
        }
        let l = lacc.values();
        let report = grid.finish();
        let gaps = cutoffs
            .iter()
            .enumerate()
            .map(|(ci, &c)| (c, report.t(0, ci) - report.t_prime(0, ci)))
            .collect();
        Ok(LemmaReport {
            x,
            l_full: l[0],
            l_sqrt: l[1],
            lemma1_ratio: l[0] / xf,
            lemma2_ratio: l[1] / (xf / 2.0),
            pi_x: report.pi_counts[0],
            gaps,
        })
    }

    /// `L(x; 1, x) / x`.
    pub fn lemma1_ratio(&self, x: u64) -> Result<f64, CountingError> {
        check_lemma_x(x)?;
        Ok(self.weighted_sum_l(x, 1.0, x as f64)?.value / x as f64)
    }

    /// `L(x; 1, sqrt x) / (x / 2)`.
    pub fn lemma2_ratio(&self, x: u64) -> Result<f64, CountingError> {
        check_lemma_x(x)?;
        let xf = x as f64;
        Ok(self.weighted_sum_l(x, 1.0, xf.sqrt())?.value / (xf / 2.0))
    }

    /// `Σ_{Q < m <= 2Q} Λ(m) / φ(m)`.
    pub fn dyadic_mangoldt_phi_sum(&self, q: u64) -> Result<f64, CountingError> {
        if q < 16 {
            return Err(CountingError::Domain(format!(
                "dyadic sum needs Q >= 16, got {q}"
            )));
        }
        self.mangoldt_phi_sum(q, 2 * q)
    }

    /// `Σ_{lo < m <= hi} Λ(m) / φ(m)`, summed in ascending `m`.
    pub fn mangoldt_phi_sum(&self, lo: u64, hi: u64) -> Result<f64, CountingError> {
        let mut terms: Vec<(u64, f64)> = Vec::new();
        for q in self.sieve.primes(hi)? {
            let ln_q = (q as f64).ln();
            let mut m = q;
            let mut phi = q - 1;
            loop {
                if m > lo {
                    terms.push((m, ln_q / phi as f64));
                }
                match m.checked_mul(q) {
                    Some(next) if next <= hi => {
                        m = next;
                        phi *= q;
                    }
                    _ => break,
                }
            }
        }
        terms.sort_unstable_by_key(|&(m, _)| m);
        Ok(terms.into_iter().map(|(_, t)| t).collect::<CompensatedSum>().value())
    }

    /// `Σ_{x^c <= q^k <= x, k > 1} π(x; q^k, 1) ln q`.
    pub fn prime_power_tail(&self, x: u64, c: RationalExponent) -> Result<TailReport, CountingError> {
        if !c.is_cutoff() {
            return Err(CountingError::Domain(format!("cutoff {c} is not in (0, 1)")));
        }
        if x < 2 {
            return Err(CountingError::Domain("x must be at least 2".into()));
        }
        let mut sum = CompensatedSum::new();
        for rec in self.sieve.factored(x)? {
            for (q, m) in rec.prime_power_divisors() {
                if m != q && geq_fractional_power(m, x, c) {
                    sum.add((q as f64).ln());
                }
            }
        }
        let three_quarters = RationalExponent::new(3, 4).expect("3/4");
        Ok(TailReport {
            x,
            c,
            value: sum.value(),
            c_in_bound_range: c > three_quarters,
        })
    }
}

pub fn weighted_sum_l(x: u64, u: f64, v: f64) -> Result<LSumReport, CountingError> {
    Counter::default().weighted_sum_l(x, u, v)
}

pub fn lemma1_ratio(x: u64) -> Result<f64, CountingError> {
    Counter::default().lemma1_ratio(x)
}

pub fn lemma2_ratio(x: u64) -> Result<f64, CountingError> {
    Counter::default().lemma2_ratio(x)
}

pub fn dyadic_mangoldt_phi_sum(q: u64) -> Result<f64, CountingError> {
    Counter::default().dyadic_mangoldt_phi_sum(q)
}

pub fn prime_power_tail(x: u64, c: RationalExponent) -> Result<TailReport, CountingError> {
    Counter::default().prime_power_tail(x, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{euler_phi, von_mangoldt};
    use crate::sieve::enumerate_primes;

    #[test]
    fn full_window_is_sum_of_log_shifts() {
        let l = weighted_sum_l(30, 1.0, 30.0).unwrap().value;
        let direct: f64 = enumerate_primes(30).unwrap().map(|p| ((p - 1) as f64).ln()).sum();
        assert!((l - direct).abs() < 1e-12, "{l} vs {direct}");
    }

    #[test]
    fn windows_add_up() {
        let c = Counter::default();
        let r = c
            .weighted_sums_l(50_000, &[(1.0, 300.0), (300.0, 7000.0), (1.0, 7000.0)])
            .unwrap();
        let rel = (r[0].value + r[1].value - r[2].value).abs() / r[2].value;
        assert!(rel < 1e-12);
    }

    #[test]
    fn l_at_hundred_thousand() {
        let v = weighted_sum_l(100_000, 1.0, 100_000.0).unwrap().value / 1e5;
        assert!(v > 0.8 && v < 1.1, "{v}");
    }

    #[test]
    fn window_validation() {
        assert!(weighted_sum_l(100, 5.0, 5.0).is_err());
        assert!(weighted_sum_l(100, -1.0, 5.0).is_err());
        assert!(weighted_sum_l(100, 1.0, 101.0).is_err());
        assert!(lemma1_ratio(999).is_err());
    }

    #[test]
    fn lemma_report_matches_single_queries() {
        let c = Counter::default();
        let rep = c.lemmas(20_000, &[RationalExponent::cutoff(1, 2).unwrap()]).unwrap();
        assert_eq!(rep.lemma1_ratio, c.lemma1_ratio(20_000).unwrap());
        assert_eq!(rep.lemma2_ratio, c.lemma2_ratio(20_000).unwrap());
        assert!(rep.l_sqrt <= rep.l_full);
        let g = c.lemma3_gap(20_000, RationalExponent::cutoff(1, 2).unwrap()).unwrap();
        assert_eq!(rep.gaps[0].1, g);
    }

    #[test]
    fn mangoldt_phi_matches_direct() {
        let c = Counter::default();
        for (lo, hi) in [(16u64, 32u64), (100, 200), (1000, 2000)] {
            let got = c.mangoldt_phi_sum(lo, hi).unwrap();
            let want: f64 = (lo + 1..=hi)
                .map(|m| von_mangoldt(m).value / euler_phi(m) as f64)
                .sum();
            assert!((got - want).abs() < 1e-12);
        }
        // 33, 34, 35, 36 are not prime powers
        assert_eq!(c.mangoldt_phi_sum(32, 36).unwrap(), 0.0);
        assert!(c.dyadic_mangoldt_phi_sum(15).is_err());
        assert!(c.dyadic_mangoldt_phi_sum(10_000).unwrap() >= 0.25);
    }

    #[test]
    fn tail_is_monotone_in_cutoff() {
        let c = Counter::default();
        let x = 200_000;
        let cs = [(1, 2), (3, 5), (3, 4), (4, 5), (9, 10)];
        let tails: Vec<_> = cs
            .iter()
            .map(|&(n, d)| c.prime_power_tail(x, RationalExponent::cutoff(n, d).unwrap()).unwrap())
            .collect();
        for w in tails.windows(2) {
            assert!(w[0].value >= w[1].value);
        }
        assert!(!tails[2].c_in_bound_range);
        assert!(tails[3].c_in_bound_range);
    }

    #[test]
    fn tail_empty_window() {
        // below 100 no q^k with k > 1 and q^k >= 100^(9/10) ≈ 63 divides p - 1
        // except 64 | p - 1, which needs p >= 65 with p ≡ 1 (mod 64): none up to 100
        let t = prime_power_tail(100, RationalExponent::cutoff(9, 10).unwrap()).unwrap();
        assert_eq!(t.value, 0.0);
    }
}
