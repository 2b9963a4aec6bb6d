//! Segmented sieve over `[2, limit]` that streams every prime `p` together
//! with the complete factorisation of `p - 1`.
//!
//! The range is cut into fixed-length segments ([`SegmentPlan`]). Each
//! segment is sieved with the read-only table of base primes `<= sqrt(limit)`
//! and then factored in place (see `segment.rs`). Segments are handed out in
//! batches of `threads`; a batch is processed in parallel and its records are
//! delivered strictly in ascending order, so the stream is identical for any
//! thread count.
//!
//! Streams are pull-based and single-pass. A consumer that needs a second
//! pass opens a new stream (or writes a [`checkpoint`] file).

pub mod checkpoint;
mod segment;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::arith::PrimePower;

/// Default segment length in integers.
pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 22;

/// Default upper bound on `limit`.
pub const DEFAULT_MAX_LIMIT: u64 = 1 << 40;

/// Upper estimate of the bytes a factored segment costs per integer it
/// covers: one flag and one slot index per odd integer, plus records for the
/// primes.
pub const BYTES_PER_INTEGER: u64 = 8;

/// Environment variable that overrides the default memory budget (bytes).
pub const MEMORY_BUDGET_ENV: &str = "SPL_MEMORY_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SieveError {
    #[error("limit {limit} exceeds the configured maximum {max}")]
    Capacity { limit: u64, max: u64 },
    #[error("invalid sieve configuration: {0}")]
    Config(String),
}

/// One prime `p` and the factorisation of `p - 1`.
///
/// `factors` is ascending by prime and multiplies back to `p - 1`. For
/// `p = 2` it is empty and `lpf = 1`, following `P+(1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredShiftedPrime {
    pub p: u64,
    pub factors: SmallVec<[PrimePower; 3]>,
    /// `P+(p - 1)`.
    pub lpf: u64,
}

impl FactoredShiftedPrime {
    /// Product of the factors; equals `p - 1` for every emitted record.
    pub fn shifted(&self) -> u64 {
        self.factors.iter().map(PrimePower::value).product()
    }

    /// Prime powers `q^j` with `1 <= j <= k` for each factor `q^k`, as
    /// `(q, q^j)` pairs. These are the `m` with `Λ(m) != 0` and `m | p - 1`.
    pub fn prime_power_divisors(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.factors.iter().flat_map(|pp| {
            let q = pp.q;
            (1..=pp.k).scan(1u64, move |acc, _| {
                *acc *= q;
                Some((q, *acc))
            })
        })
    }

    /// Every divisor of `p - 1` lying in `(lo, hi]`, unordered.
    pub fn divisors_in(&self, lo: u64, hi: u64, out: &mut Vec<u64>) {
        fn walk(factors: &[PrimePower], acc: u64, lo: u64, hi: u64, out: &mut Vec<u64>) {
            match factors.split_first() {
                None => {
                    if acc > lo {
                        out.push(acc);
                    }
                }
                Some((pp, rest)) => {
                    let mut d = acc;
                    for j in 0..=pp.k {
                        if j > 0 {
                            d = match d.checked_mul(pp.q) {
                                Some(v) if v <= hi => v,
                                _ => break,
                            };
                        }
                        walk(rest, d, lo, hi, out);
                    }
                }
            }
        }
        walk(&self.factors, 1, lo, hi, out);
    }
}

/// A half-open range `[lo, hi)` of integers sieved as one unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentPlan {
    pub lo: u64,
    pub hi: u64,
    /// Memory budget for this segment.
    pub segment_bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers per segment; even, at least 2.
    pub segment_len: u64,
    /// Number of segments sieved concurrently.
    pub threads: usize,
    pub max_limit: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_len: DEFAULT_SEGMENT_LEN,
            threads: 1,
            max_limit: DEFAULT_MAX_LIMIT,
        }
    }
}

impl SieveConfig {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_segment_len(mut self, segment_len: u64) -> Self {
        self.segment_len = segment_len;
        self
    }

    /// Picks the segment length so that `threads` segments in flight fit in
    /// `budget` bytes, capped at [`DEFAULT_SEGMENT_LEN`].
    pub fn with_memory_budget(mut self, budget: u64) -> Self {
        let per_segment = budget / self.threads.max(1) as u64;
        let len = (per_segment / BYTES_PER_INTEGER).min(DEFAULT_SEGMENT_LEN);
        self.segment_len = (len & !1).max(1 << 12);
        self
    }

    /// Reads [`MEMORY_BUDGET_ENV`] if set and valid.
    pub fn memory_budget_from_env() -> Option<u64> {
        std::env::var(MEMORY_BUDGET_ENV).ok()?.trim().parse().ok()
    }

    pub fn segment_bytes(&self) -> u64 {
        self.segment_len * BYTES_PER_INTEGER
    }

    pub fn validate(&self) -> Result<(), SieveError> {
        if self.threads == 0 {
            return Err(SieveError::Config("threads must be at least 1".into()));
        }
        if self.segment_len < 2 || self.segment_len % 2 != 0 {
            return Err(SieveError::Config(format!(
                "segment length {} must be even and at least 2",
                self.segment_len
            )));
        }
        Ok(())
    }

    fn check_limit(&self, limit: u64) -> Result<(), SieveError> {
        self.validate()?;
        if limit > self.max_limit {
            return Err(SieveError::Capacity {
                limit,
                max: self.max_limit,
            });
        }
        Ok(())
    }

    /// Segments tiling `[2, limit]`, in order.
    pub fn plan(&self, limit: u64) -> Vec<SegmentPlan> {
        let mut plans = Vec::new();
        if limit < 2 {
            return plans;
        }
        let end = limit + 1;
        let mut lo = 0u64;
        while lo < end {
            let hi = (lo + self.segment_len).min(end);
            if hi > 2 {
                plans.push(SegmentPlan {
                    lo: lo.max(2),
                    hi,
                    segment_bytes: self.segment_bytes(),
                });
            }
            lo += self.segment_len;
        }
        plans
    }
}

/// Primes `<= n` by a plain sieve; used for the base table.
pub(crate) fn small_primes(n: u64) -> Vec<u32> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u32);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Shared machinery of both stream kinds: plans, base primes, thread pool,
/// and the current batch.
struct Batcher<T> {
    plans: std::vec::IntoIter<SegmentPlan>,
    base: Arc<Vec<u32>>,
    pool: Option<rayon::ThreadPool>,
    threads: usize,
    current: std::vec::IntoIter<T>,
    peak_bytes: usize,
}

impl<T: Send> Batcher<T> {
    fn new(config: &SieveConfig, limit: u64) -> Result<Self, SieveError> {
        config.check_limit(limit)?;
        let base = Arc::new(small_primes(isqrt(limit)));
        let pool = if config.threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(config.threads)
                    .build()
                    .map_err(|e| SieveError::Config(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(Self {
            plans: config.plan(limit).into_iter(),
            base,
            pool,
            threads: config.threads,
            current: Vec::new().into_iter(),
            peak_bytes: 0,
        })
    }

    /// Next item, refilling from the next batch of segments when needed.
    fn next_with<F>(&mut self, work: F) -> Option<T>
    where
        F: Fn(&SegmentPlan, &[u32]) -> (Vec<T>, usize) + Sync,
    {
        loop {
            if let Some(item) = self.current.next() {
                return Some(item);
            }
            let batch: Vec<SegmentPlan> = self.plans.by_ref().take(self.threads).collect();
            if batch.is_empty() {
                return None;
            }
            let base = &self.base;
            let results: Vec<(Vec<T>, usize)> = match &self.pool {
                Some(pool) => pool.install(|| {
                    batch
                        .par_iter()
                        .map(|plan| work(plan, base))
                        .collect()
                }),
                None => batch.iter().map(|plan| work(plan, base)).collect(),
            };
            let bytes: usize = results.iter().map(|(_, b)| *b).sum();
            self.peak_bytes = self.peak_bytes.max(bytes);
            // drop the exhausted batch before materialising the new one
            self.current = Vec::new().into_iter();
            let mut items = Vec::with_capacity(results.iter().map(|(v, _)| v.len()).sum());
            for (v, _) in results {
                items.extend(v);
            }
            self.current = items.into_iter();
        }
    }

    fn base_table_bytes(&self) -> usize {
        self.base.capacity() * std::mem::size_of::<u32>()
    }
}

/// Ascending stream of primes `<= limit`.
pub struct PrimeStream {
    inner: Batcher<u64>,
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.inner.next_with(|plan, base| {
            let flags = segment::sieve_segment(plan, base);
            let mut out = Vec::new();
            if plan.lo <= 2 && plan.hi > 2 {
                out.push(2);
            }
            out.extend(
                flags
                    .is_prime
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| flags.value_at(i)),
            );
            let bytes = flags.heap_bytes() + out.capacity() * 8;
            (out, bytes)
        })
    }
}

/// Ascending stream of [`FactoredShiftedPrime`] for every prime `<= limit`.
pub struct FactoredStream {
    inner: Batcher<FactoredShiftedPrime>,
}

impl FactoredStream {
    /// Largest number of bytes held by one batch of segment buffers so far.
    pub fn peak_segment_bytes(&self) -> usize {
        self.inner.peak_bytes
    }

    /// Bytes held by the base-prime table.
    pub fn base_table_bytes(&self) -> usize {
        self.inner.base_table_bytes()
    }
}

impl Iterator for FactoredStream {
    type Item = FactoredShiftedPrime;

    fn next(&mut self) -> Option<FactoredShiftedPrime> {
        self.inner.next_with(|plan, base| {
            let seg = segment::factor_segment(plan, base);
            (seg.records, seg.heap_bytes)
        })
    }
}

/// Entry point holding a [`SieveConfig`].
#[derive(Debug, Clone, Default)]
pub struct Sieve {
    config: SieveConfig,
}

impl Sieve {
    pub fn new(config: SieveConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &SieveConfig {
        &self.config
    }

    pub fn primes(&self, limit: u64) -> Result<PrimeStream, SieveError> {
        Ok(PrimeStream {
            inner: Batcher::new(&self.config, limit)?,
        })
    }

    pub fn factored(&self, limit: u64) -> Result<FactoredStream, SieveError> {
        Ok(FactoredStream {
            inner: Batcher::new(&self.config, limit)?,
        })
    }

    /// `π(x; m, 1)`: primes `p <= x` with `p ≡ 1 (mod m)`.
    pub fn primes_in_progression_count(&self, x: u64, m: u64) -> Result<u64, SieveError> {
        if m == 0 {
            return Err(SieveError::Config("modulus must be at least 1".into()));
        }
        Ok(self.primes(x)?.filter(|p| p % m == 1 % m).count() as u64)
    }
}

/// Primes `<= limit` with the default configuration.
pub fn enumerate_primes(limit: u64) -> Result<PrimeStream, SieveError> {
    Sieve::default().primes(limit)
}

/// Factored shifted primes up to `limit` with the default configuration.
pub fn factored_shifted_stream(limit: u64) -> Result<FactoredStream, SieveError> {
    Sieve::default().factored(limit)
}

pub fn primes_in_progression_count(x: u64, m: u64) -> Result<u64, SieveError> {
    Sieve::default().primes_in_progression_count(x, m)
}
