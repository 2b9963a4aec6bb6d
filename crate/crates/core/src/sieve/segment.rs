//! Sieving and factoring of a single segment `[lo, hi)`.
//!
//! Odd integers only: slot `i` of a segment stands for `lo + 1 + 2i` (`lo`
//! is always even). The prime 2 is emitted by the first segment directly.

use smallvec::SmallVec;

use super::{FactoredShiftedPrime, SegmentPlan};
use crate::arith::PrimePower;

const NO_RECORD: u32 = u32::MAX;

/// Primality flags for the odd integers of one segment.
pub(crate) struct SegmentFlags {
    pub lo: u64,
    pub hi: u64,
    /// `true` where `lo + 1 + 2i` is prime.
    pub is_prime: Vec<bool>,
}

impl SegmentFlags {
    #[inline]
    pub fn value_at(&self, i: usize) -> u64 {
        self.lo + 1 + 2 * i as u64
    }

    pub fn heap_bytes(&self) -> usize {
        self.is_prime.capacity()
    }
}

/// Marks primes among the odd integers of `[lo, hi)` using odd base primes.
pub(crate) fn sieve_segment(plan: &SegmentPlan, base_primes: &[u32]) -> SegmentFlags {
    let lo = plan.lo & !1;
    let hi = plan.hi;
    let len = ((hi - lo) / 2) as usize;
    let mut is_prime = vec![true; len];
    // Values outside [plan.lo, plan.hi) and the value 1 are not reported.
    for (i, flag) in is_prime.iter_mut().enumerate() {
        let v = lo + 1 + 2 * i as u64;
        if v >= plan.lo {
            break;
        }
        *flag = false;
    }
    for &q in base_primes.iter().skip(1) {
        let q = q as u64;
        if q * q >= hi {
            break;
        }
        // first odd multiple of q that is >= max(q^2, lo + 1)
        let mut start = (q * q).max((lo + 1).div_ceil(q) * q);
        if start % 2 == 0 {
            start += q;
        }
        let mut i = ((start - lo - 1) / 2) as usize;
        let step = q as usize;
        while i < len {
            is_prime[i] = false;
            i += step;
        }
    }
    SegmentFlags { lo, hi, is_prime }
}

/// Factored records for every prime of one segment, ascending.
pub(crate) struct FactoredSegment {
    pub records: Vec<FactoredShiftedPrime>,
    pub heap_bytes: usize,
}

/// Sieves the segment, then factors `p - 1` for every prime `p` in it by
/// dividing out each base prime `q <= sqrt(hi)` from the positions
/// `p ≡ 1 (mod 2q)`. Whatever cofactor survives is itself prime.
pub(crate) fn factor_segment(plan: &SegmentPlan, base_primes: &[u32]) -> FactoredSegment {
    let flags = sieve_segment(plan, base_primes);
    let len = flags.is_prime.len();
    let lo = flags.lo;
    let hi = flags.hi;

    let count = flags.is_prime.iter().filter(|&&b| b).count() + 1;
    let mut records: Vec<FactoredShiftedPrime> = Vec::with_capacity(count);
    let mut remaining: Vec<u64> = Vec::with_capacity(count);
    let mut slot = vec![NO_RECORD; len];

    if plan.lo <= 2 && plan.hi > 2 {
        records.push(FactoredShiftedPrime {
            p: 2,
            lpf: 1,
            factors: SmallVec::new(),
        });
        remaining.push(1);
    }
    for (i, &prime) in flags.is_prime.iter().enumerate() {
        if !prime {
            continue;
        }
        let p = flags.value_at(i);
        let n = p - 1;
        let tz = n.trailing_zeros();
        let mut factors = SmallVec::new();
        factors.push(PrimePower { q: 2, k: tz });
        slot[i] = records.len() as u32;
        records.push(FactoredShiftedPrime { p, lpf: 2, factors });
        remaining.push(n >> tz);
    }

    // largest n = p - 1 in this segment is at most hi - 2
    let n_max = hi.saturating_sub(2);
    for &q in base_primes.iter().skip(1) {
        let q = q as u64;
        if q * q > n_max {
            break;
        }
        // first odd p >= lo + 1 with p ≡ 1 (mod 2q)
        let m = 2 * q;
        let first = lo + 1;
        let offset = (m + 1 - first % m) % m;
        let mut i = ((first + offset - lo - 1) / 2) as usize;
        let step = q as usize;
        while i < len {
            let r = slot[i];
            if r != NO_RECORD {
                let rem = &mut remaining[r as usize];
                let mut k = 0u32;
                while *rem % q == 0 {
                    *rem /= q;
                    k += 1;
                }
                records[r as usize].factors.push(PrimePower { q, k });
            }
            i += step;
        }
    }

    for (rec, &rem) in records.iter_mut().zip(&remaining) {
        if rem > 1 {
            rec.factors.push(PrimePower { q: rem, k: 1 });
        }
        rec.lpf = rec.factors.last().map_or(1, |pp| pp.q);
    }

    let spilled: usize = records
        .iter()
        .filter(|r| r.factors.spilled())
        .map(|r| r.factors.capacity() * std::mem::size_of::<PrimePower>())
        .sum();
    let heap_bytes = flags.heap_bytes()
        + slot.capacity() * std::mem::size_of::<u32>()
        + remaining.capacity() * std::mem::size_of::<u64>()
        + records.capacity() * std::mem::size_of::<FactoredShiftedPrime>()
        + spilled;

    FactoredSegment {
        records,
        heap_bytes,
    }
}
