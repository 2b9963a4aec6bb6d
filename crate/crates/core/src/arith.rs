//! Scalar arithmetic functions: von Mangoldt, Euler totient, largest prime
//! factor, and exact comparison against fractional powers `p^(num/den)`.
//!
//! Everything here works on single integers by trial division. Bulk work
//! over ranges goes through [`crate::sieve`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative width of the band around equality in which the logarithmic fast
/// path is not trusted.
pub const LOG_GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExponentError {
    #[error("exponent denominator must be positive")]
    ZeroDenominator,
    #[error("exponent numerator must be positive")]
    ZeroNumerator,
    #[error("cutoff {0} is not strictly between 0 and 1")]
    NotACutoff(RationalExponent),
    #[error("cannot parse exponent {0:?}: expected `a/b` or a decimal literal")]
    Parse(String),
}

/// A positive exponent held as an exact reduced fraction `num/den`.
///
/// Cutoffs `c` in `(0, 1)` are always carried this way so that the boundary
/// case `P+(p-1) = p^c` is decided exactly instead of by float rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalExponent {
    num: u64,
    den: u64,
}

impl RationalExponent {
    /// Builds `num/den` in lowest terms. Any positive value is accepted.
    pub fn new(num: u64, den: u64) -> Result<Self, ExponentError> {
        if den == 0 {
            return Err(ExponentError::ZeroDenominator);
        }
        if num == 0 {
            return Err(ExponentError::ZeroNumerator);
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    /// Builds a cutoff, which must satisfy `0 < num/den < 1`.
    pub fn cutoff(num: u64, den: u64) -> Result<Self, ExponentError> {
        let c = Self::new(num, den)?;
        if c.is_cutoff() {
            Ok(c)
        } else {
            Err(ExponentError::NotACutoff(c))
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Always true: values are normalised on construction.
    pub fn is_reduced(&self) -> bool {
        self.num.gcd(&self.den) == 1
    }

    pub fn is_cutoff(&self) -> bool {
        self.num < self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Smallest integer `t >= 1` with `t >= x^(num/den)`, i.e. with
    /// `t^den >= x^num`.
    pub fn ceil_power(&self, x: u64) -> u64 {
        let guess = (x as f64).powf(self.to_f64()).ceil().max(1.0) as u64;
        let mut t = guess.max(1);
        // The float guess is within a unit or two; walk to the exact answer.
        while t > 1 && exact_geq_fractional_power(t - 1, x, *self) {
            t -= 1;
        }
        while !exact_geq_fractional_power(t, x, *self) {
            t += 1;
        }
        t
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

/// Parses `a/b`, an integer, or a decimal literal such as `0.35`, which
/// becomes the exact fraction it denotes (`7/20`).
impl FromStr for RationalExponent {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExponentError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let num = n.trim().parse::<u64>().map_err(|_| bad())?;
            let den = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Self::new(num, den);
        }
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        let int_val = if int_part.is_empty() {
            0
        } else {
            int_part.parse::<u64>().map_err(|_| bad())?
        };
        let frac_val = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse::<u64>().map_err(|_| bad())?
        };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Self::new(num, den)
    }
}

/// `q^k` with `q` prime and `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub q: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.q.pow(self.k)
    }
}

/// Prime-power structure of an integer, the support of `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimePowerTag {
    NotPrimePower,
    PrimePower { base: u64, exponent: u32 },
}

impl PrimePowerTag {
    pub fn is_prime_power(&self) -> bool {
        matches!(self, PrimePowerTag::PrimePower { .. })
    }

    pub fn base(&self) -> Option<u64> {
        match *self {
            PrimePowerTag::PrimePower { base, .. } => Some(base),
            PrimePowerTag::NotPrimePower => None,
        }
    }

    pub fn exponent(&self) -> Option<u32> {
        match *self {
            PrimePowerTag::PrimePower { exponent, .. } => Some(exponent),
            PrimePowerTag::NotPrimePower => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mangoldt {
    pub tag: PrimePowerTag,
    /// `ln q` when `m = q^k`, otherwise `0`.
    pub value: f64,
}

/// Complete factorisation of `n >= 1` by trial division, ascending by prime.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<PrimePower> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let tz = n.trailing_zeros();
    if tz > 0 {
        out.push(PrimePower { q: 2, k: tz });
        n >>= tz;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            let mut k = 0;
            while n % q == 0 {
                n /= q;
                k += 1;
            }
            out.push(PrimePower { q, k });
        }
        q += 2;
    }
    if n > 1 {
        out.push(PrimePower { q: n, k: 1 });
    }
    out
}

pub fn von_mangoldt(m: u64) -> Mangoldt {
    assert!(m >= 1, "von_mangoldt requires m >= 1");
    match factorize(m).as_slice() {
        [pp] => Mangoldt {
            tag: PrimePowerTag::PrimePower {
                base: pp.q,
                exponent: pp.k,
            },
            value: (pp.q as f64).ln(),
        },
        _ => Mangoldt {
            tag: PrimePowerTag::NotPrimePower,
            value: 0.0,
        },
    }
}

/// Euler's totient from a factorisation of its argument.
pub fn phi_from_factors(factors: &[PrimePower]) -> u64 {
    factors
        .iter()
        .map(|pp| pp.q.pow(pp.k - 1) * (pp.q - 1))
        .product()
}

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1, "euler_phi requires m >= 1");
    phi_from_factors(&factorize(m))
}

/// `P+(n)`, with the convention `P+(1) = 1`.
pub fn largest_prime_factor(n: u64) -> u64 {
    assert!(n >= 1, "largest_prime_factor requires n >= 1");
    factorize(n).last().map_or(1, |pp| pp.q)
}

/// Decides `q >= p^(num/den)` exactly, as `q^den >= p^num` in big integers.
pub fn exact_geq_fractional_power(q: u64, p: u64, c: RationalExponent) -> bool {
    let lhs = BigUint::from(q).pow(c.den() as u32);
    let rhs = BigUint::from(p).pow(c.num() as u32);
    lhs >= rhs
}

/// Decides `q >= p^(num/den)`.
///
/// Compares `den·ln q` against `num·ln p` first and only falls back to
/// [`exact_geq_fractional_power`] when the two lie within
/// [`LOG_GUARD_BAND`] (relative) of each other.
pub fn geq_fractional_power(q: u64, p: u64, c: RationalExponent) -> bool {
    debug_assert!(q >= 1 && p >= 2);
    let lhs = c.den() as f64 * (q as f64).ln();
    let rhs = c.num() as f64 * (p as f64).ln();
    match log_margin(lhs, rhs) {
        Some(decision) => decision,
        None => exact_geq_fractional_power(q, p, c),
    }
}

/// `Some(lhs >= rhs)` when the gap is outside the guard band, else `None`.
#[inline]
pub(crate) fn log_margin(lhs: f64, rhs: f64) -> Option<bool> {
    let band = LOG_GUARD_BAND * lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    let diff = lhs - rhs;
    if diff > band {
        Some(true)
    } else if diff < -band {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: u64, d: u64) -> RationalExponent {
        RationalExponent::new(n, d).unwrap()
    }

    #[test]
    fn mangoldt_examples() {
        let m8 = von_mangoldt(8);
        assert_eq!(m8.tag, PrimePowerTag::PrimePower { base: 2, exponent: 3 });
        assert_eq!(m8.value, 2f64.ln());

        let m6 = von_mangoldt(6);
        assert!(!m6.tag.is_prime_power());
        assert_eq!(m6.value, 0.0);

        let m7 = von_mangoldt(7);
        assert_eq!(m7.tag.base(), Some(7));
        assert_eq!(m7.tag.exponent(), Some(1));
        assert_eq!(m7.value, 7f64.ln());

        assert_eq!(von_mangoldt(1).value, 0.0);
        assert!(!von_mangoldt(1).tag.is_prime_power());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(13), 12);
        assert_eq!(euler_phi(1_000_003), 1_000_002);
        // coprime residues of 12: 1, 5, 7, 11
        let direct = (1..=12u64).filter(|a| a.gcd(&12) == 1).count() as u64;
        assert_eq!(direct, 4);
        assert_eq!(euler_phi(12), direct);
    }

    #[test]
    fn lpf_examples() {
        assert_eq!(largest_prime_factor(1), 1);
        assert_eq!(largest_prime_factor(28), 7);
        assert_eq!(largest_prime_factor(97), 97);
        assert_eq!(largest_prime_factor(1 << 40), 2);
    }

    #[test]
    fn fractional_power_examples() {
        assert!(geq_fractional_power(11, 23, r(1, 2)));
        assert!(!geq_fractional_power(3, 13, r(1, 2)));
        for p in [2u64, 3, 101, 1_000_003] {
            for c in [r(1, 29), r(1, 2), r(19, 20), r(999, 1000)] {
                assert!(geq_fractional_power(p, p, c));
            }
        }
    }

    #[test]
    fn exact_ties_are_inclusive() {
        // 7^2 = 49 exactly, 2^10 = 1024 = 32^2
        assert!(geq_fractional_power(7, 49, r(1, 2)));
        assert!(!geq_fractional_power(6, 49, r(1, 2)));
        assert!(geq_fractional_power(32, 1024, r(1, 2)));
        assert!(geq_fractional_power(8, 1024, r(3, 10)));
        assert!(!geq_fractional_power(7, 1024, r(3, 10)));
        assert!(geq_fractional_power(1 << 20, 1 << 30, r(2, 3)));
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("7/20".parse::<RationalExponent>().unwrap(), r(7, 20));
        assert_eq!("0.35".parse::<RationalExponent>().unwrap(), r(7, 20));
        assert_eq!(".5".parse::<RationalExponent>().unwrap(), r(1, 2));
        assert_eq!("2/4".parse::<RationalExponent>().unwrap().to_string(), "1/2");
        assert!("0".parse::<RationalExponent>().is_err());
        assert!("1/0".parse::<RationalExponent>().is_err());
        assert!("abc".parse::<RationalExponent>().is_err());
        assert!("-0.5".parse::<RationalExponent>().is_err());
        assert!(RationalExponent::cutoff(1, 1).is_err());
        assert!(RationalExponent::cutoff(3, 2).is_err());
        assert!(r(6, 4).is_reduced());
    }

    #[test]
    fn ceil_power_matches_definition() {
        assert_eq!(r(1, 2).ceil_power(30), 6);
        assert_eq!(r(1, 2).ceil_power(49), 7);
        assert_eq!(r(1, 2).ceil_power(50), 8);
        assert_eq!(r(1, 29).ceil_power(30), 2);
        assert_eq!(r(1, 3).ceil_power(1_000_000), 100);
    }

    #[test]
    fn mangoldt_divisor_identity() {
        for n in 1..=10_000u64 {
            let s: f64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| von_mangoldt(d).value)
                .sum();
            assert!((s - (n as f64).ln()).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn phi_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        let mut checked = 0;
        while checked < 1000 {
            let a = rng.gen_range(1..100_000u64);
            let b = rng.gen_range(1..100_000u64);
            if a.gcd(&b) != 1 {
                continue;
            }
            assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
            checked += 1;
        }
    }

    proptest! {
        #[test]
        fn fast_path_agrees_with_exact(q in 1u64..1_000_000, p in 2u64..1_000_000,
                                       num in 1u64..40, den in 1u64..40) {
            let c = r(num, den);
            prop_assert_eq!(geq_fractional_power(q, p, c), exact_geq_fractional_power(q, p, c));
        }

        #[test]
        fn factorize_multiplies_back(n in 1u64..10_000_000_000) {
            let f = factorize(n);
            let product: u64 = f.iter().map(PrimePower::value).product();
            prop_assert_eq!(product, n);
            prop_assert!(f.windows(2).all(|w| w[0].q < w[1].q));
        }
    }
}
