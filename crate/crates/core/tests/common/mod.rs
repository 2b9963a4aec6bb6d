//! Trial-division reference implementations. Slow, simple and independent
//! of the sieve.

#![allow(dead_code)]

use num_bigint::BigUint;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Prime factorisation as ascending `(q, k)`.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest prime factor with `P+(1) = 1`.
pub fn lpf(n: u64) -> u64 {
    factor(n).last().map_or(1, |&(q, _)| q)
}

/// `q^den >= p^num`, in big integers.
pub fn ge_pow(q: u64, p: u64, num: u64, den: u64) -> bool {
    BigUint::from(q).pow(den as u32) >= BigUint::from(p).pow(num as u32)
}

pub fn t_brute(x: u64, num: u64, den: u64) -> u64 {
    primes_upto(x)
        .into_iter()
        .filter(|&p| ge_pow(lpf(p - 1), p, num, den))
        .count() as u64
}

pub fn t_prime_brute(x: u64, num: u64, den: u64) -> u64 {
    primes_upto(x)
        .into_iter()
        .filter(|&p| ge_pow(lpf(p - 1), x, num, den))
        .count() as u64
}

pub fn pi_progression(primes: &[u64], m: u64) -> u64 {
    primes.iter().filter(|&&p| p % m == 1 % m).count() as u64
}

/// `Λ(m)`.
pub fn mangoldt(m: u64) -> f64 {
    match factor(m).as_slice() {
        [(q, _)] => (*q as f64).ln(),
        _ => 0.0,
    }
}

pub fn phi(m: u64) -> u64 {
    (1..=m).filter(|&a| num_integer::gcd(a, m) == 1).count() as u64
}

/// `Σ_{u < m <= v} Λ(m) π(x; m, 1)` straight from the definition.
pub fn l_definitional(x: u64, u: f64, v: f64) -> f64 {
    let primes = primes_upto(x);
    let mut total = 0.0;
    for m in 1..=x {
        let mf = m as f64;
        if mf <= u || mf > v {
            continue;
        }
        let lam = mangoldt(m);
        if lam > 0.0 {
            total += lam * pi_progression(&primes, m) as f64;
        }
    }
    total
}
