mod common;

use proptest::prelude::*;
use shifted_primes::arith::RationalExponent;
use shifted_primes::counting::Counter;
use shifted_primes::sieve::{Sieve, SieveConfig};

fn r(n: u64, d: u64) -> RationalExponent {
    RationalExponent::cutoff(n, d).unwrap()
}

#[test]
fn t_and_t_prime_match_brute_force() {
    let cs = [(1, 5), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4)];
    let cutoffs: Vec<_> = cs.iter().map(|&(n, d)| r(n, d)).collect();
    let counter = Counter::new(Sieve::new(SieveConfig::default().with_segment_len(1 << 13)));
    let xs = [1_000, 30_000, 100_000];
    let report = counter.count_grid(&xs, &cutoffs).unwrap();
    for (xi, &x) in xs.iter().enumerate() {
        assert_eq!(report.pi_counts[xi], common::primes_upto(x).len() as u64);
        for (ci, &(n, d)) in cs.iter().enumerate() {
            assert_eq!(report.t(xi, ci), common::t_brute(x, n, d), "T x={x} c={n}/{d}");
            assert_eq!(report.t_prime(xi, ci), common::t_prime_brute(x, n, d), "T' x={x} c={n}/{d}");
        }
    }
}

#[test]
fn boundary_cases_are_exact() {
    // p = 5, p - 1 = 4: P+ = 2 = 4^{1/2} < 5^{1/2}; p = 3: P+(2) = 2 >= 3^{1/2}
    let counter = Counter::default();
    assert_eq!(counter.count_t(5, r(1, 2)).unwrap(), common::t_brute(5, 1, 2));
    // x = 49: x^{1/2} = 7 exactly, so P+(p-1) = 7 counts for T'
    assert_eq!(counter.count_t_prime(49, r(1, 2)).unwrap(), common::t_prime_brute(49, 1, 2));
    assert_eq!(counter.count_t_prime(43, r(1, 2)).unwrap(), common::t_prime_brute(43, 1, 2));
}

#[test]
fn l_sum_matches_definition() {
    let x = 10_000u64;
    let xf = x as f64;
    let counter = Counter::default();
    for (u, v) in [(1.0, xf), (1.0, xf.sqrt()), (xf.sqrt(), xf), (17.5, 400.0)] {
        let got = counter.weighted_sum_l(x, u, v).unwrap().value;
        let want = common::l_definitional(x, u, v);
        assert!(((got - want) / want).abs() <= 1e-12, "({u}, {v}]: {got} vs {want}");
    }
}

#[test]
fn mangoldt_phi_sum_matches_definition() {
    let counter = Counter::default();
    for (lo, hi) in [(16, 32), (100, 200), (1000, 2000)] {
        let want: f64 = (lo + 1..=hi)
            .map(|m| common::mangoldt(m) / common::phi(m) as f64)
            .sum();
        let got = counter.mangoldt_phi_sum(lo, hi).unwrap();
        assert!((got - want).abs() <= 1e-12 * want, "({lo}, {hi}]");
    }
}

#[test]
fn prime_power_tail_matches_definition() {
    let x = 50_000u64;
    let primes = common::primes_upto(x);
    let counter = Counter::default();
    for (n, d) in [(1, 2), (4, 5), (3, 5)] {
        let mut want = 0.0;
        for m in 2..=x {
            let f = common::factor(m);
            if f.len() == 1 && f[0].1 > 1 && common::ge_pow(m, x, n, d) {
                want += (f[0].0 as f64).ln() * common::pi_progression(&primes, m) as f64;
            }
        }
        let got = counter.prime_power_tail(x, r(n, d)).unwrap().value;
        assert!((got - want).abs() <= 1e-9 * want.max(1.0), "c = {n}/{d}: {got} vs {want}");
    }
}

#[test]
fn scan_counts_match_brute_force() {
    let x = 200_000u64;
    let primes = common::primes_upto(x);
    let scan = Counter::default()
        .equidistribution_scan(x, 0.45, 0.9, 1.1)
        .unwrap();
    assert!(scan.moduli() > 0);
    let pi = primes.len() as f64;
    for &(m, ratio) in &scan.ratios {
        let want = common::pi_progression(&primes, m) as f64 * common::phi(m) as f64 / pi;
        assert!((ratio - want).abs() < 1e-12, "m = {m}");
    }
    let below = scan.ratios.iter().filter(|r| r.1 < 0.9).count() as u64;
    let above = scan.ratios.iter().filter(|r| r.1 > 1.1).count() as u64;
    assert_eq!((below, above), (scan.exceptions_below, scan.exceptions_above));
}

#[test]
fn lemma3_gap_is_difference() {
    let counter = Counter::default();
    for (n, d) in [(1, 2), (2, 3), (9, 10)] {
        let gap = counter.lemma3_gap(20_000, r(n, d)).unwrap();
        assert_eq!(gap, common::t_brute(20_000, n, d) - common::t_prime_brute(20_000, n, d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_cells_match(x in 2u64..4000, n in 1u64..12, extra in 1u64..12) {
        let c = r(n, n + extra);
        let counter = Counter::default();
        let rep = counter.count_grid(&[x], &[c]).unwrap();
        prop_assert_eq!(rep.t(0, 0), common::t_brute(x, c.num(), c.den()));
        prop_assert_eq!(rep.t_prime(0, 0), common::t_prime_brute(x, c.num(), c.den()));
    }
}
