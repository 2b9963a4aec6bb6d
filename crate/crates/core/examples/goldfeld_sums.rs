//! Goldfeld's weighted sum `L(x; u, v)` and the diagnostics built on it.

use shifted_primes::arith::RationalExponent;
use shifted_primes::counting::Counter;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let counter = Counter::default();
    let cutoffs: Vec<RationalExponent> =
        ["1/2", "3/5", "3/4", "9/10"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;

    println!("{:>10} {:>12} {:>12} {:>8}", "x", "L(1,x)/x", "L(1,√x)/(x/2)", "pi(x)");
    for x in [10_000u64, 100_000, 1_000_000, 10_000_000] {
        let r = counter.lemmas(x, &cutoffs)?;
        println!("{:>10} {:>12.6} {:>12.6} {:>8}", x, r.lemma1_ratio, r.lemma2_ratio, r.pi_x);
        if x == 10_000_000 {
            for (c, gap) in &r.gaps {
                println!("    T - T' at c = {c}: {gap}");
            }
        }
    }

    let x = 1_000_000u64;
    let xf = x as f64;
    let windows = [(1.0, xf.sqrt()), (xf.sqrt(), xf.powf(0.75)), (xf.powf(0.75), xf)];
    for r in counter.weighted_sums_l(x, &windows)? {
        println!("L({}; {:.1}, {:.1}) / x = {:.6}", r.x, r.u, r.v, r.value / xf);
    }

    for q in [1_000u64, 100_000, 1_000_000] {
        println!("sum over (Q, 2Q] of Λ(m)/φ(m), Q = {q}: {:.6}", counter.dyadic_mangoldt_phi_sum(q)?);
    }

    let tail = counter.prime_power_tail(x, "4/5".parse()?)?;
    println!(
        "prime-power tail at x = {x}, c = 4/5: {:.3} (x^(3/4) (ln x)^2 = {:.3e})",
        tail.value,
        xf.powf(0.75) * xf.ln().powi(2)
    );
    Ok(())
}
