//! How evenly the primes up to `x` spread over the classes `1 mod m` for
//! `m ∈ (Q, 2Q]`, `Q = x^θ`. Prints the ratio histogram for each θ.

use shifted_primes::counting::Counter;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x: u64 = std::env::args().nth(1).map_or(Ok(10_000_000), |s| s.parse())?;
    let counter = Counter::default();
    for theta in [0.3, 0.4, 0.45, 0.5] {
        let s = counter.equidistribution_scan(x, theta, 0.9, 1.1)?;
        println!(
            "theta = {theta}: {} moduli in [{}, {}], {} below 0.9, {} above 1.1",
            s.moduli(),
            s.m_lo,
            s.m_hi,
            s.exceptions_below,
            s.exceptions_above
        );
        let h = &s.histogram;
        let peak = h.counts.iter().copied().max().unwrap_or(0).max(1);
        for (i, &n) in h.counts.iter().enumerate().filter(|&(_, &n)| n > 0) {
            let lo = i as f64 * h.bin_width;
            let bar = "#".repeat((n * 50 / peak) as usize);
            println!("  [{lo:.2}, {:.2}) {n:>6} {bar}", lo + h.bin_width);
        }
        if h.overflow > 0 {
            println!("  overflow {}", h.overflow);
        }
    }
    Ok(())
}
