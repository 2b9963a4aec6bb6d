//! `T_c(x)` and `T'_c(x)` over a small grid, printed as CSV.

use shifted_primes::arith::RationalExponent;
use shifted_primes::counting::Counter;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let xs = [30, 10_000, 1_000_000, 10_000_000];
    let cs: Vec<RationalExponent> = ["1/4", "1/3", "1/2", "0.55", "2/3", "4/5", "9/10"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let report = Counter::default().count_grid(&xs, &cs)?;
    report.write_csv(std::io::stdout().lock())?;

    let last = xs.len() - 1;
    println!();
    for (ci, c) in cs.iter().enumerate() {
        let pi = report.pi_counts[last] as f64;
        println!(
            "c = {c:>5}: T/pi = {:.4}, T'/pi = {:.4}",
            report.t(last, ci) as f64 / pi,
            report.t_prime(last, ci) as f64 / pi
        );
    }
    Ok(())
}
