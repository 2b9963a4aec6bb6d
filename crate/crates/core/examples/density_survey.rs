//! Empirical densities against the reference curves, written as CSV, JSON
//! and a plot file.
//!
//! cargo run --release --example density_survey -- /tmp/survey

use std::path::PathBuf;

use shifted_primes::counting::Counter;
use shifted_primes::dickman::default_table;
use shifted_primes::survey::{default_cutoffs, emit_report, run_survey, ReferenceCurve, ReportFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("shifted_primes_survey"), PathBuf::from);
    std::fs::create_dir_all(&dir)?;

    let table = default_table();
    let xs = [100_000, 1_000_000, 10_000_000];
    let cs = default_cutoffs();
    let report = run_survey(&xs, &cs, &table, &Counter::default())?;

    let xi = xs.len() - 1;
    print!("{:>5} {:>8} {:>8}", "c", "T/pi", "T'/pi");
    for curve in ReferenceCurve::ALL {
        print!(" {:>13}", curve.name());
    }
    println!();
    for (ci, c) in cs.iter().enumerate() {
        print!("{:>5.2} {:>8.4} {:>8.4}", c.to_f64(), report.density_t(xi, ci), report.density_t_prime(xi, ci));
        for curve in ReferenceCurve::ALL {
            match report.curves[ci].get(curve) {
                Some(v) => print!(" {v:>13.4}"),
                None => print!(" {:>13}", "-"),
            }
        }
        println!();
    }

    for (name, format) in [("survey.csv", ReportFormat::Csv), ("survey.json", ReportFormat::Json)] {
        for path in emit_report(&report, format, &dir.join(name))? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
