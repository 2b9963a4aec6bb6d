//! Walks the factored shifted primes, keeps the record holders for the
//! smallest and largest `log P+(p-1) / log p`, and writes a checkpoint that
//! is read back.

use std::io::{BufReader, BufWriter};

use shifted_primes::sieve::checkpoint::{CheckpointReader, CheckpointWriter};
use shifted_primes::sieve::Sieve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limit: u64 = std::env::args().nth(1).map_or(Ok(2_000_000), |s| s.parse())?;
    let sieve = Sieve::default();

    let path = std::env::temp_dir().join("shifted_primes_example.bin");
    let mut writer = CheckpointWriter::new(BufWriter::new(std::fs::File::create(&path)?))?;
    let mut smoothest = (f64::INFINITY, 0);
    let mut roughest_composite = (0.0, 0);
    for rec in sieve.factored(limit)? {
        writer.write(&rec)?;
        if rec.p < 1000 {
            continue;
        }
        let e = (rec.lpf as f64).ln() / (rec.p as f64).ln();
        if e < smoothest.0 {
            smoothest = (e, rec.p);
        }
        // p - 1 = 2q gives exponent near 1; skip that trivial family
        if rec.factors.len() > 2 && e > roughest_composite.0 {
            roughest_composite = (e, rec.p);
        }
    }
    let written = writer.records_written();
    writer.finish()?;

    println!("{written} records in {}", path.display());
    println!("smoothest p - 1 (p >= 1000): p = {}, exponent {:.4}", smoothest.1, smoothest.0);
    println!(
        "largest exponent with three or more prime factors: p = {}, exponent {:.4}",
        roughest_composite.1, roughest_composite.0
    );

    let reader = CheckpointReader::new(BufReader::new(std::fs::File::open(&path)?))?;
    for rec in reader.take(6) {
        let rec = rec?;
        let parts: Vec<String> = rec
            .factors
            .iter()
            .map(|pp| if pp.k == 1 { pp.q.to_string() } else { format!("{}^{}", pp.q, pp.k) })
            .collect();
        println!("{} - 1 = {}", rec.p, if parts.is_empty() { "1".into() } else { parts.join(" * ") });
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
