//! Streams the primes up to a limit and counts a few progressions.
//!
//! cargo run --release --example enumerate_primes -- 10000000

use shifted_primes::sieve::{Sieve, SieveConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limit: u64 = std::env::args().nth(1).map_or(Ok(1_000_000), |s| s.parse())?;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let sieve = Sieve::new(SieveConfig::default().with_threads(threads));

    let mut count = 0u64;
    let mut last = 0;
    let mut twin = 0u64;
    for p in sieve.primes(limit)? {
        if p == last + 2 {
            twin += 1;
        }
        last = p;
        count += 1;
    }
    println!("pi({limit}) = {count}, largest {last}, twin pairs {twin}");

    for m in [3, 4, 10, 12, 101] {
        let n = sieve.primes_in_progression_count(limit, m)?;
        println!("pi({limit}; {m}, 1) = {n}");
    }
    Ok(())
}
