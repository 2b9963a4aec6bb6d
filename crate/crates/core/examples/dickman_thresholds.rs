//! Builds the Dickman table, solves for θ1 and θ2 and saves the table.

use shifted_primes::dickman::io::{read_table, write_table};
use shifted_primes::dickman::roots::{theta1_equation, theta2_equation};
use shifted_primes::dickman::{solve_theta1, solve_theta2, DickmanTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = DickmanTable::build(10.0, 1e-12)?;
    println!(
        "degree {}, {} pieces, error bound {:.2e}",
        table.degree(),
        table.pieces().len(),
        table.error_bound()
    );
    for u in [1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 10.0] {
        println!("rho({u:>4}) = {:.15e}", table.rho(u)?);
    }

    let t1 = solve_theta1(&table)?;
    let t2 = solve_theta2(&table)?;
    println!(
        "theta1 = {:.12} (residual {:.1e}, {} evaluations)",
        t1.theta, t1.residual, t1.evaluations
    );
    println!(
        "theta2 = {:.12} (residual {:.1e}, {} evaluations)",
        t2.theta, t2.residual, t2.evaluations
    );
    for th in [0.30, 0.34, 0.36, 0.38, 0.42] {
        println!(
            "  f1({th:.2}) = {:+.6}  f2({th:.2}) = {:+.6}",
            theta1_equation(&table, th)?,
            theta2_equation(&table, th)?
        );
    }

    let mut bytes = Vec::new();
    write_table(&table, &mut bytes)?;
    let back = read_table(bytes.as_slice())?;
    println!("saved {} bytes, reload equal: {}", bytes.len(), back == table);
    Ok(())
}
