//! The `spl` command line.
//!
//! Exit status is 0 on success, 2 for usage errors (bad flags or values
//! outside a function's domain) and 1 for anything that fails at run time.
//! Human-readable summaries go to stdout; machine formats are written only
//! to `--out` paths. Timing lines go to stderr so stdout stays
//! byte-identical across runs and thread counts.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::arith::RationalExponent;
use crate::counting::scan::DEFAULT_EPSILON;
use crate::counting::{Counter, CountingError};
use crate::dickman::io::{read_table, write_table, TableIoError};
use crate::dickman::roots::{solve_theta1, solve_theta2};
use crate::dickman::{DickmanError, DickmanTable, DumpError, DEFAULT_DEGREE, DEFAULT_TOL, DEFAULT_U_MAX};
use crate::sieve::checkpoint::{CheckpointError, CheckpointWriter};
use crate::sieve::{Sieve, SieveConfig, SieveError, MEMORY_BUDGET_ENV};
use crate::survey::{
    default_checkpoints, default_cutoffs, emit_report, run_survey, ReportFormat, SurveyError,
};

#[derive(Debug, Parser)]
#[command(name = "spl", version, about = "Largest prime factors of shifted primes")]
pub struct Cli {
    /// Worker threads for the sieve [default: available cores]
    #[arg(long, global = true, value_parser = parse_threads)]
    pub threads: Option<usize>,

    /// Segment memory budget in bytes; accepts K, M and G suffixes (powers of 1024)
    #[arg(long, global = true, env = MEMORY_BUDGET_ENV, value_parser = parse_bytes)]
    pub memory_budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the primes up to a limit, one per line
    Primes(PrimesArgs),
    /// Count T_c(x), or T'_c(x) with --fixed-threshold
    Count(CountArgs),
    /// Goldfeld's weighted sum L(x; u, v)
    Lsum(LsumArgs),
    /// The ratios L(x;1,x)/x and L(x;1,sqrt x)/(x/2), and the T - T' gap for a list of cutoffs
    Lemmas(LemmasArgs),
    /// Equidistribution scan of pi(x; m, 1) over m in (Q, 2Q], Q = x^theta
    Scan(ScanArgs),
    /// The Dickman function and the thresholds theta1, theta2
    Dickman(DickmanArgs),
    /// Empirical densities against every reference curve over an (x, c) grid
    Survey(SurveyArgs),
}

#[derive(Debug, Args)]
pub struct PrimesArgs {
    /// Upper limit (inclusive)
    #[arg(long, value_parser = parse_count)]
    pub limit: u64,
    /// Print only the number of primes
    #[arg(long)]
    pub count: bool,
    /// Also write the factored shifted primes to this binary checkpoint
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    /// Cutoff as a/b or an exact decimal such as 0.35
    #[arg(long, value_parser = parse_cutoff)]
    pub c: RationalExponent,
    /// Use the fixed threshold x^c (T') instead of p^c (T)
    #[arg(long)]
    pub fixed_threshold: bool,
    /// Write the x,c_num,c_den,pi_x,T,T_prime,gap CSV row here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LsumArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    /// Lower end of the window (exclusive)
    #[arg(long)]
    pub u: f64,
    /// Upper end of the window (inclusive)
    #[arg(long)]
    pub v: f64,
    /// Write the result as JSON here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    /// At least 1000
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    /// Comma-separated cutoffs for the T - T' gap
    #[arg(long, value_delimiter = ',', value_parser = parse_cutoff,
          default_value = "1/2,2/3,3/4,4/5,9/10")]
    pub c_list: Vec<RationalExponent>,
    /// Write the report as JSON here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    /// Level exponent in (0, 17/32)
    #[arg(long)]
    pub theta: f64,
    /// Lower ratio bound for a modulus to count as regular
    #[arg(long, default_value_t = 1.0 - DEFAULT_EPSILON)]
    pub k1: f64,
    /// Upper ratio bound for a modulus to count as regular
    #[arg(long, default_value_t = 1.0 + DEFAULT_EPSILON)]
    pub k2: f64,
    /// Write the full scan (every modulus and its ratio) as JSON here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Load a table saved by `dickman save` instead of building one
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Largest u covered by a freshly built table
    #[arg(long, global = true, default_value_t = DEFAULT_U_MAX)]
    pub u_max: f64,
    /// Error tolerance for a freshly built table
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Chebyshev degree per unit piece
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE)]
    pub degree: usize,
}

#[derive(Debug, Args)]
pub struct DickmanArgs {
    #[command(flatten)]
    pub table: TableArgs,
    #[command(subcommand)]
    pub command: DickmanCommand,
}

#[derive(Debug, Subcommand)]
pub enum DickmanCommand {
    /// Print rho(u) for each u
    Eval {
        #[arg(required = true, allow_negative_numbers = true)]
        u: Vec<f64>,
    },
    /// Emit the u,rho(u) CSV on [0, u-max]
    Dump {
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Root of theta = 4 ∫_{1/theta-1}^{1/theta} rho(t)/t dt
    Theta1,
    /// Root of theta = 4 rho(1/theta)
    Theta2,
    /// Save the table in binary form
    Save {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// Comma-separated ascending checkpoints [default: 1e5,1e6,1e7,1e8]
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub x_list: Vec<u64>,
    /// Comma-separated cutoffs [default: k/20 for k = 2..19]
    #[arg(long, value_delimiter = ',', value_parser = parse_cutoff)]
    pub c_list: Vec<RationalExponent>,
    /// Report path; density_vs_c.dat is written beside it
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: ReportFormat,
    #[command(flatten)]
    pub table: TableArgs,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<SieveError> for CliError {
    fn from(e: SieveError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CountingError> for CliError {
    fn from(e: CountingError) -> Self {
        match e {
            CountingError::Sieve(e) => e.into(),
            CountingError::Domain(m) => CliError::Usage(m),
        }
    }
}

impl From<DickmanError> for CliError {
    fn from(e: DickmanError) -> Self {
        match e {
            DickmanError::Domain(m) => CliError::Usage(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<DumpError> for CliError {
    fn from(e: DumpError) -> Self {
        match e {
            DumpError::Dickman(e) => e.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<TableIoError> for CliError {
    fn from(e: TableIoError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<CheckpointError> for CliError {
    fn from(e: CheckpointError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<SurveyError> for CliError {
    fn from(e: SurveyError) -> Self {
        match e {
            SurveyError::Domain(m) => CliError::Usage(m),
            SurveyError::Counting(e) => e.into(),
            SurveyError::Dickman(e) => e.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(m)) => {
            let _ = out.flush();
            eprintln!("error: {m}\n\nFor more information, try '--help'.");
            2
        }
        Err(CliError::Runtime(m)) => {
            let _ = out.flush();
            eprintln!("error: {m}");
            1
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Primes(a) => primes(cli, a, out),
        Command::Count(a) => count(cli, a, out),
        Command::Lsum(a) => lsum(cli, a, out),
        Command::Lemmas(a) => lemmas(cli, a, out),
        Command::Scan(a) => scan(cli, a, out),
        Command::Dickman(a) => dickman(a, out),
        Command::Survey(a) => survey(cli, a, out),
    }
}

fn sieve(cli: &Cli) -> Result<Sieve, CliError> {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut config = SieveConfig::default().with_threads(threads);
    if let Some(budget) = cli.memory_budget {
        config = config.with_memory_budget(budget);
    }
    config.validate()?;
    Ok(Sieve::new(config))
}

fn counter(cli: &Cli) -> Result<Counter, CliError> {
    Ok(Counter::new(sieve(cli)?))
}

fn rate_line(what: &str, x: u64, started: Instant) {
    let secs = started.elapsed().as_secs_f64();
    eprintln!(
        "{what} to {x} in {secs:.2} s ({:.1} M/s)",
        x as f64 / secs.max(1e-9) / 1e6
    );
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn primes(cli: &Cli, a: &PrimesArgs, out: &mut impl Write) -> Result<(), CliError> {
    let sieve = sieve(cli)?;
    let started = Instant::now();
    let mut n = 0u64;
    if let Some(path) = &a.checkpoint {
        let mut w = CheckpointWriter::new(create(path)?)?;
        for rec in sieve.factored(a.limit)? {
            w.write(&rec)?;
            if !a.count {
                writeln!(out, "{}", rec.p)?;
            }
            n += 1;
        }
        w.finish()?.flush()?;
    } else {
        for p in sieve.primes(a.limit)? {
            if !a.count {
                writeln!(out, "{p}")?;
            }
            n += 1;
        }
    }
    if a.count {
        writeln!(out, "{n}")?;
    }
    rate_line("sieved", a.limit, started);
    Ok(())
}

fn count(cli: &Cli, a: &CountArgs, out: &mut impl Write) -> Result<(), CliError> {
    let counter = counter(cli)?;
    let started = Instant::now();
    let report = counter.count_grid(&[a.x], &[a.c])?;
    rate_line("counted", a.x, started);
    if a.fixed_threshold {
        writeln!(out, "T'_{{{}}}({}) = {}", a.c, a.x, report.t_prime(0, 0))?;
    } else {
        writeln!(out, "T_{{{}}}({}) = {}", a.c, a.x, report.t(0, 0))?;
    }
    if let Some(path) = &a.out {
        let mut w = create(path)?;
        report.write_csv(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn lsum(cli: &Cli, a: &LsumArgs, out: &mut impl Write) -> Result<(), CliError> {
    let r = counter(cli)?.weighted_sum_l(a.x, a.u, a.v)?;
    writeln!(out, "L({}; {}, {}) = {}", r.x, r.u, r.v, r.value)?;
    if let Some(path) = &a.out {
        write_json(path, &r)?;
    }
    Ok(())
}

fn lemmas(cli: &Cli, a: &LemmasArgs, out: &mut impl Write) -> Result<(), CliError> {
    let r = counter(cli)?.lemmas(a.x, &a.c_list)?;
    writeln!(out, "x = {}, pi(x) = {}", r.x, r.pi_x)?;
    writeln!(out, "L(x; 1, x) / x = {}", r.lemma1_ratio)?;
    writeln!(out, "L(x; 1, sqrt x) / (x/2) = {}", r.lemma2_ratio)?;
    writeln!(out, "c T-T'")?;
    for (c, gap) in &r.gaps {
        writeln!(out, "{c} {gap}")?;
    }
    if let Some(path) = &a.out {
        write_json(path, &r)?;
    }
    Ok(())
}

fn scan(cli: &Cli, a: &ScanArgs, out: &mut impl Write) -> Result<(), CliError> {
    let s = counter(cli)?.equidistribution_scan(a.x, a.theta, a.k1, a.k2)?;
    writeln!(out, "x = {}, theta = {}, Q = {}", s.x, s.theta, s.q)?;
    writeln!(out, "moduli m in [{}, {}]: {}", s.m_lo, s.m_hi, s.moduli())?;
    writeln!(out, "ratio < {}: {}", s.k1, s.exceptions_below)?;
    writeln!(out, "ratio > {}: {}", s.k2, s.exceptions_above)?;
    writeln!(out, "exception fraction = {}", s.exception_fraction())?;
    if let Some(path) = &a.out {
        write_json(path, &s)?;
    }
    Ok(())
}

fn load_table(a: &TableArgs) -> Result<DickmanTable, CliError> {
    match &a.table {
        Some(path) => {
            let f = File::open(path)
                .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            Ok(read_table(BufReader::new(f))?)
        }
        None => Ok(DickmanTable::build_with_degree(a.u_max, a.tol, a.degree)?),
    }
}

fn dickman(a: &DickmanArgs, out: &mut impl Write) -> Result<(), CliError> {
    let table = load_table(&a.table)?;
    match &a.command {
        DickmanCommand::Eval { u } => {
            for &u in u {
                writeln!(out, "rho({u}) = {}", table.rho(u)?)?;
            }
        }
        DickmanCommand::Dump { step, out: path } => match path {
            Some(path) => {
                let mut w = create(path)?;
                table.dump_csv(*step, &mut w)?;
                w.flush()?;
            }
            None => table.dump_csv(*step, &mut *out)?,
        },
        DickmanCommand::Theta1 => writeln!(out, "{:.12}", solve_theta1(&table)?.theta)?,
        DickmanCommand::Theta2 => writeln!(out, "{:.12}", solve_theta2(&table)?.theta)?,
        DickmanCommand::Save { out: path } => {
            let mut w = create(path)?;
            write_table(&table, &mut w)?;
        }
    }
    Ok(())
}

fn survey(cli: &Cli, a: &SurveyArgs, out: &mut impl Write) -> Result<(), CliError> {
    let xs = if a.x_list.is_empty() { default_checkpoints() } else { a.x_list.clone() };
    let cs = if a.c_list.is_empty() { default_cutoffs() } else { a.c_list.clone() };
    let counter = counter(cli)?;
    let table = load_table(&a.table)?;
    let started = Instant::now();
    let report = run_survey(&xs, &cs, &table, &counter)?;
    if let Some(&x) = xs.last() {
        rate_line("surveyed", x, started);
    }
    if let Some(xi) = xs.len().checked_sub(1) {
        writeln!(out, "x = {}, pi(x) = {}", xs[xi], report.grid.pi_counts[xi])?;
        writeln!(out, "c dens_T dens_Tp pomerance conjecture1")?;
        for (ci, c) in cs.iter().enumerate() {
            let na = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v:.6}"));
            writeln!(
                out,
                "{c} {:.6} {:.6} {} {}",
                report.density_t(xi, ci),
                report.density_t_prime(xi, ci),
                na(report.curves[ci].pomerance),
                na(report.curves[ci].conjecture1),
            )?;
        }
    }
    if let Some(path) = &a.out {
        for p in emit_report(&report, a.format, path)? {
            eprintln!("wrote {}", p.display());
        }
    }
    Ok(())
}

fn parse_cutoff(s: &str) -> Result<RationalExponent, String> {
    let c: RationalExponent = s.parse().map_err(|e| format!("{e}"))?;
    if !c.is_cutoff() {
        return Err(format!("cutoff {c} is not in (0, 1)"));
    }
    Ok(c)
}

/// Accepts `1000000`, `1_000_000`, `1e6` and `10^6`.
fn parse_count(s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    let bad = || format!("`{s}` is not a non-negative integer");
    let pow = |m: &str, base: u64, e: &str| -> Result<u64, String> {
        let m: u64 = m.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        base.checked_pow(e)
            .and_then(|b| b.checked_mul(m))
            .ok_or_else(|| format!("`{s}` overflows 64 bits"))
    };
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        return pow(m, 10, e);
    }
    if let Some((b, e)) = t.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        return pow("1", b, e);
    }
    t.parse().map_err(|_| bad())
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("threads must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("`{s}` is not a thread count")),
    }
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let (digits, shift) = match t.char_indices().last() {
        Some((i, 'k' | 'K')) => (&t[..i], 10),
        Some((i, 'm' | 'M')) => (&t[..i], 20),
        Some((i, 'g' | 'G')) => (&t[..i], 30),
        _ => (t, 0),
    };
    let n: u64 = digits.parse().map_err(|_| format!("`{s}` is not a byte count"))?;
    n.checked_mul(1 << shift)
        .filter(|&b| b > 0)
        .ok_or_else(|| format!("`{s}` is not a usable byte count"))
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_counts() {
        assert_eq!(parse_count("1000"), Ok(1000));
        assert_eq!(parse_count("1_000_000"), Ok(1_000_000));
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("3e2"), Ok(300));
        assert_eq!(parse_count("10^9"), Ok(1_000_000_000));
        assert!(parse_count("1e30").is_err());
        assert!(parse_count("-5").is_err());
        assert!(parse_count("1.5e3").is_err());
    }

    #[test]
    fn parses_bytes_and_threads() {
        assert_eq!(parse_bytes("512M"), Ok(512 << 20));
        assert_eq!(parse_bytes("4096"), Ok(4096));
        assert_eq!(parse_bytes("1g"), Ok(1 << 30));
        assert!(parse_bytes("0").is_err());
        assert!(parse_bytes("lots").is_err());
        assert!(parse_threads("0").is_err());
        assert_eq!(parse_threads("8"), Ok(8));
    }

    #[test]
    fn parses_cutoffs() {
        assert_eq!(parse_cutoff("0.35").unwrap().to_string(), "7/20");
        assert_eq!(parse_cutoff("2/4").unwrap().to_string(), "1/2");
        assert!(parse_cutoff("1").is_err());
        assert!(parse_cutoff("3/2").is_err());
        assert!(parse_cutoff("x").is_err());
    }

    #[test]
    fn lists_and_globals() {
        let cli = Cli::try_parse_from([
            "spl", "survey", "--x-list", "1e3,1e4", "--c-list", "1/2,0.75", "--threads", "2",
        ])
        .unwrap();
        assert_eq!(cli.threads, Some(2));
        let Command::Survey(a) = cli.command else { panic!() };
        assert_eq!(a.x_list, vec![1000, 10_000]);
        assert_eq!(a.c_list[1].to_string(), "3/4");
        assert_eq!(a.format, ReportFormat::Csv);
    }

    #[test]
    fn usage_errors() {
        for argv in [
            &["spl", "bogus"][..],
            &["spl", "count", "--x", "30"],
            &["spl", "count", "--x", "30", "--c", "5/4"],
            &["spl", "primes", "--limit", "10", "--threads", "0"],
            &["spl", "survey", "--format", "xml"],
        ] {
            let err = Cli::try_parse_from(argv).unwrap_err();
            assert!(err.use_stderr(), "{argv:?}");
        }
    }
}
