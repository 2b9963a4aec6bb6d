//! Sweeps of `(x, c)` grids that set empirical densities `T_c(x)/π(x)` and
//! `T'_c(x)/π(x)` beside the theoretical reference curves.
//!
//! Every curve is the main term of an asymptotic statement. None of them is
//! a bound at finite `x`, and a finite-`x` deviation says nothing about the
//! statement it comes from.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::RationalExponent;
use crate::counting::{CountReport, Counter, CountingError};
use crate::dickman::roots::{solve_theta1, solve_theta2};
use crate::dickman::{DickmanError, DickmanTable};

pub const DENSITY_PLOT_FILE: &str = "density_vs_c.dat";

pub const CSV_HEADER: &str =
    "x,c_num,c_den,pi,T,Tp,dens_T,dens_Tp,ref_luca,ref_fengwu,ref_lwx,ref_conj1,ref_pomerance";

pub const CURVE_LABEL: &str = "asymptotic reference, not finite-x bound";

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Dickman(#[from] DickmanError),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceCurve {
    GoldfeldHalf,
    LucaLower,
    FengWu,
    LiuWuXi,
    Conjecture1,
    Pomerance,
}

impl ReferenceCurve {
    pub const ALL: [ReferenceCurve; 6] = [
        ReferenceCurve::GoldfeldHalf,
        ReferenceCurve::LucaLower,
        ReferenceCurve::FengWu,
        ReferenceCurve::LiuWuXi,
        ReferenceCurve::Conjecture1,
        ReferenceCurve::Pomerance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReferenceCurve::GoldfeldHalf => "goldfeld_half",
            ReferenceCurve::LucaLower => "luca_lower",
            ReferenceCurve::FengWu => "feng_wu",
            ReferenceCurve::LiuWuXi => "liu_wu_xi",
            ReferenceCurve::Conjecture1 => "conjecture1",
            ReferenceCurve::Pomerance => "pomerance",
        }
    }
}

/// The integer `k >= 1` with `c ∈ [1/(k+1), 1/k)`.
pub fn conjecture_index(c: RationalExponent) -> u64 {
    // c >= 1/(k+1)  <=>  k + 1 >= den/num
    c.den().div_ceil(c.num()) - 1
}

/// Evaluates reference curves against one Dickman table.
///
/// `θ1` and `θ2` are solved once at construction since they decide where
/// the Feng–Wu and Liu–Wu–Xi curves apply.
#[derive(Debug, Clone)]
pub struct CurveEvaluator<'a> {
    table: &'a DickmanTable,
    theta1: f64,
    theta2: f64,
}

impl<'a> CurveEvaluator<'a> {
    pub fn new(table: &'a DickmanTable) -> Result<Self, DickmanError> {
        Ok(Self {
            table,
            theta1: solve_theta1(table)?.theta,
            theta2: solve_theta2(table)?.theta,
        })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    /// Value of `curve` at `c`, or `None` where the curve does not apply.
    pub fn value_at(
        &self,
        curve: ReferenceCurve,
        c: RationalExponent,
    ) -> Result<Option<f64>, DickmanError> {
        let cf = c.to_f64();
        let u = c.den() as f64 / c.num() as f64;
        let half = RationalExponent::cutoff(1, 2).expect("1/2 is a cutoff");
        Ok(match curve {
            ReferenceCurve::GoldfeldHalf => (c <= half).then_some(0.5),
            ReferenceCurve::LucaLower => (c <= half).then_some(1.0 - cf),
            ReferenceCurve::FengWu if cf < self.theta1 => {
                Some(1.0 - 4.0 * self.table.rho_over_t_integral(u - 1.0, u)?)
            }
            ReferenceCurve::LiuWuXi if cf < self.theta2 => Some(1.0 - 4.0 * self.table.rho(u)?),
            ReferenceCurve::FengWu | ReferenceCurve::LiuWuXi => None,
            ReferenceCurve::Conjecture1 => {
                let k = conjecture_index(c) as f64;
                Some(1.0 - 1.0 / (k + 1.0))
            }
            ReferenceCurve::Pomerance => Some(1.0 - self.table.rho(u)?),
        })
    }

    pub fn curves_at(&self, c: RationalExponent) -> Result<CurveSet, DickmanError> {
        let v = |curve| self.value_at(curve, c);
        Ok(CurveSet {
            goldfeld_half: v(ReferenceCurve::GoldfeldHalf)?,
            luca_lower: v(ReferenceCurve::LucaLower)?,
            feng_wu: v(ReferenceCurve::FengWu)?,
            liu_wu_xi: v(ReferenceCurve::LiuWuXi)?,
            conjecture1: v(ReferenceCurve::Conjecture1)?,
            pomerance: v(ReferenceCurve::Pomerance)?,
        })
    }
}

/// One value per reference curve; `None` marks "not applicable".
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CurveSet {
    pub goldfeld_half: Option<f64>,
    pub luca_lower: Option<f64>,
    pub feng_wu: Option<f64>,
    pub liu_wu_xi: Option<f64>,
    pub conjecture1: Option<f64>,
    pub pomerance: Option<f64>,
}

impl CurveSet {
    pub fn get(&self, curve: ReferenceCurve) -> Option<f64> {
        match curve {
            ReferenceCurve::GoldfeldHalf => self.goldfeld_half,
            ReferenceCurve::LucaLower => self.luca_lower,
            ReferenceCurve::FengWu => self.feng_wu,
            ReferenceCurve::LiuWuXi => self.liu_wu_xi,
            ReferenceCurve::Conjecture1 => self.conjecture1,
            ReferenceCurve::Pomerance => self.pomerance,
        }
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> CurveSet {
        CurveSet {
            goldfeld_half: self.goldfeld_half.map(&f),
            luca_lower: self.luca_lower.map(&f),
            feng_wu: self.feng_wu.map(&f),
            liu_wu_xi: self.liu_wu_xi.map(&f),
            conjecture1: self.conjecture1.map(&f),
            pomerance: self.pomerance.map(&f),
        }
    }
}

/// Empirical density minus each reference value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellDeltas {
    pub t: CurveSet,
    pub t_prime: CurveSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyMetadata {
    pub version: String,
    pub threads: usize,
    pub segment_len: u64,
    pub table_u_max: f64,
    pub table_degree: usize,
    pub table_tol: f64,
    pub table_error_bound: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub curve_label: String,
    pub count_seconds: f64,
    pub curve_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyReport {
    pub grid: CountReport,
    /// Indexed like `grid.c_values`.
    pub curves: Vec<CurveSet>,
    /// Indexed `[x][c]` like the grid.
    pub deltas: Vec<Vec<CellDeltas>>,
    pub metadata: SurveyMetadata,
}

impl SurveyReport {
    pub fn density_t(&self, xi: usize, ci: usize) -> f64 {
        self.grid.t(xi, ci) as f64 / self.grid.pi_counts[xi] as f64
    }

    pub fn density_t_prime(&self, xi: usize, ci: usize) -> f64 {
        self.grid.t_prime(xi, ci) as f64 / self.grid.pi_counts[xi] as f64
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for (xi, &x) in self.grid.x_checkpoints.iter().enumerate() {
            for (ci, c) in self.grid.c_values.iter().enumerate() {
                let k = &self.curves[ci];
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    x,
                    c.num(),
                    c.den(),
                    self.grid.pi_counts[xi],
                    self.grid.t(xi, ci),
                    self.grid.t_prime(xi, ci),
                    self.density_t(xi, ci),
                    self.density_t_prime(xi, ci),
                    Na(k.luca_lower),
                    Na(k.feng_wu),
                    Na(k.liu_wu_xi),
                    Na(k.conjecture1),
                    Na(k.pomerance),
                )?;
            }
        }
        Ok(())
    }

    /// Columns `c empirical_T empirical_Tprime pomerance conjecture1` at the
    /// largest checkpoint.
    pub fn write_density_plot<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "c empirical_T empirical_Tprime pomerance conjecture1")?;
        let Some(xi) = self.grid.x_checkpoints.len().checked_sub(1) else {
            return Ok(());
        };
        for (ci, c) in self.grid.c_values.iter().enumerate() {
            writeln!(
                out,
                "{} {} {} {} {}",
                c.to_f64(),
                self.density_t(xi, ci),
                self.density_t_prime(xi, ci),
                Na(self.curves[ci].pomerance),
                Na(self.curves[ci].conjecture1),
            )?;
        }
        Ok(())
    }

    pub fn to_document(&self) -> SurveyDocument {
        let g = &self.grid;
        let by_c = g
            .c_values
            .iter()
            .enumerate()
            .map(|(ci, &c)| CutoffEntry {
                c_num: c.num(),
                c_den: c.den(),
                curves: self.curves[ci],
                cells: g
                    .x_checkpoints
                    .iter()
                    .enumerate()
                    .map(|(xi, &x)| CellEntry {
                        x,
                        pi: g.pi_counts[xi],
                        t: g.t(xi, ci),
                        tp: g.t_prime(xi, ci),
                        dens_t: self.density_t(xi, ci),
                        dens_tp: self.density_t_prime(xi, ci),
                        delta_t: self.deltas[xi][ci].t,
                        delta_tp: self.deltas[xi][ci].t_prime,
                    })
                    .collect(),
            })
            .collect();
        SurveyDocument {
            metadata: self.metadata.clone(),
            x_checkpoints: g.x_checkpoints.clone(),
            by_c,
        }
    }

    pub fn from_document(doc: SurveyDocument) -> Result<Self, SurveyError> {
        let nx = doc.x_checkpoints.len();
        let mut c_values = Vec::with_capacity(doc.by_c.len());
        let mut curves = Vec::with_capacity(doc.by_c.len());
        let mut t_counts = vec![Vec::new(); nx];
        let mut t_prime_counts = vec![Vec::new(); nx];
        let mut deltas = vec![Vec::new(); nx];
        let mut pi_counts = vec![0; nx];
        for entry in doc.by_c {
            let c = RationalExponent::cutoff(entry.c_num, entry.c_den)
                .map_err(|e| SurveyError::Domain(e.to_string()))?;
            if entry.cells.len() != nx {
                return Err(SurveyError::Domain(format!(
                    "c = {c} has {} cells, expected {nx}",
                    entry.cells.len()
                )));
            }
            for (xi, cell) in entry.cells.into_iter().enumerate() {
                if cell.x != doc.x_checkpoints[xi] {
                    return Err(SurveyError::Domain(format!(
                        "c = {c}: cell {xi} has x = {}, expected {}",
                        cell.x, doc.x_checkpoints[xi]
                    )));
                }
                pi_counts[xi] = cell.pi;
                t_counts[xi].push(cell.t);
                t_prime_counts[xi].push(cell.tp);
                deltas[xi].push(CellDeltas {
                    t: cell.delta_t,
                    t_prime: cell.delta_tp,
                });
            }
            c_values.push(c);
            curves.push(entry.curves);
        }
        Ok(SurveyReport {
            grid: CountReport {
                x_checkpoints: doc.x_checkpoints,
                c_values,
                t_counts,
                t_prime_counts,
                pi_counts,
            },
            curves,
            deltas,
            metadata: doc.metadata,
        })
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<(), SurveyError> {
        serde_json::to_writer_pretty(out, &self.to_document())?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self, SurveyError> {
        Self::from_document(serde_json::from_reader(input)?)
    }
}

/// JSON layout of a report, nested by `c` and then by `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyDocument {
    pub metadata: SurveyMetadata,
    pub x_checkpoints: Vec<u64>,
    pub by_c: Vec<CutoffEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutoffEntry {
    pub c_num: u64,
    pub c_den: u64,
    pub curves: CurveSet,
    pub cells: Vec<CellEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellEntry {
    pub x: u64,
    pub pi: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "Tp")]
    pub tp: u64,
    #[serde(rename = "dens_T")]
    pub dens_t: f64,
    #[serde(rename = "dens_Tp")]
    pub dens_tp: f64,
    #[serde(rename = "delta_T")]
    pub delta_t: CurveSet,
    #[serde(rename = "delta_Tp")]
    pub delta_tp: CurveSet,
}

struct Na(Option<f64>);

impl std::fmt::Display for Na {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("NA"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}`, expected csv or json")),
        }
    }
}

/// `x ∈ {10^5, 10^6, 10^7, 10^8}`.
pub fn default_checkpoints() -> Vec<u64> {
    vec![100_000, 1_000_000, 10_000_000, 100_000_000]
}

/// `c = k/20` for `k = 2..=19`.
pub fn default_cutoffs() -> Vec<RationalExponent> {
    (2..20)
        .map(|k| RationalExponent::cutoff(k, 20).expect("k/20 is a cutoff"))
        .collect()
}

/// Counts the grid in one sieve pass and evaluates every reference curve.
pub fn run_survey(
    checkpoints: &[u64],
    cutoffs: &[RationalExponent],
    table: &DickmanTable,
    counter: &Counter,
) -> Result<SurveyReport, SurveyError> {
    for c in cutoffs {
        let u = c.den() as f64 / c.num() as f64;
        if c.is_cutoff() && u > table.u_max() {
            return Err(SurveyError::Domain(format!(
                "c = {c} needs rho at 1/c = {u}, table stops at u = {}",
                table.u_max()
            )));
        }
    }
    let started = Instant::now();
    let grid = counter.count_grid(checkpoints, cutoffs)?;
    let count_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let eval = CurveEvaluator::new(table)?;
    let curves = cutoffs
        .iter()
        .map(|&c| eval.curves_at(c))
        .collect::<Result<Vec<_>, _>>()?;
    let curve_seconds = started.elapsed().as_secs_f64();

    let deltas = (0..grid.x_checkpoints.len())
        .map(|xi| {
            let pi = grid.pi_counts[xi] as f64;
            (0..cutoffs.len())
                .map(|ci| {
                    let dt = grid.t(xi, ci) as f64 / pi;
                    let dtp = grid.t_prime(xi, ci) as f64 / pi;
                    CellDeltas {
                        t: curves[ci].map(|r| dt - r),
                        t_prime: curves[ci].map(|r| dtp - r),
                    }
                })
                .collect()
        })
        .collect();

    let config = counter.sieve().config();
    Ok(SurveyReport {
        grid,
        curves,
        deltas,
        metadata: SurveyMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            threads: config.threads,
            segment_len: config.segment_len,
            table_u_max: table.u_max(),
            table_degree: table.degree(),
            table_tol: table.tol(),
            table_error_bound: table.error_bound(),
            theta1: eval.theta1(),
            theta2: eval.theta2(),
            curve_label: CURVE_LABEL.to_string(),
            count_seconds,
            curve_seconds,
        },
    })
}

/// Writes the report to `path` and [`DENSITY_PLOT_FILE`] beside it.
/// Returns both paths.
pub fn emit_report(
    report: &SurveyReport,
    format: ReportFormat,
    path: &Path,
) -> Result<Vec<PathBuf>, SurveyError> {
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        ReportFormat::Csv => report.write_csv(&mut out)?,
        ReportFormat::Json => report.write_json(&mut out)?,
    }
    out.flush()?;

    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let plot = dir.join(DENSITY_PLOT_FILE);
    let mut out = BufWriter::new(File::create(&plot)?);
    report.write_density_plot(&mut out)?;
    out.flush()?;
    Ok(vec![path.to_path_buf(), plot])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickman::default_table;

    fn r(n: u64, d: u64) -> RationalExponent {
        RationalExponent::cutoff(n, d).unwrap()
    }

    #[test]
    fn conjecture_index_uses_half_open_intervals() {
        assert_eq!(conjecture_index(r(55, 100)), 1);
        assert_eq!(conjecture_index(r(1, 2)), 1);
        assert_eq!(conjecture_index(r(49, 100)), 2);
        assert_eq!(conjecture_index(r(1, 3)), 2);
        assert_eq!(conjecture_index(r(1, 10)), 9);
        assert_eq!(conjecture_index(r(19, 20)), 1);
    }

    #[test]
    fn curve_examples() {
        let table = default_table();
        let eval = CurveEvaluator::new(&table).unwrap();
        let c55 = eval.curves_at(r(55, 100)).unwrap();
        assert_eq!(c55.conjecture1, Some(0.5));
        assert_eq!(c55.luca_lower, None);
        assert_eq!(c55.feng_wu, None);

        let c50 = eval.curves_at(r(1, 2)).unwrap();
        assert!((c50.pomerance.unwrap() - std::f64::consts::LN_2).abs() < 1e-13);
        assert_eq!(c50.luca_lower, Some(0.5));
        assert_eq!(c50.goldfeld_half, Some(0.5));

        let c30 = eval.curves_at(r(3, 10)).unwrap();
        let fw = c30.feng_wu.expect("feng_wu applies below theta1");
        let lwx = c30.liu_wu_xi.expect("liu_wu_xi applies below theta2");
        // 1 - 4 rho(10/3), and the same through the integral
        let want_lwx = 1.0 - 4.0 * table.rho(10.0 / 3.0).unwrap();
        assert_eq!(lwx, want_lwx);
        let want_fw = 1.0 - 4.0 * table.rho_over_t_integral(7.0 / 3.0, 10.0 / 3.0).unwrap();
        assert_eq!(fw, want_fw);
        assert!((0.0..1.0).contains(&fw) && (0.0..1.0).contains(&lwx));

        // between theta1 and theta2 only Liu-Wu-Xi applies
        let c36 = eval.curves_at(r(36, 100)).unwrap();
        assert!(c36.feng_wu.is_none() && c36.liu_wu_xi.is_some());
    }

    #[test]
    fn curves_vanish_at_thresholds() {
        let table = default_table();
        let eval = CurveEvaluator::new(&table).unwrap();
        // at c = theta the Liu-Wu-Xi main term is 1 - theta
        let th = eval.theta2();
        let v = 1.0 - 4.0 * table.rho(1.0 / th).unwrap();
        assert!((v - (1.0 - th)).abs() < 1e-9);
    }

    #[test]
    fn table_too_short_names_c() {
        let table = default_table();
        let err = run_survey(&[1000], &[r(1, 20)], &table, &Counter::default()).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, SurveyError::Domain(_)));
        assert!(msg.contains("1/20"), "{msg}");
    }

    #[test]
    fn empty_grid_is_header_only() {
        let table = default_table();
        let rep = run_survey(&[], &[], &table, &Counter::default()).unwrap();
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
        let mut plot = Vec::new();
        rep.write_density_plot(&mut plot).unwrap();
        assert_eq!(plot.iter().filter(|&&b| b == b'\n').count(), 1);
    }

    #[test]
    fn grid_cardinality_and_fields() {
        let table = default_table();
        let cs = [r(1, 4), r(1, 2), r(3, 4), r(9, 10)];
        let rep = run_survey(&[1000, 10_000, 100_000], &cs, &table, &Counter::default()).unwrap();
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 13);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 13);
        }
        // c = 3/4: no Luca, Feng-Wu or Liu-Wu-Xi
        let row = lines.iter().find(|l| l.starts_with("1000,3,4,")).unwrap();
        assert!(row.ends_with(&format!(
            ",NA,NA,NA,0.5,{}",
            1.0 - table.rho(4.0 / 3.0).unwrap()
        )));
        for xi in 0..3 {
            for ci in 0..4 {
                let d = rep.density_t(xi, ci);
                assert!((0.0..=1.0).contains(&d));
                let delta = rep.deltas[xi][ci].t.conjecture1.unwrap();
                assert_eq!(delta, d - rep.curves[ci].conjecture1.unwrap());
            }
        }
    }

    #[test]
    fn t_prime_density_nonincreasing_in_c() {
        let table = default_table();
        let cs = default_cutoffs();
        let rep = run_survey(&[200_000], &cs, &table, &Counter::default()).unwrap();
        for ci in 1..cs.len() {
            assert!(rep.density_t_prime(0, ci) <= rep.density_t_prime(0, ci - 1));
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let table = default_table();
        let cs = [r(1, 5), r(1, 3), r(1, 2), r(4, 5)];
        let rep = run_survey(&[5000, 50_000], &cs, &table, &Counter::default()).unwrap();
        let mut buf = Vec::new();
        rep.write_json(&mut buf).unwrap();
        let back = SurveyReport::read_json(buf.as_slice()).unwrap();
        assert_eq!(back, rep);
        for (a, b) in back.curves.iter().zip(&rep.curves) {
            for curve in ReferenceCurve::ALL {
                assert_eq!(a.get(curve).map(f64::to_bits), b.get(curve).map(f64::to_bits));
            }
        }
    }

    #[test]
    fn emit_writes_companion_file() {
        let dir = tempfile::tempdir().unwrap();
        let table = default_table();
        let rep = run_survey(&[1000, 2000], &[r(1, 2), r(2, 3)], &table, &Counter::default())
            .unwrap();
        let path = dir.path().join("survey.json");
        let written = emit_report(&rep, ReportFormat::Json, &path).unwrap();
        assert_eq!(written[1], dir.path().join(DENSITY_PLOT_FILE));
        let plot = std::fs::read_to_string(&written[1]).unwrap();
        let rows: Vec<_> = plot.lines().collect();
        assert_eq!(rows[0], "c empirical_T empirical_Tprime pomerance conjecture1");
        assert_eq!(rows.len(), 3);
        assert!(rows[1].starts_with("0.5 "));
        let bad = dir.path().join("missing").join("x.csv");
        assert!(matches!(
            emit_report(&rep, ReportFormat::Csv, &bad),
            Err(SurveyError::Io(_))
        ));
    }
}
