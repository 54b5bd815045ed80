//! Run configuration and report writers behind the `durfee` binary.
//!
//! Each command builds its data through the library modules and streams
//! rows to a writer, in CSV or JSON. Output is deterministic for a fixed
//! configuration; the only run-dependent content is a timestamp header
//! line that `--no-header` suppresses. Floats are serialized with 17
//! significant digits in CSV; exact integers and rationals are serialized
//! losslessly as decimal strings and `num/den` strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{
    concentration_ratio, default_alpha_basis, default_mean_basis, fit_sqrt_series,
    normality_report, reference_mean_constant, FitResult, HalfInteger, ToleranceSet,
};
use crate::moments::{moment_sweep, rational_to_f64, MomentRecord};
use crate::oracle::{cross_check, Mismatch};
use crate::series::DurfeeTable;

/// Memory guard for the full table: rows hold ~(2/3)·nmax^{3/2} big
/// integers, which at this bound is on the order of a gigabyte.
pub const MAX_TABLE_NMAX: usize = 20_000;

/// Largest supported moment order.
pub const MAX_MOMENT_ORDER: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown output format {other:?}; expected csv or json"
            ))),
        }
    }
}

/// Which `n` the moment sweep and the fits run over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleSpec {
    /// Perfect squares `i^2` for `i` in the inclusive range.
    Squares { imin: usize, imax: usize },
    /// Explicit list of `n` values.
    List(Vec<usize>),
}

impl SampleSpec {
    pub fn resolve(&self) -> Vec<usize> {
        match self {
            SampleSpec::Squares { imin, imax } => (*imin..=*imax).map(|i| i * i).collect(),
            SampleSpec::List(ns) => ns.clone(),
        }
    }
}

impl Default for SampleSpec {
    fn default() -> SampleSpec {
        SampleSpec::Squares { imin: 40, imax: 80 }
    }
}

impl std::fmt::Display for SampleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampleSpec::Squares { imin, imax } => write!(f, "squares:{imin}..{imax}"),
            SampleSpec::List(ns) => {
                let items: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "{}", items.join(","))
            }
        }
    }
}

impl FromStr for SampleSpec {
    type Err = Error;

    /// `squares:40..80` or a comma-separated list `1600,2500,3600`.
    fn from_str(s: &str) -> Result<SampleSpec> {
        let s = s.trim();
        if let Some(range) = s.strip_prefix("squares:") {
            let (lo, hi) = range.split_once("..").ok_or_else(|| {
                Error::InvalidInput(format!("bad square range {range:?}; expected imin..imax"))
            })?;
            let imin = lo
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad square range start {lo:?}")))?;
            let imax = hi
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad square range end {hi:?}")))?;
            if imin > imax {
                return Err(Error::InvalidInput(format!(
                    "empty square range {imin}..{imax}"
                )));
            }
            return Ok(SampleSpec::Squares { imin, imax });
        }
        let ns = s
            .split(',')
            .map(|item| {
                item.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad sample entry {item:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if ns.is_empty() {
            return Err(Error::InvalidInput("empty sample list".into()));
        }
        Ok(SampleSpec::List(ns))
    }
}

/// Everything a command run depends on.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Table order; every sampled `n` must be at or below it.
    pub nmax: usize,
    /// Maximum moment order `K` (even, between 4 and [`MAX_MOMENT_ORDER`]).
    pub moment_order: u32,
    pub sample: SampleSpec,
    /// Basis for the mean and variance fits.
    pub mean_basis: Vec<HalfInteger>,
    /// Basis for the standardized-moment fits (must have a finite limit).
    pub alpha_basis: Vec<HalfInteger>,
    /// Requested relative error bound for rational-to-float conversion.
    /// The converter delivers better than `2^-52`; bounds tighter than
    /// that are rejected as unsatisfiable in `f64`.
    pub float_error_bound: f64,
    pub format: OutputFormat,
    pub tolerances: ToleranceSet,
    pub no_header: bool,
    /// Restrict `table` rows to perfect-square `n`.
    pub squares_only: bool,
    /// Emit exact probabilities `d(n,k)/p(n)` instead of counts.
    pub normalized: bool,
    /// Permit oracle enumeration past the safety bound.
    pub allow_large_oracle: bool,
    /// Upper bound for the `check` command.
    pub check_upto: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            nmax: 6400,
            moment_order: 12,
            sample: SampleSpec::default(),
            mean_basis: default_mean_basis(),
            alpha_basis: default_alpha_basis(),
            float_error_bound: (2f64).powi(-50),
            format: OutputFormat::Csv,
            tolerances: ToleranceSet::default(),
            no_header: false,
            squares_only: false,
            normalized: false,
            allow_large_oracle: false,
            check_upto: 40,
        }
    }
}

impl RunConfig {
    /// Structural invariants shared by all commands.
    pub fn validate(&self) -> Result<()> {
        if !self.moment_order.is_multiple_of(2) || self.moment_order < 4 {
            return Err(Error::InvalidInput(format!(
                "moment order must be even and >= 4, got {}",
                self.moment_order
            )));
        }
        if self.moment_order > MAX_MOMENT_ORDER {
            return Err(Error::InvalidInput(format!(
                "moment order must be <= {MAX_MOMENT_ORDER}, got {}",
                self.moment_order
            )));
        }
        if let SampleSpec::Squares { imin, .. } = self.sample {
            if imin * imin < 4 {
                return Err(Error::InvalidInput(format!(
                    "square sample must start at i >= 2 (i^2 >= 4), got i = {imin}"
                )));
            }
        }
        if self.float_error_bound < (2f64).powi(-52) {
            return Err(Error::InvalidInput(format!(
                "float error bound {:e} is below what f64 can represent (2^-52)",
                self.float_error_bound
            )));
        }
        Ok(())
    }

    /// Sampled `n` for the sweep commands: nonempty, within the table, and
    /// no degenerate rows (`n <= 3`) - offenders are named.
    fn moment_sample(&self) -> Result<Vec<usize>> {
        let ns = self.sample.resolve();
        if ns.is_empty() {
            return Err(Error::InvalidInput("empty sample".into()));
        }
        if let Some(&bad) = ns.iter().find(|&&n| n <= 3) {
            return Err(Error::InvalidInput(format!(
                "sample includes n = {bad}, where the Durfee size is deterministic (need n >= 4)"
            )));
        }
        if let Some(&max_n) = ns.iter().max() {
            if max_n > self.nmax {
                return Err(Error::InvalidInput(format!(
                    "sample includes n = {max_n} beyond nmax = {}",
                    self.nmax
                )));
            }
        }
        Ok(ns)
    }

    fn build_table(&self) -> Result<DurfeeTable> {
        if self.nmax > MAX_TABLE_NMAX {
            return Err(Error::ResourceLimit(format!(
                "nmax = {} exceeds the table budget {MAX_TABLE_NMAX}; the table holds \
                 ~(2/3)*nmax^1.5 big integers, so raise the limit only with memory to match",
                self.nmax
            )));
        }
        Ok(DurfeeTable::new(self.nmax))
    }

    fn header_line(&self) -> Option<String> {
        if self.no_header {
            None
        } else {
            Some(format!(
                "durfee {} {}",
                env!("CARGO_PKG_VERSION"),
                chrono::Utc::now().to_rfc3339()
            ))
        }
    }
}

/// Exit-relevant outcome of a command: every command succeeds or errors,
/// and `check`/`report` additionally carry a pass/fail verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommandOutcome {
    pub pass: bool,
}

impl CommandOutcome {
    const PASS: CommandOutcome = CommandOutcome { pass: true };

    /// 0 on pass, 1 on fail; errors map through [`Error::exit_code`].
    pub fn exit_code(self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Format a float with 17 significant digits (round-trip safe).
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_preamble(out: &mut dyn Write, config: &RunConfig, columns: &str) -> Result<()> {
    if let Some(header) = config.header_line() {
        writeln!(out, "# {header}")?;
    }
    writeln!(out, "{columns}")?;
    Ok(())
}

#[derive(Serialize)]
struct JsonDocument<T: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated: Option<String>,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize>(out: &mut dyn Write, config: &RunConfig, body: T) -> Result<()> {
    let doc = JsonDocument {
        generated: config.header_line(),
        body,
    };
    serde_json::to_writer_pretty(&mut *out, &doc)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    writeln!(out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TableRowOut {
    n: usize,
    k: usize,
    /// Exact count `d(n,k)` or, with `--normalized`, the probability
    /// `d(n,k)/p(n)` as a `num/den` string.
    value: String,
}

/// Emit the exact Durfee table `(n, k, d(n,k))` for all `n <= nmax`, or the
/// normalized rows `(n, k, p_{n,k})` with `--normalized`. Streams rows in
/// ascending `(n, k)`.
pub fn cmd_table(config: &RunConfig, out: &mut dyn Write) -> Result<CommandOutcome> {
    config.validate()?;
    let table = config.build_table()?;
    let requested: Vec<usize> = if config.squares_only {
        (1..)
            .map(|i| i * i)
            .take_while(|&n| n <= config.nmax)
            .collect()
    } else {
        (0..=config.nmax).collect()
    };

    // (k, serialized value) pairs for one row: exact counts, or exact
    // probabilities when normalized.
    let row_values = |n: usize| -> Result<Vec<(usize, String)>> {
        if config.normalized {
            let row = crate::moments::pgf_row(&table, n)?;
            Ok(row
                .probs()
                .iter()
                .map(|(k, p)| (*k, p.to_string()))
                .collect())
        } else {
            Ok(table.row(n)?.map(|(k, d)| (k, d.to_string())).collect())
        }
    };

    match config.format {
        OutputFormat::Csv => {
            let value_column = if config.normalized { "prob" } else { "count" };
            csv_preamble(out, config, &format!("n,k,{value_column}"))?;
            for &n in &requested {
                for (k, value) in row_values(n)? {
                    writeln!(out, "{n},{k},{value}")?;
                }
            }
        }
        OutputFormat::Json => {
            let mut rows = Vec::new();
            for &n in &requested {
                for (k, value) in row_values(n)? {
                    rows.push(TableRowOut { n, k, value });
                }
            }
            #[derive(Serialize)]
            struct Body {
                nmax: usize,
                normalized: bool,
                rows: Vec<TableRowOut>,
            }
            write_json(
                out,
                config,
                Body {
                    nmax: config.nmax,
                    normalized: config.normalized,
                    rows,
                },
            )?;
        }
    }
    Ok(CommandOutcome::PASS)
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MomentRowOut {
    n: usize,
    /// Exact mean as a `num/den` string.
    mean_exact: String,
    mean: f64,
    /// `m_2..m_K` as floats.
    central: Vec<f64>,
    /// `alpha_3..alpha_K`.
    standardized: Vec<f64>,
}

fn moment_row_out(record: &MomentRecord) -> MomentRowOut {
    MomentRowOut {
        n: record.n,
        mean_exact: record.mean.to_string(),
        mean: rational_to_f64(&record.mean),
        central: record.central_all()[1..]
            .iter()
            .map(rational_to_f64)
            .collect(),
        standardized: record.standardized_all().to_vec(),
    }
}

/// Emit per-`n` exact means and float moments for the configured sample.
pub fn cmd_moments(config: &RunConfig, out: &mut dyn Write) -> Result<CommandOutcome> {
    config.validate()?;
    let ns = config.moment_sample()?;
    let table = config.build_table()?;
    let records = moment_sweep(&table, &ns, config.moment_order)?;

    match config.format {
        OutputFormat::Csv => {
            let mut columns = String::from("n,mean_exact,mean");
            for k in 2..=config.moment_order {
                write!(columns, ",m{k}").unwrap();
            }
            for k in 3..=config.moment_order {
                write!(columns, ",alpha{k}").unwrap();
            }
            csv_preamble(out, config, &columns)?;
            for record in &records {
                let row = moment_row_out(record);
                let mut line = format!("{},{},{}", row.n, row.mean_exact, fmt_f64(row.mean));
                for v in row.central.iter().chain(&row.standardized) {
                    write!(line, ",{}", fmt_f64(*v)).unwrap();
                }
                writeln!(out, "{line}")?;
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Body {
                order: u32,
                rows: Vec<MomentRowOut>,
            }
            write_json(
                out,
                config,
                Body {
                    order: config.moment_order,
                    rows: records.iter().map(moment_row_out).collect(),
                },
            )?;
        }
    }
    Ok(CommandOutcome::PASS)
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct FitOut {
    target: String,
    exponents: Vec<f64>,
    coefficients: Vec<f64>,
    residual_rms: f64,
    max_abs_residual: f64,
}

fn fit_out(target: &str, fit: &FitResult) -> FitOut {
    FitOut {
        target: target.to_string(),
        exponents: fit.model.exponents().iter().map(|e| e.as_f64()).collect(),
        coefficients: fit.model.coefficients().to_vec(),
        residual_rms: fit.residual_rms,
        max_abs_residual: fit.max_abs_residual,
    }
}

/// Run the whole fitting stage: expansions for the mean and the variance on
/// the mean basis, one fit per standardized order on the alpha basis, the
/// exact reference constant `sqrt(6) ln 2 / pi`, and the variance/mean
/// leading-coefficient ratio.
pub fn cmd_fit(config: &RunConfig, out: &mut dyn Write) -> Result<CommandOutcome> {
    config.validate()?;
    let ns = config.moment_sample()?;
    let table = config.build_table()?;
    let records = moment_sweep(&table, &ns, config.moment_order)?;

    let mean_samples: Vec<(u64, f64)> = records
        .iter()
        .map(|r| (r.n as u64, rational_to_f64(&r.mean)))
        .collect();
    let var_samples: Vec<(u64, f64)> = records
        .iter()
        .map(|r| {
            (
                r.n as u64,
                rational_to_f64(r.central(2).expect("order >= 2")),
            )
        })
        .collect();
    let mean_fit = fit_sqrt_series(&mean_samples, &config.mean_basis)?;
    let var_fit = fit_sqrt_series(&var_samples, &config.mean_basis)?;

    let mut fits = vec![fit_out("mean", &mean_fit), fit_out("variance", &var_fit)];
    for k in 3..=config.moment_order {
        let samples: Vec<(u64, f64)> = records
            .iter()
            .map(|r| (r.n as u64, r.standardized(k).expect("order checked")))
            .collect();
        let fit = fit_sqrt_series(&samples, &config.alpha_basis)?;
        fits.push(fit_out(&format!("alpha{k}"), &fit));
    }

    let reference = reference_mean_constant();
    let ratio = concentration_ratio(&mean_fit, &var_fit)?;

    match config.format {
        OutputFormat::Csv => {
            csv_preamble(
                out,
                config,
                "target,exponents,coefficients,residual_rms,max_abs_residual",
            )?;
            for fit in &fits {
                let exps: Vec<String> = fit.exponents.iter().map(|e| e.to_string()).collect();
                let coeffs: Vec<String> = fit.coefficients.iter().map(|c| fmt_f64(*c)).collect();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    fit.target,
                    exps.join(";"),
                    coeffs.join(";"),
                    fmt_f64(fit.residual_rms),
                    fmt_f64(fit.max_abs_residual)
                )?;
            }
            writeln!(out, "reference_mean_constant,,{},,", fmt_f64(reference))?;
            writeln!(out, "concentration_ratio,,{},,", fmt_f64(ratio))?;
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Body {
                sample: Vec<usize>,
                fits: Vec<FitOut>,
                reference_mean_constant: f64,
                concentration_ratio: f64,
            }
            write_json(
                out,
                config,
                Body {
                    sample: ns,
                    fits,
                    reference_mean_constant: reference,
                    concentration_ratio: ratio,
                },
            )?;
        }
    }
    Ok(CommandOutcome::PASS)
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

/// Cross-check the table against brute-force enumeration up to
/// `config.check_upto`. Exit code 1 on mismatch.
pub fn cmd_check(config: &RunConfig, out: &mut dyn Write) -> Result<CommandOutcome> {
    let nmax = config.check_upto;
    if nmax > MAX_TABLE_NMAX {
        return Err(Error::ResourceLimit(format!(
            "check bound {nmax} exceeds the table budget {MAX_TABLE_NMAX}"
        )));
    }
    let table = DurfeeTable::new(nmax);
    let report = cross_check(&table, nmax, config.allow_large_oracle)?;

    let mismatch_text = report.first_mismatch.as_ref().map(|m| match m {
        Mismatch::Count { n, k, table, brute } => {
            format!("count mismatch at (n={n}, k={k}): table {table}, enumeration {brute}")
        }
        Mismatch::Total {
            n,
            table,
            pentagonal,
        } => format!("total mismatch at n={n}: table {table}, pentagonal {pentagonal}"),
    });

    match config.format {
        OutputFormat::Csv => {
            csv_preamble(out, config, "upto,rows_checked,pass,detail")?;
            writeln!(
                out,
                "{},{},{},{}",
                report.upto,
                report.rows_checked,
                report.passed(),
                mismatch_text.as_deref().unwrap_or("")
            )?;
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Body {
                upto: usize,
                rows_checked: usize,
                pass: bool,
                detail: Option<String>,
            }
            write_json(
                out,
                config,
                Body {
                    upto: report.upto,
                    rows_checked: report.rows_checked,
                    pass: report.passed(),
                    detail: mismatch_text,
                },
            )?;
        }
    }
    Ok(CommandOutcome {
        pass: report.passed(),
    })
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

/// Run the sweep and the standardized-moment fits, then emit the
/// normality report (one PASS/FAIL verdict per order against the
/// configured tolerances) plus the plot-ready `(n, alpha_k(n))` series.
/// Exit code 1 if any order fails.
pub fn cmd_report(config: &RunConfig, out: &mut dyn Write) -> Result<CommandOutcome> {
    config.validate()?;
    let ns = config.moment_sample()?;
    let table = config.build_table()?;
    let records = moment_sweep(&table, &ns, config.moment_order)?;
    let report = normality_report(
        &records,
        config.moment_order,
        &config.alpha_basis,
        &config.tolerances,
    )?;

    match config.format {
        OutputFormat::Csv => {
            csv_preamble(
                out,
                config,
                "kind,order,n,value,target,abs_deviation,tolerance,pass",
            )?;
            for v in &report.orders {
                writeln!(
                    out,
                    "limit,{},,{},{},{},{},{}",
                    v.order,
                    fmt_f64(v.limit),
                    fmt_f64(v.target),
                    fmt_f64(v.abs_deviation),
                    fmt_f64(v.tolerance),
                    if v.pass { "PASS" } else { "FAIL" }
                )?;
            }
            for k in 3..=config.moment_order {
                for r in &records {
                    writeln!(
                        out,
                        "series,{k},{},{},,,,",
                        r.n,
                        fmt_f64(r.standardized(k).expect("order checked"))
                    )?;
                }
            }
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct SeriesOut {
                order: u32,
                points: Vec<(usize, f64)>,
            }
            #[derive(Serialize)]
            struct Body {
                sample: Vec<usize>,
                basis: Vec<f64>,
                orders: Vec<crate::fit::OrderVerdict>,
                pass: bool,
                series: Vec<SeriesOut>,
            }
            let series = (3..=config.moment_order)
                .map(|k| SeriesOut {
                    order: k,
                    points: records
                        .iter()
                        .map(|r| (r.n, r.standardized(k).expect("order checked")))
                        .collect(),
                })
                .collect();
            write_json(
                out,
                config,
                Body {
                    sample: ns,
                    basis: report.basis.iter().map(|e| e.as_f64()).collect(),
                    orders: report.orders.clone(),
                    pass: report.all_pass(),
                    series,
                },
            )?;
        }
    }
    Ok(CommandOutcome {
        pass: report.all_pass(),
    })
}

/// Parse a tolerance-override file: a JSON object mapping order to absolute
/// tolerance, e.g. `{"4": 0.02, "6": 0.2}`. Entries overlay the defaults.
pub fn load_tolerances(content: &str) -> Result<ToleranceSet> {
    let overrides: BTreeMap<u32, f64> = serde_json::from_str(content)
        .map_err(|e| Error::InvalidInput(format!("bad tolerance file: {e}")))?;
    if let Some((&k, &t)) = overrides.iter().find(|(_, &t)| t <= 0.0 || t.is_nan()) {
        return Err(Error::InvalidInput(format!(
            "tolerance for order {k} must be positive, got {t}"
        )));
    }
    Ok(ToleranceSet::with_overrides(overrides))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run<F>(f: F) -> (String, CommandOutcome)
    where
        F: FnOnce(&mut dyn Write) -> Result<CommandOutcome>,
    {
        let mut buf = Vec::new();
        let outcome = f(&mut buf).expect("command should succeed");
        (String::from_utf8(buf).unwrap(), outcome)
    }

    fn quiet(mut config: RunConfig) -> RunConfig {
        config.no_header = true;
        config
    }

    #[test]
    fn sample_spec_round_trip() {
        let s: SampleSpec = "squares:40..80".parse().unwrap();
        assert_eq!(s, SampleSpec::Squares { imin: 40, imax: 80 });
        assert_eq!(s.resolve().len(), 41);
        assert_eq!(s.to_string(), "squares:40..80");

        let s: SampleSpec = "4,9,25".parse().unwrap();
        assert_eq!(s.resolve(), vec![4, 9, 25]);

        assert!("squares:80..40".parse::<SampleSpec>().is_err());
        assert!("".parse::<SampleSpec>().is_err());
        assert!("squares:abc".parse::<SampleSpec>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut config = RunConfig::default();
        assert!(config.validate().is_ok());

        config.moment_order = 3;
        assert!(config.validate().is_err());
        config.moment_order = 16;
        assert!(config.validate().is_err());
        config.moment_order = 12;

        config.sample = SampleSpec::Squares { imin: 1, imax: 10 };
        assert!(config.validate().is_err());

        // Samples beyond the table are rejected by the sweep commands.
        config.sample = SampleSpec::List(vec![9000]);
        config.nmax = 6400;
        assert!(config.validate().is_ok());
        assert!(config.moment_sample().is_err());

        config.sample = SampleSpec::default();
        config.float_error_bound = 1e-20;
        assert!(config.validate().is_err());
    }

    #[test]
    fn table_csv_small() {
        let mut config = quiet(RunConfig::default());
        config.nmax = 4;
        let (text, outcome) = run(|out| cmd_table(&config, out));
        assert!(outcome.pass);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,k,count");
        assert!(lines.contains(&"4,2,1"));
        assert!(lines.contains(&"4,1,4"));
        assert!(lines.contains(&"0,0,1"));
    }

    #[test]
    fn table_csv_order_zero() {
        let mut config = quiet(RunConfig::default());
        config.nmax = 0;
        let (text, _) = run(|out| cmd_table(&config, out));
        assert_eq!(text, "n,k,count\n0,0,1\n");
    }

    #[test]
    fn table_squares_only_and_normalized() {
        let mut config = quiet(RunConfig::default());
        config.nmax = 100;
        config.squares_only = true;
        let (text, _) = run(|out| cmd_table(&config, out));
        let ns: std::collections::BTreeSet<usize> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(
            ns,
            (1..=10)
                .map(|i| i * i)
                .collect::<std::collections::BTreeSet<_>>()
        );

        config.squares_only = false;
        config.normalized = true;
        config.nmax = 4;
        let (text, _) = run(|out| cmd_table(&config, out));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,k,prob");
        assert!(lines.contains(&"4,1,4/5"));
        assert!(lines.contains(&"4,2,1/5"));
    }

    #[test]
    fn table_resource_guard() {
        let mut config = quiet(RunConfig::default());
        config.nmax = MAX_TABLE_NMAX + 1;
        let mut buf = Vec::new();
        let err = cmd_table(&config, &mut buf).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn moments_csv_at_4() {
        let mut config = quiet(RunConfig::default());
        config.nmax = 4;
        config.moment_order = 4;
        config.sample = SampleSpec::List(vec![4]);
        let (text, _) = run(|out| cmd_moments(&config, out));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,mean_exact,mean,m2,m3,m4,alpha3,alpha4");
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[0], "4");
        assert_eq!(fields[1], "6/5");
        let alpha4: f64 = fields[7].parse().unwrap();
        assert_eq!(alpha4, 3.25);
    }

    #[test]
    fn moments_rejects_degenerate_sample() {
        let mut config = quiet(RunConfig::default());
        config.nmax = 10;
        config.sample = SampleSpec::List(vec![4, 2]);
        let mut buf = Vec::new();
        let err = cmd_moments(&config, &mut buf).unwrap_err();
        match err {
            Error::InvalidInput(msg) => assert!(msg.contains("n = 2"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn check_passes_and_fails_cleanly() {
        let mut config = quiet(RunConfig::default());
        config.check_upto = 20;
        let (text, outcome) = run(|out| cmd_check(&config, out));
        assert!(outcome.pass);
        assert!(text.contains("true"));

        config.check_upto = 100;
        let mut buf = Vec::new();
        let err = cmd_check(&config, &mut buf).unwrap_err();
        assert!(matches!(err, Error::OracleBoundExceeded { .. }));
    }

    #[test]
    fn json_outputs_parse() {
        let mut config = quiet(RunConfig::default());
        config.format = OutputFormat::Json;
        config.nmax = 30;
        config.moment_order = 4;
        config.sample = SampleSpec::List(vec![16, 25, 30]);
        config.check_upto = 10;

        let (text, _) = run(|out| cmd_table(&config, out));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"][0]["n"], 0);
        assert!(v.get("generated").is_none());

        let (text, _) = run(|out| cmd_moments(&config, out));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"][0]["mean_exact"], "174/77");

        let (text, _) = run(|out| cmd_check(&config, out));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn header_toggle() {
        let mut config = RunConfig {
            nmax: 2,
            ..RunConfig::default()
        };
        let mut buf = Vec::new();
        cmd_table(&config, &mut buf).unwrap();
        let with_header = String::from_utf8(buf).unwrap();
        assert!(with_header.starts_with("# durfee "));

        config.no_header = true;
        let (without, _) = run(|out| cmd_table(&config, out));
        assert!(without.starts_with("n,k,count"));
        // Identical modulo the header line.
        assert_eq!(
            with_header.lines().skip(1).collect::<Vec<_>>(),
            without.lines().collect::<Vec<_>>()
        );
    }

    #[test]
    fn tolerance_file_parsing() {
        let t = load_tolerances(r#"{"4": 0.5, "6": 1.0}"#).unwrap();
        assert_eq!(t.for_order(4), Some(0.5));
        assert_eq!(t.for_order(6), Some(1.0));
        assert_eq!(t.for_order(3), Some(0.05));
        assert!(load_tolerances(r#"{"4": -1.0}"#).is_err());
        assert!(load_tolerances("not json").is_err());
    }
}
