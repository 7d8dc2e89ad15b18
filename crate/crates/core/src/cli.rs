//! Command-line front end: spectra, axiom reports and figure data as CSV or JSON.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::clockshift::FuzzyTorus;
use crate::dirac::axioms::{verify_axioms_with_tol, AxiomReport, SpectralTriple, AXIOM_TOL, DEFAULT_BASIS_LIMIT};
use crate::dirac::operator::dirac_operator;
use crate::dirac::spectrum::{
    dirac_spectrum_formula, dirac_spectrum_in_window, dirac_squared_eigenvalue, expand, DiracSpectrumRecord, HalfInt,
};
use crate::error::{Error, Result};
use crate::laplace::{
    eigenvalues as laplace_eigenvalues, four_sector_laplace_spectrum, label_window, laplace_spectrum_formula,
    laplacian_superop, LaplaceSpectrumRecord,
};
use crate::bimodule::sector_basis;
use crate::metric::IntegerMetric;
use crate::oracle::{
    commutative_laplace_spectrum, entry_gaps, group_multiplicities, hermitian_eigs, multiset_match,
    SpectrumComparison, SPECTRUM_TOL,
};
use crate::qroots::{RootOfUnity, Sign};
use crate::spincover::{analyze_cover, build_cover, sector_spectrum_formula, sector_triple, SpinStructureLabel};

/// Overrides every comparison tolerance when set.
pub const TOL_ENV: &str = "FUZZY_TORUS_TOL";

/// Default gap for fuzzy-against-commutative comparisons.
pub const COMMUTATIVE_TOL: f64 = 1e-2;

/// Largest operator dimension diagonalized on request.
pub const MAX_ORACLE_DIM: usize = 1024;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "fuzzy-torus",
    version,
    about = "Spectra, axiom checks and figure data for fuzzy-torus spectral triples"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Matrix size N, the order of q = e^{2πiK/N}.
    #[arg(long = "n", global = true, default_value_t = 8)]
    pub n: i64,
    /// K, coprime to N.
    #[arg(long = "k", global = true, default_value_t = 1)]
    pub k: i64,
    /// Sign of q^{1/2} relative to e^{iπK/N}.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub half_branch: Option<Sign>,
    /// Sign of q^{1/4}.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub quarter_branch: Option<Sign>,
    /// Integer metric `a,b,c,d`, or a Hermite normal form `a,c,d`.
    #[arg(long, global = true)]
    pub metric: Option<IntegerMetric>,
    /// Spin structure `s1,s2`.
    #[arg(long, global = true, value_parser = parse_bits)]
    pub sigma: Option<(u8, u8)>,
    /// Deck-group character `h,j`.
    #[arg(long, global = true, value_parser = parse_bits)]
    pub chi: Option<(u8, u8)>,
    /// Label window `-W < k, l <= W`; defaults to `W = N/2`.
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Histogram bin width.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub bin_width: f64,
    /// Output format; tables default to CSV, reports to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Diagonalize the operator and report the gap to the closed form.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Output file (a directory for `sectors` without `--chi`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Dirac spectrum from the closed form.
    Spectrum,
    /// Laplace spectrum from the closed form.
    Laplace,
    /// Real spectral triple axioms, as a JSON report.
    Verify {
        /// Use the full monomial basis when both generator periods are at most this.
        #[arg(long, default_value_t = DEFAULT_BASIS_LIMIT)]
        basis_limit: usize,
    },
    /// Closed form against dense diagonalization or the commutative torus.
    OracleCompare {
        #[arg(long, value_enum, default_value_t = Operator::Dirac)]
        operator: Operator,
        #[arg(long, value_enum, default_value_t = Reference::Diagonal)]
        against: Reference,
        /// Number of smallest |λ| compared against the commutative torus.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// The four spin-structure sectors of the cover with N = 4N'.
    Sectors,
    /// Plot-ready data.
    Figure {
        #[arg(long, value_enum)]
        fig: FigureKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Dirac,
    Laplace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    Diagonal,
    Commutative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    /// Laplace multiplicity against eigenvalue.
    Scatter,
    /// Positive Dirac eigenvalues over the label grid, fuzzy and commutative.
    Surface,
    /// Positive Dirac eigenvalues over the label grid.
    Contour,
    /// Multiplicity histogram, fuzzy and commutative.
    Hist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Pass,
    ComputationError,
    ConfigError,
    VerificationFailure,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::ComputationError => 1,
            ExitStatus::ConfigError => 2,
            ExitStatus::VerificationFailure => 3,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            ExitStatus::Pass
        } else {
            ExitStatus::VerificationFailure
        }
    }
}

/// Exit status for an error: bad input is a configuration error, anything
/// raised while computing is a computation error.
pub fn error_status(err: &Error) -> ExitStatus {
    match err {
        Error::NonPositiveOrder(_)
        | Error::NotCoprime { .. }
        | Error::UnsupportedDenominator(_)
        | Error::DegenerateMetric { .. }
        | Error::OddDimension(_)
        | Error::WrongSpinStructure { .. }
        | Error::OrderMismatch { .. }
        | Error::Config(_) => ExitStatus::ConfigError,
        _ => ExitStatus::ComputationError,
    }
}

/// `{"kind": ..., "message": ...}`.
pub fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "kind": kind, "message": message }).to_string()
}

pub fn parse_bits(s: &str) -> std::result::Result<(u8, u8), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bit = |p: &str| match p {
        "0" => Ok(0u8),
        "1" => Ok(1u8),
        other => Err(format!("expected a bit, got {other:?}")),
    };
    match parts.as_slice() {
        [a, b] => Ok((bit(a)?, bit(b)?)),
        [ab] if ab.len() == 2 => Ok((bit(&ab[..1])?, bit(&ab[1..])?)),
        _ => Err(format!("expected two bits like 0,1, got {s:?}")),
    }
}

/// Parses arguments, runs the command and reports errors as JSON on stderr.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let message = e.render().to_string();
            eprintln!("{}", error_json("Config", message.trim()));
            return ExitStatus::ConfigError.code();
        }
    };
    match run(&config) {
        Ok(status) => status.code(),
        Err(err) => {
            eprintln!("{}", error_json(err.kind(), &err.to_string()));
            error_status(&err).code()
        }
    }
}

struct Tolerances {
    spectrum: f64,
    commutative: f64,
    axiom: f64,
}

fn tolerances() -> Result<Tolerances> {
    match std::env::var(TOL_ENV) {
        Ok(raw) => {
            let t: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{TOL_ENV}={raw:?} is not a number")))?;
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Config(format!("{TOL_ENV} must be positive, got {t}")));
            }
            Ok(Tolerances {
                spectrum: t,
                commutative: t,
                axiom: t,
            })
        }
        Err(_) => Ok(Tolerances {
            spectrum: SPECTRUM_TOL,
            commutative: COMMUTATIVE_TOL,
            axiom: AXIOM_TOL,
        }),
    }
}

impl Options {
    fn root(&self) -> Result<RootOfUnity> {
        if self.n < 1 {
            return Err(Error::NonPositiveOrder(self.n));
        }
        let half = self
            .half_branch
            .unwrap_or_else(|| RootOfUnity::default_half_branch(self.n, self.k));
        RootOfUnity::new(self.n, self.k, half, self.quarter_branch.unwrap_or(Sign::Plus))
    }

    fn metric_or(&self, default: IntegerMetric) -> IntegerMetric {
        self.metric.unwrap_or(default)
    }

    /// Doubled window `2W`, defaulting to `N`.
    fn doubled_window(&self) -> Result<i64> {
        match self.window {
            None => Ok(self.n),
            Some(w) if w >= 1 => Ok(2 * w),
            Some(w) => Err(Error::Config(format!("--window must be positive, got {w}"))),
        }
    }

    fn spin_structure(&self, metric: &IntegerMetric) -> Result<(u8, u8)> {
        let canonical = metric.canonical_spin_structure();
        match self.sigma {
            Some(requested) if requested != canonical => Err(Error::WrongSpinStructure { requested, canonical }),
            _ => Ok(canonical),
        }
    }

    fn cover_order(&self) -> Result<u64> {
        if self.n < 4 || self.n % 4 != 0 {
            return Err(Error::Config(format!("the cover needs N divisible by 4, got {}", self.n)));
        }
        Ok(self.n as u64 / 4)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn check_oracle_dim(dim: usize) -> Result<()> {
    if dim > MAX_ORACLE_DIM {
        return Err(Error::Config(format!(
            "dense diagonalization limited to dimension {MAX_ORACLE_DIM}, got {dim}"
        )));
    }
    Ok(())
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

pub fn run(config: &RunConfig) -> Result<ExitStatus> {
    let tol = tolerances()?;
    let opts = &config.opts;
    match &config.command {
        Command::Spectrum => spectrum(opts, &tol),
        Command::Laplace => laplace(opts, &tol),
        Command::Verify { basis_limit } => verify(opts, &tol, *basis_limit),
        Command::OracleCompare {
            operator,
            against,
            count,
        } => oracle_compare(opts, &tol, *operator, *against, *count),
        Command::Sectors => sectors(opts, &tol),
        Command::Figure { fig } => figure(opts, *fig),
    }
}

#[derive(Serialize)]
struct SpectrumRow<'a> {
    #[serde(flatten)]
    record: &'a DiracSpectrumRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_gap: Option<f64>,
}

/// Per-record gaps, or `INFINITY` everywhere on a length mismatch.
fn dirac_gaps(records: &[DiracSpectrumRecord], eigs: &[f64]) -> Vec<f64> {
    let reference: Vec<(f64, usize)> = records.iter().map(|r| (r.eigenvalue, r.multiplicity)).collect();
    entry_gaps(&reference, eigs).unwrap_or_else(|| vec![f64::INFINITY; records.len()])
}

fn spectrum_output(opts: &Options, records: &[DiracSpectrumRecord], gaps: Option<&[f64]>) -> Result<String> {
    match opts.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let rows: Vec<SpectrumRow> = records
                .iter()
                .enumerate()
                .map(|(i, record)| SpectrumRow {
                    record,
                    oracle_gap: gaps.map(|g| g[i]),
                })
                .collect();
            to_json(&rows)
        }
        Format::Csv => {
            let mut header = vec!["k", "l", "sign", "eigenvalue", "multiplicity", "sigma1", "sigma2"];
            if gaps.is_some() {
                header.push("oracle_gap");
            }
            let rows = records.iter().enumerate().map(|(i, r)| {
                let mut row = vec![
                    r.k.to_string(),
                    r.l.to_string(),
                    r.sign.to_string(),
                    fmt_f(r.eigenvalue),
                    r.multiplicity.to_string(),
                    r.sigma.0.to_string(),
                    r.sigma.1.to_string(),
                ];
                if let Some(g) = gaps {
                    row.push(fmt_f(g[i]));
                }
                row
            });
            csv_string(&header, rows)
        }
    }
}

fn full_dirac(opts: &Options, root: &RootOfUnity, metric: &IntegerMetric) -> Result<crate::linalg::DenseMatrix> {
    check_oracle_dim(4 * (opts.n as usize).pow(2))?;
    let torus = FuzzyTorus::clock_shift(root);
    let p = torus.derived_pair(metric)?;
    dirac_operator(&p.x, &p.y, p.xi.q_quarter())
}

fn spectrum(opts: &Options, tol: &Tolerances) -> Result<ExitStatus> {
    let root = opts.root()?;
    let metric = opts.metric_or(IntegerMetric::identity());
    let sigma = opts.spin_structure(&metric)?;
    let records = match opts.window {
        None => dirac_spectrum_formula(&metric, &root, sigma)?,
        Some(_) => dirac_spectrum_in_window(&metric, &root, sigma, opts.doubled_window()?)?,
    };
    let mut status = ExitStatus::Pass;
    let gaps = if opts.oracle {
        if opts.window.is_some() {
            return Err(Error::Config("--oracle compares the full spectrum; drop --window".into()));
        }
        let eigs = hermitian_eigs(&full_dirac(opts, &root, &metric)?)?;
        let gaps = dirac_gaps(&records, &eigs);
        status = ExitStatus::from_pass(gaps.iter().all(|g| *g <= tol.spectrum));
        Some(gaps)
    } else {
        None
    };
    opts.emit(&spectrum_output(opts, &records, gaps.as_deref())?)?;
    Ok(status)
}

#[derive(Serialize)]
struct LaplaceRow {
    k: i64,
    l: i64,
    eigenvalue: f64,
    h: u8,
    j: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_gap: Option<f64>,
}

fn laplace(opts: &Options, tol: &Tolerances) -> Result<ExitStatus> {
    let root = opts.root()?;
    let sq = IntegerMetric::new(2, 0, 0, 2)?;
    let metric = opts.metric_or(if opts.chi.is_some() { sq } else { IntegerMetric::identity() });
    let n = opts.n as usize;
    let mut records = match opts.chi {
        Some((h, j)) => {
            if metric != sq {
                return Err(Error::Config("--chi selects a sector of X = C², Y = S²; use --metric 2,0,0,2".into()));
            }
            four_sector_laplace_spectrum(&root, h, j)?
        }
        None => laplace_spectrum_formula(&metric, &root)?,
    };
    if opts.window.is_some() {
        let w = opts.doubled_window()?;
        records.retain(|r| 2 * r.k > -w && 2 * r.k <= w && 2 * r.l > -w && 2 * r.l <= w);
    }
    records.sort_by(|a, b| (a.k, a.l).cmp(&(b.k, b.l)));

    let mut status = ExitStatus::Pass;
    let gaps = if opts.oracle {
        if opts.window.is_some() {
            return Err(Error::Config("--oracle compares the full spectrum; drop --window".into()));
        }
        check_oracle_dim(n * n)?;
        let torus = FuzzyTorus::clock_shift(&root);
        let p = torus.derived_pair(&metric)?;
        let mut lap = laplacian_superop(&p.x, &p.y, p.xi.q_half())?;
        if let Some((h, j)) = opts.chi {
            let b = sector_basis(n, h, j)?;
            lap = b.adjoint() * lap * b;
        }
        let eigs = hermitian_eigs(&lap)?;
        let reference: Vec<(f64, usize)> = records.iter().map(|r| (r.eigenvalue, 1)).collect();
        let gaps = entry_gaps(&reference, &eigs).unwrap_or_else(|| vec![f64::INFINITY; records.len()]);
        status = ExitStatus::from_pass(gaps.iter().all(|g| *g <= tol.spectrum));
        Some(gaps)
    } else {
        None
    };

    let sector = |r: &LaplaceSpectrumRecord| r.sector.unwrap_or((r.k.rem_euclid(2) as u8, r.l.rem_euclid(2) as u8));
    let text = match opts.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let rows: Vec<LaplaceRow> = records
                .iter()
                .enumerate()
                .map(|(i, r)| LaplaceRow {
                    k: r.k,
                    l: r.l,
                    eigenvalue: r.eigenvalue,
                    h: sector(r).0,
                    j: sector(r).1,
                    oracle_gap: gaps.as_ref().map(|g| g[i]),
                })
                .collect();
            to_json(&rows)?
        }
        Format::Csv => {
            let mut header = vec!["k", "l", "eigenvalue", "h", "j"];
            if gaps.is_some() {
                header.push("oracle_gap");
            }
            let rows = records.iter().enumerate().map(|(i, r)| {
                let (h, j) = sector(r);
                let mut row = vec![r.k.to_string(), r.l.to_string(), fmt_f(r.eigenvalue), h.to_string(), j.to_string()];
                if let Some(g) = &gaps {
                    row.push(fmt_f(g[i]));
                }
                row
            });
            csv_string(&header, rows)?
        }
    };
    opts.emit(&text)?;
    Ok(status)
}

fn axiom_output(opts: &Options, report: &AxiomReport) -> Result<String> {
    match opts.format.unwrap_or(Format::Json) {
        Format::Json => to_json(report),
        Format::Csv => csv_string(
            &["check", "violation", "pass"],
            report
                .checks
                .iter()
                .map(|c| vec![c.name.to_string(), fmt_f(c.violation), c.pass.to_string()]),
        ),
    }
}

fn verify(opts: &Options, tol: &Tolerances, basis_limit: usize) -> Result<ExitStatus> {
    let root = opts.root()?;
    let metric = opts.metric_or(IntegerMetric::identity());
    let triple = match opts.chi {
        Some(chi) => {
            let cover = build_cover(opts.cover_order()?, &root)?;
            sector_triple(&cover, chi, &metric)?
        }
        None => {
            check_oracle_dim(4 * (opts.n as usize).pow(2))?;
            SpectralTriple::fuzzy(&FuzzyTorus::clock_shift(&root), &metric)?
        }
    };
    let report = verify_axioms_with_tol(&triple, basis_limit, tol.axiom)?;
    opts.emit(&axiom_output(opts, &report)?)?;
    Ok(ExitStatus::from_pass(report.pass))
}

#[derive(Serialize)]
struct CompareReport {
    operator: Operator,
    against: Reference,
    n: i64,
    k: i64,
    metric: IntegerMetric,
    sigma: Option<(u8, u8)>,
    tolerance: f64,
    comparison: SpectrumComparison,
}

fn smallest_abs(values: impl IntoIterator<Item = f64>, count: usize) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().map(f64::abs).collect();
    v.sort_by(f64::total_cmp);
    v.truncate(count);
    v
}

/// `|det A|^{-1} √((dk-cl)² + (al-bk)²)` at `(k, l) = (k2, l2)/2`.
fn commutative_dirac_value(metric: &IntegerMetric, k2: i64, l2: i64) -> f64 {
    let p = (metric.d * k2 - metric.c * l2) as f64;
    let r = (metric.a * l2 - metric.b * k2) as f64;
    (p * p + r * r).sqrt() / (2.0 * metric.det().abs() as f64)
}

/// Doubled labels in `(-w, w]` with the parity `s`.
fn doubled_labels(w: i64, s: u8) -> impl Iterator<Item = i64> + Clone {
    ((-w + 1)..=w).filter(move |x| x.rem_euclid(2) == s as i64)
}

fn oracle_compare(
    opts: &Options,
    tol: &Tolerances,
    operator: Operator,
    against: Reference,
    count: usize,
) -> Result<ExitStatus> {
    let root = opts.root()?;
    let metric = opts.metric_or(IntegerMetric::identity());
    let n = opts.n as usize;
    let (sigma, tolerance, comparison) = match (operator, against) {
        (Operator::Dirac, Reference::Diagonal) => {
            let sigma = opts.spin_structure(&metric)?;
            let records = dirac_spectrum_formula(&metric, &root, sigma)?;
            let eigs = hermitian_eigs(&full_dirac(opts, &root, &metric)?)?;
            (Some(sigma), tol.spectrum, multiset_match(&eigs, &expand(&records), tol.spectrum))
        }
        (Operator::Laplace, Reference::Diagonal) => {
            check_oracle_dim(n * n)?;
            let records = laplace_spectrum_formula(&metric, &root)?;
            let p = FuzzyTorus::clock_shift(&root).derived_pair(&metric)?;
            let eigs = hermitian_eigs(&laplacian_superop(&p.x, &p.y, p.xi.q_half())?)?;
            (None, tol.spectrum, multiset_match(&eigs, &laplace_eigenvalues(&records), tol.spectrum))
        }
        (Operator::Dirac, Reference::Commutative) => {
            let sigma = opts.spin_structure(&metric)?;
            let w = opts.doubled_window()?;
            let records = dirac_spectrum_in_window(&metric, &root, sigma, w)?;
            let mut reference = Vec::new();
            for k2 in doubled_labels(w, sigma.0) {
                for l2 in doubled_labels(w, sigma.1) {
                    // ±λ with multiplicity 2 each, or a fourfold zero mode: four |λ| either way.
                    reference.extend(std::iter::repeat_n(commutative_dirac_value(&metric, k2, l2), 4));
                }
            }
            let fuzzy = smallest_abs(expand(&records), count);
            let reference = smallest_abs(reference, count);
            (Some(sigma), tol.commutative, multiset_match(&fuzzy, &reference, tol.commutative))
        }
        (Operator::Laplace, Reference::Commutative) => {
            let records = laplace_spectrum_formula(&metric, &root)?;
            let window = label_window(root.order());
            let reference: Vec<f64> = window
                .clone()
                .flat_map(|k| window.clone().map(move |l| commutative_laplace_spectrum(&metric, k, l)))
                .collect();
            let fuzzy = smallest_abs(laplace_eigenvalues(&records), count);
            let reference = smallest_abs(reference, count);
            (None, tol.commutative, multiset_match(&fuzzy, &reference, tol.commutative))
        }
    };
    let pass = comparison.passed();
    let report = CompareReport {
        operator,
        against,
        n: opts.n,
        k: opts.k,
        metric,
        sigma,
        tolerance,
        comparison,
    };
    opts.emit(&to_json(&report)?)?;
    Ok(ExitStatus::from_pass(pass))
}

#[derive(Serialize)]
struct SectorSummary {
    label: SpinStructureLabel,
    dim: usize,
    kernel_dim: usize,
    conjecture_gap: f64,
    conjecture_pass: bool,
}

#[derive(Serialize)]
struct CoverSummary {
    n: i64,
    n_prime: u64,
    metric: IntegerMetric,
    tolerance: f64,
    partition_gap: f64,
    partition_pass: bool,
    sectors: Vec<SectorSummary>,
    pass: bool,
}

fn sectors(opts: &Options, tol: &Tolerances) -> Result<ExitStatus> {
    let root = opts.root()?;
    let metric = opts.metric_or(IntegerMetric::identity());
    let cover = build_cover(opts.cover_order()?, &root)?;
    if opts.sigma.is_some() {
        return Err(Error::Config("sectors derive σ from --chi; drop --sigma".into()));
    }

    if let Some(chi) = opts.chi {
        let records = sector_spectrum_formula(&cover, chi, &metric)?;
        let mut status = ExitStatus::Pass;
        let gaps = if opts.oracle {
            let eigs = hermitian_eigs(&sector_triple(&cover, chi, &metric)?.d)?;
            let gaps = dirac_gaps(&records, &eigs);
            status = ExitStatus::from_pass(gaps.iter().all(|g| *g <= tol.spectrum));
            Some(gaps)
        } else {
            None
        };
        opts.emit(&spectrum_output(opts, &records, gaps.as_deref())?)?;
        return Ok(status);
    }

    let analysis = analyze_cover(&cover, &metric)?;
    let partition = multiset_match(&analysis.partition.computed, &analysis.partition.reference, tol.spectrum);
    let mut summaries = Vec::new();
    for s in &analysis.sectors {
        let cmp = multiset_match(&s.eigenvalues, &expand(&s.formula), tol.spectrum);
        summaries.push(SectorSummary {
            label: s.label,
            dim: s.dim,
            kernel_dim: s.kernel_dim,
            conjecture_gap: cmp.max_abs_gap,
            conjecture_pass: cmp.passed(),
        });
    }
    let pass = partition.passed() && summaries.iter().all(|s| s.conjecture_pass);
    let summary = CoverSummary {
        n: opts.n,
        n_prime: cover.n_prime,
        metric,
        tolerance: tol.spectrum,
        partition_gap: partition.max_abs_gap,
        partition_pass: partition.passed(),
        sectors: summaries,
        pass,
    };
    let summary_json = to_json(&summary)?;
    match &opts.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for s in &analysis.sectors {
                let gaps = dirac_gaps(&s.formula, &s.eigenvalues);
                let (h, j) = s.label.character;
                let text = spectrum_output(opts, &s.formula, Some(&gaps))?;
                let ext = match opts.format.unwrap_or(Format::Csv) {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                fs::write(Path::new(dir).join(format!("sector_{h}{j}.{ext}")), text)?;
            }
            fs::write(dir.join("summary.json"), &summary_json)?;
        }
        None => std::io::stdout().lock().write_all(summary_json.as_bytes())?,
    }
    Ok(ExitStatus::from_pass(pass))
}

#[derive(Serialize)]
struct ScatterRow {
    eigenvalue: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct GridRow {
    k: HalfInt,
    l: HalfInt,
    eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    commutative: Option<f64>,
}

#[derive(Serialize)]
struct HistRow {
    bin_start: f64,
    bin_end: f64,
    fuzzy: usize,
    commutative: usize,
}

fn figure(opts: &Options, fig: FigureKind) -> Result<ExitStatus> {
    let root = opts.root()?;
    let text = match fig {
        FigureKind::Scatter => {
            let metric = opts.metric_or(IntegerMetric::new(2, 0, 0, 2)?);
            let records = laplace_spectrum_formula(&metric, &root)?;
            let rows: Vec<ScatterRow> = group_multiplicities(&laplace_eigenvalues(&records))
                .into_iter()
                .map(|(eigenvalue, multiplicity)| ScatterRow {
                    eigenvalue,
                    multiplicity,
                })
                .collect();
            match opts.format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&rows)?,
                Format::Csv => csv_string(
                    &["eigenvalue", "multiplicity"],
                    rows.iter().map(|r| vec![fmt_f(r.eigenvalue), r.multiplicity.to_string()]),
                )?,
            }
        }
        FigureKind::Surface | FigureKind::Contour => {
            let metric = opts.metric_or(IntegerMetric::identity());
            let sigma = opts.spin_structure(&metric)?;
            let w = opts.doubled_window()?;
            let with_commutative = fig == FigureKind::Surface;
            let mut rows = Vec::new();
            for k2 in doubled_labels(w, sigma.0) {
                for l2 in doubled_labels(w, sigma.1) {
                    let lam2 = dirac_squared_eigenvalue(&metric, &root, k2, l2)?;
                    rows.push(GridRow {
                        k: HalfInt(k2),
                        l: HalfInt(l2),
                        eigenvalue: lam2.max(0.0).sqrt(),
                        commutative: with_commutative.then(|| commutative_dirac_value(&metric, k2, l2)),
                    });
                }
            }
            match opts.format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&rows)?,
                Format::Csv => {
                    let mut header = vec!["k", "l", "eigenvalue"];
                    if with_commutative {
                        header.push("commutative");
                    }
                    csv_string(
                        &header,
                        rows.iter().map(|r| {
                            let mut row = vec![r.k.to_string(), r.l.to_string(), fmt_f(r.eigenvalue)];
                            if let Some(c) = r.commutative {
                                row.push(fmt_f(c));
                            }
                            row
                        }),
                    )?
                }
            }
        }
        FigureKind::Hist => {
            let metric = opts.metric_or(IntegerMetric::identity());
            let sigma = opts.spin_structure(&metric)?;
            let w = opts.doubled_window()?;
            let width = opts.bin_width;
            if !(width.is_finite() && width > 0.0) {
                return Err(Error::Config(format!("--bin-width must be positive, got {width}")));
            }
            let records = dirac_spectrum_in_window(&metric, &root, sigma, w)?;
            let fuzzy: Vec<(f64, usize)> = records
                .iter()
                .filter(|r| r.sign >= 0)
                .map(|r| (r.eigenvalue, r.multiplicity))
                .collect();
            let mut commutative = Vec::new();
            for k2 in doubled_labels(w, sigma.0) {
                for l2 in doubled_labels(w, sigma.1) {
                    let v = commutative_dirac_value(&metric, k2, l2);
                    commutative.push((v, if v == 0.0 { 4 } else { 2 }));
                }
            }
            let top = fuzzy.iter().chain(&commutative).fold(0.0_f64, |m, (v, _)| m.max(*v));
            let bins = (top / width).floor() as usize + 1;
            let count = |values: &[(f64, usize)]| {
                let mut c = vec![0usize; bins];
                for &(v, m) in values {
                    c[((v / width).floor() as usize).min(bins - 1)] += m;
                }
                c
            };
            let (cf, cc) = (count(&fuzzy), count(&commutative));
            let rows: Vec<HistRow> = (0..bins)
                .map(|i| HistRow {
                    bin_start: i as f64 * width,
                    bin_end: (i + 1) as f64 * width,
                    fuzzy: cf[i],
                    commutative: cc[i],
                })
                .collect();
            match opts.format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&rows)?,
                Format::Csv => csv_string(
                    &["bin_start", "bin_end", "fuzzy", "commutative"],
                    rows.iter().map(|r| {
                        vec![
                            fmt_f(r.bin_start),
                            fmt_f(r.bin_end),
                            r.fuzzy.to_string(),
                            r.commutative.to_string(),
                        ]
                    }),
                )?,
            }
        }
    };
    opts.emit(&text)?;
    Ok(ExitStatus::Pass)
}
