//! Experiment harness: feasibility under normalization, runtime scaling with
//! curve fits, and solution quality against the exact oracles.
//!
//! Every `(n, trial)` pair gets its own seed, `derive_path(seed, [n, trial])`,
//! from which both the instance and the solver seed follow. Normalized and
//! unnormalized runs of the same pair therefore see the same instance and the
//! same random stream.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anneal::{sample, Schedule};
use crate::encode::{build_qubo_sa_form, default_penalty, qubo_to_ising, tour_cost, Tour};
use crate::error::{Error, Result};
use crate::ilp::{default_poly_penalty, solve_mtz_anneal};
use crate::instance::{normalize_minmax, random_instance, TspInstance};
use crate::oracle::{self, brute_force, held_karp};
use crate::qaoa::{qaoa_solve, QaoaConfig, MAX_QAOA_CITIES};
use crate::qpe::{qpe_search, DEFAULT_PRECISION, MAX_SEARCH_CITIES};
use crate::seed;

/// Largest size for which records carry an oracle optimum.
pub const ORACLE_MAX: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Backend {
    #[serde(rename = "SA")]
    Sa,
    #[serde(rename = "QAOA")]
    Qaoa,
    #[serde(rename = "QPE")]
    Qpe,
    #[serde(rename = "ILP-Anneal")]
    IlpAnneal,
    BruteForce,
    HeldKarp,
}

impl Backend {
    pub const ALL: [Backend; 6] = [
        Self::Sa,
        Self::Qaoa,
        Self::Qpe,
        Self::IlpAnneal,
        Self::BruteForce,
        Self::HeldKarp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Sa => "SA",
            Self::Qaoa => "QAOA",
            Self::Qpe => "QPE",
            Self::IlpAnneal => "ILP-Anneal",
            Self::BruteForce => "BruteForce",
            Self::HeldKarp => "HeldKarp",
        }
    }

    pub fn max_cities(self) -> usize {
        match self {
            Self::Sa | Self::IlpAnneal => 64,
            Self::Qaoa => MAX_QAOA_CITIES,
            Self::Qpe => MAX_SEARCH_CITIES,
            Self::BruteForce => oracle::BRUTE_FORCE_MAX,
            Self::HeldKarp => oracle::HELD_KARP_MAX,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        Self::ALL
            .into_iter()
            .find(|b| b.name().to_ascii_lowercase().replace('-', "") == key)
            .or(match key.as_str() {
                "ilp" => Some(Self::IlpAnneal),
                "bf" => Some(Self::BruteForce),
                "hk" => Some(Self::HeldKarp),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown backend {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub backend: Backend,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub normalized: bool,
    pub feasible: bool,
    /// Tour cost in the original instance's units.
    pub cost: Option<f64>,
    pub optimum: Option<f64>,
    pub approx_ratio: Option<f64>,
    /// Solve time only; `None` unless timing was requested.
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    /// Distance range of generated instances.
    pub lo: f64,
    pub hi: f64,
    /// Fixed penalty weight for SA and ILP-Anneal. `None` scales the penalty
    /// to each instance, which makes SA insensitive to rescaling the weights.
    pub penalty: Option<f64>,
    /// Multiplier on the default anneal sweep count (`1000 * spins`).
    pub sweep_scale: f64,
    /// Fixed SA sweep count for every size; overrides `sweep_scale` for SA.
    pub sweeps: Option<usize>,
    /// Independent anneals per SA or ILP-Anneal solve; the best feasible wins.
    pub restarts: usize,
    pub qaoa: QaoaConfig,
    pub qpe_precision: usize,
    pub qpe_shots: u64,
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            lo: 1.0,
            hi: 10.0,
            penalty: None,
            sweep_scale: 1.0,
            sweeps: None,
            restarts: 1,
            qaoa: QaoaConfig::default(),
            qpe_precision: DEFAULT_PRECISION,
            qpe_shots: 1024,
            timing: false,
        }
    }
}

impl BenchConfig {
    fn sa_sweeps(&self, spins: usize) -> usize {
        if let Some(s) = self.sweeps {
            return s.max(1);
        }
        ((1000 * spins.max(1)) as f64 * self.sweep_scale)
            .round()
            .max(1.0) as usize
    }
}

/// Seed of the `(n, trial)` pair; the instance is generated from it.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed::derive_path(seed, &[n as u64, trial as u64])
}

/// Runs one backend on `inst`; returns the tour, if any, and the solve time
/// in milliseconds (encoding excluded where the backend separates it).
pub fn solve(
    backend: Backend,
    inst: &TspInstance,
    cfg: &BenchConfig,
    seed: u64,
) -> Result<(Option<Tour>, f64)> {
    let n = inst.n();
    if n > backend.max_cities() {
        return Err(Error::TooManyCities {
            what: backend.name(),
            n,
            max: backend.max_cities(),
        });
    }
    let timed = |f: &dyn Fn() -> Result<Option<Tour>>| -> Result<(Option<Tour>, f64)> {
        let start = Instant::now();
        let tour = f()?;
        Ok((tour, start.elapsed().as_secs_f64() * 1e3))
    };
    match backend {
        Backend::Sa => {
            let qubo =
                build_qubo_sa_form(inst, cfg.penalty.unwrap_or_else(|| default_penalty(inst)))?;
            let ising = qubo_to_ising(&qubo);
            let sched = Schedule::for_model(&ising).with_sweeps(cfg.sa_sweeps(ising.num_spins()));
            timed(&|| {
                Ok(sample(&ising, &qubo, &sched, cfg.restarts.max(1), seed)?
                    .best_tour()
                    .cloned())
            })
        }
        Backend::IlpAnneal => timed(&|| {
            let penalty = cfg.penalty.unwrap_or_else(|| default_poly_penalty(inst));
            let set = solve_mtz_anneal(inst, penalty, cfg.sweep_scale, cfg.restarts.max(1), seed)?;
            Ok(set.best_tour().cloned())
        }),
        Backend::Qaoa => timed(&|| Ok(qaoa_solve(inst, &cfg.qaoa, seed)?.tour)),
        Backend::Qpe => timed(&|| {
            Ok(Some(
                qpe_search(inst, cfg.qpe_precision, cfg.qpe_shots, seed)?
                    .best
                    .tour,
            ))
        }),
        Backend::BruteForce => timed(&|| Ok(Some(brute_force(inst)?.tour))),
        Backend::HeldKarp => timed(&|| Ok(Some(held_karp(inst)?.tour))),
    }
}

fn run_trial(
    backend: Backend,
    n: usize,
    trial: usize,
    normalized: bool,
    seed: u64,
    cfg: &BenchConfig,
) -> Result<BenchRecord> {
    let tseed = trial_seed(seed, n, trial);
    let original = random_instance(n, tseed, cfg.lo, cfg.hi)?;
    let working = if normalized {
        normalize_minmax(&original)?.0
    } else {
        original.clone()
    };
    let (tour, ms) = solve(backend, &working, cfg, seed::derive(tseed, 1))?;
    let cost = tour
        .as_ref()
        .map(|t| tour_cost(&original, &t.rotated_to_zero()))
        .transpose()?;
    let optimum = if n <= ORACLE_MAX {
        Some(oracle::solve_exact(&original)?.cost)
    } else {
        None
    };
    let approx_ratio = match (cost, optimum) {
        // rounding from a different summation order must not dip below 1
        (Some(c), Some(o)) if o > 0.0 => Some((c / o).max(1.0)),
        _ => None,
    };
    Ok(BenchRecord {
        backend,
        n,
        trial,
        seed: tseed,
        normalized,
        feasible: tour.is_some(),
        cost,
        optimum,
        approx_ratio,
        wall_ms: cfg.timing.then_some(ms),
    })
}

fn check_sizes(backend: Backend, sizes: &[usize]) -> Result<()> {
    for &n in sizes {
        if n < 3 {
            return Err(Error::TooFewCities { n, min: 3 });
        }
        if n > backend.max_cities() {
            return Err(Error::TooManyCities {
                what: backend.name(),
                n,
                max: backend.max_cities(),
            });
        }
    }
    Ok(())
}

fn sort_records(records: &mut [BenchRecord]) {
    records.sort_by(|a, b| {
        (a.n, a.trial, a.normalized, a.backend).cmp(&(b.n, b.trial, b.normalized, b.backend))
    });
}

/// Trials run in parallel; the result is sorted by `(n, trial, normalized)`.
pub fn violation_study(
    backend: Backend,
    sizes: &[usize],
    trials: usize,
    normalized: &[bool],
    seed: u64,
    cfg: &BenchConfig,
) -> Result<Vec<BenchRecord>> {
    check_sizes(backend, sizes)?;
    let jobs: Vec<(usize, usize, bool)> = sizes
        .iter()
        .flat_map(|&n| (0..trials).flat_map(move |t| normalized.iter().map(move |&z| (n, t, z))))
        .collect();
    let mut records = jobs
        .par_iter()
        .map(|&(n, t, z)| run_trial(backend, n, t, z, seed, cfg))
        .collect::<Result<Vec<_>>>()?;
    sort_records(&mut records);
    Ok(records)
}

/// Same as [`violation_study`] without normalization; every record carries
/// the oracle optimum and approximation ratio.
pub fn quality_study(
    backend: Backend,
    sizes: &[usize],
    trials: usize,
    seed: u64,
    cfg: &BenchConfig,
) -> Result<Vec<BenchRecord>> {
    if let Some(&n) = sizes.iter().find(|&&n| n > ORACLE_MAX) {
        return Err(Error::TooManyCities {
            what: "quality_study",
            n,
            max: ORACLE_MAX,
        });
    }
    violation_study(backend, sizes, trials, &[false], seed, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitFamily {
    /// `t = a * b^n`
    Exponential,
    /// `t = a * n^k`
    PowerLaw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFit {
    pub family: FitFamily,
    pub a: f64,
    /// `b` for exponential, `k` for power law.
    pub b: f64,
    /// Coefficient of determination of the log-space fit.
    pub r2: f64,
}

impl CurveFit {
    pub fn eval(&self, n: f64) -> f64 {
        match self.family {
            FitFamily::Exponential => self.a * self.b.powf(n),
            FitFamily::PowerLaw => self.a * n.powf(self.b),
        }
    }
}

/// Least squares on `ln t` against `n` (exponential) or `ln n` (power law).
pub fn fit_curve(family: FitFamily, points: &[(f64, f64)]) -> Result<CurveFit> {
    let mut sizes: Vec<f64> = points.iter().map(|p| p.0).collect();
    sizes.sort_by(f64::total_cmp);
    sizes.dedup();
    if sizes.len() < 3 {
        return Err(Error::InsufficientSizes(sizes.len()));
    }
    if points.iter().any(|&(n, t)| !(n > 0.0 && t > 0.0)) {
        return Err(Error::InvalidParameter(
            "curve fit needs positive sizes and times".into(),
        ));
    }
    let xs: Vec<f64> = points
        .iter()
        .map(|&(n, _)| match family {
            FitFamily::Exponential => n,
            FitFamily::PowerLaw => n.ln(),
        })
        .collect();
    let ys: Vec<f64> = points.iter().map(|&(_, t)| t.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r2 = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let b = match family {
        FitFamily::Exponential => slope.exp(),
        FitFamily::PowerLaw => slope,
    };
    Ok(CurveFit {
        family,
        a: intercept.exp(),
        b,
        r2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuntimeStudy {
    pub records: Vec<BenchRecord>,
    /// Exponential then power law.
    pub fits: Vec<CurveFit>,
    /// The fit with the larger `r2`.
    pub best: CurveFit,
}

/// Median solve time in milliseconds per size.
pub fn median_times(records: &[BenchRecord]) -> Vec<(f64, f64)> {
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records {
        if let Some(ms) = r.wall_ms {
            by_n.entry(r.n).or_default().push(ms);
        }
    }
    by_n.into_iter()
        .map(|(n, mut ts)| {
            ts.sort_by(f64::total_cmp);
            let mid = ts.len() / 2;
            let med = if ts.len() % 2 == 1 {
                ts[mid]
            } else {
                0.5 * (ts[mid - 1] + ts[mid])
            };
            (n as f64, med)
        })
        .collect()
}

/// Fits both families to per-size median times.
pub fn fit_runtime(records: &[BenchRecord]) -> Result<(Vec<CurveFit>, CurveFit)> {
    let points = median_times(records);
    let fits = vec![
        fit_curve(FitFamily::Exponential, &points)?,
        fit_curve(FitFamily::PowerLaw, &points)?,
    ];
    let best = if fits[1].r2 > fits[0].r2 {
        fits[1].clone()
    } else {
        fits[0].clone()
    };
    Ok((fits, best))
}

/// Times every solve sequentially, so measurements do not compete for cores.
pub fn runtime_study(
    backend: Backend,
    sizes: &[usize],
    trials: usize,
    seed: u64,
    cfg: &BenchConfig,
) -> Result<RuntimeStudy> {
    let distinct: std::collections::BTreeSet<usize> = sizes.iter().copied().collect();
    if distinct.len() < 3 {
        return Err(Error::InsufficientSizes(distinct.len()));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "runtime study needs at least one trial".into(),
        ));
    }
    check_sizes(backend, sizes)?;
    let timed = BenchConfig {
        timing: true,
        ..cfg.clone()
    };
    let mut records = Vec::new();
    for &n in &distinct {
        for t in 0..trials {
            records.push(run_trial(backend, n, t, false, seed, &timed)?);
        }
    }
    sort_records(&mut records);
    let (fits, best) = fit_runtime(&records)?;
    Ok(RuntimeStudy {
        records,
        fits,
        best,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationSummary {
    pub backend: Backend,
    pub n: usize,
    pub normalized: bool,
    pub feasible: usize,
    pub total: usize,
}

impl ViolationSummary {
    pub fn violation_probability(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            1.0 - self.feasible as f64 / self.total as f64
        }
    }
}

/// Feasible counts grouped by `(backend, n, normalized)`.
pub fn summarize(records: &[BenchRecord]) -> Vec<ViolationSummary> {
    let mut groups: BTreeMap<(Backend, usize, bool), (usize, usize)> = BTreeMap::new();
    for r in records {
        let e = groups.entry((r.backend, r.n, r.normalized)).or_default();
        e.0 += usize::from(r.feasible);
        e.1 += 1;
    }
    groups
        .into_iter()
        .map(
            |((backend, n, normalized), (feasible, total))| ViolationSummary {
                backend,
                n,
                normalized,
                feasible,
                total,
            },
        )
        .collect()
}

/// Mean approximation ratio over records that have one.
pub fn mean_approx_ratio(records: &[BenchRecord]) -> Option<f64> {
    let rs: Vec<f64> = records.iter().filter_map(|r| r.approx_ratio).collect();
    (!rs.is_empty()).then(|| rs.iter().sum::<f64>() / rs.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Svg,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

pub const CSV_HEADER: &str =
    "backend,n,trial,seed,normalized,feasible,cost,optimum,approx_ratio,wall_ms";

pub fn emit_report(
    records: &[BenchRecord],
    fits: &[CurveFit],
    format: ReportFormat,
) -> Result<String> {
    match format {
        ReportFormat::Csv => Ok(to_csv(records)),
        ReportFormat::Json => {
            let v = serde_json::json!({ "records": records, "fits": fits });
            Ok(serde_json::to_string_pretty(&v).expect("records serialize") + "\n")
        }
        ReportFormat::Svg => to_svg(records, fits),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.backend,
            r.n,
            r.trial,
            r.seed,
            r.normalized,
            r.feasible,
            opt(r.cost),
            opt(r.optimum),
            opt(r.approx_ratio),
            opt(r.wall_ms)
        );
    }
    out
}

/// Reads records written by the CSV report.
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse(format!(
            "unexpected CSV header {:?}",
            header.join(",")
        )));
    }
    let field = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse()
                .map(Some)
                .map_err(|_| Error::Parse(format!("bad number {s:?}")))
        }
    };
    let parse = |s: &str, what: &str| -> Result<u64> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
    };
    let flag = |s: &str| -> Result<bool> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad flag {s:?}")))
    };
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        records.push(BenchRecord {
            backend: row[0].parse()?,
            n: parse(&row[1], "size")? as usize,
            trial: parse(&row[2], "trial")? as usize,
            seed: parse(&row[3], "seed")?,
            normalized: flag(&row[4])?,
            feasible: flag(&row[5])?,
            cost: field(&row[6])?,
            optimum: field(&row[7])?,
            approx_ratio: field(&row[8])?,
            wall_ms: field(&row[9])?,
        });
    }
    Ok(records)
}

type Curve = Box<dyn Fn(f64) -> f64>;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Line plot of size against median wall time (log axis) when every record
/// is timed, otherwise against violation probability. One polyline per
/// series; curve fits and the hardware reference scalings are dashed paths.
fn to_svg(records: &[BenchRecord], fits: &[CurveFit]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyInput("svg report needs at least one record"));
    }
    let timed = records.iter().all(|r| r.wall_ms.is_some());
    let split_norm = records.iter().any(|r| r.normalized) && records.iter().any(|r| !r.normalized);

    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let mut keys: BTreeMap<String, Vec<BenchRecord>> = BTreeMap::new();
    for r in records {
        let mut key = r.backend.to_string();
        if split_norm {
            key.push_str(if r.normalized {
                " (normalized)"
            } else {
                " (raw)"
            });
        }
        keys.entry(key).or_default().push(r.clone());
    }
    for (key, rs) in keys {
        let pts = if timed {
            median_times(&rs)
        } else {
            summarize(&rs)
                .iter()
                .map(|s| (s.n as f64, s.violation_probability()))
                .collect()
        };
        series.insert(key, pts);
    }

    let (w, h, left, right, top, bottom) = (640.0, 400.0, 70.0, 180.0, 30.0, 50.0);
    let all: Vec<(f64, f64)> = series.values().flatten().copied().collect();
    let (xmin, xmax) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.0), b.max(p.0))
        });
    let (xmin, xmax) = if xmax > xmin {
        (xmin, xmax)
    } else {
        (xmin - 1.0, xmax + 1.0)
    };
    let ty = |y: f64| if timed { y.max(1e-6).log10() } else { y };
    let (ymin, ymax) = if timed {
        let (a, b) = all
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
                (a.min(ty(p.1)), b.max(ty(p.1)))
            });
        if b > a {
            (a.floor(), b.ceil())
        } else {
            (a.floor() - 1.0, a.ceil() + 1.0)
        }
    } else {
        (0.0, 1.0)
    };
    let px = |x: f64| left + (x - xmin) / (xmax - xmin) * (w - left - right);
    let py = |y: f64| h - bottom - (ty(y) - ymin) / (ymax - ymin) * (h - top - bottom);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" fill="none"><line x1="{left}" y1="{}" x2="{}" y2="{}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{}"/></g>"#,
        h - bottom,
        w - right,
        h - bottom,
        h - bottom
    );
    let ylabel = if timed {
        "median wall time (ms, log scale)"
    } else {
        "violation probability"
    };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">cities</text>"#,
        (left + w - right) / 2.0,
        h - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 15 {})">{ylabel}</text>"#,
        h / 2.0,
        h / 2.0
    );
    let mut tick = xmin.ceil();
    while tick <= xmax {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" font-size="10" text-anchor="middle">{tick}</text>"#,
            px(tick),
            h - bottom + 15.0
        );
        tick += ((xmax - xmin) / 8.0).ceil().max(1.0);
    }
    if timed {
        for e in ymin as i64..=ymax as i64 {
            let y = h - bottom - (e as f64 - ymin) / (ymax - ymin) * (h - top - bottom);
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{y:.1}" font-size="10" text-anchor="end">1e{e}</text>"#,
                left - 5.0
            );
        }
    } else {
        for k in 0..=4 {
            let v = k as f64 / 4.0;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{:.1}" font-size="10" text-anchor="end">{v}</text>"#,
                left - 5.0,
                py(v)
            );
        }
    }

    for (idx, (key, pts)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        let ly = top + 15.0 * idx as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" font-size="11" fill="{color}">{key}</text>"#,
            w - right + 10.0
        );
    }

    if timed {
        let mut dashed: Vec<(String, Curve)> = Vec::new();
        for f in fits {
            let f = f.clone();
            let label = match f.family {
                FitFamily::Exponential => format!("fit {:.3}*{:.3}^n (r2 {:.3})", f.a, f.b, f.r2),
                FitFamily::PowerLaw => format!("fit {:.3}*n^{:.3} (r2 {:.3})", f.a, f.b, f.r2),
            };
            dashed.push((label, Box::new(move |n| f.eval(n))));
        }
        // hardware scalings, anchored at the first plotted point
        if let Some(&(x0, y0)) = series.values().next().and_then(|p| p.first()) {
            let log_ref = move |n: f64| y0 * (2.0 * n.log2()) / (2.0 * x0.log2());
            let pow_ref = move |n: f64| y0 * (n / x0).powf(1.5);
            dashed.push(("reference 2 log n".into(), Box::new(log_ref)));
            dashed.push(("reference n^1.5".into(), Box::new(pow_ref)));
        }
        let base = series.len();
        for (k, (label, f)) in dashed.iter().enumerate() {
            let steps = 40;
            let mut d = String::new();
            for i in 0..=steps {
                let x = xmin + (xmax - xmin) * i as f64 / steps as f64;
                let y = py(f(x)).clamp(top, h - bottom);
                let _ = write!(
                    d,
                    "{}{:.1},{:.1} ",
                    if i == 0 { "M" } else { "L" },
                    px(x),
                    y
                );
            }
            let color = if k < fits.len() { "#555555" } else { "#aaaaaa" };
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{color}" stroke-dasharray="6 4"/>"#,
                d.trim_end()
            );
            let ly = top + 15.0 * (base + k) as f64;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{ly}" font-size="10" fill="{color}">{label}</text>"#,
                w - right + 10.0
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
