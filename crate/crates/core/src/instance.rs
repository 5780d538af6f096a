//! TSP instances: a dense distance matrix, possibly asymmetric.
//!
//! Instances are read from and written to two formats:
//!
//! * JSON, `{"n": 4, "dist": [[0, 1, ...], ...]}`
//! * CSV, `n` rows of `n` comma-separated numbers with no header.
//!
//! All other modules take a [`TspInstance`] and never touch the file formats.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    n: usize,
    dist: Vec<f64>,
    directed: bool,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    dist: Vec<Vec<f64>>,
}

impl TspInstance {
    /// Validates and wraps a row-major distance matrix.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::TooFewCities { n, min: 2 });
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFiniteEntry { i, j });
                }
                if value < 0.0 {
                    return Err(Error::NegativeEntry { i, j, value });
                }
                if i == j && value != 0.0 {
                    return Err(Error::NonzeroDiagonal { i, value });
                }
            }
            dist.extend(row);
        }
        let directed = (0..n).any(|i| (0..i).any(|j| dist[i * n + j] != dist[j * n + i]));
        Ok(Self { n, dist, directed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Off-diagonal entries in row-major order.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n;
        self.dist
            .iter()
            .enumerate()
            .filter(move |(idx, _)| idx / n != idx % n)
            .map(|(_, &d)| d)
    }

    pub fn max_distance(&self) -> f64 {
        self.off_diagonal().fold(0.0, f64::max)
    }

    /// Applies `f` to every off-diagonal entry. The result is revalidated.
    pub fn map_off_diagonal(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 0.0 } else { f(self.d(i, j)) })
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n: self.n,
            dist: self.rows(),
        };
        serde_json::to_string(&file).expect("instance serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.dist.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Parses an instance file. JSON is detected by a leading `{`, anything else
/// is read as headerless CSV.
pub fn load_instance(text: &str) -> Result<TspInstance> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let file: InstanceFile =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        if file.dist.len() != file.n {
            return Err(Error::SizeMismatch {
                declared: file.n,
                actual: file.dist.len(),
            });
        }
        TspInstance::from_rows(file.dist)
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes());
        let mut rows = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            let row = record
                .iter()
                .enumerate()
                .map(|(c, field)| {
                    field
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("row {r}, column {c}: {field:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        TspInstance::from_rows(rows)
    }
}

/// Symmetric random instance with off-diagonal entries uniform in `[lo, hi]`.
pub fn random_instance(n: usize, seed: u64, lo: f64, hi: f64) -> Result<TspInstance> {
    random_matrix(n, seed, lo, hi, false)
}

/// Like [`random_instance`] but every ordered pair is drawn independently.
pub fn random_directed_instance(n: usize, seed: u64, lo: f64, hi: f64) -> Result<TspInstance> {
    random_matrix(n, seed, lo, hi, true)
}

fn random_matrix(n: usize, seed: u64, lo: f64, hi: f64, directed: bool) -> Result<TspInstance> {
    if n < 2 {
        return Err(Error::TooFewCities { n, min: 2 });
    }
    if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidRange { lo, hi });
    }
    let mut rng = seed::rng(seed);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (!directed && j < i) {
                continue;
            }
            let d = rng.gen_range(lo..=hi);
            rows[i][j] = d;
            if !directed {
                rows[j][i] = d;
            }
        }
    }
    TspInstance::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizationMethod {
    MinMax,
}

/// Affine map used by [`normalize_minmax`]; keeps what is needed to turn
/// normalized costs back into original units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationRecord {
    pub d_min: f64,
    pub d_max: f64,
    pub method: NormalizationMethod,
}

impl NormalizationRecord {
    pub fn span(&self) -> f64 {
        self.d_max - self.d_min
    }

    /// Original-unit cost of a tour with `legs` edges whose normalized
    /// distances sum to `normalized`.
    pub fn denormalize_cost(&self, normalized: f64, legs: usize) -> f64 {
        normalized * self.span() + legs as f64 * self.d_min
    }
}

/// Min-max normalization over off-diagonal entries; the diagonal stays 0.
pub fn normalize_minmax(inst: &TspInstance) -> Result<(TspInstance, NormalizationRecord)> {
    let (d_min, d_max) = inst
        .off_diagonal()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
            (lo.min(d), hi.max(d))
        });
    if d_max <= d_min {
        return Err(Error::ConstantMatrix { value: d_min });
    }
    let span = d_max - d_min;
    let normalized = inst.map_off_diagonal(|d| ((d - d_min) / span).clamp(0.0, 1.0))?;
    Ok((
        normalized,
        NormalizationRecord {
            d_min,
            d_max,
            method: NormalizationMethod::MinMax,
        },
    ))
}

/// Number of distinct undirected Hamiltonian cycles on `n` cities, `(n-1)!/2`.
pub fn path_count(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::TooFewCities { n, min: 3 });
    }
    // (n-1)!/2 = 3 * 4 * ... * (n-1)
    (3..n as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .ok_or(Error::Overflow("path_count"))
}
