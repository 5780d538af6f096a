//! Variational pipeline over a diagonal cost Hamiltonian.
//!
//! Sign convention: the optimizer minimizes `<H_C>`, the expected QUBO energy.
//! Basis index `z` assigns bit `i` of `z` (qubit `i`) to QUBO variable `i`.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::encode::{build_qubo_sa_form, decode_assignment, default_penalty, QuboModel, Tour};
use crate::error::{Error, Result};
use crate::gatesim::{self, GateSpec, Histogram, QubitRange, StateVector, MAX_QUBITS};
use crate::instance::TspInstance;
use crate::optim::{self, NelderMeadConfig};
use crate::seed;

pub const MAX_COST_VARS: usize = 20;
pub const MAX_QAOA_CITIES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CostDiagonal {
    num_qubits: usize,
    energies: Vec<f64>,
}

impl CostDiagonal {
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        let len = energies.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "energy vector length {len} is not 2^q, q >= 1"
            )));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidParameter("energies must be finite".into()));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            energies,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.energies
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.energies.iter().sum::<f64>() / self.energies.len() as f64
    }

    /// Same landscape mapped affinely onto `[0, 1]`.
    pub fn rescaled(&self) -> Self {
        let (lo, hi) = (self.min(), self.max());
        let span = if hi > lo { hi - lo } else { 1.0 };
        Self {
            num_qubits: self.num_qubits,
            energies: self.energies.iter().map(|e| (e - lo) / span).collect(),
        }
    }
}

/// Binary vector read from basis index `z`, variable `i` = bit `i`.
pub fn bits_of(z: usize, q: usize) -> Vec<u8> {
    (0..q).map(|i| ((z >> i) & 1) as u8).collect()
}

pub fn build_cost_diagonal(q: &QuboModel) -> Result<CostDiagonal> {
    let n = q.num_vars();
    if n == 0 {
        return Err(Error::InvalidParameter("model has no variables".into()));
    }
    if n > MAX_COST_VARS {
        return Err(Error::QubitBudget {
            needed: n,
            limit: MAX_COST_VARS,
        });
    }
    let energies = (0..1usize << n).map(|z| q.energy(&bits_of(z, n))).collect();
    CostDiagonal::new(energies)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum AnsatzParams {
    Canonical {
        gammas: Vec<f64>,
        betas: Vec<f64>,
    },
    /// `thetas[layer * q + qubit]`.
    HardwareEfficient {
        layers: usize,
        thetas: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnsatzKind {
    Canonical,
    HardwareEfficient,
}

impl AnsatzParams {
    pub fn kind(&self) -> AnsatzKind {
        match self {
            Self::Canonical { .. } => AnsatzKind::Canonical,
            Self::HardwareEfficient { .. } => AnsatzKind::HardwareEfficient,
        }
    }

    /// All zeros for `p` layers (canonical) or `layers` layers on `q` qubits.
    pub fn zeros(kind: AnsatzKind, layers: usize, q: usize) -> Self {
        match kind {
            AnsatzKind::Canonical => Self::Canonical {
                gammas: vec![0.0; layers],
                betas: vec![0.0; layers],
            },
            AnsatzKind::HardwareEfficient => Self::HardwareEfficient {
                layers,
                thetas: vec![0.0; layers * q],
            },
        }
    }

    /// Flat parameter vector: gammas then betas, or thetas.
    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            Self::Canonical { gammas, betas } => gammas.iter().chain(betas).copied().collect(),
            Self::HardwareEfficient { thetas, .. } => thetas.clone(),
        }
    }

    /// Same shape with values taken from `v`.
    pub fn with_values(&self, v: &[f64]) -> Result<Self> {
        let expected = self.to_vec().len();
        if v.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: v.len(),
            });
        }
        Ok(match self {
            Self::Canonical { gammas, .. } => {
                let p = gammas.len();
                Self::Canonical {
                    gammas: v[..p].to_vec(),
                    betas: v[p..].to_vec(),
                }
            }
            Self::HardwareEfficient { layers, .. } => Self::HardwareEfficient {
                layers: *layers,
                thetas: v.to_vec(),
            },
        })
    }
}

pub fn evolve_ansatz(cost: &CostDiagonal, params: &AnsatzParams) -> Result<StateVector> {
    let q = cost.num_qubits();
    let all = QubitRange::new(0, q);
    match params {
        AnsatzParams::Canonical { gammas, betas } => {
            if gammas.len() != betas.len() {
                return Err(Error::DimensionMismatch {
                    expected: gammas.len(),
                    actual: betas.len(),
                });
            }
            let mut s = gatesim::new_state(q)?;
            for i in 0..q {
                s.apply(&GateSpec::H(i))?;
            }
            for (&gamma, &beta) in gammas.iter().zip(betas) {
                let phases = cost.energies().iter().map(|e| -gamma * e).collect();
                s.apply(&GateSpec::DiagonalPhase { range: all, phases })?;
                for i in 0..q {
                    s.apply(&GateSpec::RX(i, 2.0 * beta))?;
                }
            }
            Ok(s)
        }
        AnsatzParams::HardwareEfficient { layers, thetas } => {
            if thetas.len() != layers * q {
                return Err(Error::DimensionMismatch {
                    expected: layers * q,
                    actual: thetas.len(),
                });
            }
            let mut s = gatesim::new_state(q)?;
            for layer in thetas.chunks(q.max(1)).take(*layers) {
                for (i, &theta) in layer.iter().enumerate() {
                    s.apply(&GateSpec::RY(i, theta))?;
                }
                for i in 0..q.saturating_sub(1) {
                    s.apply(&GateSpec::Cnot {
                        control: i,
                        target: i + 1,
                    })?;
                }
            }
            Ok(s)
        }
    }
}

pub fn expectation(cost: &CostDiagonal, s: &StateVector) -> Result<f64> {
    let amps = s.amplitudes();
    if amps.len() != cost.energies().len() {
        return Err(Error::DimensionMismatch {
            expected: cost.energies().len(),
            actual: amps.len(),
        });
    }
    Ok(amps
        .iter()
        .zip(cost.energies())
        .map(|(a, e)| a.norm_sqr() * e)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimTrace {
    /// Every objective evaluation, in order.
    pub iterations: Vec<(Vec<f64>, f64)>,
    /// Index of the lowest recorded objective.
    pub best: usize,
}

impl OptimTrace {
    pub fn best_value(&self) -> f64 {
        self.iterations[self.best].1
    }

    /// Running minimum after each evaluation.
    pub fn running_best(&self) -> Vec<f64> {
        self.iterations
            .iter()
            .scan(f64::INFINITY, |m, (_, v)| {
                *m = m.min(*v);
                Some(*m)
            })
            .collect()
    }

    /// `iteration,objective` rows, one per evaluation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,objective\n");
        for (i, (_, v)) in self.iterations.iter().enumerate() {
            writeln!(out, "{i},{v}").expect("write to string");
        }
        out
    }
}

/// Minimizes `expectation(cost, evolve_ansatz(cost, params))` from `init`.
pub fn optimize(
    cost: &CostDiagonal,
    init: &AnsatzParams,
    budget: usize,
    seed: u64,
) -> Result<(AnsatzParams, OptimTrace)> {
    // surface shape errors before handing a panicking closure to the optimizer
    evolve_ansatz(cost, init)?;
    let objective = |v: &[f64]| {
        let params = init.with_values(v).expect("shape checked");
        let s = evolve_ansatz(cost, &params).expect("shape checked");
        expectation(cost, &s).expect("dimension checked")
    };
    let mut rng = seed::rng(seed);
    let min = optim::minimize(
        &objective,
        &init.to_vec(),
        budget,
        &NelderMeadConfig::default(),
        &mut rng,
    );
    let iterations: Vec<(Vec<f64>, f64)> = min
        .evaluations
        .into_iter()
        .map(|e| (e.x, e.value))
        .collect();
    let best = iterations
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .expect("at least one evaluation");
    let params = init.with_values(&iterations[best].0)?;
    Ok((params, OptimTrace { iterations, best }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QaoaConfig {
    pub kind: AnsatzKind,
    /// `p` for the canonical ansatz, layer count for the hardware-efficient one.
    pub layers: usize,
    pub shots: u64,
    pub budget: usize,
    /// Penalty weight; `None` uses the instance default.
    pub gamma: Option<f64>,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        Self {
            kind: AnsatzKind::Canonical,
            layers: 2,
            shots: 2048,
            budget: 500,
            gamma: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QaoaOutcome {
    /// `None` when no sampled bitstring decodes to a tour.
    pub tour: Option<Tour>,
    pub bitstring: Option<String>,
    pub params: AnsatzParams,
    /// `<H_C>` of the optimized state in QUBO energy units.
    pub expectation: f64,
    /// `<H_C>` of the uniform superposition.
    pub uniform_expectation: f64,
    pub feasible_shots: u64,
    pub histogram: Histogram,
    pub trace: OptimTrace,
}

/// Builds the SA-form QUBO, optimizes the ansatz from angles drawn uniformly
/// in `[0, 2 pi)`, samples the optimized state and decodes the most frequent
/// feasible bitstring.
///
/// The optimizer works on the cost diagonal rescaled to `[0, 1]`, which keeps
/// the angle landscape independent of the distance units; the trace is in
/// rescaled units, `expectation` in QUBO units.
pub fn qaoa_solve(inst: &TspInstance, cfg: &QaoaConfig, seed: u64) -> Result<QaoaOutcome> {
    let n = inst.n();
    if n > MAX_QAOA_CITIES {
        return Err(Error::QubitBudget {
            needed: n * n,
            limit: MAX_QAOA_CITIES * MAX_QAOA_CITIES,
        });
    }
    debug_assert!(n * n <= MAX_QUBITS);
    let gamma = cfg.gamma.unwrap_or_else(|| default_penalty(inst));
    let qubo = build_qubo_sa_form(inst, gamma)?;
    let cost = build_cost_diagonal(&qubo)?;
    let scaled = cost.rescaled();
    let q = cost.num_qubits();

    let mut init_rng = seed::rng(seed::derive(seed, 0));
    let shape = AnsatzParams::zeros(cfg.kind, cfg.layers, q);
    let start: Vec<f64> = (0..shape.to_vec().len())
        .map(|_| init_rng.gen_range(0.0..2.0 * std::f64::consts::PI))
        .collect();
    let init = shape.with_values(&start)?;

    let (params, trace) = optimize(&scaled, &init, cfg.budget, seed::derive(seed, 1))?;
    let state = evolve_ansatz(&scaled, &params)?;
    let expect = expectation(&cost, &state)?;
    let histogram = gatesim::measure(&state, cfg.shots, seed::derive(seed, 2))?;

    let mut by_count: Vec<(usize, u64)> = histogram.by_value().into_iter().collect();
    by_count.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut chosen = None;
    let mut feasible_shots = 0;
    for &(z, count) in &by_count {
        let report = decode_assignment(&qubo, &bits_of(z, q))?;
        if let Some(tour) = report.tour {
            feasible_shots += count;
            if chosen.is_none() {
                chosen = Some((tour, gatesim::bitstring(z, q)));
            }
        }
    }
    let (tour, bitstring) = match chosen {
        Some((t, b)) => (Some(t), Some(b)),
        None => (None, None),
    };
    Ok(QaoaOutcome {
        tour,
        bitstring,
        params,
        expectation: expect,
        uniform_expectation: cost.mean(),
        feasible_shots,
        histogram,
        trace,
    })
}
