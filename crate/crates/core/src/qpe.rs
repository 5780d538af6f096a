//! Tour cost readout by phase estimation.
//!
//! Distances are min-max normalized and mapped to phases
//! `phi[j][k] = 2 pi d~[j][k] / n`, so the phase accumulated by an `n`-leg
//! tour stays below one turn except when every leg is a longest edge.
//!
//! A tour is encoded in `n` slots of `ceil(log2 n)` qubits, one slot per tour
//! position, slot 0 most significant. Slot `t` holds the predecessor of the
//! city visited at position `t`; for the visiting order 1-2-4-3 (one-based)
//! the state is `|10 00 01 11>`. The unitary is a product of per-slot
//! diagonals, slot `t` applying `exp(i phi[k][city_t])` to value `k`, so the
//! encoded tour is an eigenstate whose phase is the sum of its leg phases.
//!
//! Circuit layout: the tour register occupies the low qubits, the precision
//! register of `m` qubits sits above it.

use std::f64::consts::PI;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::encode::Tour;
use crate::error::{Error, Result};
use crate::gatesim::{self, GateSpec, Histogram, QubitRange, StateVector, MAX_QUBITS};
use crate::instance::{normalize_minmax, NormalizationRecord, TspInstance};
use crate::seed;

pub const DEFAULT_PRECISION: usize = 8;
pub const MAX_PRECISION: usize = 12;
pub const MAX_SEARCH_CITIES: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatrix {
    n: usize,
    phi: Vec<f64>,
    norm: NormalizationRecord,
}

impl PhaseMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self, j: usize, k: usize) -> f64 {
        self.phi[j * self.n + k]
    }

    pub fn normalization(&self) -> &NormalizationRecord {
        &self.norm
    }

    /// Exact eigenphase (in turns) of a tour's eigenstate.
    pub fn tour_phase(&self, tour: &Tour) -> f64 {
        tour.legs().map(|(a, b)| self.phi(a, b)).sum::<f64>() / (2.0 * PI)
    }

    /// Original-unit tour cost for a phase given in turns.
    pub fn cost_from_phase(&self, theta: f64) -> f64 {
        // theta = sum(d~) / n
        self.norm.denormalize_cost(theta * self.n as f64, self.n)
    }
}

pub fn build_phase_matrix(inst: &TspInstance) -> Result<PhaseMatrix> {
    let (normalized, norm) = normalize_minmax(inst)?;
    let n = inst.n();
    let scale = 2.0 * PI / n as f64;
    let phi = (0..n * n)
        .map(|idx| scale * normalized.d(idx / n, idx % n))
        .collect();
    Ok(PhaseMatrix { n, phi, norm })
}

/// Bits per slot, `ceil(log2 n)`.
pub fn slot_bits(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

/// Basis index of a tour's eigenstate on `n * slot_bits(n)` qubits.
pub fn build_tour_eigenstate(tour: &Tour) -> usize {
    let n = tour.len();
    let b = slot_bits(n);
    let order = tour.order();
    (0..n).fold(0usize, |acc, t| {
        let pred = order[(t + n - 1) % n];
        (acc << b) | pred
    })
}

/// Phase vector over the tour register for the unitary built around `tour`'s
/// city sequence. Padding values (`k >= n`) get phase 0.
fn tour_unitary_phases(pm: &PhaseMatrix, tour: &Tour) -> Vec<f64> {
    let n = pm.n();
    let b = slot_bits(n);
    let mask = (1 << b) - 1;
    let slot_phase: Vec<Vec<f64>> = tour
        .order()
        .iter()
        .map(|&city| {
            (0..1usize << b)
                .map(|k| if k < n { pm.phi(k, city) } else { 0.0 })
                .collect()
        })
        .collect();
    (0..1usize << (n * b))
        .map(|idx| {
            (0..n)
                .map(|t| {
                    let shift = (n - 1 - t) * b;
                    slot_phase[t][(idx >> shift) & mask]
                })
                .sum::<f64>()
                .rem_euclid(2.0 * PI)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpeOutcome {
    pub tour: Tour,
    pub j_hat: usize,
    pub theta_hat: f64,
    pub raw_phase: f64,
    pub est_cost: f64,
    pub histogram: Histogram,
}

/// Pre-measurement circuit: tour eigenstate, Hadamards, controlled powers of
/// the tour unitary, inverse QFT on the precision register.
pub fn qpe_circuit(pm: &PhaseMatrix, tour: &Tour, m: usize) -> Result<(StateVector, QubitRange)> {
    let n = pm.n();
    if tour.len() != n {
        return Err(Error::InvalidTour(format!(
            "tour has {} cities, instance has {n}",
            tour.len()
        )));
    }
    if !(1..=MAX_PRECISION).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "precision must be 1..={MAX_PRECISION}, got {m}"
        )));
    }
    let lower = n * slot_bits(n);
    let total = lower + m;
    if total > MAX_QUBITS {
        return Err(Error::QubitBudget {
            needed: total,
            limit: MAX_QUBITS,
        });
    }
    let tour_reg = QubitRange::new(0, lower);
    let precision = QubitRange::new(lower, m);
    let phases = tour_unitary_phases(pm, tour);

    let mut state = StateVector::basis(total, build_tour_eigenstate(tour))?;
    for j in 0..m {
        state.apply(&GateSpec::H(lower + j))?;
    }
    for j in 0..m {
        state.apply(&GateSpec::ControlledDiagonalPower {
            control: lower + j,
            range: tour_reg,
            phases: phases.clone(),
            power: 1 << j,
        })?;
    }
    state.apply(&GateSpec::InverseQft(precision))?;
    Ok((state, precision))
}

/// Applies the tour unitary once to the tour eigenstate and returns the
/// resulting amplitude on that basis state; equals `exp(2 pi i theta)`.
pub fn eigenphase_amplitude(pm: &PhaseMatrix, tour: &Tour) -> Result<num_complex::Complex64> {
    let n = pm.n();
    let lower = n * slot_bits(n);
    let idx = build_tour_eigenstate(tour);
    let mut state = StateVector::basis(lower, idx)?;
    state.apply(&GateSpec::DiagonalPhase {
        range: QubitRange::new(0, lower),
        phases: tour_unitary_phases(pm, tour),
    })?;
    Ok(state.amplitudes()[idx])
}

pub fn run_qpe(
    inst: &TspInstance,
    tour: &Tour,
    m: usize,
    shots: u64,
    seed: u64,
) -> Result<QpeOutcome> {
    let pm = build_phase_matrix(inst)?;
    run_qpe_with(&pm, tour, m, shots, seed)
}

pub fn run_qpe_with(
    pm: &PhaseMatrix,
    tour: &Tour,
    m: usize,
    shots: u64,
    seed: u64,
) -> Result<QpeOutcome> {
    let (state, precision) = qpe_circuit(pm, tour, m)?;
    let histogram = gatesim::measure_register(&state, precision, shots, seed)?;
    let j_hat = histogram.mode().expect("at least one shot");
    let theta_hat = j_hat as f64 / (1u64 << m) as f64;
    Ok(QpeOutcome {
        tour: tour.clone(),
        j_hat,
        theta_hat,
        raw_phase: theta_hat * 2.0 * PI,
        est_cost: pm.cost_from_phase(theta_hat),
        histogram,
    })
}

/// Tours with city 0 first, remaining cities in lexicographic permutation order.
pub fn canonical_tours(n: usize) -> impl Iterator<Item = Tour> {
    (1..n).permutations(n.saturating_sub(1)).map(|rest| {
        let mut order = Vec::with_capacity(rest.len() + 1);
        order.push(0);
        order.extend(rest);
        Tour::new(order).expect("permutation")
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpeSearch {
    pub best: QpeOutcome,
    pub evaluated: Vec<QpeOutcome>,
}

/// Phase-estimates every canonical tour and returns the smallest estimate;
/// ties go to the lexicographically first tour.
pub fn qpe_search(inst: &TspInstance, m: usize, shots: u64, seed: u64) -> Result<QpeSearch> {
    let n = inst.n();
    if n > MAX_SEARCH_CITIES {
        return Err(Error::TooManyCities {
            what: "qpe_search",
            n,
            max: MAX_SEARCH_CITIES,
        });
    }
    let pm = build_phase_matrix(inst)?;
    let tours: Vec<Tour> = canonical_tours(n).collect();
    let evaluated = tours
        .par_iter()
        .enumerate()
        .map(|(i, t)| run_qpe_with(&pm, t, m, shots, seed::derive(seed, i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let best = evaluated
        .iter()
        .min_by(|a, b| a.est_cost.total_cmp(&b.est_cost))
        .cloned()
        .expect("n >= 2 gives at least one tour");
    Ok(QpeSearch { best, evaluated })
}

/// Readout error bound for one bin: `n * (d_max - d_min) / 2^m`.
pub fn bin_width_cost(pm: &PhaseMatrix, m: usize) -> f64 {
    pm.n() as f64 * pm.normalization().span() / (1u64 << m) as f64
}
