//! Dense statevector simulator.
//!
//! Qubit 0 is the least significant bit of a basis index. Bitstrings are
//! printed most significant qubit first, so basis index 5 on three qubits
//! prints as `101`.
//!
//! Diagonal unitaries are carried as phase vectors over a contiguous qubit
//! range, never as dense matrices.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

pub const MAX_QUBITS: usize = 22;

/// Contiguous block of qubits `start..start + len`; qubit `start` is the
/// least significant bit of the register value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitRange {
    pub start: usize,
    pub len: usize,
}

impl QubitRange {
    pub fn new(start: usize, len: usize) -> Self {
        Self { start, len }
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn contains(&self, q: usize) -> bool {
        (self.start..self.end()).contains(&q)
    }

    #[inline]
    fn value(&self, basis: usize) -> usize {
        (basis >> self.start) & ((1 << self.len) - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    H(usize),
    RY(usize, f64),
    RX(usize, f64),
    RZ(usize, f64),
    Cnot {
        control: usize,
        target: usize,
    },
    Cz {
        control: usize,
        target: usize,
    },
    /// Multiplies amplitudes by `exp(i * phases[k])`, `k` the register value.
    DiagonalPhase {
        range: QubitRange,
        phases: Vec<f64>,
    },
    /// `DiagonalPhase` raised to `power`, applied where `control` is 1.
    ControlledDiagonalPower {
        control: usize,
        range: QubitRange,
        phases: Vec<f64>,
        power: u64,
    },
    InverseQft(QubitRange),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// `|0...0>` on `q` qubits.
pub fn new_state(q: usize) -> Result<StateVector> {
    if !(1..=MAX_QUBITS).contains(&q) {
        return Err(Error::QubitBudget {
            needed: q,
            limit: MAX_QUBITS,
        });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << q];
    amps[0] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        num_qubits: q,
        amps,
    })
}

impl StateVector {
    /// Computational basis state `|index>`.
    pub fn basis(q: usize, index: usize) -> Result<Self> {
        let mut s = new_state(q)?;
        if index >= s.amps.len() {
            return Err(Error::QubitIndex(format!(
                "basis index {index} out of range"
            )));
        }
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[index] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() || len.trailing_zeros() as usize > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!(
                "{len} amplitudes is not 2^q, 1 <= q <= 22"
            )));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(Complex64::norm_sqr).collect()
    }

    /// Marginal distribution of a register.
    pub fn register_probabilities(&self, range: QubitRange) -> Vec<f64> {
        let mut p = vec![0.0; 1 << range.len];
        for (idx, a) in self.amps.iter().enumerate() {
            p[range.value(idx)] += a.norm_sqr();
        }
        p
    }

    pub fn apply(&mut self, gate: &GateSpec) -> Result<()> {
        self.check(gate)?;
        match gate {
            GateSpec::H(q) => {
                let h = FRAC_1_SQRT_2;
                self.apply_1q(*q, [[c(h), c(h)], [c(h), c(-h)]]);
            }
            GateSpec::RY(q, theta) => {
                let (s, co) = (theta / 2.0).sin_cos();
                self.apply_1q(*q, [[c(co), c(-s)], [c(s), c(co)]]);
            }
            GateSpec::RX(q, theta) => {
                let (s, co) = (theta / 2.0).sin_cos();
                let mis = Complex64::new(0.0, -s);
                self.apply_1q(*q, [[c(co), mis], [mis, c(co)]]);
            }
            GateSpec::RZ(q, theta) => {
                let m = Complex64::from_polar(1.0, -theta / 2.0);
                self.apply_1q(*q, [[m, c(0.0)], [c(0.0), m.conj()]]);
            }
            GateSpec::Cnot { control, target } => {
                let (cm, tm) = (1 << control, 1 << target);
                for idx in 0..self.amps.len() {
                    if idx & cm != 0 && idx & tm == 0 {
                        self.amps.swap(idx, idx | tm);
                    }
                }
            }
            GateSpec::Cz { control, target } => {
                let mask = (1 << control) | (1 << target);
                for (idx, a) in self.amps.iter_mut().enumerate() {
                    if idx & mask == mask {
                        *a = -*a;
                    }
                }
            }
            GateSpec::DiagonalPhase { range, phases } => {
                let factors: Vec<Complex64> = phases
                    .iter()
                    .map(|&p| Complex64::from_polar(1.0, p))
                    .collect();
                for (idx, a) in self.amps.iter_mut().enumerate() {
                    *a *= factors[range.value(idx)];
                }
            }
            GateSpec::ControlledDiagonalPower {
                control,
                range,
                phases,
                power,
            } => {
                let factors: Vec<Complex64> = phases
                    .iter()
                    .map(|&p| Complex64::from_polar(1.0, (p * *power as f64).rem_euclid(2.0 * PI)))
                    .collect();
                let cm = 1 << control;
                for (idx, a) in self.amps.iter_mut().enumerate() {
                    if idx & cm != 0 {
                        *a *= factors[range.value(idx)];
                    }
                }
            }
            GateSpec::InverseQft(range) => self.inverse_qft(*range),
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a GateSpec>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    fn check(&self, gate: &GateSpec) -> Result<()> {
        let q = self.num_qubits;
        let qubit = |i: usize| {
            if i < q {
                Ok(())
            } else {
                Err(Error::QubitIndex(format!(
                    "qubit {i} out of range for {q} qubits"
                )))
            }
        };
        let pair = |a: usize, b: usize| {
            qubit(a)?;
            qubit(b)?;
            if a == b {
                return Err(Error::QubitIndex(format!(
                    "control and target are both {a}"
                )));
            }
            Ok(())
        };
        let register = |r: &QubitRange, phases: Option<&Vec<f64>>| {
            if r.len == 0 || r.end() > q {
                return Err(Error::QubitIndex(format!(
                    "register {}..{} out of range for {q} qubits",
                    r.start,
                    r.end()
                )));
            }
            if let Some(p) = phases {
                if p.len() != 1 << r.len {
                    return Err(Error::DimensionMismatch {
                        expected: 1 << r.len,
                        actual: p.len(),
                    });
                }
            }
            Ok(())
        };
        match gate {
            GateSpec::H(a) | GateSpec::RY(a, _) | GateSpec::RX(a, _) | GateSpec::RZ(a, _) => {
                qubit(*a)
            }
            GateSpec::Cnot { control, target } | GateSpec::Cz { control, target } => {
                pair(*control, *target)
            }
            GateSpec::DiagonalPhase { range, phases } => register(range, Some(phases)),
            GateSpec::ControlledDiagonalPower {
                control,
                range,
                phases,
                ..
            } => {
                qubit(*control)?;
                register(range, Some(phases))?;
                if range.contains(*control) {
                    return Err(Error::QubitIndex(format!(
                        "control {control} lies inside the target register"
                    )));
                }
                Ok(())
            }
            GateSpec::InverseQft(range) => register(range, None),
        }
    }

    fn apply_1q(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1 << q;
        for idx in 0..self.amps.len() {
            if idx & bit == 0 {
                let a0 = self.amps[idx];
                let a1 = self.amps[idx | bit];
                self.amps[idx] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[idx | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn controlled_phase(&mut self, control: usize, target: usize, theta: f64) {
        let mask = (1 << control) | (1 << target);
        let f = Complex64::from_polar(1.0, theta);
        for (idx, a) in self.amps.iter_mut().enumerate() {
            if idx & mask == mask {
                *a *= f;
            }
        }
    }

    fn swap_qubits(&mut self, a: usize, b: usize) {
        let (ma, mb) = (1 << a, 1 << b);
        for idx in 0..self.amps.len() {
            if idx & ma != 0 && idx & mb == 0 {
                self.amps.swap(idx, (idx & !ma) | mb);
            }
        }
    }

    /// `|k> -> 2^{-m/2} sum_j exp(-2 pi i k j / 2^m) |j>` on the register, as
    /// the reversed forward circuit: bit-reversal swaps, then per qubit the
    /// conjugated controlled phases followed by a Hadamard.
    fn inverse_qft(&mut self, range: QubitRange) {
        let m = range.len;
        let qubit = |i: usize| range.start + i;
        for i in 0..m / 2 {
            self.swap_qubits(qubit(i), qubit(m - 1 - i));
        }
        for a in 0..m {
            for b in 0..a {
                let theta = -PI / f64::from(1u32 << (a - b));
                self.controlled_phase(qubit(b), qubit(a), theta);
            }
            self.apply(&GateSpec::H(qubit(a))).expect("qubit in range");
        }
    }
}

#[inline]
fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Measurement counts keyed by bitstring, most significant qubit first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
}

impl Histogram {
    pub fn count_of(&self, bits: &str) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }

    /// Counts keyed by integer value.
    pub fn by_value(&self) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .map(|(k, &v)| (usize::from_str_radix(k, 2).expect("bitstring key"), v))
            .collect()
    }

    /// Most frequent outcome; ties go to the smaller value.
    pub fn mode(&self) -> Option<usize> {
        self.by_value()
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(k, _)| k)
    }
}

pub fn bitstring(value: usize, width: usize) -> String {
    format!("{value:0width$b}")
}

/// Samples `shots` outcomes of the full register.
pub fn measure(s: &StateVector, shots: u64, seed: u64) -> Result<Histogram> {
    measure_register(s, QubitRange::new(0, s.num_qubits()), shots, seed)
}

/// Samples `shots` outcomes of one register, marginalizing the rest.
pub fn measure_register(
    s: &StateVector,
    range: QubitRange,
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidParameter("shots must be at least 1".into()));
    }
    if range.len == 0 || range.end() > s.num_qubits() {
        return Err(Error::QubitIndex("measured register out of range".into()));
    }
    let probs = s.register_probabilities(range);
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = seed::rng(seed);
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        let k = cumulative.partition_point(|&c| c <= u).min(probs.len() - 1);
        counts[k] += 1;
    }
    let counts = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, n)| n > 0)
        .map(|(k, n)| (bitstring(k, range.len), n))
        .collect();
    Ok(Histogram { counts, shots })
}
