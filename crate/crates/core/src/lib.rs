//! Encodings, solvers and exact oracles for small traveling salesman
//! instances: QUBO/Ising penalty models with simulated annealing, a
//! statevector simulator driving QAOA and phase-estimation pipelines, MTZ/DFJ
//! integer programs, and a benchmark harness.

#![allow(clippy::needless_range_loop)]

pub mod anneal;
pub mod bench;
pub mod encode;
pub mod error;
pub mod gatesim;
pub mod ilp;
pub mod instance;
pub mod optim;
pub mod oracle;
pub mod qaoa;
pub mod qpe;
pub mod seed;

pub use anneal::{anneal, sample, AnnealResult, SampleSet, Schedule, ScheduleKind};
pub use encode::{
    build_qubo_dwave_form, build_qubo_sa_form, decode_assignment, qubo_to_ising, tour_cost,
    DecodeReport, IsingModel, Layout, QuboModel, Tour,
};
pub use error::{Error, Result};
pub use gatesim::{GateSpec, Histogram, QubitRange, StateVector};
pub use instance::{
    load_instance, normalize_minmax, random_instance, NormalizationRecord, TspInstance,
};
pub use oracle::{brute_force, held_karp, OracleMethod, OracleResult};
