#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use qtsp::ilp::{build_dfj, build_mtz, check_feasible, decode_x, to_polynomial, IlpModel};
use qtsp::instance::random_directed_instance;
use qtsp::qpe::canonical_tours;
use qtsp::{tour_cost, TspInstance};

/// Directed Hamiltonian cycles as x bit patterns, built from permutations.
fn hamiltonian_patterns(model: &IlpModel) -> BTreeSet<u64> {
    canonical_tours(model.n())
        .map(|t| {
            t.legs()
                .fold(0u64, |acc, (i, j)| acc | 1 << model.x_var(i, j).unwrap())
        })
        .collect()
}

fn x_values(model: &IlpModel, z: u64) -> Vec<f64> {
    let mut v = vec![0.0; model.num_vars()];
    for (k, slot) in v.iter_mut().enumerate().take(model.num_x()) {
        *slot = ((z >> k) & 1) as f64;
    }
    v
}

fn touches_u(model: &IlpModel, ci: usize) -> bool {
    model.constraints[ci]
        .coeffs
        .iter()
        .any(|&(v, _)| v >= model.num_x())
}

/// All assignments of `u_1..u_{n-1}` over `2..=n`.
fn u_grid(n: usize) -> Vec<Vec<f64>> {
    let k = n - 1;
    (0..(k as u64).pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let d = code % k as u64;
                    code /= k as u64;
                    (d + 2) as f64
                })
                .collect()
        })
        .collect()
}

fn mtz_feasible_set(model: &IlpModel) -> BTreeSet<u64> {
    let n = model.n();
    let grid = u_grid(n);
    let mut out = BTreeSet::new();
    for z in 0..1u64 << model.num_x() {
        let mut values = x_values(model, z);
        let violated = model.violated(&values).unwrap();
        // constraints without u are decided by x alone
        if violated.iter().any(|&c| !touches_u(model, c)) {
            continue;
        }
        let witness = grid.iter().any(|u| {
            values[model.num_x()..].copy_from_slice(u);
            model.violated(&values).unwrap().is_empty()
        });
        if witness {
            out.insert(z);
        }
    }
    out
}

fn dfj_feasible_set(model: &IlpModel) -> BTreeSet<u64> {
    (0..1u64 << model.num_x())
        .filter(|&z| model.violated(&x_values(model, z)).unwrap().is_empty())
        .collect()
}

#[test]
fn mtz_and_dfj_feasible_sets_are_hamiltonian_cycles() {
    for n in [4, 5] {
        let inst = random_directed_instance(n, n as u64, 1.0, 10.0).unwrap();
        let mtz = build_mtz(&inst).unwrap();
        let dfj = build_dfj(&inst, n - 1).unwrap();
        let cycles = hamiltonian_patterns(&mtz);
        assert_eq!(cycles.len(), (1..n).product::<usize>());
        assert_eq!(mtz_feasible_set(&mtz), cycles, "MTZ n={n}");
        assert_eq!(dfj_feasible_set(&dfj), cycles, "DFJ n={n}");
    }
}

#[test]
fn check_feasible_agrees_with_cycle_set() {
    let inst = random_directed_instance(4, 1, 1.0, 10.0).unwrap();
    for model in [build_mtz(&inst).unwrap(), build_dfj(&inst, 3).unwrap()] {
        let cycles = hamiltonian_patterns(&model);
        for z in 0..1u64 << model.num_x() {
            let x: Vec<u8> = (0..model.num_x()).map(|k| ((z >> k) & 1) as u8).collect();
            let ok = check_feasible(&model, &x, None).unwrap().is_empty();
            assert_eq!(ok, cycles.contains(&z));
            assert_eq!(decode_x(&model, &x).is_some(), ok);
        }
    }
}

fn mtz_instance() -> (TspInstance, IlpModel) {
    let inst = random_directed_instance(4, 21, 1.0, 10.0).unwrap();
    let model = build_mtz(&inst).unwrap();
    (inst, model)
}

#[test]
fn polynomial_penalizes_every_infeasible_encoding() {
    let (inst, model) = mtz_instance();
    let penalty = 2.5;
    let (poly, layout) = to_polynomial(&model, penalty).unwrap();
    let cycles = hamiltonian_patterns(&model);
    let mut zero_penalty = 0;
    for z in 0..1u64 << model.num_x() {
        for u in u_grid(4) {
            let mut values = x_values(&model, z);
            values[model.num_x()..].copy_from_slice(&u);
            let mut b = vec![0u8; poly.num_vars];
            for k in 0..model.num_x() {
                b[k] = ((z >> k) & 1) as u8;
            }
            for (i, &ui) in u.iter().enumerate() {
                b[layout.u_bits[i][ui as usize - 2]] = 1;
            }
            // slack closest to closing each inequality
            for (ci, bits) in &layout.slack_bits {
                let c = &model.constraints[*ci];
                let s = (c.lhs(&values) - c.rhs)
                    .round()
                    .clamp(0.0, (bits.len() - 1) as f64) as usize;
                b[bits[s]] = 1;
            }
            let obj = model.objective_value(&values);
            let e = poly.energy(&b);
            if model.violated(&values).unwrap().is_empty() {
                assert!(cycles.contains(&z));
                assert!((e - obj).abs() < 1e-9);
                zero_penalty += 1;
            } else {
                assert!(e >= obj + penalty - 1e-9, "z={z} u={u:?}");
            }
        }
    }
    // one u witness per directed cycle
    assert_eq!(zero_penalty, cycles.len());
    for t in canonical_tours(4) {
        let b = layout.encode_tour(&model, &t).unwrap();
        assert!((poly.energy(&b) - tour_cost(&inst, &t).unwrap()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn polynomial_excess_is_integer_multiple_of_penalty(bits in prop::collection::vec(0u8..2, 51)) {
        let (_, model) = mtz_instance();
        let penalty = 2.5;
        let (poly, _) = to_polynomial(&model, penalty).unwrap();
        prop_assert_eq!(poly.num_vars, 51);
        let obj: f64 = (0..model.num_x()).map(|k| model.objective[k] * f64::from(bits[k])).sum();
        let excess = (poly.energy(&bits) - obj) / penalty;
        prop_assert!(excess > -1e-9);
        prop_assert!((excess - excess.round()).abs() < 1e-9);
        let q = poly.to_qubo();
        prop_assert!((q.energy(&bits) - poly.energy(&bits)).abs() < 1e-9);
    }
}
