use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qtsp::gatesim::{bitstring, measure, measure_register, new_state, MAX_QUBITS};
use qtsp::{Error, GateSpec, QubitRange, StateVector};

fn close(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .all(|(x, y)| (x - y).norm() < tol)
}

fn random_state(q: usize, seed: u64) -> StateVector {
    let mut rng = qtsp::seed::rng(seed);
    use rand::Rng;
    let amps: Vec<Complex64> = (0..1 << q)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn self_inverse_gates() {
    let s = random_state(3, 1);
    for g in [
        GateSpec::H(1),
        GateSpec::Cnot {
            control: 0,
            target: 2,
        },
        GateSpec::Cz {
            control: 2,
            target: 1,
        },
    ] {
        let mut t = s.clone();
        t.apply(&g).unwrap();
        t.apply(&g).unwrap();
        assert!(close(&s, &t, 1e-12), "{g:?}");
    }
    for (fwd, back) in [
        (GateSpec::RX(0, 0.7), GateSpec::RX(0, -0.7)),
        (GateSpec::RY(1, 1.9), GateSpec::RY(1, -1.9)),
        (GateSpec::RZ(2, -2.3), GateSpec::RZ(2, 2.3)),
    ] {
        let mut t = s.clone();
        t.apply_all([&fwd, &back]).unwrap();
        assert!(close(&s, &t, 1e-12));
    }
}

#[test]
fn rotation_by_pi_flips_zero() {
    let mut s = new_state(1).unwrap();
    s.apply(&GateSpec::RY(0, PI)).unwrap();
    assert!((s.amplitudes()[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    let mut s = new_state(1).unwrap();
    s.apply(&GateSpec::RX(0, PI)).unwrap();
    assert!((s.amplitudes()[1] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
}

#[test]
fn h_conjugates_cz_into_cnot() {
    let s = random_state(2, 4);
    let mut a = s.clone();
    a.apply(&GateSpec::Cnot {
        control: 0,
        target: 1,
    })
    .unwrap();
    let mut b = s;
    b.apply_all(&[
        GateSpec::H(1),
        GateSpec::Cz {
            control: 0,
            target: 1,
        },
        GateSpec::H(1),
    ])
    .unwrap();
    assert!(close(&a, &b, 1e-12));
}

#[test]
fn inverse_qft_matches_dft_matrix() {
    // register on qubits 1..4 of a 5-qubit state
    let range = QubitRange::new(1, 3);
    let s = random_state(5, 9);
    let mut out = s.clone();
    out.apply(&GateSpec::InverseQft(range)).unwrap();

    let dim = 8usize;
    let mut expected = vec![Complex64::new(0.0, 0.0); 32];
    for (idx, &a) in s.amplitudes().iter().enumerate() {
        let k = (idx >> 1) & 7;
        let rest = idx & !(7 << 1);
        for j in 0..dim {
            let w = Complex64::from_polar(
                1.0 / (dim as f64).sqrt(),
                -2.0 * PI * (k * j) as f64 / dim as f64,
            );
            expected[rest | (j << 1)] += w * a;
        }
    }
    let expected = StateVector::from_amplitudes(expected).unwrap();
    assert!(close(&out, &expected, 1e-12));
}

#[test]
fn controlled_power_equals_repeated_phase() {
    let range = QubitRange::new(0, 2);
    let phases = vec![0.3, 1.1, -2.0, 2.9];
    let s = random_state(3, 12);
    let mut a = s.clone();
    a.apply(&GateSpec::ControlledDiagonalPower {
        control: 2,
        range,
        phases: phases.clone(),
        power: 5,
    })
    .unwrap();
    // control set: multiply by exp(5 i phi); control clear: untouched
    let expected: Vec<Complex64> = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(idx, &amp)| {
            if idx & 4 != 0 {
                amp * Complex64::from_polar(1.0, 5.0 * phases[idx & 3])
            } else {
                amp
            }
        })
        .collect();
    assert!(close(
        &a,
        &StateVector::from_amplitudes(expected).unwrap(),
        1e-12
    ));
}

#[test]
fn measurement_is_seeded_and_msb_first() {
    let mut s = new_state(3).unwrap();
    s.apply(&GateSpec::RY(0, PI)).unwrap();
    let h = measure(&s, 100, 7).unwrap();
    assert_eq!(h.count_of("001"), 100);
    assert_eq!(bitstring(1, 3), "001");

    let s = random_state(4, 3);
    assert_eq!(measure(&s, 500, 1).unwrap(), measure(&s, 500, 1).unwrap());
    let h = measure_register(&s, QubitRange::new(2, 2), 500, 1).unwrap();
    assert_eq!(h.counts.values().sum::<u64>(), 500);
    assert!(h.counts.keys().all(|k| k.len() == 2));
}

#[test]
fn qubit_budget_is_enforced() {
    assert!(matches!(
        new_state(MAX_QUBITS + 1),
        Err(Error::QubitBudget { .. })
    ));
    let mut s = new_state(2).unwrap();
    assert!(s.apply(&GateSpec::H(2)).is_err());
    assert!(s
        .apply(&GateSpec::Cnot {
            control: 1,
            target: 1
        })
        .is_err());
}

fn gate(q: usize) -> impl Strategy<Value = GateSpec> {
    let angle = -7.0f64..7.0;
    prop_oneof![
        (0..q).prop_map(GateSpec::H),
        (0..q, angle.clone()).prop_map(|(i, t)| GateSpec::RX(i, t)),
        (0..q, angle.clone()).prop_map(|(i, t)| GateSpec::RY(i, t)),
        (0..q, angle.clone()).prop_map(|(i, t)| GateSpec::RZ(i, t)),
        (0..q, 1..q).prop_map(move |(c, off)| GateSpec::Cnot {
            control: c,
            target: (c + off) % q
        }),
        (0..q, 1..q).prop_map(move |(c, off)| GateSpec::Cz {
            control: c,
            target: (c + off) % q
        }),
        prop::collection::vec(angle.clone(), 4).prop_map(|phases| GateSpec::DiagonalPhase {
            range: QubitRange::new(1, 2),
            phases
        }),
        (1..q).prop_map(move |len| GateSpec::InverseQft(QubitRange::new(q - len, len))),
    ]
}

proptest! {
    #[test]
    fn gates_preserve_norm(seed: u64, gates in prop::collection::vec(gate(4), 1..30)) {
        let mut s = random_state(4, seed);
        s.apply_all(&gates).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
