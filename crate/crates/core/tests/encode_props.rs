use proptest::prelude::*;
use qtsp::anneal::{anneal, delta_energy, sample, Schedule};
use qtsp::encode::{bits_to_spins, encode_tour, spins_to_bits};
use qtsp::qpe::canonical_tours;
use qtsp::{
    brute_force, build_qubo_dwave_form, build_qubo_sa_form, decode_assignment, qubo_to_ising,
    random_instance, tour_cost, Tour, TspInstance,
};

fn bits(z: usize, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((z >> i) & 1) as u8).collect()
}

/// `H_obj + gamma * H_cons` evaluated term by term on the step/city grid.
fn sa_direct(inst: &TspInstance, gamma: f64, x: &[u8]) -> f64 {
    let n = inst.n();
    let a = |t: usize, k: usize| f64::from(x[t * n + k]);
    let mut obj = 0.0;
    for k in 0..n {
        for l in 0..n {
            if k != l {
                for i in 0..n {
                    obj += inst.d(k, l) * a(i, k) * a((i + 1) % n, l);
                }
            }
        }
    }
    let mut cons = 0.0;
    for i in 0..n {
        cons += ((0..n).map(|k| a(i, k)).sum::<f64>() - 1.0).powi(2);
    }
    for k in 0..n {
        cons += ((0..n).map(|i| a(i, k)).sum::<f64>() - 1.0).powi(2);
    }
    obj + gamma * cons
}

fn is_permutation_grid(x: &[u8], n: usize) -> bool {
    (0..n).all(|t| (0..n).map(|k| x[t * n + k] as usize).sum::<usize>() == 1)
        && (0..n).all(|k| (0..n).map(|t| x[t * n + k] as usize).sum::<usize>() == 1)
}

#[test]
fn sa_form_matches_direct_formula_exhaustively() {
    for (n, seed) in [(3, 1), (4, 2)] {
        let inst = random_instance(n, seed, 1.0, 10.0).unwrap();
        let gamma = 7.5;
        let q = build_qubo_sa_form(&inst, gamma).unwrap();
        let mut zero_penalty = 0;
        for z in 0..1usize << (n * n) {
            let x = bits(z, n * n);
            let direct = sa_direct(&inst, gamma, &x);
            assert!((q.energy(&x) - direct).abs() < 1e-9, "n={n} z={z}");
            let penalty_free = (direct - sa_direct(&inst, 0.0, &x)).abs() < 1e-12;
            assert_eq!(penalty_free, is_permutation_grid(&x, n));
            assert_eq!(decode_assignment(&q, &x).unwrap().feasible, penalty_free);
            zero_penalty += usize::from(penalty_free);
        }
        assert_eq!(zero_penalty, (1..=n).product::<usize>());
    }
}

#[test]
fn qubo_and_ising_agree_exhaustively() {
    let inst = random_instance(3, 5, 1.0, 10.0).unwrap();
    for q in [
        build_qubo_sa_form(&inst, 4.0).unwrap(),
        build_qubo_sa_form(&inst, 30.0).unwrap(),
    ] {
        let ising = qubo_to_ising(&q);
        for z in 0..512 {
            let x = bits(z, 9);
            let s = bits_to_spins(&x);
            assert_eq!(spins_to_bits(&s), x);
            assert!((q.energy(&x) - ising.energy(&s)).abs() < 1e-9);
        }
    }
}

/// Open-path tour Hamiltonian with both constraint families, cities `i` and
/// `i mod n` identified.
fn dwave_direct(inst: &TspInstance, lambda: f64, x: &[u8]) -> f64 {
    let n = inst.n();
    let side = n + 1;
    let v = |i: usize, t: usize| f64::from(x[t * side + i]);
    let mut e = 0.0;
    for i in 0..side {
        for j in 0..side {
            for t in 0..n {
                e += inst.d(i % n, j % n) * v(i, t) * v(j, t + 1);
            }
        }
    }
    for i in 0..side {
        e += lambda * ((0..side).map(|t| v(i, t)).sum::<f64>() - 1.0).powi(2);
    }
    for t in 0..side {
        e += lambda * ((0..side).map(|i| v(i, t)).sum::<f64>() - 1.0).powi(2);
    }
    e
}

#[test]
fn dwave_form_three_cities_exhaustive() {
    let inst = random_instance(3, 8, 1.0, 10.0).unwrap();
    let lambda = 12.0;
    let q = build_qubo_dwave_form(&inst, lambda).unwrap();
    assert_eq!(q.num_vars(), 16);
    let pinned: Vec<usize> = q.fixed().keys().copied().collect();
    assert_eq!(pinned, vec![0, 15]);
    let mut tours = Vec::new();
    for z in 0..1usize << 16 {
        let mut x = bits(z, 16);
        if x[0] == 0 || x[15] == 0 {
            continue;
        }
        let e = q.energy(&x);
        assert!((e - dwave_direct(&inst, lambda, &x)).abs() < 1e-9);
        let report = decode_assignment(&q, &x).unwrap();
        if let Some(t) = report.tour {
            assert!((e - tour_cost(&inst, &t).unwrap()).abs() < 1e-9);
            tours.push(t);
        }
        // pinned variables are ignored by the model
        x[0] = 0;
        assert_eq!(q.energy(&x), e);
    }
    assert_eq!(tours.len(), 2);
    assert!(tours.iter().all(|t| t.order()[0] == 0));
}

#[test]
fn sa_finds_six_city_optimum() {
    let inst = random_instance(6, 11, 1.0, 10.0).unwrap();
    let q = build_qubo_sa_form(&inst, qtsp::encode::default_penalty(&inst)).unwrap();
    let ising = qubo_to_ising(&q);
    let set = sample(&ising, &q, &Schedule::for_model(&ising), 20, 3).unwrap();
    assert!(set.feasible_count >= 18);
    let best = tour_cost(&inst, set.best_tour().unwrap()).unwrap();
    assert!((best - brute_force(&inst).unwrap().cost).abs() < 1e-9);
    let again = sample(&ising, &q, &Schedule::for_model(&ising), 20, 3).unwrap();
    assert!(set
        .results
        .iter()
        .zip(&again.results)
        .all(|(a, b)| a.spins == b.spins && a.energy == b.energy));
    assert_eq!(set.tours, again.tours);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tour_encode_decode_round_trip(n in 2usize..7, seed: u64, pick: prop::sample::Index) {
        let inst = random_instance(n, seed, 1.0, 10.0).unwrap();
        let tours: Vec<Tour> = canonical_tours(n).collect();
        let tour = pick.get(&tours);
        let sa = build_qubo_sa_form(&inst, 3.0).unwrap();
        let x = encode_tour(&sa, tour).unwrap();
        prop_assert_eq!(decode_assignment(&sa, &x).unwrap().tour, Some(tour.clone()));
        let cost = tour_cost(&inst, tour).unwrap();
        prop_assert!((sa.energy(&x) - cost).abs() < 1e-9);
        let dw = build_qubo_dwave_form(&inst, 3.0).unwrap();
        let x = encode_tour(&dw, tour).unwrap();
        prop_assert_eq!(decode_assignment(&dw, &x).unwrap().tour, Some(tour.clone()));
        prop_assert!((dw.energy(&x) - cost).abs() < 1e-9);
    }

    #[test]
    fn delta_energy_matches_recomputation(seed: u64, z in 0usize..1 << 16, i in 0usize..16) {
        let inst = random_instance(4, seed, 1.0, 10.0).unwrap();
        let ising = qubo_to_ising(&build_qubo_sa_form(&inst, 9.0).unwrap());
        let s = bits_to_spins(&bits(z, 16));
        let mut flipped = s.clone();
        flipped[i] = -flipped[i];
        let de = delta_energy(&ising, &s, i).unwrap();
        prop_assert!((de - (ising.energy(&flipped) - ising.energy(&s))).abs() < 1e-9);
    }

    #[test]
    fn anneal_reports_its_configuration_energy(seed: u64) {
        let inst = random_instance(4, seed, 1.0, 10.0).unwrap();
        let ising = qubo_to_ising(&build_qubo_sa_form(&inst, 20.0).unwrap());
        let r = anneal(&ising, &Schedule::for_model(&ising).with_sweeps(50), seed);
        prop_assert!((r.energy - ising.energy(&r.spins)).abs() < 1e-9);
        prop_assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
    }
}
