use proptest::prelude::*;
use qtsp::instance::random_directed_instance;
use qtsp::{brute_force, held_karp, random_instance, tour_cost, Tour, TspInstance};
use rand::seq::SliceRandom;

fn relabel(inst: &TspInstance, perm: &[usize]) -> TspInstance {
    // new city perm[i] is old city i
    let n = inst.n();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[perm[i]][perm[j]] = inst.d(i, j);
        }
    }
    TspInstance::from_rows(rows).unwrap()
}

#[test]
fn triangle() {
    let inst = TspInstance::from_rows(vec![
        vec![0.0, 1.0, 2.0],
        vec![1.0, 0.0, 3.0],
        vec![2.0, 3.0, 0.0],
    ])
    .unwrap();
    assert_eq!(brute_force(&inst).unwrap().cost, 6.0);
    assert_eq!(held_karp(&inst).unwrap().cost, 6.0);
}

#[test]
fn oracles_agree_exactly() {
    for n in 5..=9 {
        for s in 1..=5 {
            let sym = random_instance(n, s, 1.0, 10.0).unwrap();
            let dir = random_directed_instance(n, s, 1.0, 10.0).unwrap();
            for inst in [sym, dir] {
                let bf = brute_force(&inst).unwrap();
                let hk = held_karp(&inst).unwrap();
                assert_eq!(bf.cost, hk.cost, "n={n} seed={s}");
                assert!((tour_cost(&inst, &hk.tour).unwrap() - hk.cost).abs() < 1e-9);
                assert_eq!(bf.tour.order()[0], 0);
            }
        }
    }
}

#[test]
fn brute_force_beats_random_tours() {
    let inst = random_directed_instance(8, 3, 1.0, 10.0).unwrap();
    let best = brute_force(&inst).unwrap().cost;
    let mut rng = qtsp::seed::rng(3);
    let mut order: Vec<usize> = (0..8).collect();
    for _ in 0..1000 {
        order.shuffle(&mut rng);
        assert!(best <= tour_cost(&inst, &Tour::new(order.clone()).unwrap()).unwrap() + 1e-12);
    }
}

#[test]
fn constant_shift_adds_n_c() {
    let inst = random_instance(7, 4, 1.0, 10.0).unwrap();
    let shifted = inst.map_off_diagonal(|d| d + 2.5).unwrap();
    let a = held_karp(&inst).unwrap().cost;
    let b = held_karp(&shifted).unwrap().cost;
    assert!((b - (a + 7.0 * 2.5)).abs() < 1e-9);
}

#[test]
fn size_limits() {
    assert!(brute_force(&random_instance(11, 0, 1.0, 2.0).unwrap()).is_err());
    assert!(held_karp(&random_instance(19, 0, 1.0, 2.0).unwrap()).is_err());
}

#[test]
fn held_karp_eighteen_cities() {
    let inst = random_instance(18, 1, 1.0, 10.0).unwrap();
    let hk = held_karp(&inst).unwrap();
    assert_eq!(hk.tour.len(), 18);
    assert!((tour_cost(&inst, &hk.tour).unwrap() - hk.cost).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabeling_preserves_optimum(seed: u64, n in 3usize..8, perm_seed: u64) {
        let inst = random_directed_instance(n, seed, 1.0, 10.0).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut qtsp::seed::rng(perm_seed));
        let moved = relabel(&inst, &perm);
        let a = held_karp(&inst).unwrap();
        let b = held_karp(&moved).unwrap();
        prop_assert!((a.cost - b.cost).abs() < 1e-9);
        // the original optimum, relabeled, is optimal in the moved instance
        let mapped = Tour::new(a.tour.order().iter().map(|&c| perm[c]).collect()).unwrap();
        prop_assert!((tour_cost(&moved, &mapped).unwrap() - b.cost).abs() < 1e-9);
    }
}
