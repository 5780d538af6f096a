//! Exact TSP solvers used to verify every other pipeline.
//!
//! Both anchor tours at city 0. Reversed tours are enumerated separately, so
//! directed instances are handled without change.

use serde::{Deserialize, Serialize};

use crate::encode::{tour_cost, Tour};
use crate::error::{Error, Result};
use crate::instance::TspInstance;
use crate::qpe::canonical_tours;

pub const BRUTE_FORCE_MAX: usize = 10;
pub const HELD_KARP_MAX: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleMethod {
    BruteForce,
    HeldKarp,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub tour: Tour,
    pub cost: f64,
    pub method: OracleMethod,
    /// Permutations (brute force) or DP states (Held-Karp) visited.
    pub explored: u64,
}

/// Enumerates all `(n-1)!` tours starting at city 0 in lexicographic order;
/// the first tour reaching the minimum wins.
pub fn brute_force(inst: &TspInstance) -> Result<OracleResult> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooManyCities {
            what: "brute_force",
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let mut best: Option<(Tour, f64)> = None;
    let mut explored = 0u64;
    for tour in canonical_tours(n) {
        explored += 1;
        let cost = tour_cost(inst, &tour)?;
        if best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((tour, cost));
        }
    }
    let (tour, cost) = best.expect("n >= 2");
    Ok(OracleResult {
        tour,
        cost,
        method: OracleMethod::BruteForce,
        explored,
    })
}

/// Subset DP over `(visited set, last city)`, cities `1..n` in the mask.
pub fn held_karp(inst: &TspInstance) -> Result<OracleResult> {
    let n = inst.n();
    if n > HELD_KARP_MAX {
        return Err(Error::TooManyCities {
            what: "held_karp",
            n,
            max: HELD_KARP_MAX,
        });
    }
    let m = n - 1;
    let full = (1usize << m) - 1;
    let unreached = f64::MAX;
    // cost[mask * m + j]: cheapest path 0 -> ... -> j+1 visiting exactly `mask`
    let mut cost = vec![unreached; (1 << m) * m];
    let mut parent = vec![u8::MAX; (1 << m) * m];
    for j in 0..m {
        cost[(1 << j) * m + j] = inst.d(0, j + 1);
    }
    let mut explored = 0u64;
    for mask in 1..=full {
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let here = cost[mask * m + j];
            if here == unreached {
                continue;
            }
            explored += 1;
            let rest = full & !mask;
            let mut bits = rest;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let next = mask | (1 << k);
                let cand = here + inst.d(j + 1, k + 1);
                let slot = next * m + k;
                if cand < cost[slot] {
                    cost[slot] = cand;
                    parent[slot] = j as u8;
                }
            }
        }
    }

    let mut best_last = 0;
    let mut best_cost = unreached;
    for j in 0..m {
        let c = cost[full * m + j] + inst.d(j + 1, 0);
        if c < best_cost {
            best_cost = c;
            best_last = j;
        }
    }
    let mut rev = Vec::with_capacity(n);
    let mut mask = full;
    let mut j = best_last;
    loop {
        rev.push(j + 1);
        let p = parent[mask * m + j];
        mask &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    rev.push(0);
    rev.reverse();
    let tour = Tour::new(rev)?;
    let cost = tour_cost(inst, &tour)?;
    Ok(OracleResult {
        tour,
        cost,
        method: OracleMethod::HeldKarp,
        explored,
    })
}

/// Picks brute force where it is cheap, Held-Karp otherwise.
pub fn solve_exact(inst: &TspInstance) -> Result<OracleResult> {
    if inst.n() <= 8 {
        brute_force(inst)
    } else {
        held_karp(inst)
    }
}
