//! Nelder-Mead simplex minimization with seeded random restarts.
//!
//! Every objective evaluation counts against a fixed budget and is recorded.
//! When the simplex collapses before the budget is spent, the search restarts
//! from a point drawn uniformly from the restart box.

use rand::Rng;

use crate::seed::Rng as SeedRng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadConfig {
    /// Edge length of the initial simplex around the start point.
    pub initial_step: f64,
    /// Restart once the simplex's value spread falls below this.
    pub f_tol: f64,
    /// ...and its largest vertex distance from the best falls below this.
    pub x_tol: f64,
    /// Restart points are drawn uniformly from `[lo, hi)` in every coordinate.
    pub restart_box: (f64, f64),
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            f_tol: 1e-9,
            x_tol: 1e-6,
            restart_box: (0.0, 2.0 * std::f64::consts::PI),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// Every evaluation in call order.
    pub evaluations: Vec<Evaluation>,
    pub restarts: usize,
}

struct Budgeted<'a, F> {
    f: &'a F,
    budget: usize,
    log: Vec<Evaluation>,
}

impl<F: Fn(&[f64]) -> f64> Budgeted<'_, F> {
    fn exhausted(&self) -> bool {
        self.log.len() >= self.budget
    }

    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.exhausted() {
            return None;
        }
        let v = (self.f)(x);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        self.log.push(Evaluation {
            x: x.to_vec(),
            value: v,
        });
        Some(v)
    }
}

/// Minimizes `f` from `x0` using at most `budget` evaluations (at least one).
pub fn minimize<F>(
    f: &F,
    x0: &[f64],
    budget: usize,
    cfg: &NelderMeadConfig,
    rng: &mut SeedRng,
) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let dim = x0.len();
    let mut ev = Budgeted {
        f,
        budget: budget.max(1),
        log: Vec::new(),
    };
    let mut start = x0.to_vec();
    let mut restarts = 0;

    'outer: loop {
        // vertices sorted by value after every step
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        for i in 0..=dim {
            let mut x = start.clone();
            if i > 0 {
                x[i - 1] += cfg.initial_step;
            }
            match ev.eval(&x) {
                Some(v) => simplex.push((x, v)),
                None => break 'outer,
            }
        }
        if dim == 0 {
            break;
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[dim].1 - simplex[0].1;
            let size = simplex[1..]
                .iter()
                .map(|(x, _)| dist(x, &simplex[0].0))
                .fold(0.0, f64::max);
            if spread.abs() < cfg.f_tol && size < cfg.x_tol {
                break;
            }

            let centroid: Vec<f64> = (0..dim)
                .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
                .collect();
            let worst = simplex[dim].clone();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let xr = along(1.0);
            let Some(fr) = ev.eval(&xr) else { break 'outer };
            if fr < simplex[0].1 {
                let xe = along(2.0);
                let Some(fe) = ev.eval(&xe) else {
                    simplex[dim] = (xr, fr);
                    break 'outer;
                };
                simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[dim - 1].1 {
                simplex[dim] = (xr, fr);
            } else {
                let (xc, fc) = if fr < worst.1 {
                    let xc = along(0.5);
                    let Some(fc) = ev.eval(&xc) else { break 'outer };
                    (xc, fc)
                } else {
                    let xc = along(-0.5);
                    let Some(fc) = ev.eval(&xc) else { break 'outer };
                    (xc, fc)
                };
                if fc < worst.1.min(fr) {
                    simplex[dim] = (xc, fc);
                } else {
                    let best = simplex[0].0.clone();
                    for vertex in simplex.iter_mut().skip(1) {
                        let x: Vec<f64> = best
                            .iter()
                            .zip(&vertex.0)
                            .map(|(b, v)| b + 0.5 * (v - b))
                            .collect();
                        let Some(v) = ev.eval(&x) else { break 'outer };
                        *vertex = (x, v);
                    }
                }
            }
        }

        if ev.exhausted() {
            break;
        }
        restarts += 1;
        let (lo, hi) = cfg.restart_box;
        start = (0..dim).map(|_| rng.gen_range(lo..hi)).collect();
    }

    let best = ev
        .log
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .cloned()
        .expect("at least one evaluation");
    Minimum {
        x: best.x,
        value: best.value,
        evaluations: ev.log,
        restarts,
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let cfg = NelderMeadConfig {
            restart_box: (-2.0, 2.0),
            ..Default::default()
        };
        let m = minimize(&f, &[-1.2, 1.0], 2000, &cfg, &mut seed::rng(0));
        assert!(m.value < 1e-6, "{}", m.value);
        assert!((m.x[0] - 1.0).abs() < 1e-2);
        assert!(m.evaluations.len() <= 2000);
    }

    #[test]
    fn budget_one_returns_start() {
        let f = |x: &[f64]| x[0] * x[0];
        let m = minimize(
            &f,
            &[3.0],
            1,
            &NelderMeadConfig::default(),
            &mut seed::rng(0),
        );
        assert_eq!(m.x, vec![3.0]);
        assert_eq!(m.evaluations.len(), 1);
    }

    #[test]
    fn restarts_when_converged_early() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] + 0.5).powi(2);
        let m = minimize(
            &f,
            &[0.0, 0.0],
            3000,
            &NelderMeadConfig::default(),
            &mut seed::rng(4),
        );
        assert!(m.restarts > 0);
        assert_eq!(m.evaluations.len(), 3000);
        assert!(m.value < 1e-12);
    }
}
