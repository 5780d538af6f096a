//! QUBO and Ising energy models for the TSP.
//!
//! Two penalty encodings are provided. Both use a one-hot grid of binary
//! variables where `x[t][k] = 1` means city `k` is visited at step `t`.
//!
//! * [`build_qubo_sa_form`]: an `n x n` grid with a cyclic step index, so the
//!   objective charges the closing edge from the last step back to the first.
//! * [`build_qubo_dwave_form`]: an `(N+1) x (N+1)` grid where city `N` is a
//!   copy of city 0 and the start and end are pinned (`x[0][0] = x[N][N] = 1`).
//!   The pinned variables are folded into the remaining coefficients.
//!
//! Models are minimized. A [`QuboModel`] evaluates `x^T Q x + offset` with `Q`
//! symmetric (pair weights split evenly over `(i, j)` and `(j, i)`, linear
//! weights on the diagonal). An [`IsingModel`] evaluates
//! `s^T J s + h^T s + offset` with `J` symmetric and zero on the diagonal.
//! For the textbook convention `H = -sum J'_ij s_i s_j - mu sum h'_j s_j`, the
//! couplings relate as `J' = -J` and `mu h' = -h`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::TspInstance;

/// A closed tour, stored as the visiting order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidTour("empty tour".into()));
        }
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n {
                return Err(Error::InvalidTour(format!(
                    "city {c} out of range for {n} cities"
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidTour(format!("city {c} visited twice")));
            }
        }
        Ok(Self { order })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Directed legs `(from, to)`, including the closing leg.
    pub fn legs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |t| (self.order[t], self.order[(t + 1) % n]))
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order[1..].reverse();
        Self { order }
    }

    /// Rotation that starts at city 0.
    pub fn rotated_to_zero(&self) -> Self {
        let start = self.order.iter().position(|&c| c == 0).unwrap_or(0);
        let mut order = self.order.clone();
        order.rotate_left(start);
        Self { order }
    }

    /// `successor[c]` is the city visited after `c`.
    pub fn successors(&self) -> Vec<usize> {
        let mut succ = vec![0; self.len()];
        for (a, b) in self.legs() {
            succ[a] = b;
        }
        succ
    }
}

impl TryFrom<Vec<usize>> for Tour {
    type Error = Error;
    fn try_from(order: Vec<usize>) -> Result<Self> {
        Tour::new(order)
    }
}

impl From<Tour> for Vec<usize> {
    fn from(t: Tour) -> Self {
        t.order
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join("-"))
    }
}

pub fn tour_cost(inst: &TspInstance, tour: &Tour) -> Result<f64> {
    if tour.len() != inst.n() {
        return Err(Error::InvalidTour(format!(
            "tour has {} cities, instance has {}",
            tour.len(),
            inst.n()
        )));
    }
    Ok(tour.legs().fold(0.0, |acc, (a, b)| acc + inst.d(a, b)))
}

/// Penalty weight `n * max(d)`: one violated constraint then outweighs any
/// attainable change in tour length.
pub fn default_penalty(inst: &TspInstance) -> f64 {
    let p = inst.n() as f64 * inst.max_distance();
    if p > 0.0 {
        p
    } else {
        1.0
    }
}

/// How the flat variable vector maps onto a (step, city) grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    /// `n` steps by `n` cities, cyclic step index.
    SaGrid { n: usize },
    /// `N+1` steps by `N+1` cities, city `N` standing for city 0.
    DwaveGrid { n: usize },
    /// No grid; variables have no TSP interpretation.
    Free,
}

impl Layout {
    /// (steps, cities) extent of the grid.
    pub fn grid_shape(&self) -> Option<(usize, usize)> {
        match *self {
            Layout::SaGrid { n } => Some((n, n)),
            Layout::DwaveGrid { n } => Some((n + 1, n + 1)),
            Layout::Free => None,
        }
    }

    pub fn index(&self, step: usize, city: usize) -> Option<usize> {
        let (steps, cities) = self.grid_shape()?;
        (step < steps && city < cities).then_some(step * cities + city)
    }

    pub fn grid_of(&self, var: usize) -> Option<(usize, usize)> {
        let (steps, cities) = self.grid_shape()?;
        (var < steps * cities).then_some((var / cities, var % cities))
    }
}

/// Dense symmetric QUBO, `E(x) = x^T Q x + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboModel {
    num_vars: usize,
    q: Vec<f64>,
    offset: f64,
    layout: Layout,
    fixed: BTreeMap<usize, bool>,
    penalty: f64,
}

impl QuboModel {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.num_vars + j]
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// Variables pinned at build time. Their rows and columns of `Q` are zero;
    /// their contribution lives in the diagonal and the offset.
    pub fn fixed(&self) -> &BTreeMap<usize, bool> {
        &self.fixed
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    pub fn energy(&self, x: &[u8]) -> f64 {
        debug_assert_eq!(x.len(), self.num_vars);
        let n = self.num_vars;
        let mut e = self.offset;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let row = &self.q[i * n..(i + 1) * n];
            let mut acc = row[i];
            for j in i + 1..n {
                if x[j] != 0 {
                    acc += 2.0 * row[j];
                }
            }
            e += acc;
        }
        e
    }

    /// Upper-triangle terms `(i, j, c)` with `i <= j` such that
    /// `E(x) = offset + sum c x_i x_j`.
    pub fn terms(&self) -> Vec<(usize, usize, f64)> {
        let n = self.num_vars;
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j {
                    self.coeff(i, i)
                } else {
                    2.0 * self.coeff(i, j)
                };
                if c != 0.0 {
                    terms.push((i, j, c));
                }
            }
        }
        terms
    }

    pub fn to_json(&self) -> String {
        let file = QuboFile {
            num_vars: self.num_vars,
            offset: self.offset,
            terms: self.terms(),
        };
        serde_json::to_string(&file).expect("qubo serializes")
    }

    /// Reads the `{"num_vars", "offset", "terms"}` export. The result has a
    /// [`Layout::Free`] layout.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuboFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut b = QuboBuilder::new(file.num_vars);
        b.add_constant(file.offset);
        for (i, j, c) in file.terms {
            if i >= file.num_vars || j >= file.num_vars {
                return Err(Error::Parse(format!("term ({i}, {j}) out of range")));
            }
            b.add_pair(i, j, c);
        }
        Ok(b.build(Layout::Free, 0.0))
    }
}

#[derive(Serialize, Deserialize)]
struct QuboFile {
    num_vars: usize,
    offset: f64,
    terms: Vec<(usize, usize, f64)>,
}

/// Accumulates QUBO coefficients.
#[derive(Debug, Clone)]
pub struct QuboBuilder {
    n: usize,
    q: Vec<f64>,
    offset: f64,
    fixed: BTreeMap<usize, bool>,
}

impl QuboBuilder {
    pub fn new(num_vars: usize) -> Self {
        Self {
            n: num_vars,
            q: vec![0.0; num_vars * num_vars],
            offset: 0.0,
            fixed: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn add_constant(&mut self, c: f64) {
        self.offset += c;
    }

    pub fn add_linear(&mut self, i: usize, c: f64) {
        self.q[i * self.n + i] += c;
    }

    /// Adds `c * x_i * x_j`; `i == j` is a linear term since `x^2 = x`.
    pub fn add_pair(&mut self, i: usize, j: usize, c: f64) {
        if i == j {
            self.add_linear(i, c);
        } else {
            self.q[i * self.n + j] += 0.5 * c;
            self.q[j * self.n + i] += 0.5 * c;
        }
    }

    /// Adds `weight * (sum_k a_k x_k - rhs)^2`, expanded over binaries.
    pub fn add_squared(&mut self, terms: &[(usize, f64)], rhs: f64, weight: f64) {
        for (idx, &(i, a)) in terms.iter().enumerate() {
            self.add_linear(i, weight * (a * a - 2.0 * rhs * a));
            for &(j, b) in &terms[idx + 1..] {
                self.add_pair(i, j, 2.0 * weight * a * b);
            }
        }
        self.add_constant(weight * rhs * rhs);
    }

    /// Substitutes `x_var = value` and removes the variable's couplings.
    pub fn fix(&mut self, var: usize, value: bool) {
        let n = self.n;
        if value {
            self.offset += self.q[var * n + var];
            for j in 0..n {
                if j != var {
                    let c = self.q[var * n + j] + self.q[j * n + var];
                    self.q[j * n + j] += c;
                }
            }
        }
        for j in 0..n {
            self.q[var * n + j] = 0.0;
            self.q[j * n + var] = 0.0;
        }
        self.fixed.insert(var, value);
    }

    pub fn build(self, layout: Layout, penalty: f64) -> QuboModel {
        QuboModel {
            num_vars: self.n,
            q: self.q,
            offset: self.offset,
            layout,
            fixed: self.fixed,
            penalty,
        }
    }
}

/// `H = H_obj + gamma * H_cons` on the cyclic `n x n` grid.
pub fn build_qubo_sa_form(inst: &TspInstance, gamma: f64) -> Result<QuboModel> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let n = inst.n();
    let layout = Layout::SaGrid { n };
    let var = |t: usize, k: usize| t * n + k;
    let mut b = QuboBuilder::new(n * n);

    for t in 0..n {
        let next = (t + 1) % n;
        for k in 0..n {
            for l in 0..n {
                if k != l {
                    b.add_pair(var(t, k), var(next, l), inst.d(k, l));
                }
            }
        }
    }
    for t in 0..n {
        let row: Vec<(usize, f64)> = (0..n).map(|k| (var(t, k), 1.0)).collect();
        b.add_squared(&row, 1.0, gamma);
    }
    for k in 0..n {
        let col: Vec<(usize, f64)> = (0..n).map(|t| (var(t, k), 1.0)).collect();
        b.add_squared(&col, 1.0, gamma);
    }
    Ok(b.build(layout, gamma))
}

/// Open-path encoding with pinned start and end, city `N` standing for city 0.
pub fn build_qubo_dwave_form(inst: &TspInstance, lambda: f64) -> Result<QuboModel> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let n = inst.n();
    let side = n + 1;
    let layout = Layout::DwaveGrid { n };
    let var = |i: usize, t: usize| t * side + i;
    let dist = |i: usize, j: usize| inst.d(i % n, j % n);
    let mut b = QuboBuilder::new(side * side);

    for t in 0..n {
        for i in 0..side {
            for j in 0..side {
                let d = dist(i, j);
                if d != 0.0 {
                    b.add_pair(var(i, t), var(j, t + 1), d);
                }
            }
        }
    }
    for i in 0..side {
        let terms: Vec<(usize, f64)> = (0..side).map(|t| (var(i, t), 1.0)).collect();
        b.add_squared(&terms, 1.0, lambda);
    }
    for t in 0..side {
        let terms: Vec<(usize, f64)> = (0..side).map(|i| (var(i, t), 1.0)).collect();
        b.add_squared(&terms, 1.0, lambda);
    }
    b.fix(var(0, 0), true);
    b.fix(var(n, n), true);
    Ok(b.build(layout, lambda))
}

/// Spin model `E(s) = s^T J s + h^T s + offset`, `s in {-1, +1}^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    num_spins: usize,
    j: Vec<f64>,
    h: Vec<f64>,
    offset: f64,
}

impl IsingModel {
    /// `j` is row-major `num_spins x num_spins`; it must be symmetric with a
    /// zero diagonal.
    pub fn new(j: Vec<f64>, h: Vec<f64>, offset: f64) -> Result<Self> {
        let n = h.len();
        if j.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: j.len(),
            });
        }
        for a in 0..n {
            if j[a * n + a] != 0.0 {
                return Err(Error::InvalidParameter(format!("J[{a}][{a}] must be zero")));
            }
            for b in 0..a {
                if j[a * n + b] != j[b * n + a] {
                    return Err(Error::InvalidParameter(format!(
                        "J not symmetric at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self {
            num_spins: n,
            j,
            h,
            offset,
        })
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    #[inline]
    pub fn coupling(&self, a: usize, b: usize) -> f64 {
        self.j[a * self.num_spins + b]
    }

    pub fn coupling_row(&self, a: usize) -> &[f64] {
        &self.j[a * self.num_spins..(a + 1) * self.num_spins]
    }

    pub fn field(&self) -> &[f64] {
        &self.h
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn energy(&self, spins: &[i8]) -> f64 {
        let n = self.num_spins;
        let mut e = self.offset;
        for a in 0..n {
            let sa = f64::from(spins[a]);
            let row = self.coupling_row(a);
            let mut coupled = 0.0;
            for b in a + 1..n {
                coupled += row[b] * f64::from(spins[b]);
            }
            e += sa * (2.0 * coupled + self.h[a]);
        }
        e
    }
}

/// Substitutes `x = (1 + s) / 2`. Energies agree on corresponding points.
pub fn qubo_to_ising(qubo: &QuboModel) -> IsingModel {
    let n = qubo.num_vars();
    let mut j = vec![0.0; n * n];
    let mut h = vec![0.0; n];
    let mut offset = qubo.offset();
    for a in 0..n {
        let diag = qubo.coeff(a, a);
        h[a] += 0.5 * diag;
        offset += 0.5 * diag;
        for b in 0..n {
            if a == b {
                continue;
            }
            let c = qubo.coeff(a, b);
            j[a * n + b] = 0.25 * c;
            h[a] += 0.25 * c;
            h[b] += 0.25 * c;
            offset += 0.25 * c;
        }
    }
    IsingModel {
        num_spins: n,
        j,
        h,
        offset,
    }
}

pub fn spins_to_bits(spins: &[i8]) -> Vec<u8> {
    spins.iter().map(|&s| u8::from(s > 0)).collect()
}

pub fn bits_to_spins(bits: &[u8]) -> Vec<i8> {
    bits.iter().map(|&x| if x != 0 { 1 } else { -1 }).collect()
}

/// Feasibility of a grid assignment and, when feasible, its tour.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodeReport {
    pub tour: Option<Tour>,
    pub row_violations: Vec<usize>,
    pub col_violations: Vec<usize>,
    pub feasible: bool,
}

/// Reshapes `x` through the model's grid. Pinned variables take their pinned
/// values regardless of `x`.
pub fn decode_assignment(qubo: &QuboModel, x: &[u8]) -> Result<DecodeReport> {
    if x.len() != qubo.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: qubo.num_vars(),
            actual: x.len(),
        });
    }
    let layout = qubo.layout();
    let (steps, cities) = layout
        .grid_shape()
        .ok_or_else(|| Error::InvalidParameter("model has no (step, city) grid".into()))?;
    let value = |idx: usize| match qubo.fixed().get(&idx) {
        Some(&v) => v,
        None => x[idx] != 0,
    };

    let mut row_sums = vec![0usize; steps];
    let mut col_sums = vec![0usize; cities];
    let mut city_at = vec![usize::MAX; steps];
    for t in 0..steps {
        for k in 0..cities {
            if value(t * cities + k) {
                row_sums[t] += 1;
                col_sums[k] += 1;
                city_at[t] = k;
            }
        }
    }
    let row_violations: Vec<usize> = (0..steps).filter(|&t| row_sums[t] != 1).collect();
    let col_violations: Vec<usize> = (0..cities).filter(|&k| col_sums[k] != 1).collect();
    let feasible = row_violations.is_empty() && col_violations.is_empty();
    let tour = if feasible {
        let order = match layout {
            Layout::DwaveGrid { n } => city_at[..n].to_vec(),
            _ => city_at,
        };
        Some(Tour::new(order)?)
    } else {
        None
    };
    Ok(DecodeReport {
        tour,
        row_violations,
        col_violations,
        feasible,
    })
}

/// One-hot grid assignment for `tour` under the model's layout. Pinned
/// variables are set to their pinned values.
pub fn encode_tour(qubo: &QuboModel, tour: &Tour) -> Result<Vec<u8>> {
    let layout = qubo.layout();
    let mut x = vec![0u8; qubo.num_vars()];
    match layout {
        Layout::SaGrid { n } | Layout::DwaveGrid { n } if tour.len() == n => {
            let tour = match layout {
                Layout::DwaveGrid { .. } => tour.rotated_to_zero(),
                _ => tour.clone(),
            };
            for (t, &k) in tour.order().iter().enumerate() {
                x[layout.index(t, k).expect("in grid")] = 1;
            }
            if let Layout::DwaveGrid { n } = layout {
                x[layout.index(n, n).expect("in grid")] = 1;
            }
            Ok(x)
        }
        Layout::Free => Err(Error::InvalidParameter(
            "model has no (step, city) grid".into(),
        )),
        _ => Err(Error::InvalidTour(
            "tour length does not match the model".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> TspInstance {
        TspInstance::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 3.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn tour_validation() {
        assert!(Tour::new(vec![0, 1, 1]).is_err());
        assert!(Tour::new(vec![0, 3, 1]).is_err());
        assert!(Tour::new(vec![]).is_err());
        let t = Tour::new(vec![2, 0, 1]).unwrap();
        assert_eq!(t.rotated_to_zero().order(), &[0, 1, 2]);
        assert_eq!(
            Tour::new(vec![0, 1, 2, 3]).unwrap().reversed().order(),
            &[0, 3, 2, 1]
        );
        assert_eq!(t.to_string(), "2-0-1");
    }

    #[test]
    fn triangle_cost() {
        let inst = tri();
        let t = Tour::identity(3);
        assert_eq!(tour_cost(&inst, &t).unwrap(), 6.0);
        assert_eq!(tour_cost(&inst, &t.reversed()).unwrap(), 6.0);
        assert!(tour_cost(&inst, &Tour::identity(4)).is_err());
    }

    #[test]
    fn sa_form_examples() {
        let inst = tri();
        let gamma = 7.0;
        let q = build_qubo_sa_form(&inst, gamma).unwrap();
        assert_eq!(q.num_vars(), 9);
        assert_eq!(q.energy(&[0; 9]), gamma * 6.0);
        let x = encode_tour(&q, &Tour::identity(3)).unwrap();
        assert!((q.energy(&x) - 6.0).abs() < 1e-12);
        assert!(build_qubo_sa_form(&inst, 0.0).is_err());
    }

    #[test]
    fn dwave_form_feasible_point() {
        let inst = tri();
        let q = build_qubo_dwave_form(&inst, 10.0).unwrap();
        assert_eq!(q.num_vars(), 16);
        assert_eq!(q.fixed().len(), 2);
        let tour = Tour::new(vec![0, 2, 1]).unwrap();
        let x = encode_tour(&q, &tour).unwrap();
        assert!((q.energy(&x) - tour_cost(&inst, &tour).unwrap()).abs() < 1e-12);
        let rep = decode_assignment(&q, &x).unwrap();
        assert_eq!(rep.tour, Some(tour));
    }

    #[test]
    fn single_variable_ising() {
        let mut b = QuboBuilder::new(1);
        b.add_linear(0, 3.0);
        let ising = qubo_to_ising(&b.build(Layout::Free, 0.0));
        assert_eq!(ising.field(), &[1.5]);
        assert_eq!(ising.offset(), 1.5);
        assert_eq!(ising.coupling(0, 0), 0.0);

        let mut b = QuboBuilder::new(2);
        b.add_constant(5.0);
        let ising = qubo_to_ising(&b.build(Layout::Free, 0.0));
        assert_eq!(ising.field(), &[0.0, 0.0]);
        assert_eq!(ising.offset(), 5.0);
    }

    #[test]
    fn decode_examples() {
        let inst = random_4();
        let q = build_qubo_sa_form(&inst, 1.0).unwrap();
        let ident = encode_tour(&q, &Tour::identity(4)).unwrap();
        assert_eq!(
            decode_assignment(&q, &ident).unwrap().tour,
            Some(Tour::identity(4))
        );

        let mut two = ident.clone();
        two[1] = 1;
        let rep = decode_assignment(&q, &two).unwrap();
        assert_eq!(rep.row_violations, vec![0]);
        assert_eq!(rep.col_violations, vec![1]);
        assert!(!rep.feasible && rep.tour.is_none());

        // visit order 1-2-4-3 in one-based city labels
        let t = Tour::new(vec![0, 1, 3, 2]).unwrap();
        let x = encode_tour(&q, &t).unwrap();
        assert_eq!(decode_assignment(&q, &x).unwrap().tour, Some(t));
        assert!(decode_assignment(&q, &[0; 3]).is_err());
    }

    fn random_4() -> TspInstance {
        crate::instance::random_instance(4, 3, 1.0, 9.0).unwrap()
    }

    #[test]
    fn qubo_json_round_trip_preserves_energy() {
        let q = build_qubo_sa_form(&random_4(), 4.0).unwrap();
        let back = QuboModel::from_json(&q.to_json()).unwrap();
        assert_eq!(back.layout(), Layout::Free);
        for seed in 0..50u64 {
            let x: Vec<u8> = (0..16)
                .map(|i| ((seed >> (i % 6)) as u8 ^ i as u8) & 1)
                .collect();
            assert!((back.energy(&x) - q.energy(&x)).abs() < 1e-9);
        }
        assert!(QuboModel::from_json(r#"{"num_vars":1,"offset":0,"terms":[[0,2,1.0]]}"#).is_err());
    }

    #[test]
    fn ising_rejects_asymmetric() {
        assert!(IsingModel::new(vec![0.0, 1.0, 2.0, 0.0], vec![0.0; 2], 0.0).is_err());
        assert!(IsingModel::new(vec![1.0, 0.0, 0.0, 0.0], vec![0.0; 2], 0.0).is_err());
        assert!(IsingModel::new(vec![0.0; 3], vec![0.0; 2], 0.0).is_err());
    }
}
