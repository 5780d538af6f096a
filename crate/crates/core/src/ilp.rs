//! Integer-programming formulations of the TSP and their penalty polynomial.
//!
//! City 0 is the anchor: it carries no ordering variable. Ordering variables
//! `u_i` for cities `1..n` take values in `2..=n`, so the city visited `p`-th
//! after the anchor has `u = p + 1`.
//!
//! Variable layout: `x_ij` (`i != j`) occupy indices `0..n(n-1)` in row-major
//! order, skipping the diagonal; MTZ models follow with `u_1..u_{n-1}`.

use std::fmt::{self, Write as _};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::anneal::{anneal, collect_samples, SampleSet, Schedule};
use crate::encode::{qubo_to_ising, spins_to_bits, Layout, QuboBuilder, QuboModel, Tour};
use crate::error::{Error, Result};
use crate::instance::TspInstance;
use crate::seed;

/// Largest number of DFJ subtour constraints `build_dfj` will emit.
pub const MAX_DFJ_SUBSETS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Formulation {
    Mtz,
    Dfj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn holds(self, lhs: f64, rhs: f64) -> bool {
        const TOL: f64 = 1e-9;
        match self {
            Self::Le => lhs <= rhs + TOL,
            Self::Eq => (lhs - rhs).abs() <= TOL,
            Self::Ge => lhs >= rhs - TOL,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Le => "<=",
            Self::Eq => "=",
            Self::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConstraintKind {
    /// `sum_j x_ij = 1`
    OutDegree(usize),
    /// `sum_i x_ij = 1`
    InDegree(usize),
    /// `u_j - u_i - (n-1) x_ij >= 2 - n`
    Mtz {
        i: usize,
        j: usize,
    },
    LowerBound(usize),
    UpperBound(usize),
    /// `sum_{i,j in S} x_ij <= |S| - 1`
    Subtour(Vec<usize>),
}

impl ConstraintKind {
    fn label(&self) -> String {
        match self {
            Self::OutDegree(i) => format!("out_{i}"),
            Self::InDegree(j) => format!("in_{j}"),
            Self::Mtz { i, j } => format!("mtz_{i}_{j}"),
            Self::LowerBound(i) => format!("lb_{i}"),
            Self::UpperBound(i) => format!("ub_{i}"),
            Self::Subtour(s) => format!("sub_{}", s.iter().join("_")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearConstraint {
    pub kind: ConstraintKind,
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl LinearConstraint {
    pub fn lhs(&self, values: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(v, c)| c * values[v]).sum()
    }

    pub fn holds(&self, values: &[f64]) -> bool {
        self.relation.holds(self.lhs(values), self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IlpModel {
    pub formulation: Formulation,
    n: usize,
    /// Objective coefficient per variable (zero for `u`).
    pub objective: Vec<f64>,
    pub constraints: Vec<LinearConstraint>,
}

impl IlpModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_x(&self) -> usize {
        self.n * (self.n - 1)
    }

    pub fn num_u(&self) -> usize {
        match self.formulation {
            Formulation::Mtz => self.n - 1,
            Formulation::Dfj => 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_x() + self.num_u()
    }

    pub fn x_var(&self, i: usize, j: usize) -> Option<usize> {
        x_index(self.n, i, j)
    }

    /// Index of `u_i`, `i` in `1..n`.
    pub fn u_var(&self, i: usize) -> Option<usize> {
        (self.formulation == Formulation::Mtz && (1..self.n).contains(&i))
            .then(|| self.num_x() + i - 1)
    }

    /// `(i, j)` of an `x` variable.
    pub fn x_pair(&self, v: usize) -> Option<(usize, usize)> {
        (v < self.num_x()).then(|| {
            let m = self.n - 1;
            let i = v / m;
            let r = v % m;
            (i, if r < i { r } else { r + 1 })
        })
    }

    pub fn var_name(&self, v: usize) -> String {
        match self.x_pair(v) {
            Some((i, j)) => format!("x_{i}_{j}"),
            None => format!("u_{}", v - self.num_x() + 1),
        }
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, v)| c * v).sum()
    }

    /// Indices of constraints violated by a full variable assignment.
    pub fn violated(&self, values: &[f64]) -> Result<Vec<usize>> {
        if values.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                actual: values.len(),
            });
        }
        Ok((0..self.constraints.len())
            .filter(|&c| !self.constraints[c].holds(values))
            .collect())
    }

    /// Human-readable LP-format text: objective, constraints, bounds,
    /// binary and general-integer sections.
    pub fn to_lp_string(&self) -> String {
        let mut out = String::new();
        let f = &mut out;
        let _ = writeln!(f, "\\ TSP {:?} model, {} cities", self.formulation, self.n);
        let _ = writeln!(f, "Minimize");
        let obj: Vec<(usize, f64)> = self
            .objective
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0.0)
            .collect();
        let _ = writeln!(f, " obj: {}", self.linear_expr(&obj));
        let _ = writeln!(f, "Subject To");
        for c in &self.constraints {
            if matches!(
                c.kind,
                ConstraintKind::LowerBound(_) | ConstraintKind::UpperBound(_)
            ) {
                continue;
            }
            let _ = writeln!(
                f,
                " {}: {} {} {}",
                c.kind.label(),
                self.linear_expr(&c.coeffs),
                c.relation,
                c.rhs
            );
        }
        if self.num_u() > 0 {
            let _ = writeln!(f, "Bounds");
            for i in 1..self.n {
                let _ = writeln!(f, " 2 <= u_{i} <= {}", self.n);
            }
        }
        let _ = writeln!(f, "Binaries");
        let _ = writeln!(
            f,
            " {}",
            (0..self.num_x()).map(|v| self.var_name(v)).join(" ")
        );
        if self.num_u() > 0 {
            let _ = writeln!(f, "Generals");
            let _ = writeln!(f, " {}", (1..self.n).map(|i| format!("u_{i}")).join(" "));
        }
        let _ = writeln!(f, "End");
        out
    }

    fn linear_expr(&self, terms: &[(usize, f64)]) -> String {
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, &(v, c)) in terms.iter().enumerate() {
            let name = self.var_name(v);
            let sign = if c < 0.0 { "-" } else { "+" };
            if k == 0 {
                if c < 0.0 {
                    s.push_str("- ");
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            if c.abs() == 1.0 {
                s.push_str(&name);
            } else {
                let _ = write!(s, "{} {name}", c.abs());
            }
        }
        s
    }
}

fn x_index(n: usize, i: usize, j: usize) -> Option<usize> {
    (i < n && j < n && i != j).then(|| i * (n - 1) + if j < i { j } else { j - 1 })
}

fn base_model(inst: &TspInstance, formulation: Formulation) -> Result<IlpModel> {
    let n = inst.n();
    if n < 3 {
        return Err(Error::TooFewCities { n, min: 3 });
    }
    let num_x = n * (n - 1);
    let num_u = if formulation == Formulation::Mtz {
        n - 1
    } else {
        0
    };
    let mut objective = vec![0.0; num_x + num_u];
    for i in 0..n {
        for j in 0..n {
            if let Some(v) = x_index(n, i, j) {
                objective[v] = inst.d(i, j);
            }
        }
    }
    let mut constraints = Vec::new();
    for i in 0..n {
        constraints.push(LinearConstraint {
            kind: ConstraintKind::OutDegree(i),
            coeffs: (0..n)
                .filter_map(|j| x_index(n, i, j))
                .map(|v| (v, 1.0))
                .collect(),
            relation: Relation::Eq,
            rhs: 1.0,
        });
    }
    for j in 0..n {
        constraints.push(LinearConstraint {
            kind: ConstraintKind::InDegree(j),
            coeffs: (0..n)
                .filter_map(|i| x_index(n, i, j))
                .map(|v| (v, 1.0))
                .collect(),
            relation: Relation::Eq,
            rhs: 1.0,
        });
    }
    Ok(IlpModel {
        formulation,
        n,
        objective,
        constraints,
    })
}

pub fn build_mtz(inst: &TspInstance) -> Result<IlpModel> {
    let mut model = base_model(inst, Formulation::Mtz)?;
    let n = model.n;
    let u = |i: usize| n * (n - 1) + i - 1;
    for i in 1..n {
        for j in 1..n {
            if i == j {
                continue;
            }
            model.constraints.push(LinearConstraint {
                kind: ConstraintKind::Mtz { i, j },
                coeffs: vec![
                    (u(j), 1.0),
                    (u(i), -1.0),
                    (x_index(n, i, j).expect("i != j"), -((n - 1) as f64)),
                ],
                relation: Relation::Ge,
                rhs: 2.0 - n as f64,
            });
        }
    }
    for i in 1..n {
        model.constraints.push(LinearConstraint {
            kind: ConstraintKind::LowerBound(i),
            coeffs: vec![(u(i), 1.0)],
            relation: Relation::Ge,
            rhs: 2.0,
        });
        model.constraints.push(LinearConstraint {
            kind: ConstraintKind::UpperBound(i),
            coeffs: vec![(u(i), 1.0)],
            relation: Relation::Le,
            rhs: n as f64,
        });
    }
    Ok(model)
}

/// Degree constraints plus one subtour constraint per city subset `S` with
/// `2 <= |S| <= max_subset` (and `|S| < n`).
pub fn build_dfj(inst: &TspInstance, max_subset: usize) -> Result<IlpModel> {
    let mut model = base_model(inst, Formulation::Dfj)?;
    let n = model.n;
    if !(2..n).contains(&max_subset) {
        return Err(Error::InvalidParameter(format!(
            "max_subset must be in 2..{n}, got {max_subset}"
        )));
    }
    let count: usize = (2..=max_subset).map(|k| binomial(n, k)).sum();
    if count > MAX_DFJ_SUBSETS {
        return Err(Error::SubsetBudget {
            count,
            limit: MAX_DFJ_SUBSETS,
        });
    }
    for k in 2..=max_subset {
        for subset in (0..n).combinations(k) {
            let coeffs = subset
                .iter()
                .flat_map(|&i| subset.iter().filter_map(move |&j| x_index(n, i, j)))
                .map(|v| (v, 1.0))
                .collect();
            model.constraints.push(LinearConstraint {
                kind: ConstraintKind::Subtour(subset),
                coeffs,
                relation: Relation::Le,
                rhs: (k - 1) as f64,
            });
        }
    }
    Ok(model)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    Constraint {
        index: usize,
        kind: ConstraintKind,
        lhs: f64,
        relation: Relation,
        rhs: f64,
    },
    /// A closed successor cycle that misses the anchor city.
    Subtour { cycle: Vec<usize> },
}

/// Successor of each city, when every row of `x` has exactly one 1.
fn successor_map(model: &IlpModel, x: &[u8]) -> Option<Vec<usize>> {
    let n = model.n;
    (0..n)
        .map(|i| {
            let mut it = (0..n).filter(|&j| model.x_var(i, j).is_some_and(|v| x[v] != 0));
            match (it.next(), it.next()) {
                (Some(j), None) => Some(j),
                _ => None,
            }
        })
        .collect()
}

/// Lists violated constraints of `x` (the `x_ij` block) with optional
/// ordering values `u` for cities `1..n`.
///
/// For MTZ without `u`, degree constraints are checked first; when they
/// hold, `u` is derived from positions along the successor chain from city 0
/// and a chain closing early is reported as the subtour it leaves behind.
pub fn check_feasible(model: &IlpModel, x: &[u8], u: Option<&[i64]>) -> Result<Vec<Violation>> {
    let n = model.n;
    if x.len() != model.num_x() {
        return Err(Error::DimensionMismatch {
            expected: model.num_x(),
            actual: x.len(),
        });
    }
    if let Some(u) = u {
        if model.formulation == Formulation::Dfj || u.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: model.num_u(),
                actual: u.len(),
            });
        }
    }
    let mut values: Vec<f64> = x.iter().map(|&b| f64::from(b)).collect();
    let report = |values: &[f64], filter: &dyn Fn(&ConstraintKind) -> bool| -> Vec<Violation> {
        model
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| filter(&c.kind) && !c.holds(values))
            .map(|(index, c)| Violation::Constraint {
                index,
                kind: c.kind.clone(),
                lhs: c.lhs(values),
                relation: c.relation,
                rhs: c.rhs,
            })
            .collect()
    };

    match (model.formulation, u) {
        (Formulation::Dfj, _) => Ok(report(&values, &|_| true)),
        (Formulation::Mtz, Some(u)) => {
            values.extend(u.iter().map(|&v| v as f64));
            Ok(report(&values, &|_| true))
        }
        (Formulation::Mtz, None) => {
            let degree = |k: &ConstraintKind| {
                matches!(
                    k,
                    ConstraintKind::OutDegree(_) | ConstraintKind::InDegree(_)
                )
            };
            let degree_violations = report(&values, &degree);
            if !degree_violations.is_empty() {
                return Ok(degree_violations);
            }
            let succ = successor_map(model, x).expect("degree constraints hold");
            let mut position = vec![usize::MAX; n];
            let mut city = 0;
            for p in 0..n {
                if position[city] != usize::MAX {
                    break;
                }
                position[city] = p;
                city = succ[city];
            }
            if let Some(start) = (0..n).find(|&c| position[c] == usize::MAX) {
                let mut cycle = vec![start];
                let mut c = succ[start];
                while c != start {
                    cycle.push(c);
                    c = succ[c];
                }
                return Ok(vec![Violation::Subtour { cycle }]);
            }
            values.extend((1..n).map(|c| (position[c] + 1) as f64));
            Ok(report(&values, &|_| true))
        }
    }
}

/// Tour read from the `x` block, if it is a single Hamiltonian cycle.
pub fn decode_x(model: &IlpModel, x: &[u8]) -> Option<Tour> {
    let n = model.n;
    let succ = successor_map(model, &x[..model.num_x()])?;
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut c = 0;
    for _ in 0..n {
        if seen[c] {
            return None;
        }
        seen[c] = true;
        order.push(c);
        c = succ[c];
    }
    (c == 0).then(|| Tour::new(order).ok()).flatten()
}

/// `E(b) = sum_i C_i b_i + sum_{i != j} J_ij b_i b_j + offset` over binaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyObjective {
    pub num_vars: usize,
    pub linear: Vec<f64>,
    /// Dense symmetric, zero diagonal.
    pub quadratic: Vec<f64>,
    pub offset: f64,
    pub names: Vec<String>,
}

impl PolyObjective {
    pub fn j(&self, a: usize, b: usize) -> f64 {
        self.quadratic[a * self.num_vars + b]
    }

    pub fn energy(&self, b: &[u8]) -> f64 {
        let n = self.num_vars;
        let mut e = self.offset;
        for i in 0..n {
            if b[i] == 0 {
                continue;
            }
            e += self.linear[i];
            for k in 0..n {
                if k != i && b[k] != 0 {
                    e += self.quadratic[i * n + k];
                }
            }
        }
        e
    }

    /// The same polynomial as a QUBO with no step/city grid.
    pub fn to_qubo(&self) -> QuboModel {
        let n = self.num_vars;
        let mut b = QuboBuilder::new(n);
        b.add_constant(self.offset);
        for i in 0..n {
            b.add_linear(i, self.linear[i]);
            for k in i + 1..n {
                b.add_pair(i, k, 2.0 * self.quadratic[i * n + k]);
            }
        }
        b.build(Layout::Free, 0.0)
    }
}

/// Index map of the binary variables produced by [`to_polynomial`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinaryLayout {
    pub num_x: usize,
    /// `u_bits[i - 1][v - 2]` is the one-hot bit for `u_i = v`.
    pub u_bits: Vec<Vec<usize>>,
    /// Per MTZ constraint index: one-hot bits for slack values `0..len`.
    pub slack_bits: Vec<(usize, Vec<usize>)>,
    pub num_vars: usize,
}

impl BinaryLayout {
    /// Binary assignment for a tour: `x` from its legs, `u` from positions,
    /// each slack set to the value that closes its constraint.
    pub fn encode_tour(&self, model: &IlpModel, tour: &Tour) -> Result<Vec<u8>> {
        let n = model.n;
        if tour.len() != n {
            return Err(Error::InvalidTour(format!(
                "tour has {} cities, model has {n}",
                tour.len()
            )));
        }
        let tour = tour.rotated_to_zero();
        let mut b = vec![0u8; self.num_vars];
        let mut values = vec![0.0; model.num_vars()];
        for (i, j) in tour.legs() {
            let v = model.x_var(i, j).expect("distinct cities");
            b[v] = 1;
            values[v] = 1.0;
        }
        for (p, &c) in tour.order().iter().enumerate().skip(1) {
            b[self.u_bits[c - 1][p - 1]] = 1;
            values[model.u_var(c).expect("non-anchor")] = (p + 1) as f64;
        }
        for (ci, bits) in &self.slack_bits {
            let c = &model.constraints[*ci];
            let s = (c.lhs(&values) - c.rhs).round() as usize;
            b[bits[s]] = 1;
        }
        Ok(b)
    }
}

/// Squared-penalty polynomial of a model.
///
/// Each `u_i` becomes a one-hot group over `2..=n`, which makes the bound
/// constraints implicit. Each MTZ inequality gets a one-hot slack over
/// `0..=2n-4`, the full range of `u_j - u_i - (n-1) x_ij + n - 2` when the
/// `u` are in range. DFJ inequalities get slacks over `0..=|S|-1`.
pub fn to_polynomial(model: &IlpModel, penalty: f64) -> Result<(PolyObjective, BinaryLayout)> {
    if !(penalty > 0.0 && penalty.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "penalty must be positive, got {penalty}"
        )));
    }
    let n = model.n;
    let num_x = model.num_x();
    let mut next = num_x;
    let mut alloc = |k: usize| {
        let bits: Vec<usize> = (next..next + k).collect();
        next += k;
        bits
    };
    let u_bits: Vec<Vec<usize>> = (0..model.num_u()).map(|_| alloc(n - 1)).collect();
    let mut slack_bits = Vec::new();
    for (ci, c) in model.constraints.iter().enumerate() {
        match &c.kind {
            ConstraintKind::Mtz { .. } => slack_bits.push((ci, alloc(2 * n - 3))),
            ConstraintKind::Subtour(s) => slack_bits.push((ci, alloc(s.len()))),
            _ => {}
        }
    }
    let layout = BinaryLayout {
        num_x,
        u_bits,
        slack_bits,
        num_vars: next,
    };

    let mut b = QuboBuilder::new(layout.num_vars);
    for v in 0..num_x {
        b.add_linear(v, model.objective[v]);
    }
    for bits in &layout.u_bits {
        let terms: Vec<(usize, f64)> = bits.iter().map(|&v| (v, 1.0)).collect();
        b.add_squared(&terms, 1.0, penalty);
    }
    // substitute u_i = sum_v v * b_{i,v}
    let expand = |coeffs: &[(usize, f64)]| -> Vec<(usize, f64)> {
        coeffs
            .iter()
            .flat_map(|&(v, c)| -> Vec<(usize, f64)> {
                if v < num_x {
                    vec![(v, c)]
                } else {
                    layout.u_bits[v - num_x]
                        .iter()
                        .enumerate()
                        .map(|(k, &bit)| (bit, c * (k + 2) as f64))
                        .collect()
                }
            })
            .collect()
    };
    let slack_of = |ci: usize| {
        layout
            .slack_bits
            .iter()
            .find(|(c, _)| *c == ci)
            .map(|(_, bits)| bits)
    };
    for (ci, c) in model.constraints.iter().enumerate() {
        match c.kind {
            ConstraintKind::LowerBound(_) | ConstraintKind::UpperBound(_) => {}
            ConstraintKind::OutDegree(_) | ConstraintKind::InDegree(_) => {
                b.add_squared(&expand(&c.coeffs), c.rhs, penalty);
            }
            ConstraintKind::Mtz { .. } | ConstraintKind::Subtour(_) => {
                let bits = slack_of(ci).expect("slack allocated");
                let onehot: Vec<(usize, f64)> = bits.iter().map(|&v| (v, 1.0)).collect();
                b.add_squared(&onehot, 1.0, penalty);
                // Ge: lhs - s = rhs; Le: lhs + s = rhs
                let sign = if c.relation == Relation::Ge {
                    -1.0
                } else {
                    1.0
                };
                let mut terms = expand(&c.coeffs);
                terms.extend(bits.iter().enumerate().map(|(k, &v)| (v, sign * k as f64)));
                b.add_squared(&terms, c.rhs, penalty);
            }
        }
    }
    let qubo = b.build(Layout::Free, penalty);
    let nv = layout.num_vars;
    let linear = (0..nv).map(|i| qubo.coeff(i, i)).collect();
    let quadratic = (0..nv * nv)
        .map(|k| {
            if k / nv == k % nv {
                0.0
            } else {
                qubo.coeff(k / nv, k % nv)
            }
        })
        .collect();
    let names = (0..nv).map(|v| binary_name(model, &layout, v)).collect();
    Ok((
        PolyObjective {
            num_vars: nv,
            linear,
            quadratic,
            offset: qubo.offset(),
            names,
        },
        layout,
    ))
}

fn binary_name(model: &IlpModel, layout: &BinaryLayout, v: usize) -> String {
    if v < layout.num_x {
        return model.var_name(v);
    }
    for (i, bits) in layout.u_bits.iter().enumerate() {
        if let Some(k) = bits.iter().position(|&b| b == v) {
            return format!("u_{}_is_{}", i + 1, k + 2);
        }
    }
    for (ci, bits) in &layout.slack_bits {
        if let Some(k) = bits.iter().position(|&b| b == v) {
            return format!("s_{}_is_{k}", model.constraints[*ci].kind.label());
        }
    }
    unreachable!("variable {v} outside the layout")
}

/// Default polynomial penalty `n * max c`.
pub fn default_poly_penalty(inst: &TspInstance) -> f64 {
    let m = inst.max_distance();
    if m > 0.0 {
        inst.n() as f64 * m
    } else {
        1.0
    }
}

/// Penalty polynomial of `model` sampled by `runs` seeded anneals, decoded
/// through the `x` block. `sweep_scale` multiplies the default sweep count.
pub fn solve_anneal(
    model: &IlpModel,
    penalty: f64,
    sweep_scale: f64,
    runs: usize,
    seed: u64,
) -> Result<SampleSet> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    if !(sweep_scale > 0.0 && sweep_scale.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sweep scale must be positive, got {sweep_scale}"
        )));
    }
    let (poly, _) = to_polynomial(model, penalty)?;
    let ising = qubo_to_ising(&poly.to_qubo());
    let sched = Schedule::for_model(&ising);
    let sched = sched.with_sweeps((sched.sweeps as f64 * sweep_scale).round() as usize);
    let results: Vec<_> = (0..runs as u64)
        .into_par_iter()
        .map(|r| anneal(&ising, &sched, seed::derive(seed, r)))
        .collect();
    let tours = results
        .iter()
        .map(|r| decode_x(model, &spins_to_bits(&r.spins)))
        .collect();
    Ok(collect_samples(results, tours))
}

/// [`solve_anneal`] on the MTZ model of `inst`.
pub fn solve_mtz_anneal(
    inst: &TspInstance,
    penalty: f64,
    sweep_scale: f64,
    runs: usize,
    seed: u64,
) -> Result<SampleSet> {
    solve_anneal(&build_mtz(inst)?, penalty, sweep_scale, runs, seed)
}
