//! The root-assignment master model: binary variables x_ij selecting K roots
//! and assigning every vertex to a root, balance rows, degree valid
//! inequalities, partition extraction, objective evaluation and feasibility
//! verification, plus the exhaustive separator-based properness oracle.

use crate::graph::Graph;
use crate::instance::{CostMatrix, Instance};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for weighted-size and objective comparisons.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("k = {0} exceeds vertex count {1}")]
    TooManyParts(usize, usize),
    #[error("assignment is structurally invalid: {0}")]
    InvalidAssignment(String),
    #[error("partition is structurally invalid: {0}")]
    InvalidPartition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// One linear row: Σ coeff·x_var  (sense)  rhs.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl LinearConstraint {
    pub fn is_satisfied(&self, x: &[bool]) -> bool {
        let lhs: f64 = self
            .terms
            .iter()
            .map(|&(v, c)| if x[v] { c } else { 0.0 })
            .sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs + TOL,
            Sense::Ge => lhs >= self.rhs - TOL,
            Sense::Eq => (lhs - self.rhs).abs() <= TOL,
        }
    }
}

/// The master model over n² binaries x_ij (vertex j assigned to root i);
/// variable x_ij has index i·n + j. Pool cuts accumulate separately from the
/// built constraint families.
#[derive(Debug, Clone)]
pub struct MipModel {
    pub n: usize,
    pub k: usize,
    /// Objective coefficient per variable; forbidden pairs carry 0 and are
    /// fixed to zero instead.
    pub objective: Vec<f64>,
    /// Variables pinned to 0 (disconnected root/vertex pairs).
    pub fixed_zero: Vec<bool>,
    pub constraints: Vec<LinearConstraint>,
    pub cut_pool: Vec<LinearConstraint>,
    pub has_degree_rows: bool,
}

impl MipModel {
    pub fn var(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn var_name(&self, idx: usize) -> String {
        format!("x_{}_{}", idx / self.n, idx % self.n)
    }

    pub fn add_pool_cut(&mut self, cut: LinearConstraint) {
        self.cut_pool.push(cut);
    }

    /// Objective value of a 0/1 point.
    pub fn objective_value(&self, x: &[bool]) -> f64 {
        x.iter()
            .zip(&self.objective)
            .filter(|&(&b, _)| b)
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Builds the master: objective Σ w_ij·x_ij with the size bounds, the root
/// cardinality row, unique-assignment rows and root-linking rows. Variables
/// for pairs at infinite hop distance are fixed to zero.
pub fn build_hess_model(inst: &Instance, costs: &CostMatrix) -> Result<MipModel, ModelError> {
    let n = inst.graph.vertex_count();
    let k = inst.k;
    if k > n {
        return Err(ModelError::TooManyParts(k, n));
    }
    let (l, u) = inst.bounds();
    let mut objective = vec![0.0; n * n];
    let mut fixed_zero = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            match costs.get(i, j) {
                Some(w) => objective[i * n + j] = w,
                None => fixed_zero[i * n + j] = true,
            }
        }
    }
    let p = inst.graph.weights();
    let mut constraints = Vec::with_capacity(2 * n + 1 + n + n * n);
    for i in 0..n {
        // L·x_ii <= Σ_j p_j·x_ij and Σ_j p_j·x_ij <= U·x_ii, with the x_ii
        // coefficients folded together.
        let mut lo: Vec<(usize, f64)> = Vec::with_capacity(n);
        let mut hi: Vec<(usize, f64)> = Vec::with_capacity(n);
        for j in 0..n {
            if j == i {
                lo.push((i * n + i, p[i] - l));
                hi.push((i * n + i, p[i] - u));
            } else {
                lo.push((i * n + j, p[j]));
                hi.push((i * n + j, p[j]));
            }
        }
        constraints.push(LinearConstraint {
            name: format!("size_lb_{i}"),
            terms: lo,
            sense: Sense::Ge,
            rhs: 0.0,
        });
        constraints.push(LinearConstraint {
            name: format!("size_ub_{i}"),
            terms: hi,
            sense: Sense::Le,
            rhs: 0.0,
        });
    }
    constraints.push(LinearConstraint {
        name: "num_roots".into(),
        terms: (0..n).map(|i| (i * n + i, 1.0)).collect(),
        sense: Sense::Eq,
        rhs: k as f64,
    });
    for j in 0..n {
        constraints.push(LinearConstraint {
            name: format!("assign_once_{j}"),
            terms: (0..n).map(|i| (i * n + j, 1.0)).collect(),
            sense: Sense::Eq,
            rhs: 1.0,
        });
    }
    for i in 0..n {
        for j in 0..n {
            constraints.push(LinearConstraint {
                name: format!("root_link_{i}_{j}"),
                terms: vec![(i * n + j, 1.0), (i * n + i, -1.0)],
                sense: Sense::Le,
                rhs: 0.0,
            });
        }
    }
    Ok(MipModel {
        n,
        k,
        objective,
        fixed_zero,
        constraints,
        cut_pool: Vec::new(),
        has_degree_rows: false,
    })
}

/// Appends the n² degree valid inequalities: a vertex assigned to a root
/// must have at least Q of its neighbors in the same part. These imply the
/// minimum part-size rows, which are therefore never emitted.
pub fn add_degree_inequalities(model: &mut MipModel, inst: &Instance) {
    let n = model.n;
    let q = inst.q as f64;
    for i in 0..n {
        for r in 0..n {
            let mut terms: Vec<(usize, f64)> =
                inst.graph.adj(i).iter().map(|&j| (r * n + j, 1.0)).collect();
            terms.push((r * n + i, -q));
            model.constraints.push(LinearConstraint {
                name: format!("min_degree_{i}_{r}"),
                terms,
                sense: Sense::Ge,
                rhs: 0.0,
            });
        }
    }
    model.has_degree_rows = true;
}

/// A 0/1 assignment matrix x̂ over n² entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    n: usize,
    x: Vec<bool>,
}

impl Assignment {
    pub fn new(n: usize, x: Vec<bool>) -> Self {
        assert_eq!(x.len(), n * n);
        Assignment { n, x }
    }

    /// Builds the matrix for parts with designated roots.
    pub fn from_parts(n: usize, parts: &[Vec<usize>], roots: &[usize]) -> Self {
        let mut x = vec![false; n * n];
        for (part, &r) in parts.iter().zip(roots) {
            for &j in part {
                x[r * n + j] = true;
            }
        }
        Assignment { n, x }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.x[i * self.n + j]
    }

    pub fn raw(&self) -> &[bool] {
        &self.x
    }

    /// Chosen roots R(x̂), ascending.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i, i)).collect()
    }

    /// Vertices assigned to root r, ascending.
    pub fn assigned_to(&self, r: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(r, j)).collect()
    }

    /// Structural validity: exactly k roots on the diagonal, every column
    /// sums to one, and x_ij only when x_ii.
    pub fn check_structure(&self, k: usize) -> Result<(), ModelError> {
        let n = self.n;
        let roots = self.roots();
        if roots.len() != k {
            return Err(ModelError::InvalidAssignment(format!(
                "{} diagonal entries, expected {k}",
                roots.len()
            )));
        }
        for j in 0..n {
            let count = (0..n).filter(|&i| self.get(i, j)).count();
            if count != 1 {
                return Err(ModelError::InvalidAssignment(format!(
                    "vertex {j} assigned {count} times"
                )));
            }
        }
        for i in 0..n {
            if !self.get(i, i) {
                for j in 0..n {
                    if self.get(i, j) {
                        return Err(ModelError::InvalidAssignment(format!(
                            "vertex {j} assigned to non-root {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// K disjoint covering vertex sets, each with a designated root that attains
/// the in-part argmin of summed assignment costs (ties to the smallest
/// label). Parts are sorted internally and ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    pub roots: Vec<usize>,
}

impl Partition {
    /// Builds a partition from bare parts, computing the argmin roots.
    pub fn from_parts(parts: &[Vec<usize>], costs: &CostMatrix) -> Self {
        let mut canon: Vec<Vec<usize>> = parts
            .iter()
            .map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p
            })
            .collect();
        canon.sort_by_key(|p| p.first().copied());
        let roots = canon.iter().map(|p| argmin_root(p, costs)).collect();
        Partition { parts: canon, roots }
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// part index containing vertex v, if any.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&v).is_ok())
    }
}

/// Root selection: argmin over part members of the summed cost to the part,
/// smallest label winning ties. Members at infinite distance from the
/// candidate produce an infinite sum.
fn argmin_root(part: &[usize], costs: &CostMatrix) -> usize {
    debug_assert!(part.windows(2).all(|w| w[0] < w[1]));
    let mut best_cost = f64::INFINITY;
    let mut best = part[0];
    for &i in part {
        let mut sum = 0.0;
        for &j in part {
            match costs.get(i, j) {
                Some(w) => sum += w,
                None => {
                    sum = f64::INFINITY;
                    break;
                }
            }
        }
        // Ascending iteration + strict improvement = smallest label on ties.
        if sum < best_cost {
            best_cost = sum;
            best = i;
        }
    }
    best
}

/// Extracts the partition of a structurally valid assignment. Parts come from
/// the rows of the chosen roots; the stored roots are recomputed by the
/// argmin rule rather than trusted from the diagonal.
pub fn partition_from_assignment(
    x: &Assignment,
    costs: &CostMatrix,
) -> Result<Partition, ModelError> {
    let diag = x.roots();
    if diag.is_empty() {
        return Err(ModelError::InvalidAssignment("no roots chosen".into()));
    }
    x.check_structure(diag.len())?;
    let parts: Vec<Vec<usize>> = diag.iter().map(|&r| x.assigned_to(r)).collect();
    Ok(Partition::from_parts(&parts, costs))
}

/// φ_comp: sum over parts of the root-to-member costs. Infinite when a part
/// spans several components.
pub fn evaluate_compactness(p: &Partition, costs: &CostMatrix) -> f64 {
    let mut total = 0.0;
    for (part, &r) in p.parts.iter().zip(&p.roots) {
        for &j in part {
            match costs.get(r, j) {
                Some(w) => total += w,
                None => return f64::INFINITY,
            }
        }
    }
    total
}

/// φ_bal: the largest overflow above U or shortfall below L across parts,
/// floored at zero.
pub fn evaluate_balance(p: &Partition, inst: &Instance) -> f64 {
    let (l, u) = inst.bounds();
    let mut worst: f64 = 0.0;
    for part in &p.parts {
        let size = inst.graph.set_weight(part);
        worst = worst.max(size - u).max(l - size);
    }
    worst.max(0.0)
}

/// Structured feasibility report for a candidate partition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub cover_ok: bool,
    pub disjoint_ok: bool,
    pub part_count_ok: bool,
    pub roots_ok: bool,
    pub sizes: Vec<f64>,
    pub balance_ok: Vec<bool>,
    pub q_connected: Vec<bool>,
    pub pass: bool,
}

/// Checks cover/disjointness, per-part size bounds and per-part
/// Q-connectivity.
pub fn verify_feasible(p: &Partition, inst: &Instance) -> FeasibilityReport {
    let n = inst.graph.vertex_count();
    let (l, u) = inst.bounds();
    let mut owner = vec![0usize; n];
    let mut disjoint_ok = true;
    let mut covered = 0usize;
    for part in &p.parts {
        for &v in part {
            if v < n {
                owner[v] += 1;
            }
        }
    }
    for &c in &owner {
        if c > 1 {
            disjoint_ok = false;
        }
        if c >= 1 {
            covered += 1;
        }
    }
    let cover_ok = covered == n && p.parts.iter().all(|pt| pt.iter().all(|&v| v < n));
    let part_count_ok = p.parts.len() == inst.k;
    let roots_ok = p
        .parts
        .iter()
        .zip(&p.roots)
        .all(|(part, r)| part.contains(r));
    let sizes: Vec<f64> = p.parts.iter().map(|pt| inst.graph.set_weight(pt)).collect();
    let balance_ok: Vec<bool> = sizes
        .iter()
        .map(|&s| s >= l - TOL && s <= u + TOL)
        .collect();
    let q_connected: Vec<bool> = p
        .parts
        .iter()
        .map(|part| {
            let (sub, _) = inst.graph.induced(part);
            sub.is_q_connected(inst.q)
        })
        .collect();
    let pass = cover_ok
        && disjoint_ok
        && part_count_ok
        && roots_ok
        && balance_ok.iter().all(|&b| b)
        && q_connected.iter().all(|&b| b);
    FeasibilityReport {
        cover_ok,
        disjoint_ok,
        part_count_ok,
        roots_ok,
        sizes,
        balance_ok,
        q_connected,
        pass,
    }
}

/// Exhaustive separator-based properness check (small graphs only): every
/// part needs at least q+1 vertices, and for every in-part pair a,b, every
/// a,b-separator of the whole graph must intersect the part in at least q
/// vertices. Serves as an independent oracle for the per-part connectivity
/// route.
pub fn theorem1_oracle(p: &Partition, g: &Graph, q: usize) -> bool {
    let n = g.vertex_count();
    assert!(n <= 24, "exhaustive oracle limited to small graphs");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.adj(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let separates = |mask: u32, a: usize, b: usize| -> bool {
        // BFS over the complement of mask.
        let avail = full & !mask;
        let mut reach = 1u32 << a;
        loop {
            let mut next = reach;
            let mut m = reach;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= adj[v] & avail;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        reach & (1 << b) == 0
    };
    for part in &p.parts {
        if part.len() < q + 1 {
            return false;
        }
        let part_mask: u32 = part.iter().fold(0u32, |m, &v| m | (1 << v));
        for (ai, &a) in part.iter().enumerate() {
            for &b in &part[ai + 1..] {
                if adj[a] & (1 << b) != 0 {
                    // Adjacent pairs have no separators.
                    continue;
                }
                let others = full & !(1 << a) & !(1 << b);
                // Enumerate all subsets of V \ {a,b}.
                let mut c = others;
                loop {
                    if separates(c, a, b) && (c & part_mask).count_ones() < q as u32 {
                        return false;
                    }
                    if c == 0 {
                        break;
                    }
                    c = (c - 1) & others;
                }
            }
        }
    }
    true
}
