//! Exact solver: depth-first branch-and-bound over root sets and assignment
//! decisions, with lazy Q-connectivity separator cuts generated by the
//! integer separation routine whenever an integer-feasible point fails to be
//! Q-proper. Also hosts LP-format export of the master model.

use crate::graph::Graph;
use crate::instance::{build_cost_matrix, Instance};
use crate::model::{
    evaluate_compactness, partition_from_assignment, verify_feasible, Assignment,
    LinearConstraint, MipModel, Partition, Sense, TOL,
};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutKind {
    /// Q·x_rb ≤ Σ_{c∈C} x_rc, anchored at the root (a = r).
    SingleAnchor,
    /// Q·(x_ra + x_rb − 1) ≤ Σ_{c∈C} x_rc.
    PairAnchor,
}

/// A lazy separator cut: C is an a,b-separator of the whole graph, emitted
/// for root r. Valid for every Q-proper assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparatorCut {
    pub root: usize,
    pub kind: CutKind,
    pub anchor_a: usize,
    pub anchor_b: usize,
    pub separator: Vec<usize>,
    pub q: usize,
}

impl SeparatorCut {
    /// Renders the cut as a linear row over the n² assignment variables.
    pub fn to_constraint(&self, n: usize, index: usize) -> LinearConstraint {
        let r = self.root;
        let q = self.q as f64;
        let mut terms: Vec<(usize, f64)> = self
            .separator
            .iter()
            .map(|&c| (r * n + c, 1.0))
            .collect();
        let (sense, rhs) = match self.kind {
            CutKind::SingleAnchor => {
                terms.push((r * n + self.anchor_b, -q));
                (Sense::Ge, 0.0)
            }
            CutKind::PairAnchor => {
                terms.push((r * n + self.anchor_a, -q));
                terms.push((r * n + self.anchor_b, -q));
                (Sense::Ge, -q)
            }
        };
        LinearConstraint {
            name: format!("cut_{index}"),
            terms,
            sense,
            rhs,
        }
    }

    pub fn is_satisfied_by(&self, x: &Assignment) -> bool {
        let r = self.root;
        let hit = self
            .separator
            .iter()
            .filter(|&&c| x.get(r, c))
            .count() as i64;
        let q = self.q as i64;
        match self.kind {
            CutKind::SingleAnchor => hit >= q * i64::from(x.get(r, self.anchor_b)),
            CutKind::PairAnchor => {
                hit >= q
                    * (i64::from(x.get(r, self.anchor_a)) + i64::from(x.get(r, self.anchor_b))
                        - 1)
            }
        }
    }

    pub fn is_violated_by(&self, x: &Assignment) -> bool {
        !self.is_satisfied_by(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutMode {
    /// Add every violated cut the separation round produces.
    All,
    /// Stop after the first violated cut.
    One,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub root_resilience: bool,
    pub cut_mode: CutMode,
    /// Wall-clock budget in seconds; None = unlimited.
    pub time_limit: Option<f64>,
    pub seed: u64,
    pub node_limit: Option<u64>,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            root_resilience: true,
            cut_mode: CutMode::All,
            time_limit: None,
            seed: 0,
            node_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Infeasible,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub objective: Option<f64>,
    /// Proven lower bound on the optimum; +∞ for infeasible instances.
    pub lower_bound: f64,
    pub partition: Option<Partition>,
    pub wall_time: f64,
    pub separation_time: f64,
    pub cuts_added: usize,
    pub nodes: u64,
}

/// Integer Q-connectivity separation. For each root r of a structurally
/// valid assignment that satisfies the degree rows:
///
/// * components of G[V_r] missing the root get a single-anchor cut through a
///   minimal r,b-separator;
/// * the root's component gets its minimum cutset D (complete components
///   yield the component minus the root); when |D| < q, single-anchor cuts
///   cover every non-root component of G_r − D if the part is root-resilient
///   (r ∉ D), and pair-anchor cuts cover every component pair otherwise.
///
/// With `root_resilience` off, the pair-anchor branch handles every |D| < q
/// case. `CutMode::One` truncates to the first cut found. The result is
/// empty iff the assignment is Q-proper.
pub fn separate(
    g: &Graph,
    x: &Assignment,
    q: usize,
    settings: &SolverSettings,
) -> Vec<SeparatorCut> {
    let one = settings.cut_mode == CutMode::One;
    let mut cuts = Vec::new();
    for r in x.roots() {
        let part = x.assigned_to(r);
        let comps = g.components_within(&part);
        for comp in &comps {
            if comp.contains(&r) {
                continue;
            }
            // The part is disconnected: cut between r and this component.
            let b = comp[0];
            let c = g
                .minimal_separator(comp, r, b)
                .expect("separator preconditions hold for foreign components");
            cuts.push(SeparatorCut {
                root: r,
                kind: CutKind::SingleAnchor,
                anchor_a: r,
                anchor_b: b,
                separator: c,
                q,
            });
            if one {
                return cuts;
            }
        }
        let (_, d) = g
            .minimum_vertex_cutset_for_part(&part, r)
            .expect("root belongs to its part");
        if d.vertices.len() >= q {
            continue;
        }
        let r_comp = comps
            .iter()
            .find(|c| c.contains(&r))
            .expect("root lies in some component");
        let remaining: Vec<usize> = r_comp
            .iter()
            .copied()
            .filter(|v| !d.vertices.contains(v))
            .collect();
        let sub_comps = g.components_within(&remaining);
        let resilient = !d.vertices.contains(&r);
        if settings.root_resilience && resilient {
            for comp in &sub_comps {
                if comp.contains(&r) {
                    continue;
                }
                let b = comp[0];
                let c = g
                    .minimal_separator(comp, r, b)
                    .expect("separator preconditions hold after cutset removal");
                cuts.push(SeparatorCut {
                    root: r,
                    kind: CutKind::SingleAnchor,
                    anchor_a: r,
                    anchor_b: b,
                    separator: c,
                    q,
                });
                if one {
                    return cuts;
                }
            }
        } else {
            for i in 0..sub_comps.len() {
                for j in i + 1..sub_comps.len() {
                    let a = sub_comps[i][0];
                    let b = sub_comps[j][0];
                    let c = g
                        .minimal_separator(&sub_comps[j], a, b)
                        .expect("separator preconditions hold between components");
                    cuts.push(SeparatorCut {
                        root: r,
                        kind: CutKind::PairAnchor,
                        anchor_a: a,
                        anchor_b: b,
                        separator: c,
                        q,
                    });
                    if one {
                        return cuts;
                    }
                }
            }
        }
    }
    cuts
}

/// Optimizes the instance by branch-and-bound on assignment decisions.
///
/// Root sets are explored as unordered ascending K-subsets (killing the K!
/// relabeling symmetry), best root-set bound first. Within a root set,
/// vertices are assigned in order of decreasing cost spread, cheapest root
/// first. Integer-feasible leaves run the separation routine; violated cuts
/// join a global pool and the leaf is rejected, so incumbents are always
/// Q-proper and verified.
pub fn solve_exact(inst: &Instance, settings: &SolverSettings) -> SolveResult {
    let t0 = Instant::now();
    let costs = build_cost_matrix(inst);
    let g = &inst.graph;
    let n = g.vertex_count();
    let k = inst.k;
    let q = inst.q;
    let (l, u) = inst.bounds();
    let finish = |status, objective, lower_bound, partition, s: &Search| SolveResult {
        status,
        objective,
        lower_bound,
        partition,
        wall_time: t0.elapsed().as_secs_f64(),
        separation_time: s.sep_time,
        cuts_added: s.cuts_added,
        nodes: s.nodes,
    };

    let mut search = Search::new(inst, &costs, settings, t0);

    // Screens implied by the master plus degree rows: every vertex needs q
    // neighbors in its own part, every part needs q+1 vertices, and the total
    // weight must fit K parts within [L, U].
    let degraded = (0..n).any(|v| g.degree(v) < q);
    let total = g.total_weight();
    if degraded || n < k * (q + 1) || total > k as f64 * u + TOL || total < k as f64 * l - TOL {
        return finish(SolveStatus::Infeasible, None, f64::INFINITY, None, &search);
    }

    // Enumerate root sets with their relaxation bounds; root sets leaving
    // some vertex unreachable are dropped as infeasible outright.
    let mut root_sets: Vec<(f64, Vec<usize>)> = k_combinations(n, k)
        .into_iter()
        .filter_map(|c| search.root_set_bound(&c).map(|b| (b, c)))
        .collect();
    root_sets.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut unexplored_lb = f64::INFINITY;
    for (idx, (bound, roots)) in root_sets.iter().enumerate() {
        if search.stopped() {
            // Everything from here on is unexplored.
            for (b, _) in &root_sets[idx..] {
                unexplored_lb = unexplored_lb.min(*b);
            }
            break;
        }
        if *bound >= search.best_obj {
            // Sorted by bound: nothing beyond can improve the incumbent.
            break;
        }
        let finished = search.explore_root_set(roots);
        if !finished {
            unexplored_lb = unexplored_lb.min(*bound);
        }
    }

    let aborted = search.stopped();
    let best = search.take_best();
    if !aborted {
        match best {
            Some((obj, p)) => finish(SolveStatus::Optimal, Some(obj), obj, Some(p), &search),
            None => finish(SolveStatus::Infeasible, None, f64::INFINITY, None, &search),
        }
    } else {
        match best {
            Some((obj, p)) => {
                let lb = unexplored_lb.min(obj);
                finish(SolveStatus::Feasible, Some(obj), lb, Some(p), &search)
            }
            None => {
                let lb = if unexplored_lb.is_finite() { unexplored_lb } else { 0.0 };
                finish(SolveStatus::Inconclusive, None, lb, None, &search)
            }
        }
    }
}

/// K-subsets of 0..n in lexicographic order.
fn k_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    'outer: loop {
        out.push(c.clone());
        let mut i = k - 1;
        loop {
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                continue 'outer;
            }
            if i == 0 {
                break 'outer;
            }
            i -= 1;
        }
    }
    out
}

/// Branch-and-bound working state. Costs are indexed w[r][j]; `assign` holds
/// the part index of every decided vertex including the roots.
struct Search<'a> {
    inst: &'a Instance,
    costs: &'a crate::instance::CostMatrix,
    settings: &'a SolverSettings,
    n: usize,
    k: usize,
    q: usize,
    l: f64,
    u: f64,
    w: Vec<Vec<Option<f64>>>,
    p: Vec<f64>,

    // Root-set scoped state.
    roots: Vec<usize>,
    root_part: Vec<Option<usize>>,
    min_w: Vec<f64>,
    order: Vec<usize>,
    assign: Vec<Option<usize>>,
    part_w: Vec<f64>,
    part_vcnt: Vec<usize>,
    cnt_nbrs: Vec<Vec<usize>>,
    un_nbrs: Vec<usize>,
    partial_cost: f64,
    sum_min_rest: f64,
    need_weight: f64,
    need_verts: usize,
    unassigned: usize,
    remaining_weight: f64,

    // Global state.
    pool: Vec<SeparatorCut>,
    pool_seen: HashSet<SeparatorCut>,
    best_obj: f64,
    best_partition: Option<Partition>,
    nodes: u64,
    cuts_added: usize,
    sep_time: f64,
    t0: Instant,
    stop: bool,
}

impl<'a> Search<'a> {
    fn new(
        inst: &'a Instance,
        costs: &'a crate::instance::CostMatrix,
        settings: &'a SolverSettings,
        t0: Instant,
    ) -> Self {
        let n = inst.graph.vertex_count();
        let k = inst.k;
        let (l, u) = inst.bounds();
        let w: Vec<Vec<Option<f64>>> = (0..n)
            .map(|r| (0..n).map(|j| costs.get(r, j)).collect())
            .collect();
        Search {
            inst,
            costs,
            settings,
            n,
            k,
            q: inst.q,
            l,
            u,
            w,
            p: inst.graph.weights().to_vec(),
            roots: Vec::new(),
            root_part: vec![None; n],
            min_w: vec![0.0; n],
            order: Vec::new(),
            assign: vec![None; n],
            part_w: vec![0.0; k],
            part_vcnt: vec![0; k],
            cnt_nbrs: vec![vec![0; k]; n],
            un_nbrs: vec![0; n],
            partial_cost: 0.0,
            sum_min_rest: 0.0,
            need_weight: 0.0,
            need_verts: 0,
            unassigned: 0,
            remaining_weight: 0.0,
            pool: Vec::new(),
            pool_seen: HashSet::new(),
            best_obj: f64::INFINITY,
            best_partition: None,
            nodes: 0,
            cuts_added: 0,
            sep_time: 0.0,
            t0,
            stop: false,
        }
    }

    fn stopped(&self) -> bool {
        self.stop
    }

    fn take_best(&mut self) -> Option<(f64, Partition)> {
        self.best_partition.take().map(|p| (self.best_obj, p))
    }

    fn check_limits(&mut self) {
        if self.stop {
            return;
        }
        if let Some(limit) = self.settings.node_limit {
            if self.nodes >= limit {
                self.stop = true;
                return;
            }
        }
        if let Some(tl) = self.settings.time_limit {
            if self.nodes % 256 == 0 && self.t0.elapsed().as_secs_f64() > tl {
                self.stop = true;
            }
        }
    }

    /// Relaxation bound for a candidate root set, or None when some vertex
    /// has no reachable root in it.
    fn root_set_bound(&self, roots: &[usize]) -> Option<f64> {
        let mut total = 0.0;
        for j in 0..self.n {
            if roots.contains(&j) {
                continue;
            }
            let mut best = f64::INFINITY;
            for &r in roots {
                if let Some(c) = self.w[r][j] {
                    best = best.min(c);
                }
            }
            if best.is_infinite() {
                return None;
            }
            total += best;
        }
        Some(total)
    }

    /// Runs the assignment DFS for one root set; returns false when a limit
    /// interrupted it.
    fn explore_root_set(&mut self, roots: &[usize]) -> bool {
        self.roots = roots.to_vec();
        self.root_part = vec![None; self.n];
        for (idx, &r) in roots.iter().enumerate() {
            self.root_part[r] = Some(idx);
        }
        self.assign = vec![None; self.n];
        self.part_w = vec![0.0; self.k];
        self.part_vcnt = vec![0; self.k];
        self.cnt_nbrs = vec![vec![0; self.k]; self.n];
        self.un_nbrs = (0..self.n).map(|v| self.inst.graph.degree(v)).collect();
        self.partial_cost = 0.0;
        self.unassigned = self.n;
        self.remaining_weight = self.inst.graph.total_weight();
        self.need_weight = self.k as f64 * self.l.max(0.0);
        self.need_verts = self.k * (self.q + 1);

        for j in 0..self.n {
            self.min_w[j] = if self.root_part[j].is_some() {
                0.0
            } else {
                let mut best = f64::INFINITY;
                for &r in roots {
                    if let Some(c) = self.w[r][j] {
                        best = best.min(c);
                    }
                }
                best
            };
        }
        self.sum_min_rest = (0..self.n)
            .filter(|j| self.root_part[*j].is_none())
            .map(|j| self.min_w[j])
            .sum();

        // Seat the roots through the regular assignment path so every check
        // (weights, degree potential, pool cuts) applies to them too.
        for (idx, &r) in roots.iter().enumerate() {
            if !self.try_assign(r, idx) {
                // Root seating failed: this root set is infeasible.
                self.unwind_roots(roots, idx);
                return true;
            }
        }

        // Branching order: decreasing cost spread across the roots.
        let mut order: Vec<usize> = (0..self.n)
            .filter(|&j| self.root_part[j].is_none())
            .collect();
        let spread = |j: usize| -> f64 {
            let mut lo = f64::INFINITY;
            let mut hi: f64 = 0.0;
            for &r in roots {
                if let Some(c) = self.w[r][j] {
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
            }
            hi - lo
        };
        order.sort_by(|&a, &b| spread(b).total_cmp(&spread(a)).then(a.cmp(&b)));
        self.order = order;

        self.dfs(0);
        let finished = !self.stop;
        self.unwind_roots(roots, roots.len());
        finished
    }

    fn unwind_roots(&mut self, roots: &[usize], seated: usize) {
        for (idx, &r) in roots.iter().enumerate().take(seated).rev() {
            self.undo_assign(r, idx);
        }
    }

    fn dfs(&mut self, depth: usize) {
        if self.stop {
            return;
        }
        self.nodes += 1;
        self.check_limits();
        if self.stop {
            return;
        }
        if depth == self.order.len() {
            self.handle_leaf();
            return;
        }
        if self.partial_cost + self.sum_min_rest >= self.best_obj {
            return;
        }
        let v = self.order[depth];
        let mut children: Vec<(f64, usize)> = (0..self.k)
            .filter_map(|c| self.w[self.roots[c]][v].map(|cost| (cost, c)))
            .collect();
        children.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, c) in children {
            if self.try_assign(v, c) {
                self.dfs(depth + 1);
                self.undo_assign(v, c);
                if self.stop {
                    return;
                }
            }
        }
    }

    /// Applies v→part and runs every incremental feasibility check; undoes
    /// the move and returns false when any check fails.
    fn try_assign(&mut self, v: usize, c: usize) -> bool {
        let cost = match self.w[self.roots[c]][v] {
            Some(x) => x,
            None => return false,
        };
        if self.part_w[c] + self.p[v] > self.u + TOL {
            return false;
        }
        // Apply.
        self.assign[v] = Some(c);
        self.unassigned -= 1;
        self.remaining_weight -= self.p[v];
        let before = (self.l - self.part_w[c]).max(0.0);
        self.part_w[c] += self.p[v];
        let after = (self.l - self.part_w[c]).max(0.0);
        self.need_weight += after - before;
        if self.part_vcnt[c] < self.q + 1 {
            self.need_verts -= 1;
        }
        self.part_vcnt[c] += 1;
        self.partial_cost += cost;
        if self.root_part[v].is_none() {
            self.sum_min_rest -= self.min_w[v];
        }
        for i in 0..self.inst.graph.adj(v).len() {
            let nb = self.inst.graph.adj(v)[i];
            self.un_nbrs[nb] -= 1;
            self.cnt_nbrs[nb][c] += 1;
        }

        if self.assign_checks(v, c) {
            true
        } else {
            self.undo_assign(v, c);
            false
        }
    }

    fn assign_checks(&self, v: usize, c: usize) -> bool {
        // Degree potential for v and for any assigned neighbor that lost an
        // undecided neighbor.
        if self.cnt_nbrs[v][c] + self.un_nbrs[v] < self.q {
            return false;
        }
        for &nb in self.inst.graph.adj(v) {
            if let Some(cb) = self.assign[nb] {
                if self.cnt_nbrs[nb][cb] + self.un_nbrs[nb] < self.q {
                    return false;
                }
            }
        }
        if self.need_weight > self.remaining_weight + TOL {
            return false;
        }
        if self.need_verts > self.unassigned {
            return false;
        }
        self.pool_cuts_feasible()
    }

    fn pool_cuts_feasible(&self) -> bool {
        for cut in &self.pool {
            let Some(kr) = self.root_part[cut.root] else {
                continue;
            };
            let active = match cut.kind {
                CutKind::SingleAnchor => self.assign[cut.anchor_b] == Some(kr),
                CutKind::PairAnchor => {
                    self.assign[cut.anchor_a] == Some(kr)
                        && self.assign[cut.anchor_b] == Some(kr)
                }
            };
            if !active {
                continue;
            }
            let mut attainable = 0usize;
            for &s in &cut.separator {
                if self.assign[s] == Some(kr) || self.assign[s].is_none() {
                    attainable += 1;
                }
            }
            if attainable < cut.q {
                return false;
            }
        }
        true
    }

    fn undo_assign(&mut self, v: usize, c: usize) {
        for i in 0..self.inst.graph.adj(v).len() {
            let nb = self.inst.graph.adj(v)[i];
            self.un_nbrs[nb] += 1;
            self.cnt_nbrs[nb][c] -= 1;
        }
        if self.root_part[v].is_none() {
            self.sum_min_rest += self.min_w[v];
        }
        self.partial_cost -= self.w[self.roots[c]][v].unwrap();
        self.part_vcnt[c] -= 1;
        if self.part_vcnt[c] < self.q + 1 {
            self.need_verts += 1;
        }
        let before = (self.l - self.part_w[c]).max(0.0);
        self.part_w[c] -= self.p[v];
        let after = (self.l - self.part_w[c]).max(0.0);
        self.need_weight += after - before;
        self.remaining_weight += self.p[v];
        self.unassigned += 1;
        self.assign[v] = None;
    }

    fn handle_leaf(&mut self) {
        if self.partial_cost >= self.best_obj {
            return;
        }
        // Exact lower size bounds (upper bounds held throughout).
        for c in 0..self.k {
            if self.part_w[c] < self.l - TOL {
                return;
            }
        }
        let parts: Vec<Vec<usize>> = (0..self.k)
            .map(|c| {
                (0..self.n)
                    .filter(|&v| self.assign[v] == Some(c))
                    .collect()
            })
            .collect();
        let x = Assignment::from_parts(self.n, &parts, &self.roots);
        let t = Instant::now();
        let cuts = separate(&self.inst.graph, &x, self.q, self.settings);
        self.sep_time += t.elapsed().as_secs_f64();
        if cuts.is_empty() {
            let partition = match partition_from_assignment(&x, self.costs) {
                Ok(p) => p,
                Err(_) => return,
            };
            let report = verify_feasible(&partition, self.inst);
            debug_assert!(report.pass, "incumbent failed verification: {report:?}");
            if !report.pass {
                return;
            }
            let obj = evaluate_compactness(&partition, self.costs);
            if obj < self.best_obj {
                self.best_obj = obj;
                self.best_partition = Some(partition);
            }
        } else {
            for cut in cuts {
                debug_assert!(cut.is_violated_by(&x));
                if self.pool_seen.insert(cut.clone()) {
                    self.pool.push(cut);
                    self.cuts_added += 1;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// LP export
// ---------------------------------------------------------------------------

/// Writes the master model (objective, built rows, pool cuts, fixings and
/// binary declarations) in LP text format. Output is deterministic:
/// re-exporting an unchanged model is byte-identical.
pub fn export_lp(model: &MipModel, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, render_lp(model))
}

pub fn render_lp(model: &MipModel) -> String {
    let n = model.n;
    let mut s = String::new();
    s.push_str("\\ hcgp master model\n");
    s.push_str("Minimize\n obj:");
    let mut wrote = 0usize;
    for idx in 0..n * n {
        let c = model.objective[idx];
        if c == 0.0 || model.fixed_zero[idx] {
            continue;
        }
        if wrote > 0 && wrote % 8 == 0 {
            s.push_str("\n     ");
        }
        if c < 0.0 {
            s.push_str(&format!(" - {} {}", fmt_num(-c), model.var_name(idx)));
        } else {
            s.push_str(&format!(" + {} {}", fmt_num(c), model.var_name(idx)));
        }
        wrote += 1;
    }
    if wrote == 0 {
        s.push_str(" 0 x_0_0");
    }
    s.push_str("\nSubject To\n");
    for row in &model.constraints {
        render_row(&mut s, row, n);
    }
    for row in &model.cut_pool {
        render_row(&mut s, row, n);
    }
    s.push_str("Bounds\n");
    for idx in 0..n * n {
        if model.fixed_zero[idx] {
            s.push_str(&format!(" {} = 0\n", model.var_name(idx)));
        }
    }
    s.push_str("Binaries\n");
    for idx in 0..n * n {
        if idx % 8 == 0 {
            if idx > 0 {
                s.push('\n');
            }
            s.push(' ');
        }
        s.push(' ');
        s.push_str(&model.var_name(idx));
    }
    s.push_str("\nEnd\n");
    s
}

fn render_row(s: &mut String, row: &LinearConstraint, n: usize) {
    s.push_str(&format!(" {}:", row.name));
    for (i, &(var, coeff)) in row.terms.iter().enumerate() {
        if i > 0 && i % 8 == 0 {
            s.push_str("\n     ");
        }
        let name = format!("x_{}_{}", var / n, var % n);
        if coeff < 0.0 {
            s.push_str(&format!(" - {} {}", fmt_num(-coeff), name));
        } else {
            s.push_str(&format!(" + {} {}", fmt_num(coeff), name));
        }
    }
    let sense = match row.sense {
        Sense::Le => "<=",
        Sense::Ge => ">=",
        Sense::Eq => "=",
    };
    s.push_str(&format!(" {} {}\n", sense, fmt_num(row.rhs)));
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}
