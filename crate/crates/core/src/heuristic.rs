//! Four-stage ear-construction heuristic for Q = 2: construct an initial
//! partition from iterated open-ear growth, repair 2-connectivity by
//! reassigning small cut-vertex components, then locally improve size balance
//! and compactness with flip moves. Any stage failure restarts from scratch.

use crate::exact::{SolveResult, SolveStatus};
use crate::graph::Graph;
use crate::instance::{build_cost_matrix, CostMatrix, Instance};
use crate::model::{evaluate_balance, evaluate_compactness, verify_feasible, Partition};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HeuristicError {
    #[error("the ear-construction heuristic only supports q = 2, got q = {0}")]
    UnsupportedQ(usize),
    #[error("invalid part count k = {0} for n = {1}")]
    InvalidPartCount(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicSettings {
    pub seed: u64,
    /// Wall-clock budget in seconds; None = unlimited.
    pub time_limit: Option<f64>,
    pub max_restarts: usize,
    pub cycling_window: usize,
}

impl Default for HeuristicSettings {
    fn default() -> Self {
        HeuristicSettings {
            seed: 0,
            time_limit: None,
            max_restarts: 1000,
            cycling_window: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct StageTimes {
    pub construct: f64,
    pub repair: f64,
    pub balance: f64,
    pub compactness: f64,
}

/// One accepted repair reassignment: component vertices, donor and receiver
/// part indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveRecord {
    pub component: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct HeuristicTrace {
    pub restarts: usize,
    pub stage_times: StageTimes,
    /// Most recent repair moves, bounded by the cycling window.
    pub reassignment_log: VecDeque<MoveRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalSearchObjective {
    Balance,
    Compactness,
}

/// Grows a 2-connected vertex set of weight at least `l` (or maximal) by an
/// open-ear construction: start from a cycle, then repeatedly splice in the
/// vertex-weight-shortest path between two already-traversed vertices whose
/// interior runs through untraversed vertices. Returns the empty set iff `h`
/// is a forest.
pub fn ear_construction<R: Rng>(h: &Graph, l: f64, rng: &mut R) -> Vec<usize> {
    let n = h.vertex_count();
    let cycle = match h.find_cycle(rng) {
        Some(c) => c,
        None => return Vec::new(),
    };
    let mut in_t = vec![false; n];
    for &v in &cycle {
        in_t[v] = true;
    }
    let mut size: f64 = cycle.iter().map(|&v| h.weight(v)).sum();
    'grow: while size < l {
        let mut traversed: Vec<usize> = (0..n).filter(|&v| in_t[v]).collect();
        traversed.shuffle(rng);
        for i in 0..traversed.len() {
            for j in 0..traversed.len() {
                if i == j {
                    continue;
                }
                let (u, v) = (traversed[i], traversed[j]);
                if let Some(path) = shortest_ear(h, &in_t, u, v) {
                    for &w in &path {
                        if !in_t[w] {
                            in_t[w] = true;
                            size += h.weight(w);
                        }
                    }
                    continue 'grow;
                }
            }
        }
        // No pair admits an open ear: the set is maximal.
        break;
    }
    (0..n).filter(|&v| in_t[v]).collect()
}

/// Vertex-weighted shortest u,v-path through untraversed vertices, with the
/// direct edge (u,v) removed; cost counts interior vertices only. Dense
/// Dijkstra keeps tie-breaking deterministic (smallest label first).
fn shortest_ear(h: &Graph, in_t: &[bool], u: usize, v: usize) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    let allowed = |x: usize| x == u || x == v || !in_t[x];
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[u] = 0.0;
    loop {
        let mut cur = usize::MAX;
        let mut best = f64::INFINITY;
        for x in 0..n {
            if !done[x] && allowed(x) && dist[x] < best {
                best = dist[x];
                cur = x;
            }
        }
        if cur == usize::MAX {
            return None;
        }
        if cur == v {
            let mut path = vec![v];
            let mut x = v;
            while x != u {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        done[cur] = true;
        for &nb in h.adj(cur) {
            if !allowed(nb) || done[nb] {
                continue;
            }
            if (cur == u && nb == v) || (cur == v && nb == u) {
                continue;
            }
            let step = if nb == v { 0.0 } else { h.weight(nb) };
            if dist[cur] + step < dist[nb] {
                dist[nb] = dist[cur] + step;
                prev[nb] = cur;
            }
        }
    }
}

/// Construct stage: carve ear-grown 2-connected subgraphs out of the graph
/// until a forest remains, make each leftover tree its own part, then merge
/// the smallest neighboring pairs down to k parts. None signals a restart
/// (too few parts, or unmergeable leftovers).
pub fn construct_initial<R: Rng>(
    g: &Graph,
    k: usize,
    l: f64,
    rng: &mut R,
) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut alive: Vec<bool> = vec![true; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    loop {
        let verts: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if verts.is_empty() {
            break;
        }
        let (sub, labels) = g.induced(&verts);
        let comps = sub.connected_components().len();
        if sub.edge_count() + comps == sub.vertex_count() {
            // Forest: every tree becomes a part.
            for comp in g.components_within(&verts) {
                parts.push(comp);
            }
            break;
        }
        let t = ear_construction(&sub, l, rng);
        debug_assert!(!t.is_empty());
        let mut part: Vec<usize> = t.iter().map(|&v| labels[v]).collect();
        part.sort_unstable();
        for &v in &part {
            alive[v] = false;
        }
        parts.push(part);
    }
    if parts.len() < k {
        return None;
    }
    while parts.len() > k {
        // Cheapest neighboring pair first; ties toward smaller indices.
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if !parts_adjacent(g, &parts[i], &parts[j]) {
                    continue;
                }
                let total = g.set_weight(&parts[i]) + g.set_weight(&parts[j]);
                if best.is_none() || total < best.unwrap().0 {
                    best = Some((total, i, j));
                }
            }
        }
        let (_, i, j) = best?;
        let absorbed = parts.remove(j);
        parts[i].extend(absorbed);
        parts[i].sort_unstable();
    }
    Some(parts)
}

fn parts_adjacent(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let mut in_b = vec![false; g.vertex_count()];
    for &v in b {
        in_b[v] = true;
    }
    a.iter().any(|&v| g.adj(v).iter().any(|&u| in_b[u]))
}

fn is_two_proper(g: &Graph, parts: &[Vec<usize>]) -> bool {
    parts.iter().all(|p| {
        let (sub, _) = g.induced(p);
        sub.is_q_connected(2)
    })
}

/// Repair stage: while some part is 2-disconnected, detach the smallest
/// component hanging off a random cut vertex and hand it to a random
/// neighboring part. Gives up (None) when a stranded component has no
/// neighboring part, no broken part has a cut vertex, or the recent move
/// window is pure repetition.
pub fn repair_2connectivity<R: Rng>(
    g: &Graph,
    mut parts: Vec<Vec<usize>>,
    rng: &mut R,
    trace: &mut HeuristicTrace,
    window: usize,
    deadline: Option<(Instant, f64)>,
) -> Option<Vec<Vec<usize>>> {
    let mut seen: HashSet<MoveRecord> = HashSet::new();
    let mut novelty: VecDeque<bool> = VecDeque::with_capacity(window);
    loop {
        if let Some((t0, limit)) = deadline {
            if t0.elapsed().as_secs_f64() > limit {
                return None;
            }
        }
        let broken: Vec<usize> = (0..parts.len())
            .filter(|&i| {
                let (sub, _) = g.induced(&parts[i]);
                !sub.is_q_connected(2)
            })
            .collect();
        if broken.is_empty() {
            return Some(parts);
        }
        // Only parts with a cut vertex are actionable; tiny parts (< 3
        // vertices) have none and cannot be repaired by this move.
        let actionable: Vec<(usize, Vec<usize>)> = broken
            .iter()
            .map(|&i| {
                let (sub, labels) = g.induced(&parts[i]);
                let arts: Vec<usize> = sub
                    .articulation_points()
                    .into_iter()
                    .map(|v| labels[v])
                    .collect();
                (i, arts)
            })
            .filter(|(_, arts)| !arts.is_empty())
            .collect();
        if actionable.is_empty() {
            return None;
        }
        let (k_idx, arts) = &actionable[rng.gen_range(0..actionable.len())];
        let k_idx = *k_idx;
        let c = arts[rng.gen_range(0..arts.len())];
        let rest: Vec<usize> = parts[k_idx].iter().copied().filter(|&v| v != c).collect();
        let comps = g.components_within(&rest);
        let min_size = comps
            .iter()
            .map(|s| g.set_weight(s))
            .fold(f64::INFINITY, f64::min);
        let smallest: Vec<&Vec<usize>> = comps
            .iter()
            .filter(|s| g.set_weight(s) <= min_size + 1e-12)
            .collect();
        let s = smallest[rng.gen_range(0..smallest.len())].clone();
        let nbr_parts: Vec<usize> = {
            let nbrs = g.neighborhood(&s).expect("component vertices are valid");
            let mut out: Vec<usize> = Vec::new();
            for (idx, part) in parts.iter().enumerate() {
                if idx != k_idx && nbrs.iter().any(|v| part.contains(v)) {
                    out.push(idx);
                }
            }
            out
        };
        if nbr_parts.is_empty() {
            // The cut vertex is a cut vertex of the whole graph.
            return None;
        }
        let target = nbr_parts[rng.gen_range(0..nbr_parts.len())];
        parts[k_idx].retain(|v| !s.contains(v));
        parts[target].extend(s.iter().copied());
        parts[target].sort_unstable();
        let record = MoveRecord {
            component: s,
            source: k_idx,
            target,
        };
        let novel = seen.insert(record.clone());
        novelty.push_back(novel);
        if novelty.len() > window {
            novelty.pop_front();
        }
        trace.reassignment_log.push_back(record);
        if trace.reassignment_log.len() > window {
            trace.reassignment_log.pop_front();
        }
        if novelty.len() == window && novelty.iter().all(|&nv| !nv) {
            // The whole window is repeats: cycling.
            return None;
        }
    }
}

/// Flip local search over boundary vertices. A move is feasible when donor
/// minus the vertex and receiver plus the vertex both stay 2-connected (and,
/// in compactness mode, the partition stays balanced); strictly improving
/// moves are accepted and the scan restarts. Balance mode stops at φ_bal = 0.
pub fn local_search<R: Rng>(
    g: &Graph,
    mut parts: Vec<Vec<usize>>,
    objective: LocalSearchObjective,
    inst: &Instance,
    costs: &CostMatrix,
    rng: &mut R,
    deadline: Option<(Instant, f64)>,
) -> Vec<Vec<usize>> {
    let phi = |parts: &[Vec<usize>]| -> f64 {
        let p = Partition::from_parts(parts, costs);
        match objective {
            LocalSearchObjective::Balance => evaluate_balance(&p, inst),
            LocalSearchObjective::Compactness => evaluate_compactness(&p, costs),
        }
    };
    let bal = |parts: &[Vec<usize>]| -> f64 {
        let p = Partition::from_parts(parts, costs);
        evaluate_balance(&p, inst)
    };
    let mut current = phi(&parts);
    'scan: loop {
        if objective == LocalSearchObjective::Balance && current == 0.0 {
            return parts;
        }
        if let Some((t0, limit)) = deadline {
            if t0.elapsed().as_secs_f64() > limit {
                return parts;
            }
        }
        let mut part_of = vec![usize::MAX; g.vertex_count()];
        for (idx, part) in parts.iter().enumerate() {
            for &v in part {
                part_of[v] = idx;
            }
        }
        let mut moves: Vec<(usize, usize, usize)> = Vec::new();
        for v in 0..g.vertex_count() {
            let from = part_of[v];
            let mut targets: Vec<usize> = g
                .adj(v)
                .iter()
                .map(|&u| part_of[u])
                .filter(|&t| t != from)
                .collect();
            targets.sort_unstable();
            targets.dedup();
            for t in targets {
                moves.push((v, from, t));
            }
        }
        moves.shuffle(rng);
        for (v, from, to) in moves {
            let donor: Vec<usize> = parts[from].iter().copied().filter(|&x| x != v).collect();
            let (sub, _) = g.induced(&donor);
            if !sub.is_q_connected(2) {
                continue;
            }
            let mut receiver = parts[to].clone();
            receiver.push(v);
            receiver.sort_unstable();
            let (sub, _) = g.induced(&receiver);
            if !sub.is_q_connected(2) {
                continue;
            }
            let mut candidate = parts.clone();
            candidate[from] = donor;
            candidate[to] = receiver;
            if objective == LocalSearchObjective::Compactness && bal(&candidate) != 0.0 {
                continue;
            }
            let value = phi(&candidate);
            if value < current {
                parts = candidate;
                current = value;
                continue 'scan;
            }
        }
        // Local optimum.
        return parts;
    }
}

/// The complete heuristic: construct → repair → balance search → compactness
/// search, restarting on any stage failure, until success, the restart
/// budget, or the time limit. Succeeds only with a verified balanced 2-proper
/// K-partition; never certifies infeasibility.
pub fn solve_heuristic(
    inst: &Instance,
    settings: &HeuristicSettings,
) -> Result<(SolveResult, HeuristicTrace), HeuristicError> {
    if inst.q != 2 {
        return Err(HeuristicError::UnsupportedQ(inst.q));
    }
    let n = inst.graph.vertex_count();
    if inst.k < 2 || inst.k > n {
        return Err(HeuristicError::InvalidPartCount(inst.k, n));
    }
    let t0 = Instant::now();
    let costs = build_cost_matrix(inst);
    let (l, _) = inst.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut trace = HeuristicTrace::default();
    let deadline = settings.time_limit.map(|tl| (t0, tl));
    let mut attempt = 0usize;

    let inconclusive = |trace: &HeuristicTrace, t0: Instant| SolveResult {
        status: SolveStatus::Inconclusive,
        objective: None,
        lower_bound: 0.0,
        partition: None,
        wall_time: t0.elapsed().as_secs_f64(),
        separation_time: 0.0,
        cuts_added: 0,
        nodes: trace.restarts as u64,
    };

    loop {
        if attempt > settings.max_restarts {
            return Ok((inconclusive(&trace, t0), trace));
        }
        if let Some(tl) = settings.time_limit {
            if t0.elapsed().as_secs_f64() > tl {
                return Ok((inconclusive(&trace, t0), trace));
            }
        }
        trace.restarts = attempt;

        let stage = Instant::now();
        let constructed = construct_initial(&inst.graph, inst.k, l, &mut rng);
        trace.stage_times.construct += stage.elapsed().as_secs_f64();
        let mut parts = match constructed {
            Some(p) => p,
            None => {
                attempt += 1;
                continue;
            }
        };

        if !is_two_proper(&inst.graph, &parts) {
            let stage = Instant::now();
            let repaired = repair_2connectivity(
                &inst.graph,
                parts,
                &mut rng,
                &mut trace,
                settings.cycling_window,
                deadline,
            );
            trace.stage_times.repair += stage.elapsed().as_secs_f64();
            parts = match repaired {
                Some(p) => p,
                None => {
                    attempt += 1;
                    continue;
                }
            };
        }

        let stage = Instant::now();
        let balanced = {
            let p = Partition::from_parts(&parts, &costs);
            if evaluate_balance(&p, inst) > 0.0 {
                parts = local_search(
                    &inst.graph,
                    parts,
                    LocalSearchObjective::Balance,
                    inst,
                    &costs,
                    &mut rng,
                    deadline,
                );
            }
            let p = Partition::from_parts(&parts, &costs);
            evaluate_balance(&p, inst) == 0.0
        };
        trace.stage_times.balance += stage.elapsed().as_secs_f64();
        if !balanced {
            attempt += 1;
            continue;
        }

        let stage = Instant::now();
        parts = local_search(
            &inst.graph,
            parts,
            LocalSearchObjective::Compactness,
            inst,
            &costs,
            &mut rng,
            deadline,
        );
        trace.stage_times.compactness += stage.elapsed().as_secs_f64();

        let partition = Partition::from_parts(&parts, &costs);
        let report = verify_feasible(&partition, inst);
        debug_assert!(report.pass, "heuristic produced an infeasible result: {report:?}");
        if !report.pass {
            attempt += 1;
            continue;
        }
        let objective = evaluate_compactness(&partition, &costs);
        let result = SolveResult {
            status: SolveStatus::Feasible,
            objective: Some(objective),
            lower_bound: 0.0,
            partition: Some(partition),
            wall_time: t0.elapsed().as_secs_f64(),
            separation_time: 0.0,
            cuts_added: 0,
            nodes: trace.restarts as u64,
        };
        return Ok((result, trace));
    }
}
