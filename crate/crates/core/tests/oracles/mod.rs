//! Self-contained brute-force oracles used by the acceptance and property
//! suites. Everything here works on bitmask adjacency with its own BFS, so
//! the checks stay independent of the library's algorithms.

use hcgp_core::Graph;
use rand::Rng;
use std::collections::HashMap;

/// Bitmask adjacency for n <= 16.
pub struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    pub weights: Vec<f64>,
}

impl BitGraph {
    pub fn from_core(g: &Graph) -> Self {
        let n = g.vertex_count();
        assert!(n <= 16, "oracle graphs stay tiny");
        let mut adj = vec![0u64; n];
        for &(u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        BitGraph {
            n,
            adj,
            weights: g.weights().to_vec(),
        }
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Vertices reachable from `start` staying inside `allowed`.
    pub fn reachable(&self, start: usize, allowed: u64) -> u64 {
        debug_assert!(allowed >> start & 1 == 1);
        let mut reach = 1u64 << start;
        loop {
            let mut next = reach;
            let mut m = reach;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= self.adj[v] & allowed;
            }
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    pub fn is_connected_on(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        self.reachable(start, mask) == mask
    }

    pub fn is_complete_on(&self, mask: u64) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj[v] & mask != mask & !(1 << v) {
                return false;
            }
        }
        true
    }

    /// κ of the subgraph induced by `mask`, by exhausting removal subsets in
    /// increasing size. Complete subgraphs report |mask|−1.
    pub fn kappa_on(&self, mask: u64) -> usize {
        let cnt = mask.count_ones() as usize;
        if cnt <= 1 || self.is_complete_on(mask) {
            return cnt.saturating_sub(1);
        }
        for size in 0..cnt - 1 {
            let mut found = None;
            // Walk all submasks of `mask` with the requested popcount.
            let mut sub = mask;
            loop {
                if sub.count_ones() as usize == size {
                    let rest = mask & !sub;
                    if rest != 0 && !self.is_connected_on(rest) {
                        found = Some(size);
                        break;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
            if let Some(k) = found {
                return k;
            }
        }
        cnt - 1
    }

    /// Q-connectivity by definition: at least q+1 vertices and κ >= q.
    pub fn is_q_connected_on(&self, mask: u64, q: usize) -> bool {
        let cnt = mask.count_ones() as usize;
        if q == 0 {
            return cnt >= 1;
        }
        cnt >= q + 1 && self.kappa_on(mask) >= q
    }
}

/// κ of the whole graph plus a witness cutset found by subset enumeration
/// (None for complete graphs, empty set for disconnected ones).
pub fn brute_min_cutset(bg: &BitGraph) -> (usize, Option<Vec<usize>>) {
    let full = bg.full_mask();
    if bg.n == 0 {
        return (0, None);
    }
    if bg.is_complete_on(full) {
        return (bg.n - 1, None);
    }
    for size in 0..bg.n {
        let mut sub = full;
        loop {
            if sub.count_ones() as usize == size {
                let rest = full & !sub;
                if rest != 0 && !bg.is_connected_on(rest) {
                    let cut: Vec<usize> = (0..bg.n).filter(|&v| sub >> v & 1 == 1).collect();
                    return (size, Some(cut));
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
    }
    (bg.n - 1, None)
}

/// Visits every partition of 0..n into exactly k unlabeled nonempty blocks,
/// as a vertex→block array (restricted growth strings).
pub fn for_each_k_partition(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == 0 || k > n {
        return;
    }
    let mut assign = vec![0usize; n];
    fn rec(
        assign: &mut Vec<usize>,
        i: usize,
        max_used: usize,
        n: usize,
        k: usize,
        f: &mut impl FnMut(&[usize]),
    ) {
        if i == n {
            if max_used + 1 == k {
                f(assign);
            }
            return;
        }
        // Prune: remaining positions must still be able to open k blocks.
        if max_used + 1 + (n - i) < k {
            return;
        }
        let cap = (max_used + 1).min(k - 1);
        for b in 0..=cap {
            assign[i] = b;
            rec(assign, i + 1, max_used.max(b), n, k, f);
        }
    }
    rec(&mut assign, 0, 0, n, k, f);
}

/// Exhaustive optimizer with per-subset memoization. Distances are its own
/// BFS; part costs take the best root by definition.
pub struct BruteForce {
    pub bg: BitGraph,
    dist: Vec<Vec<Option<usize>>>,
    total_weight: f64,
    kappa_memo: HashMap<u64, usize>,
    cost_memo: HashMap<u64, f64>,
}

impl BruteForce {
    pub fn new(g: &Graph) -> Self {
        let bg = BitGraph::from_core(g);
        let n = bg.n;
        // Plain BFS per source over the bit adjacency.
        let mut dist = vec![vec![None; n]; n];
        for s in 0..n {
            dist[s][s] = Some(0);
            let mut frontier = 1u64 << s;
            let mut seen = frontier;
            let mut d = 0usize;
            while frontier != 0 {
                d += 1;
                let mut next = 0u64;
                let mut m = frontier;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    next |= bg.adj[v] & !seen;
                }
                let mut m = next;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    dist[s][v] = Some(d);
                }
                seen |= next;
                frontier = next;
            }
        }
        let total_weight = bg.weights.iter().sum();
        BruteForce {
            bg,
            dist,
            total_weight,
            kappa_memo: HashMap::new(),
            cost_memo: HashMap::new(),
        }
    }

    pub fn q_connected(&mut self, mask: u64, q: usize) -> bool {
        let cnt = mask.count_ones() as usize;
        if cnt < q + 1 {
            return false;
        }
        let kappa = match self.kappa_memo.get(&mask) {
            Some(&k) => k,
            None => {
                let k = self.bg.kappa_on(mask);
                self.kappa_memo.insert(mask, k);
                k
            }
        };
        kappa >= q
    }

    /// Compactness contribution of one part: best root's summed w-costs.
    pub fn part_cost(&mut self, mask: u64) -> f64 {
        if let Some(&c) = self.cost_memo.get(&mask) {
            return c;
        }
        let mut best = f64::INFINITY;
        let mut roots = mask;
        while roots != 0 {
            let r = roots.trailing_zeros() as usize;
            roots &= roots - 1;
            let mut sum = 0.0;
            let mut members = mask;
            while members != 0 {
                let j = members.trailing_zeros() as usize;
                members &= members - 1;
                match self.dist[r][j] {
                    Some(d) => {
                        let d = d as f64;
                        sum += self.bg.weights[j] * d * d / self.total_weight;
                    }
                    None => {
                        sum = f64::INFINITY;
                        break;
                    }
                }
            }
            best = best.min(sum);
        }
        self.cost_memo.insert(mask, best);
        best
    }

    pub fn part_weight(&self, mask: u64) -> f64 {
        let mut sum = 0.0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            sum += self.bg.weights[v];
        }
        sum
    }

    /// Optimal compactness over every balanced q-proper k-partition, for all
    /// requested (q, l, u) configurations in one enumeration pass. Returns
    /// None entries for infeasible configurations.
    pub fn optima(
        &mut self,
        k: usize,
        configs: &[(usize, f64, f64)],
    ) -> Vec<Option<f64>> {
        let n = self.bg.n;
        let mut best: Vec<Option<f64>> = vec![None; configs.len()];
        let mut masks = vec![0u64; k];
        let mut visit = |this: &mut Self, assign: &[usize], best: &mut Vec<Option<f64>>| {
            for m in masks.iter_mut() {
                *m = 0;
            }
            for (v, &b) in assign.iter().enumerate() {
                masks[b] |= 1 << v;
            }
            let weights: Vec<f64> = masks.iter().map(|&m| this.part_weight(m)).collect();
            let mut cost = 0.0;
            let mut cost_ok = true;
            for &m in &masks {
                let c = this.part_cost(m);
                if !c.is_finite() {
                    cost_ok = false;
                    break;
                }
                cost += c;
            }
            for (ci, &(q, l, u)) in configs.iter().enumerate() {
                if !cost_ok {
                    continue;
                }
                if weights.iter().any(|&w| w < l - 1e-9 || w > u + 1e-9) {
                    continue;
                }
                if masks.iter().any(|&m| !this.q_connected(m, q)) {
                    continue;
                }
                if best[ci].map(|b| cost < b).unwrap_or(true) {
                    best[ci] = Some(cost);
                }
            }
        };
        // Manual recursion to allow the memoizing &mut self inside.
        let mut assign = vec![0usize; n];
        fn rec(
            this: &mut BruteForce,
            assign: &mut Vec<usize>,
            i: usize,
            max_used: usize,
            n: usize,
            k: usize,
            best: &mut Vec<Option<f64>>,
            visit: &mut impl FnMut(&mut BruteForce, &[usize], &mut Vec<Option<f64>>),
        ) {
            if i == n {
                if max_used + 1 == k {
                    visit(this, assign, best);
                }
                return;
            }
            if max_used + 1 + (n - i) < k {
                return;
            }
            let cap = (max_used + 1).min(k - 1);
            for b in 0..=cap {
                assign[i] = b;
                rec(this, assign, i + 1, max_used.max(b), n, k, best, visit);
            }
        }
        rec(self, &mut assign, 0, 0, n, k, &mut best, &mut visit);
        best
    }
}

/// G(n, p) edges from the given generator.
pub fn random_edges<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Random graph resampled until connected.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = Graph::new(n, &random_edges(n, p, rng)).unwrap();
        let bg = BitGraph::from_core(&g);
        if n == 0 || bg.reachable(0, bg.full_mask()) == bg.full_mask() {
            return g;
        }
    }
}

/// Random partition into exactly k nonempty parts (vertex→part labels).
pub fn random_partition<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<Vec<usize>> {
    loop {
        let mut parts = vec![Vec::new(); k];
        for v in 0..n {
            parts[rng.gen_range(0..k)].push(v);
        }
        if parts.iter().all(|p| !p.is_empty()) {
            return parts;
        }
    }
}

/// Connected parts grown from k random seeds; every part ends up with at
/// least two vertices when n >= 2k.
pub fn grown_partition<R: Rng>(g: &Graph, k: usize, rng: &mut R) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if n < 2 * k {
        return None;
    }
    for _ in 0..50 {
        let mut owner = vec![usize::MAX; n];
        let mut order: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        order.shuffle(rng);
        for (idx, &seed) in order.iter().take(k).enumerate() {
            owner[seed] = idx;
        }
        let mut remaining = n - k;
        while remaining > 0 {
            // Random assigned vertex with an unassigned neighbor.
            let mut frontier: Vec<(usize, usize)> = Vec::new();
            for v in 0..n {
                if owner[v] == usize::MAX {
                    continue;
                }
                for &u in g.adj(v) {
                    if owner[u] == usize::MAX {
                        frontier.push((u, owner[v]));
                    }
                }
            }
            if frontier.is_empty() {
                break;
            }
            let &(u, part) = &frontier[rng.gen_range(0..frontier.len())];
            owner[u] = part;
            remaining -= 1;
        }
        if remaining > 0 {
            continue;
        }
        let mut parts = vec![Vec::new(); k];
        for v in 0..n {
            parts[owner[v]].push(v);
        }
        if parts.iter().all(|p| p.len() >= 2) {
            return Some(parts);
        }
    }
    None
}
