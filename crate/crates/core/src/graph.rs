//! Undirected simple graphs with vertex weights, and the connectivity
//! primitives used throughout the crate: neighborhoods, components, hop
//! distances, minimum vertex cutsets (unit-capacity max-flow over the
//! classical pair schedule), a,b-separators, minimal-separator extraction,
//! cycle finding and block decomposition.

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph with {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} vertex weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("negative weight {1} at vertex {0}")]
    NegativeWeight(usize, f64),
    #[error("invalid separator query: {0}")]
    SeparatorQuery(String),
    #[error("root {0} not contained in the given part")]
    RootNotInPart(usize),
}

/// A set of vertices whose removal disconnects the graph it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutset {
    /// Sorted, ascending.
    pub vertices: Vec<usize>,
}

impl Cutset {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Undirected simple graph with nonnegative vertex weights (default 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    weights: Vec<f64>,
}

impl Graph {
    /// Builds a graph with unit vertex weights. Edges may be given in any
    /// order and orientation; self-loops and duplicates are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::with_weights(n, edges, &vec![1.0; n])
    }

    pub fn with_weights(
        n: usize,
        edges: &[(usize, usize)],
        weights: &[f64],
    ) -> Result<Self, GraphError> {
        if weights.len() != n {
            return Err(GraphError::WeightCount {
                expected: n,
                got: weights.len(),
            });
        }
        for (i, &w) in weights.iter().enumerate() {
            if w < 0.0 || !w.is_finite() {
                return Err(GraphError::NegativeWeight(i, w));
            }
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
            weights: weights.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// size(S): total weight of a vertex set.
    pub fn set_weight(&self, verts: &[usize]) -> f64 {
        verts.iter().map(|&v| self.weights[v]).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// N(S): vertices outside `s` adjacent to some vertex of `s`. Sorted.
    pub fn neighborhood(&self, s: &[usize]) -> Result<Vec<usize>, GraphError> {
        let mut in_s = vec![false; self.n];
        for &v in s {
            self.check_vertex(v)?;
            in_s[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &v in s {
            for &u in &self.adj[v] {
                if !in_s[u] && !seen[u] {
                    seen[u] = true;
                    out.push(u);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.components_within(&all)
    }

    /// Components of the subgraph induced by `verts`, without materializing it.
    pub fn components_within(&self, verts: &[usize]) -> Vec<Vec<usize>> {
        let mut member = vec![false; self.n];
        for &v in verts {
            member[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut order: Vec<usize> = verts.to_vec();
        order.sort_unstable();
        for &start in &order {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if member[u] && !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.connected_components().len() == 1
    }

    /// All-pairs BFS hop distances; `None` marks disconnected pairs.
    pub fn hop_distances(&self) -> Vec<Vec<Option<usize>>> {
        let mut d = vec![vec![None; self.n]; self.n];
        for s in 0..self.n {
            d[s][s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let dv = d[s][v].unwrap();
                for &u in &self.adj[v] {
                    if d[s][u].is_none() {
                        d[s][u] = Some(dv + 1);
                        queue.push_back(u);
                    }
                }
            }
        }
        d
    }

    /// Induced subgraph on `verts` (sorted, deduplicated internally), relabeled
    /// contiguously. Returns the subgraph and the new→old label map.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut labels: Vec<usize> = verts.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                edges.push((pos[u], pos[v]));
            }
        }
        let weights: Vec<f64> = labels.iter().map(|&v| self.weights[v]).collect();
        let g = Graph::with_weights(labels.len(), &edges, &weights)
            .expect("induced subgraph of a valid graph is valid");
        (g, labels)
    }

    /// Copy of the graph with extra edges added.
    pub fn with_added_edges(&self, extra: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        Graph::with_weights(self.n, &edges, &self.weights)
    }

    pub fn is_complete(&self) -> bool {
        self.n <= 1 || self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// True iff `c` separates `a` from `b`: no a,b-path survives in G − c.
    pub fn is_ab_separator(&self, c: &[usize], a: usize, b: usize) -> Result<bool, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::SeparatorQuery(format!(
                "endpoints coincide (a = b = {a})"
            )));
        }
        let mut removed = vec![false; self.n];
        for &v in c {
            self.check_vertex(v)?;
            if v == a || v == b {
                return Err(GraphError::SeparatorQuery(format!(
                    "endpoint {v} contained in the candidate separator"
                )));
            }
            removed[v] = true;
        }
        let mut seen = vec![false; self.n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !removed[u] && !seen[u] {
                    if u == b {
                        return Ok(false);
                    }
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        Ok(true)
    }

    /// Minimal a,b-separator extraction: takes the neighbors 𝒩 of `s`
    /// (a set containing b with a outside both `s` and N(s)), deletes every
    /// edge inside s ∪ 𝒩, and returns 𝒩 restricted to the vertices still
    /// reachable from `a`. The result separates a from b and is
    /// inclusion-minimal.
    pub fn minimal_separator(
        &self,
        s: &[usize],
        a: usize,
        b: usize,
    ) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let mut in_s = vec![false; self.n];
        for &v in s {
            self.check_vertex(v)?;
            in_s[v] = true;
        }
        if !in_s[b] {
            return Err(GraphError::SeparatorQuery(format!(
                "target {b} not contained in the seed set"
            )));
        }
        if in_s[a] {
            return Err(GraphError::SeparatorQuery(format!(
                "source {a} contained in the seed set"
            )));
        }
        let nbrs = self.neighborhood(s)?;
        let mut in_n = vec![false; self.n];
        for &v in &nbrs {
            in_n[v] = true;
        }
        if in_n[a] {
            return Err(GraphError::SeparatorQuery(format!(
                "source {a} adjacent to the seed set"
            )));
        }
        // BFS from a over edges not internal to s ∪ N(s).
        let blocked = |u: usize, v: usize| (in_s[u] || in_n[u]) && (in_s[v] || in_n[v]);
        let mut seen = vec![false; self.n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] && !blocked(v, u) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        Ok(nbrs.into_iter().filter(|&v| seen[v]).collect())
    }

    /// Q-connectivity test: n ≥ q+1 and κ(G) ≥ q. A complete graph counts as
    /// (n−1)-connected; q = 0 only requires a nonempty graph.
    pub fn is_q_connected(&self, q: usize) -> bool {
        if q == 0 {
            return self.n >= 1;
        }
        if self.n < q + 1 {
            return false;
        }
        let (kappa, _) = self.minimum_vertex_cutset();
        kappa >= q
    }

    /// κ(G) together with a minimum cutset.
    ///
    /// Complete graphs (including n ≤ 1) report κ = n−1 and no cutset;
    /// disconnected graphs report (0, empty cutset). Among equal-size
    /// cutsets the first one found under ascending pair iteration wins.
    pub fn minimum_vertex_cutset(&self) -> (usize, Option<Cutset>) {
        if self.n == 0 {
            return (0, None);
        }
        if !self.is_connected() {
            return (0, Some(Cutset { vertices: vec![] }));
        }
        if self.is_complete() {
            return (self.n - 1, None);
        }
        // Classical schedule: a fixed minimum-degree vertex v against all of
        // its non-neighbors, then all non-adjacent pairs of neighbors of v.
        let v = (0..self.n)
            .min_by_key(|&x| (self.degree(x), x))
            .expect("nonempty graph");
        let mut best_k = self.n - 1;
        let mut best_cut: Option<Vec<usize>> = None;
        let consider = |pair: (usize, usize), best_k: &mut usize, best_cut: &mut Option<Vec<usize>>| {
            let (s, t) = pair;
            let (k, cut) = self.st_vertex_connectivity(s, t);
            if k < *best_k || best_cut.is_none() {
                *best_k = k;
                *best_cut = Some(cut);
            }
        };
        for u in 0..self.n {
            if u != v && !self.has_edge(v, u) {
                consider((v, u), &mut best_k, &mut best_cut);
            }
        }
        let nbrs = self.adj[v].clone();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !self.has_edge(x, y) {
                    consider((x, y), &mut best_k, &mut best_cut);
                }
            }
        }
        let cut = best_cut.expect("non-complete graph has a separated pair");
        (best_k, Some(Cutset { vertices: cut }))
    }

    /// Minimum cutset of the component of G[part] containing `root`,
    /// following the convention that a complete component yields its vertices
    /// without the root instead of a traditional cutset.
    pub fn minimum_vertex_cutset_for_part(
        &self,
        part: &[usize],
        root: usize,
    ) -> Result<(usize, Cutset), GraphError> {
        if !part.contains(&root) {
            return Err(GraphError::RootNotInPart(root));
        }
        let comps = self.components_within(part);
        let comp = comps
            .into_iter()
            .find(|c| c.contains(&root))
            .expect("root is in some component of its part");
        let (sub, labels) = self.induced(&comp);
        if sub.is_complete() {
            let d: Vec<usize> = comp.iter().copied().filter(|&v| v != root).collect();
            return Ok((d.len(), Cutset { vertices: d }));
        }
        let (kappa, cut) = sub.minimum_vertex_cutset();
        let cut = cut.expect("non-complete connected graph has a cutset");
        let vertices: Vec<usize> = cut.vertices.iter().map(|&v| labels[v]).collect();
        Ok((kappa, Cutset { vertices }))
    }

    /// Unit-capacity max-flow on the vertex-split digraph between two
    /// non-adjacent vertices; returns κ(s,t) and a minimum s,t-separator.
    fn st_vertex_connectivity(&self, s: usize, t: usize) -> (usize, Vec<usize>) {
        debug_assert!(!self.has_edge(s, t) && s != t);
        // Node 2x = in(x), 2x+1 = out(x).
        let big = self.n as i64 + 1;
        let mut net = FlowNetwork::new(2 * self.n);
        for x in 0..self.n {
            let cap = if x == s || x == t { big } else { 1 };
            net.add_arc(2 * x, 2 * x + 1, cap);
        }
        for &(u, v) in &self.edges {
            net.add_arc(2 * u + 1, 2 * v, big);
            net.add_arc(2 * v + 1, 2 * u, big);
        }
        let source = 2 * s + 1;
        let sink = 2 * t;
        let flow = net.max_flow(source, sink);
        let reach = net.residual_reachable(source);
        let mut cut = Vec::new();
        for x in 0..self.n {
            if reach[2 * x] && !reach[2 * x + 1] {
                cut.push(x);
            }
        }
        debug_assert_eq!(flow as usize, cut.len());
        (cut.len(), cut)
    }

    /// Finds a cycle by trying edges in random order: remove the edge, take a
    /// shortest path between its endpoints. Returns the cycle as an ordered
    /// vertex list, or None iff the graph is a forest.
    pub fn find_cycle<R: Rng>(&self, rng: &mut R) -> Option<Vec<usize>> {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.shuffle(rng);
        for idx in order {
            let (u, v) = self.edges[idx];
            if let Some(path) = self.shortest_path_avoiding_edge(u, v) {
                return Some(path);
            }
        }
        None
    }

    /// BFS shortest u,v-path in G − edge(u,v); path returned as u .. v.
    fn shortest_path_avoiding_edge(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n];
        prev[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    if y == v {
                        let mut path = vec![v];
                        let mut cur = v;
                        while cur != u {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Blocks of the block-cut decomposition (maximal 2-connected subgraphs
    /// and bridges), as sorted vertex sets, plus the cut vertices.
    pub fn block_decomposition(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut timer = 0usize;

        // Iterative DFS: (vertex, parent, next adjacency index).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            let mut root_children = 0usize;
            while let Some(top) = stack.last().copied() {
                let (v, parent, ai) = top;
                if ai < self.adj[v].len() {
                    stack.last_mut().unwrap().2 += 1;
                    let u = self.adj[v][ai];
                    if disc[u] == usize::MAX {
                        edge_stack.push((v, u));
                        disc[u] = timer;
                        low[u] = timer;
                        timer += 1;
                        stack.push((u, v, 0));
                    } else if u != parent && disc[u] < disc[v] {
                        // Back edge.
                        edge_stack.push((v, u));
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            // The subtree at v closes a block rooted at p.
                            if p == root {
                                root_children += 1;
                            } else {
                                is_cut[p] = true;
                            }
                            let mut verts = Vec::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                verts.push(a);
                                verts.push(b);
                                if a == p && b == v {
                                    break;
                                }
                            }
                            verts.sort_unstable();
                            verts.dedup();
                            blocks.push(verts);
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
        blocks.sort_by_key(|b| b.first().copied());
        (blocks, cut_vertices)
    }

    /// Vertex set of the largest block (most vertices; ties broken by the
    /// smallest minimum label). Empty for edgeless graphs.
    pub fn largest_biconnected_block(&self) -> Vec<usize> {
        let (blocks, _) = self.block_decomposition();
        blocks
            .into_iter()
            .max_by(|a, b| {
                a.len()
                    .cmp(&b.len())
                    .then_with(|| b.first().cmp(&a.first()))
            })
            .unwrap_or_default()
    }

    /// Cut vertices (articulation points), ascending.
    pub fn articulation_points(&self) -> Vec<usize> {
        self.block_decomposition().1
    }
}

/// Minimal integer-capacity max-flow (BFS augmenting paths); sized for the
/// vertex-split networks built above, where the flow value is at most n.
struct FlowNetwork {
    // arcs[i] = (to, cap); arcs come in even/odd residual pairs.
    arcs: Vec<(usize, i64)>,
    head: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        self.head[from].push(self.arcs.len());
        self.arcs.push((to, cap));
        self.head[to].push(self.arcs.len());
        self.arcs.push((from, 0));
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        loop {
            // BFS for an augmenting path.
            let mut pred: Vec<usize> = vec![usize::MAX; self.head.len()];
            let mut pred_arc: Vec<usize> = vec![usize::MAX; self.head.len()];
            pred[source] = source;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(v) = queue.pop_front() {
                for &ai in &self.head[v] {
                    let (to, cap) = self.arcs[ai];
                    if cap > 0 && pred[to] == usize::MAX {
                        pred[to] = v;
                        pred_arc[to] = ai;
                        if to == sink {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if pred[sink] == usize::MAX {
                return total;
            }
            // Unit bottleneck is enough here, but compute it properly.
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while v != source {
                bottleneck = bottleneck.min(self.arcs[pred_arc[v]].1);
                v = pred[v];
            }
            let mut v = sink;
            while v != source {
                let ai = pred_arc[v];
                self.arcs[ai].1 -= bottleneck;
                self.arcs[ai ^ 1].1 += bottleneck;
                v = pred[v];
            }
            total += bottleneck;
        }
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &ai in &self.head[v] {
                let (to, cap) = self.arcs[ai];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        let id = |r: usize, c: usize| r * cols + c;
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Graph::new(rows * cols, &edges).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert_eq!(Graph::new(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange(5, 2))
        );
    }

    #[test]
    fn neighborhood_on_path() {
        let g = path(3);
        assert_eq!(g.neighborhood(&[1]).unwrap(), vec![0, 2]);
        // s = V has no outside neighbors.
        assert_eq!(g.neighborhood(&[0, 1, 2]).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn neighborhood_grid_interior() {
        let g = grid(5, 5);
        // Interior vertex 12 = (2,2) has the four grid neighbors.
        assert_eq!(g.neighborhood(&[12]).unwrap(), vec![7, 11, 13, 17]);
    }

    #[test]
    fn components_basic() {
        assert_eq!(cycle(5).connected_components().len(), 1);
        let two_triangles =
            Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let comps = two_triangles.connected_components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let empty = Graph::new(0, &[]).unwrap();
        assert!(empty.connected_components().is_empty());
    }

    #[test]
    fn hop_distances_cases() {
        let g = cycle(4);
        let d = g.hop_distances();
        assert_eq!(d[0][2], Some(2));
        assert_eq!(d[1][3], Some(2));
        let k4 = complete(4);
        let d = k4.hop_distances();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d[i][j], Some(usize::from(i != j)));
            }
        }
        let disc = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let d = disc.hop_distances();
        assert_eq!(d[0][2], None);
        assert_eq!(d[2][0], None);
    }

    #[test]
    fn min_cutset_examples() {
        let (k, cut) = complete(4).minimum_vertex_cutset();
        assert_eq!(k, 3);
        assert!(cut.is_none());

        let (k, cut) = cycle(5).minimum_vertex_cutset();
        assert_eq!(k, 2);
        let cut = cut.unwrap();
        assert_eq!(cut.size(), 2);
        assert!(cycle(5)
            .components_within(
                &(0..5)
                    .filter(|v| !cut.vertices.contains(v))
                    .collect::<Vec<_>>()
            )
            .len() > 1);

        let (k, _) = grid(5, 5).minimum_vertex_cutset();
        assert_eq!(k, 2);

        // Two triangles sharing vertex 2.
        let g = Graph::new(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let (k, cut) = g.minimum_vertex_cutset();
        assert_eq!(k, 1);
        assert_eq!(cut.unwrap().vertices, vec![2]);

        let disc = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(disc.minimum_vertex_cutset(), (0, Some(Cutset { vertices: vec![] })));
    }

    #[test]
    fn min_cutset_for_part() {
        // Part inducing K3 with root 0: D = the other two vertices.
        let g = complete(4);
        let (k, d) = g.minimum_vertex_cutset_for_part(&[0, 1, 2], 0).unwrap();
        assert_eq!(k, 2);
        assert_eq!(d.vertices, vec![1, 2]);

        // Part inducing C6 inside C6: |D| = 2.
        let g = cycle(6);
        let (k, d) = g
            .minimum_vertex_cutset_for_part(&[0, 1, 2, 3, 4, 5], 0)
            .unwrap();
        assert_eq!(k, 2);
        assert_eq!(d.size(), 2);

        // Part inducing a path of 4: an internal vertex, |D| = 1.
        let g = path(6);
        let (k, d) = g.minimum_vertex_cutset_for_part(&[1, 2, 3, 4], 1).unwrap();
        assert_eq!(k, 1);
        assert_eq!(d.size(), 1);
        assert!(d.vertices[0] == 2 || d.vertices[0] == 3);

        assert_eq!(
            g.minimum_vertex_cutset_for_part(&[1, 2], 5),
            Err(GraphError::RootNotInPart(5))
        );
    }

    #[test]
    fn q_connectivity() {
        assert!(cycle(5).is_q_connected(2));
        assert!(!cycle(5).is_q_connected(3));
        assert!(complete(4).is_q_connected(3));
        assert!(!path(3).is_q_connected(2));
        assert!(Graph::new(1, &[]).unwrap().is_q_connected(0));
        assert!(!Graph::new(0, &[]).unwrap().is_q_connected(0));
    }

    #[test]
    fn ab_separator_cases() {
        let g = path(3);
        assert!(g.is_ab_separator(&[1], 0, 2).unwrap());
        let k4 = complete(4);
        assert!(!k4.is_ab_separator(&[1], 0, 2).unwrap());
        assert!(!k4.is_ab_separator(&[1, 3], 0, 2).unwrap());
        // 5×5 grid, middle row separates opposite corners.
        let g = grid(5, 5);
        let middle: Vec<usize> = (10..15).collect();
        assert!(g.is_ab_separator(&middle, 0, 24).unwrap());
        // Endpoint inside the candidate set is rejected.
        assert!(g.is_ab_separator(&[1], 1, 2).is_err());
        assert!(g.is_ab_separator(&[2], 1, 2).is_err());
    }

    #[test]
    fn minimal_separator_on_path() {
        // a=0, x=1, b=2.
        let g = path(3);
        assert_eq!(g.minimal_separator(&[2], 0, 2).unwrap(), vec![1]);
        // Path a-x-y-b with s={b,y}: separator {x}.
        let g = path(4);
        assert_eq!(g.minimal_separator(&[3, 2], 0, 3).unwrap(), vec![1]);
        // Precondition violation: a adjacent to s.
        assert!(g.minimal_separator(&[1], 0, 1).is_err());
    }

    #[test]
    fn minimal_separator_is_minimal_on_grid() {
        let g = grid(5, 5);
        // Seed set: right column plus vertex 24's row tail.
        let s = vec![4, 9, 14, 19, 24];
        let c = g.minimal_separator(&s, 0, 4).unwrap();
        assert!(g.is_ab_separator(&c, 0, 4).unwrap());
        for &v in &c {
            let without: Vec<usize> = c.iter().copied().filter(|&x| x != v).collect();
            assert!(!g.is_ab_separator(&without, 0, 4).unwrap());
        }
    }

    #[test]
    fn find_cycle_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(path(5).find_cycle(&mut rng).is_none());
        let c = cycle(5).find_cycle(&mut rng).unwrap();
        assert_eq!(c.len(), 5);
        let g = complete(4);
        let c = g.find_cycle(&mut rng).unwrap();
        assert!(c.len() >= 3);
        for w in c.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        assert!(g.has_edge(c[0], *c.last().unwrap()));
        let mut dedup = c.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), c.len());
    }

    #[test]
    fn blocks_and_articulation() {
        // Triangle + pendant vertex.
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(g.largest_biconnected_block(), vec![0, 1, 2]);
        assert_eq!(g.articulation_points(), vec![2]);

        // Two triangles joined by a bridge; tie broken toward smaller labels.
        let g = Graph::new(
            6,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        assert_eq!(g.largest_biconnected_block(), vec![0, 1, 2]);

        assert_eq!(grid(5, 5).largest_biconnected_block().len(), 25);
        assert!(grid(5, 5).articulation_points().is_empty());

        assert!(Graph::new(3, &[]).unwrap().largest_biconnected_block().is_empty());
    }
}
