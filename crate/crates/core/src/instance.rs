//! Problem instances: the graph plus K, Q and balance bounds, the squared-hop
//! cost matrix, JSON and edge-list file formats, preprocessing procedures and
//! synthetic generators.

use crate::graph::{Graph, GraphError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("k = {0} invalid: need 2 <= k <= n = {1}")]
    InvalidK(usize, usize),
    #[error("q = {0} invalid: need q >= 1")]
    InvalidQ(usize),
    #[error("balance bounds invalid: L = {0}, U = {1}")]
    InvalidBalance(f64, f64),
    #[error("largest 2-connected block has {0} vertices; need at least 3")]
    BlockTooSmall(usize),
    #[error("graph with {n} vertices cannot be made {q}-connected")]
    CannotRaise { n: usize, q: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
}

/// Size-balance specification: explicit [L, U] bounds, or a deviation
/// fraction τ around the average part size (τ = ∞ disables balance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Balance {
    Bounds { l: f64, u: f64 },
    Tau(f64),
}

/// A partitioning problem: graph, part count K, connectivity level Q and
/// balance bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub q: usize,
    pub balance: Balance,
    pub name: String,
}

impl Instance {
    pub fn new(
        graph: Graph,
        k: usize,
        q: usize,
        balance: Balance,
        name: impl Into<String>,
    ) -> Result<Self, InstanceError> {
        let n = graph.vertex_count();
        if k < 2 || k > n {
            return Err(InstanceError::InvalidK(k, n));
        }
        if q < 1 {
            return Err(InstanceError::InvalidQ(q));
        }
        if let Balance::Bounds { l, u } = balance {
            if !(0.0 <= l && l <= u) {
                return Err(InstanceError::InvalidBalance(l, u));
            }
        }
        if let Balance::Tau(t) = balance {
            if t < 0.0 {
                return Err(InstanceError::InvalidBalance(t, t));
            }
        }
        Ok(Instance {
            graph,
            k,
            q,
            balance,
            name: name.into(),
        })
    }

    /// Average part size size(V)/K.
    pub fn mean_part_size(&self) -> f64 {
        self.graph.total_weight() / self.k as f64
    }

    /// Effective (L, U): τ mode derives L = (1−τ)·p̄ and U = (1+τ)·p̄;
    /// τ = ∞ yields L = 0, U = size(V).
    pub fn bounds(&self) -> (f64, f64) {
        match self.balance {
            Balance::Bounds { l, u } => (l, u),
            Balance::Tau(t) if t.is_infinite() => (0.0, self.graph.total_weight()),
            Balance::Tau(t) => {
                let mean = self.mean_part_size();
                (((1.0 - t) * mean).max(0.0), (1.0 + t) * mean)
            }
        }
    }

    /// τ when the instance was specified that way.
    pub fn tau(&self) -> Option<f64> {
        match self.balance {
            Balance::Tau(t) => Some(t),
            Balance::Bounds { .. } => None,
        }
    }
}

/// Pairwise assignment costs w_ij = p_j · d_ij² / size(V); entries across
/// components are forbidden rather than finite-penalized.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    w: Vec<Option<f64>>,
}

impl CostMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// None marks a forbidden (disconnected) pair.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.w[i * self.n + j]
    }
}

pub fn build_cost_matrix(inst: &Instance) -> CostMatrix {
    let g = &inst.graph;
    let n = g.vertex_count();
    let total = g.total_weight();
    let d = g.hop_distances();
    let mut w = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if let Some(dij) = d[i][j] {
                let dij = dij as f64;
                w[i * n + j] = Some(g.weight(j) * dij * dij / total);
            }
        }
    }
    CostMatrix { n, w }
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
    k: usize,
    q: usize,
    balance: BalanceJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BalanceJson {
    Tau {
        tau: TauValue,
    },
    Bounds {
        #[serde(rename = "L")]
        l: f64,
        #[serde(rename = "U")]
        u: f64,
    },
}

/// τ is a number in JSON, or the string "inf" for the unbalanced setting.
#[derive(Debug, Clone, Copy)]
struct TauValue(f64);

impl Serialize for TauValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for TauValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = TauValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a number or \"inf\"")
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<TauValue, E> {
                Ok(TauValue(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<TauValue, E> {
                Ok(TauValue(v as f64))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<TauValue, E> {
                Ok(TauValue(v as f64))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<TauValue, E> {
                match v {
                    "inf" | "Inf" | "infinity" | "Infinity" => Ok(TauValue(f64::INFINITY)),
                    _ => v
                        .parse::<f64>()
                        .map(TauValue)
                        .map_err(|_| E::custom(format!("invalid tau: {v}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Loads an instance from its JSON document form.
pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, InstanceError> {
    let text = fs::read_to_string(path)?;
    instance_from_json(&text)
}

pub fn instance_from_json(text: &str) -> Result<Instance, InstanceError> {
    let doc: InstanceJson = serde_json::from_str(text).map_err(|e| InstanceError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let graph = match doc.weights {
        Some(w) => Graph::with_weights(doc.n, &doc.edges, &w)?,
        None => Graph::new(doc.n, &doc.edges)?,
    };
    let balance = match doc.balance {
        BalanceJson::Tau { tau } => Balance::Tau(tau.0),
        BalanceJson::Bounds { l, u } => Balance::Bounds { l, u },
    };
    Instance::new(graph, doc.k, doc.q, balance, doc.name)
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    fs::write(path, instance_to_json(inst))?;
    Ok(())
}

pub fn instance_to_json(inst: &Instance) -> String {
    let doc = InstanceJson {
        name: inst.name.clone(),
        n: inst.graph.vertex_count(),
        edges: inst.graph.edges().to_vec(),
        weights: Some(inst.graph.weights().to_vec()),
        k: inst.k,
        q: inst.q,
        balance: match inst.balance {
            Balance::Tau(t) => BalanceJson::Tau { tau: TauValue(t) },
            Balance::Bounds { l, u } => BalanceJson::Bounds { l, u },
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("instance serializes");
    s.push('\n');
    s
}

/// Reads the plain edge-list format: a first line "n m", then m lines "u v"
/// with 0-based endpoints. Vertex weights default to 1 unless a sidecar file
/// (one real per line) is given.
pub fn read_edge_list(
    path: impl AsRef<Path>,
    weights_path: Option<&Path>,
) -> Result<Graph, InstanceError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (n, m) = loop {
        match lines.next() {
            Some((lineno, raw)) => {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut it = line.split_whitespace();
                let parse = |tok: Option<&str>, what: &str| {
                    tok.ok_or(()).and_then(|t| t.parse::<usize>().map_err(|_| ())).map_err(|_| {
                        InstanceError::Parse {
                            line: lineno + 1,
                            message: format!("expected {what} in header"),
                        }
                    })
                };
                let n = parse(it.next(), "vertex count")?;
                let m = parse(it.next(), "edge count")?;
                break (n, m);
            }
            None => {
                return Err(InstanceError::Parse {
                    line: 1,
                    message: "missing \"n m\" header".into(),
                })
            }
        }
    };
    let mut edges = Vec::with_capacity(m);
    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut next_vertex = || -> Result<usize, InstanceError> {
            it.next()
                .ok_or(())
                .and_then(|t| t.parse::<usize>().map_err(|_| ()))
                .map_err(|_| InstanceError::Parse {
                    line: lineno + 1,
                    message: "expected \"u v\"".into(),
                })
        };
        let u = next_vertex()?;
        let v = next_vertex()?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(InstanceError::Parse {
            line: text.lines().count(),
            message: format!("header declared {m} edges, found {}", edges.len()),
        });
    }
    let weights = match weights_path {
        None => vec![1.0; n],
        Some(wp) => {
            let wtext = fs::read_to_string(wp)?;
            let mut out = Vec::with_capacity(n);
            for (lineno, raw) in wtext.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() {
                    continue;
                }
                let w: f64 = line.parse().map_err(|_| InstanceError::Parse {
                    line: lineno + 1,
                    message: format!("invalid weight: {line}"),
                })?;
                out.push(w);
            }
            out
        }
    };
    Ok(Graph::with_weights(n, &edges, &weights)?)
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    fs::write(path, s)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

/// Result of extracting the largest 2-connected block: the relabeled subgraph
/// plus the new→old label map.
#[derive(Debug, Clone)]
pub struct ExtractedBlock {
    pub graph: Graph,
    pub old_labels: Vec<usize>,
}

/// Keeps only the largest 2-connected block, relabeled contiguously.
pub fn preprocess_extract_biconnected(g: &Graph) -> Result<ExtractedBlock, InstanceError> {
    let block = g.largest_biconnected_block();
    if block.len() < 3 {
        return Err(InstanceError::BlockTooSmall(block.len()));
    }
    let (graph, old_labels) = g.induced(&block);
    debug_assert!(graph.is_q_connected(2));
    Ok(ExtractedBlock { graph, old_labels })
}

/// Raises connectivity to q by repeatedly taking a minimum cutset of size
/// < q and, for every pair of components left by its removal, adding an edge
/// between the label-smallest vertices across the pair. Input edges are
/// preserved.
pub fn preprocess_raise_connectivity(g: &Graph, q: usize) -> Result<Graph, InstanceError> {
    let n = g.vertex_count();
    if n < q + 1 {
        return Err(InstanceError::CannotRaise { n, q });
    }
    let mut cur = g.clone();
    loop {
        if cur.is_q_connected(q) {
            return Ok(cur);
        }
        let (kappa, cutset) = cur.minimum_vertex_cutset();
        debug_assert!(kappa < q);
        let _ = kappa;
        let cutset = match cutset {
            Some(c) => c,
            // Complete graph below the requested connectivity: impossible
            // to raise, but n >= q+1 rules this out.
            None => return Err(InstanceError::CannotRaise { n, q }),
        };
        let keep: Vec<usize> = (0..n).filter(|v| !cutset.vertices.contains(v)).collect();
        let comps = cur.components_within(&keep);
        let mut extra = Vec::new();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                // First non-adjacent label-ordered pair across the two
                // components; the first pair is never adjacent, but skip
                // defensively per the documented interpretation.
                let mut chosen = None;
                'outer: for &u in &comps[i] {
                    for &v in &comps[j] {
                        if !cur.has_edge(u, v) && !extra.contains(&(u.min(v), u.max(v))) {
                            chosen = Some((u.min(v), u.max(v)));
                            break 'outer;
                        }
                    }
                }
                if let Some(e) = chosen {
                    extra.push(e);
                }
            }
        }
        cur = cur.with_added_edges(&extra)?;
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Synthetic instance families. `Mycielskian` applies the Mycielski step
/// `levels` times to a base construction.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Grid { rows: usize, cols: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Random { n: usize, edge_prob: f64, seed: u64 },
    Mycielskian { base: Box<GeneratorSpec>, levels: usize },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph, InstanceError> {
        match self {
            GeneratorSpec::Grid { rows, cols } => grid(*rows, *cols),
            GeneratorSpec::Cycle { n } => cycle(*n),
            GeneratorSpec::Complete { n } => complete(*n),
            GeneratorSpec::Random { n, edge_prob, seed } => random_graph(*n, *edge_prob, *seed),
            GeneratorSpec::Mycielskian { base, levels } => {
                let g = base.build()?;
                Ok(mycielskian(&g, *levels))
            }
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            GeneratorSpec::Grid { rows, cols } => write!(f, "grid({rows},{cols})"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle({n})"),
            GeneratorSpec::Complete { n } => write!(f, "complete({n})"),
            GeneratorSpec::Random { n, edge_prob, seed } => {
                write!(f, "random({n},{edge_prob},{seed})")
            }
            GeneratorSpec::Mycielskian { base, levels } => {
                write!(f, "mycielskian({base},{levels})")
            }
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = InstanceError;

    /// Parses specs like `grid(3,4)`, `cycle(6)`, `random(20,0.3,42)` and
    /// `mycielskian(cycle(5),1)`.
    fn from_str(s: &str) -> Result<Self, InstanceError> {
        let s = s.trim();
        let bad = |m: &str| InstanceError::InvalidGenerator(m.to_string());
        let open = s.find('(').ok_or_else(|| bad(&format!("missing '(' in {s}")))?;
        if !s.ends_with(')') {
            return Err(bad(&format!("missing ')' in {s}")));
        }
        let head = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        // Split on top-level commas only.
        let mut args = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    args.push(body[start..i].trim());
                    start = i + 1;
                }
                _ => {}
            }
        }
        if !body.trim().is_empty() {
            args.push(body[start..].trim());
        }
        let int = |a: &str| a.parse::<usize>().map_err(|_| bad(&format!("bad integer: {a}")));
        let real = |a: &str| a.parse::<f64>().map_err(|_| bad(&format!("bad number: {a}")));
        match head {
            "grid" if args.len() == 2 => Ok(GeneratorSpec::Grid {
                rows: int(args[0])?,
                cols: int(args[1])?,
            }),
            "cycle" if args.len() == 1 => Ok(GeneratorSpec::Cycle { n: int(args[0])? }),
            "complete" if args.len() == 1 => Ok(GeneratorSpec::Complete { n: int(args[0])? }),
            "random" if args.len() == 3 => Ok(GeneratorSpec::Random {
                n: int(args[0])?,
                edge_prob: real(args[1])?,
                seed: args[2]
                    .parse::<u64>()
                    .map_err(|_| bad(&format!("bad seed: {}", args[2])))?,
            }),
            "mycielskian" if args.len() == 2 => Ok(GeneratorSpec::Mycielskian {
                base: Box::new(args[0].parse()?),
                levels: int(args[1])?,
            }),
            _ => Err(bad(&format!("unknown generator: {s}"))),
        }
    }
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph, InstanceError> {
    if rows == 0 || cols == 0 {
        return Err(InstanceError::InvalidGenerator(format!(
            "grid({rows},{cols}): dimensions must be positive"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
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
    Ok(Graph::new(rows * cols, &edges)?)
}

pub fn cycle(n: usize) -> Result<Graph, InstanceError> {
    if n < 3 {
        return Err(InstanceError::InvalidGenerator(format!(
            "cycle({n}): need at least 3 vertices"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::new(n, &edges)?)
}

pub fn complete(n: usize) -> Result<Graph, InstanceError> {
    if n == 0 {
        return Err(InstanceError::InvalidGenerator(
            "complete(0): need at least 1 vertex".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// G(n, p) with a fixed pair order, so the output is a pure function of
/// (n, p, seed).
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph, InstanceError> {
    if n == 0 || !(0.0..=1.0).contains(&edge_prob) {
        return Err(InstanceError::InvalidGenerator(format!(
            "random({n},{edge_prob},{seed}): need n >= 1 and probability in [0,1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < edge_prob {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// One Mycielski step per level: each step maps (n, m) to (2n+1, 3m+n) and
/// preserves triangle-freeness.
pub fn mycielskian(base: &Graph, levels: usize) -> Graph {
    let mut g = base.clone();
    for _ in 0..levels {
        let n = g.vertex_count();
        let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
        for &(u, v) in g.edges() {
            edges.push((n + u, v));
            edges.push((u, n + v));
        }
        let w = 2 * n;
        for u in 0..n {
            edges.push((n + u, w));
        }
        g = Graph::new(2 * n + 1, &edges).expect("mycielski step preserves simplicity");
    }
    g
}
