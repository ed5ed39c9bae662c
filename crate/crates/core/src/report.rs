//! Result records and experiment reporting: the shared JSON result schema,
//! comparison metrics (approximation gap, geometric-mean time ratios),
//! DOT export of partitions, the separation-settings matrix runner and
//! CSV/table aggregation of run records.

use crate::exact::{solve_exact, CutMode, SolveResult, SolveStatus, SolverSettings};
use crate::graph::Graph;
use crate::heuristic::{HeuristicSettings, HeuristicTrace, StageTimes};
use crate::instance::Instance;
use crate::model::{Partition, TOL};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("nonpositive reference value {0} for the approximation gap")]
    NonpositiveReference(f64),
    #[error("nonpositive time {0} in a ratio")]
    NonpositiveTime(f64),
    #[error("optimal objectives disagree across settings: {0} vs {1}")]
    ObjectiveMismatch(f64, f64),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid run record: {0}")]
    BadRecord(String),
}

/// (HEUR − OPT)/OPT. When the exact method only proved a bound, the caller
/// passes the bound and the result is an upper bound on the true gap.
pub fn approximation_gap(opt_or_bound: f64, heur: f64) -> Result<f64, ReportError> {
    if opt_or_bound <= 0.0 {
        return Err(ReportError::NonpositiveReference(opt_or_bound));
    }
    Ok((heur - opt_or_bound) / opt_or_bound)
}

/// exp(mean(ln(t_a/t_b))) over the given time pairs.
pub fn geometric_mean_ratio(pairs: &[(f64, f64)]) -> Result<f64, ReportError> {
    if pairs.is_empty() {
        return Ok(1.0);
    }
    let mut sum = 0.0;
    for &(a, b) in pairs {
        if a <= 0.0 {
            return Err(ReportError::NonpositiveTime(a));
        }
        if b <= 0.0 {
            return Err(ReportError::NonpositiveTime(b));
        }
        sum += (a / b).ln();
    }
    Ok((sum / pairs.len() as f64).exp())
}

// ---------------------------------------------------------------------------
// Run records: the shared JSON result schema
// ---------------------------------------------------------------------------

/// Serialized settings echo inside a run record.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SettingsEcho {
    Exact(SolverSettings),
    Heuristic(HeuristicSettings),
}

/// One solver run in the shared JSON schema. Heuristic runs carry the extra
/// `restarts` and `stage_times` fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunOutput {
    pub instance_name: String,
    pub method: String,
    pub k: usize,
    pub q: usize,
    /// τ when the instance was specified that way ("inf" for the unbalanced
    /// setting), absent for explicit L/U bounds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<TauOut>,
    pub status: SolveStatus,
    pub objective: Option<f64>,
    pub lower_bound: BoundOut,
    pub parts: Option<Vec<Vec<usize>>>,
    pub roots: Option<Vec<usize>>,
    pub wall_time: f64,
    pub separation_time: f64,
    pub cuts_added: usize,
    pub nodes: u64,
    pub settings: SettingsEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage_times: Option<StageTimes>,
}

/// τ rendered as a number or the string "inf".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauOut(pub f64);

impl Serialize for TauOut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for TauOut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(x) => Ok(TauOut(x.as_f64().unwrap_or(f64::NAN))),
            serde_json::Value::String(s) if s == "inf" => Ok(TauOut(f64::INFINITY)),
            other => Err(serde::de::Error::custom(format!("invalid tau: {other}"))),
        }
    }
}

/// Lower bound rendered as a number, or "inf" for infeasibility certificates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOut(pub f64);

impl Serialize for BoundOut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for BoundOut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(x) => Ok(BoundOut(x.as_f64().unwrap_or(f64::NAN))),
            serde_json::Value::String(s) if s == "inf" => Ok(BoundOut(f64::INFINITY)),
            other => Err(serde::de::Error::custom(format!("invalid bound: {other}"))),
        }
    }
}

impl RunOutput {
    pub fn from_exact(inst: &Instance, settings: &SolverSettings, result: &SolveResult) -> Self {
        RunOutput {
            instance_name: inst.name.clone(),
            method: "exact".into(),
            k: inst.k,
            q: inst.q,
            tau: inst.tau().map(TauOut),
            status: result.status,
            objective: result.objective,
            lower_bound: BoundOut(result.lower_bound),
            parts: result.partition.as_ref().map(|p| p.parts.clone()),
            roots: result.partition.as_ref().map(|p| p.roots.clone()),
            wall_time: result.wall_time,
            separation_time: result.separation_time,
            cuts_added: result.cuts_added,
            nodes: result.nodes,
            settings: SettingsEcho::Exact(settings.clone()),
            restarts: None,
            stage_times: None,
        }
    }

    pub fn from_heuristic(
        inst: &Instance,
        settings: &HeuristicSettings,
        result: &SolveResult,
        trace: &HeuristicTrace,
    ) -> Self {
        RunOutput {
            instance_name: inst.name.clone(),
            method: "heuristic".into(),
            k: inst.k,
            q: inst.q,
            tau: inst.tau().map(TauOut),
            status: result.status,
            objective: result.objective,
            lower_bound: BoundOut(result.lower_bound),
            parts: result.partition.as_ref().map(|p| p.parts.clone()),
            roots: result.partition.as_ref().map(|p| p.roots.clone()),
            wall_time: result.wall_time,
            separation_time: result.separation_time,
            cuts_added: result.cuts_added,
            nodes: result.nodes,
            settings: SettingsEcho::Heuristic(settings.clone()),
            restarts: Some(trace.restarts),
            stage_times: Some(trace.stage_times),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run output serializes");
        s.push('\n');
        s
    }

    /// JSON with every timing field zeroed; two runs of the same seeded
    /// computation must agree byte-for-byte on this form.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.wall_time = 0.0;
        c.separation_time = 0.0;
        if c.stage_times.is_some() {
            c.stage_times = Some(StageTimes::default());
        }
        c.to_json()
    }
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

const DOT_PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

/// Renders the partition as a DOT graph: one fill color per part, roots
/// double-circled, inter-part edges dashed. Output ordering is fixed, so
/// re-export is byte-identical. Each node carries an explicit `part`
/// attribute for machine round-trips.
pub fn render_partition_dot(p: &Partition, g: &Graph) -> String {
    let mut part_of = vec![usize::MAX; g.vertex_count()];
    for (idx, part) in p.parts.iter().enumerate() {
        for &v in part {
            part_of[v] = idx;
        }
    }
    let mut s = String::from("graph partition {\n  node [style=filled];\n");
    for v in 0..g.vertex_count() {
        let idx = part_of[v];
        let color = DOT_PALETTE[idx % DOT_PALETTE.len()];
        let shape = if p.roots.contains(&v) && p.parts[idx].contains(&v) {
            ", shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(s, "  {v} [part={idx}, fillcolor=\"{color}\"{shape}];");
    }
    for &(u, v) in g.edges() {
        if part_of[u] == part_of[v] {
            let _ = writeln!(s, "  {u} -- {v};");
        } else {
            let _ = writeln!(s, "  {u} -- {v} [style=dashed];");
        }
    }
    s.push_str("}\n");
    s
}

pub fn export_partition_dot(
    p: &Partition,
    g: &Graph,
    path: impl AsRef<Path>,
) -> Result<(), ReportError> {
    std::fs::write(path, render_partition_dot(p, g))?;
    Ok(())
}

/// Recovers the vertex→part assignment from a DOT file produced by
/// [`render_partition_dot`].
pub fn parse_partition_dot(text: &str) -> Result<Vec<(usize, usize)>, ReportError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        let Some(open) = line.find("[part=") else {
            continue;
        };
        let vertex: usize = line[..open]
            .trim()
            .parse()
            .map_err(|_| ReportError::BadRecord(format!("bad vertex in: {line}")))?;
        let rest = &line[open + 6..];
        let end = rest
            .find([',', ']'])
            .ok_or_else(|| ReportError::BadRecord(format!("bad part in: {line}")))?;
        let part: usize = rest[..end]
            .parse()
            .map_err(|_| ReportError::BadRecord(format!("bad part in: {line}")))?;
        out.push((vertex, part));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Settings matrix
// ---------------------------------------------------------------------------

/// One cell of the 2×2 separation-settings experiment.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixCell {
    pub root_resilience: bool,
    pub cut_mode: CutMode,
    pub status: SolveStatus,
    pub objective: Option<f64>,
    pub wall_time: f64,
    pub separation_time: f64,
    pub cuts_added: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub instance_name: String,
    pub cells: Vec<MatrixCell>,
}

/// Runs all four (root-resilience × cut-mode) configurations and checks that
/// every cell reaching optimality reports the same objective.
pub fn run_settings_matrix(
    inst: &Instance,
    time_limit: Option<f64>,
    seed: u64,
) -> Result<MatrixReport, ReportError> {
    let mut cells = Vec::new();
    for rr in [true, false] {
        for cm in [CutMode::All, CutMode::One] {
            let settings = SolverSettings {
                root_resilience: rr,
                cut_mode: cm,
                time_limit,
                seed,
                node_limit: None,
            };
            let r = solve_exact(inst, &settings);
            cells.push(MatrixCell {
                root_resilience: rr,
                cut_mode: cm,
                status: r.status,
                objective: r.objective,
                wall_time: r.wall_time,
                separation_time: r.separation_time,
                cuts_added: r.cuts_added,
                nodes: r.nodes,
            });
        }
    }
    let optima: Vec<f64> = cells
        .iter()
        .filter(|c| c.status == SolveStatus::Optimal)
        .filter_map(|c| c.objective)
        .collect();
    for &o in &optima {
        if (o - optima[0]).abs() > TOL {
            return Err(ReportError::ObjectiveMismatch(optima[0], o));
        }
    }
    Ok(MatrixReport {
        instance_name: inst.name.clone(),
        cells,
    })
}

// ---------------------------------------------------------------------------
// Report aggregation
// ---------------------------------------------------------------------------

/// One aggregated table row pairing the exact and heuristic runs of an
/// instance configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub graph: String,
    pub tau: String,
    pub k: usize,
    /// OPT column: objective, bound or marker per the status conventions.
    pub opt: String,
    pub opt_time: Option<f64>,
    pub heur: String,
    pub heur_time: Option<f64>,
    pub approx_gap: String,
    pub time_ratio: String,
}

fn tau_label(tau: &Option<TauOut>) -> String {
    match tau {
        None => "L,U".into(),
        Some(TauOut(t)) if t.is_infinite() => "inf".into(),
        Some(TauOut(t)) => format!("{t}"),
    }
}

/// Builds Appendix-style rows from raw run records. Within a group keyed by
/// (instance, k, q, tau), the exact record feeds the OPT columns and the
/// heuristic record the HEUR columns:
///
/// * OPT shows the objective; a trailing `*` marks a bound with a feasible
///   solution, `**` a bound with none, and `inf` an infeasibility
///   certificate.
/// * HEUR shows the objective or `N.S.` when no solution was found.
/// * The gap column shows `-` when the heuristic matched the optimum and
///   `N.A.` when either side lacks a usable value.
pub fn aggregate_rows(records: &[RunOutput]) -> Vec<TableRow> {
    let mut keys: Vec<(String, usize, usize, String)> = records
        .iter()
        .map(|r| (r.instance_name.clone(), r.k, r.q, tau_label(&r.tau)))
        .collect();
    keys.sort();
    keys.dedup();
    let mut rows = Vec::new();
    for (name, k, q, tau) in keys {
        let group: Vec<&RunOutput> = records
            .iter()
            .filter(|r| {
                r.instance_name == name && r.k == k && r.q == q && tau_label(&r.tau) == tau
            })
            .collect();
        let exact = group.iter().find(|r| r.method == "exact");
        let heur = group.iter().find(|r| r.method == "heuristic");
        let (opt, opt_time, opt_ref) = match exact {
            None => ("N.A.".into(), None, None),
            Some(r) => match r.status {
                SolveStatus::Optimal => (
                    format!("{}", r.objective.unwrap_or(f64::NAN)),
                    Some(r.wall_time),
                    r.objective,
                ),
                SolveStatus::Feasible => (
                    format!("{}*", r.lower_bound.0),
                    Some(r.wall_time),
                    Some(r.lower_bound.0),
                ),
                SolveStatus::Infeasible => ("inf".into(), Some(r.wall_time), None),
                SolveStatus::Inconclusive => (
                    format!("{}**", r.lower_bound.0),
                    Some(r.wall_time),
                    Some(r.lower_bound.0),
                ),
            },
        };
        let (heur_cell, heur_time, heur_obj) = match heur {
            None => ("N.A.".into(), None, None),
            Some(r) => match r.objective {
                Some(o) => (format!("{o}"), Some(r.wall_time), Some(o)),
                None => ("N.S.".into(), Some(r.wall_time), None),
            },
        };
        let exact_optimal = exact.map(|r| r.status == SolveStatus::Optimal).unwrap_or(false);
        let approx_gap = match (opt_ref, heur_obj) {
            (Some(reference), Some(h)) => {
                if exact_optimal && (h - reference).abs() <= TOL {
                    "-".into()
                } else {
                    match approximation_gap(reference, h) {
                        Ok(gap) => format!("{gap}"),
                        Err(_) => "N.A.".into(),
                    }
                }
            }
            _ => "N.A.".into(),
        };
        let time_ratio = match (opt_time, heur_time) {
            (Some(a), Some(b)) if a > 0.0 && b > 0.0 && heur_obj.is_some() && opt_ref.is_some() => {
                format!("{}", a / b)
            }
            _ => "N.A.".into(),
        };
        rows.push(TableRow {
            graph: name,
            tau,
            k,
            opt,
            opt_time,
            heur: heur_cell,
            heur_time,
            approx_gap,
            time_ratio,
        });
    }
    rows
}

/// CSV emission, full precision, Appendix table column order.
pub fn rows_to_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("graph,tau,k,opt,opt_time,heur,heur_time,approx_gap,time_ratio\n");
    for r in rows {
        let fmt_time = |t: Option<f64>| t.map(|x| format!("{x}")).unwrap_or_else(|| "N.A.".into());
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.graph,
            r.tau,
            r.k,
            r.opt,
            fmt_time(r.opt_time),
            r.heur,
            fmt_time(r.heur_time),
            r.approx_gap,
            r.time_ratio
        );
    }
    s
}

/// Human-readable table with times rounded to one decimal place.
pub fn rows_to_table(rows: &[TableRow]) -> String {
    let mut s = String::from(
        "graph            tau    k   OPT          OPT time  HEUR         HEUR time  gap        ratio\n",
    );
    for r in rows {
        let fmt_time = |t: Option<f64>| {
            t.map(|x| format!("{:.1}", x)).unwrap_or_else(|| "-".into())
        };
        let _ = writeln!(
            s,
            "{:<16} {:<6} {:<3} {:<12} {:<9} {:<12} {:<10} {:<10} {}",
            r.graph,
            r.tau,
            r.k,
            trim_cell(&r.opt),
            fmt_time(r.opt_time),
            trim_cell(&r.heur),
            fmt_time(r.heur_time),
            trim_cell(&r.approx_gap),
            trim_cell(&r.time_ratio),
        );
    }
    s
}

fn trim_cell(cell: &str) -> String {
    // Shorten long float strings for the fixed-width rendering.
    match cell.parse::<f64>() {
        Ok(v) => format!("{v:.4}"),
        Err(_) => cell.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{build_cost_matrix, cycle, grid, Balance};
    use crate::model::Partition;

    #[test]
    fn approximation_gap_cases() {
        assert!((approximation_gap(0.5, 0.65).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(approximation_gap(0.5, 0.5).unwrap(), 0.0);
        assert!((approximation_gap(0.4, 0.65).unwrap() - 0.625).abs() < 1e-12);
        assert!(approximation_gap(0.0, 1.0).is_err());
    }

    #[test]
    fn geometric_mean_cases() {
        assert!((geometric_mean_ratio(&[(2.0, 1.0), (8.0, 1.0)]).unwrap() - 4.0).abs() < 1e-12);
        assert!((geometric_mean_ratio(&[(1.0, 1.0), (3.0, 3.0)]).unwrap() - 1.0).abs() < 1e-12);
        assert!(
            (geometric_mean_ratio(&[(1.0, 1.0), (4.0, 1.0), (16.0, 1.0)]).unwrap() - 4.0).abs()
                < 1e-12
        );
        assert!(geometric_mean_ratio(&[(0.0, 1.0)]).is_err());
    }

    #[test]
    fn dot_round_trip() {
        let g = cycle(4).unwrap();
        let inst = Instance::new(g.clone(), 2, 1, Balance::Tau(f64::INFINITY), "c4").unwrap();
        let costs = build_cost_matrix(&inst);
        let p = Partition::from_parts(&[vec![0, 1], vec![2, 3]], &costs);
        let text = render_partition_dot(&p, &g);
        // Two dashed inter-part edges on the cycle.
        assert_eq!(text.matches("style=dashed").count(), 2);
        assert_eq!(text.matches("doublecircle").count(), 2);
        let assignment = parse_partition_dot(&text).unwrap();
        assert_eq!(assignment, vec![(0, 0), (1, 0), (2, 1), (3, 1)]);
        // Deterministic re-render.
        assert_eq!(render_partition_dot(&p, &g), text);
    }

    #[test]
    fn settings_matrix_on_grid() {
        let inst = Instance::new(grid(3, 4).unwrap(), 2, 2, Balance::Tau(0.1), "g34").unwrap();
        let report = run_settings_matrix(&inst, None, 0).unwrap();
        assert_eq!(report.cells.len(), 4);
        for cell in &report.cells {
            assert_eq!(cell.status, SolveStatus::Optimal);
            assert!(
                (cell.objective.unwrap() - report.cells[0].objective.unwrap()).abs() <= TOL
            );
        }
    }

    #[test]
    fn settings_matrix_infeasible_instance() {
        let inst = Instance::new(cycle(6).unwrap(), 2, 2, Balance::Tau(f64::INFINITY), "c6")
            .unwrap();
        let report = run_settings_matrix(&inst, None, 0).unwrap();
        assert!(report
            .cells
            .iter()
            .all(|c| c.status == SolveStatus::Infeasible));
    }

    #[test]
    fn run_output_round_trip_and_canonical_form() {
        let inst = Instance::new(grid(3, 4).unwrap(), 2, 2, Balance::Tau(0.1), "g34").unwrap();
        let settings = SolverSettings::default();
        let result = solve_exact(&inst, &settings);
        let out = RunOutput::from_exact(&inst, &settings, &result);
        let text = out.to_json();
        let back: RunOutput = serde_json::from_str(&text).unwrap();
        assert_eq!(back.instance_name, "g34");
        assert_eq!(back.status, SolveStatus::Optimal);
        assert_eq!(back.parts, out.parts);
        // Canonical form strips wall-clock noise.
        let c1 = out.canonical_json();
        let mut out2 = out.clone();
        out2.wall_time = 123.0;
        assert_eq!(out2.canonical_json(), c1);
    }

    #[test]
    fn aggregation_reproduces_inputs() {
        let inst = Instance::new(grid(3, 4).unwrap(), 2, 2, Balance::Tau(0.1), "g34").unwrap();
        let es = SolverSettings::default();
        let er = solve_exact(&inst, &es);
        let hs = HeuristicSettings::default();
        let (hr, tr) = crate::heuristic::solve_heuristic(&inst, &hs).unwrap();
        let records = vec![
            RunOutput::from_exact(&inst, &es, &er),
            RunOutput::from_heuristic(&inst, &hs, &hr, &tr),
        ];
        let rows = aggregate_rows(&records);
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.graph, "g34");
        assert_eq!(row.tau, "0.1");
        // Recompute the gap from the raw records; no drift allowed.
        let opt = er.objective.unwrap();
        let heur = hr.objective.unwrap();
        if (opt - heur).abs() <= TOL {
            assert_eq!(row.approx_gap, "-");
        } else {
            let expected = approximation_gap(opt, heur).unwrap();
            let shown: f64 = row.approx_gap.parse().unwrap();
            assert!((shown - expected).abs() < 1e-12);
        }
        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with("graph,tau,k,opt,"));
        assert_eq!(csv.lines().count(), 2);
        let table = rows_to_table(&rows);
        assert!(table.contains("g34"));
    }
}
