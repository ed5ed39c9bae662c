//! CLI surface: solve-exact, solve-heuristic, verify, preprocess, generate,
//! export-lp and report subcommands. Exit codes: 0 success, 1 infeasible (or
//! failed verification), 2 inconclusive, 3 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcgp_core::exact::{export_lp, solve_exact, CutMode, SolveStatus, SolverSettings};
use hcgp_core::heuristic::{solve_heuristic, HeuristicSettings};
use hcgp_core::instance::{
    load_instance, preprocess_extract_biconnected,
    preprocess_raise_connectivity, read_edge_list, save_instance, write_edge_list, Balance,
    GeneratorSpec, Instance,
};
use hcgp_core::model::{verify_feasible, Partition};
use hcgp_core::report::{
    aggregate_rows, render_partition_dot, rows_to_csv, rows_to_table, run_settings_matrix,
    RunOutput,
};
use hcgp_core::build_cost_matrix;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "hcgp",
    about = "Partition a vertex-weighted graph into size-balanced, Q-connected, compact parts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve to optimality by branch and bound with lazy connectivity cuts.
    SolveExact {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, help = "Wall-clock limit in seconds")]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CutsArg::All)]
        cuts: CutsArg,
        #[arg(long, value_enum, default_value_t = SwitchArg::On)]
        root_resilience: SwitchArg,
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Run the ear-construction heuristic (Q = 2 only).
    SolveHeuristic {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_restarts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Check a partition file against an instance.
    Verify {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, help = "JSON with a top-level \"parts\" array")]
        partition: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the largest 2-connected block and/or raise connectivity.
    Preprocess {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, help = "Keep only the largest 2-connected block")]
        biconnected: bool,
        #[arg(long, help = "Add edges until the graph is this connected")]
        raise_q: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a synthetic instance, e.g. --kind "grid(3,4)".
    Generate {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_parser = parse_tau, default_value = "inf")]
        tau: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the master model in LP format.
    ExportLp {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate run-record JSON files into a results table.
    Report {
        #[arg(long, required = true, num_args = 1..)]
        records: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
    },
    /// Run the 2x2 separation-settings matrix on one instance.
    SettingsMatrix {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file: JSON (*.json) or edge list ("n m" header).
    #[arg(long)]
    instance: PathBuf,
    /// Sidecar vertex-weight file for edge-list inputs.
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Balance deviation: a fraction, or "inf" to disable balance.
    #[arg(long, value_parser = parse_tau)]
    tau: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum CutsArg {
    All,
    One,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SwitchArg {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ReportFormat {
    Csv,
    Table,
}

fn parse_tau(s: &str) -> Result<f64, String> {
    match s {
        "inf" | "Inf" | "infinity" | "Infinity" => Ok(f64::INFINITY),
        _ => s
            .parse::<f64>()
            .map_err(|_| format!("invalid tau: {s} (use a number or \"inf\")")),
    }
}

/// Entry point used by both `main` and the tests; returns the process exit
/// code instead of exiting.
pub fn cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(argv) {
        Ok(p) => p,
        Err(e) => {
            // Help/version are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(parsed.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::SolveExact {
            input,
            time_limit,
            seed,
            cuts,
            root_resilience,
            node_limit,
            out,
            format,
        } => {
            let inst = load_instance_args(&input)?;
            let settings = SolverSettings {
                root_resilience: root_resilience == SwitchArg::On,
                cut_mode: if cuts == CutsArg::All {
                    CutMode::All
                } else {
                    CutMode::One
                },
                time_limit,
                seed,
                node_limit,
            };
            let result = solve_exact(&inst, &settings);
            let record = RunOutput::from_exact(&inst, &settings, &result);
            emit_result(&inst, &record, out.as_deref(), format)?;
            Ok(status_code(result.status))
        }
        Command::SolveHeuristic {
            input,
            time_limit,
            seed,
            max_restarts,
            out,
            format,
        } => {
            let inst = load_instance_args(&input)?;
            let settings = HeuristicSettings {
                seed,
                time_limit,
                max_restarts,
                ..HeuristicSettings::default()
            };
            let (result, trace) =
                solve_heuristic(&inst, &settings).map_err(|e| e.to_string())?;
            let record = RunOutput::from_heuristic(&inst, &settings, &result, &trace);
            emit_result(&inst, &record, out.as_deref(), format)?;
            Ok(status_code(result.status))
        }
        Command::Verify {
            input,
            partition,
            out,
        } => {
            let inst = load_instance_args(&input)?;
            let parts = read_parts_file(&partition)?;
            let costs = build_cost_matrix(&inst);
            let p = Partition::from_parts(&parts, &costs);
            let report = verify_feasible(&p, &inst);
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n";
            write_or_print(out.as_deref(), &text)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Preprocess {
            input,
            biconnected,
            raise_q,
            out,
        } => {
            let inst = load_instance_args(&input)?;
            let mut graph = inst.graph.clone();
            if biconnected {
                let ex = preprocess_extract_biconnected(&graph).map_err(|e| e.to_string())?;
                graph = ex.graph;
                eprintln!(
                    "kept {} of {} vertices; relabeling map: {:?}",
                    graph.vertex_count(),
                    inst.graph.vertex_count(),
                    ex.old_labels
                );
            }
            if let Some(q) = raise_q {
                graph = preprocess_raise_connectivity(&graph, q).map_err(|e| e.to_string())?;
            }
            if out.extension().and_then(|e| e.to_str()) == Some("json") {
                let processed = Instance::new(
                    graph,
                    inst.k,
                    inst.q,
                    inst.balance,
                    format!("{}-pre", inst.name),
                )
                .map_err(|e| e.to_string())?;
                save_instance(&processed, &out).map_err(|e| e.to_string())?;
            } else {
                write_edge_list(&graph, &out).map_err(|e| e.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Generate {
            kind,
            name,
            k,
            q,
            tau,
            out,
        } => {
            let spec: GeneratorSpec = kind.parse().map_err(|e| format!("{e}"))?;
            let graph = spec.build().map_err(|e| e.to_string())?;
            let name = name.unwrap_or_else(|| kind.replace([' '], ""));
            let inst = Instance::new(graph, k, q, Balance::Tau(tau), name)
                .map_err(|e| e.to_string())?;
            save_instance(&inst, &out).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Command::ExportLp { input, out } => {
            let inst = load_instance_args(&input)?;
            let costs = build_cost_matrix(&inst);
            let mut model = hcgp_core::model::build_hess_model(&inst, &costs)
                .map_err(|e| e.to_string())?;
            hcgp_core::model::add_degree_inequalities(&mut model, &inst);
            export_lp(&model, &out).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Report {
            records,
            out,
            format,
        } => {
            let mut all = Vec::new();
            for path in &records {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                // Accept a single record or an array of records per file.
                match serde_json::from_str::<Vec<RunOutput>>(&text) {
                    Ok(mut v) => all.append(&mut v),
                    Err(_) => {
                        let one: RunOutput = serde_json::from_str(&text)
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                        all.push(one);
                    }
                }
            }
            let rows = aggregate_rows(&all);
            let text = match format {
                ReportFormat::Csv => rows_to_csv(&rows),
                ReportFormat::Table => rows_to_table(&rows),
            };
            write_or_print(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::SettingsMatrix {
            input,
            time_limit,
            seed,
            out,
        } => {
            let inst = load_instance_args(&input)?;
            let report = run_settings_matrix(&inst, time_limit, seed).map_err(|e| e.to_string())?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n";
            write_or_print(out.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn status_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Optimal | SolveStatus::Feasible => EXIT_OK,
        SolveStatus::Infeasible => EXIT_INFEASIBLE,
        SolveStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Loads the instance file (JSON or edge list) and applies any k/q/tau
/// overrides from the flags.
fn load_instance_args(args: &InstanceArgs) -> Result<Instance, String> {
    let is_json = args.instance.extension().and_then(|e| e.to_str()) == Some("json");
    let base = if is_json {
        Some(load_instance(&args.instance).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let (graph, name, k0, q0, bal0) = match base {
        Some(inst) => (
            inst.graph,
            inst.name,
            Some(inst.k),
            Some(inst.q),
            Some(inst.balance),
        ),
        None => {
            let graph = read_edge_list(&args.instance, args.weights.as_deref())
                .map_err(|e| e.to_string())?;
            let name = args
                .instance
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("instance")
                .to_string();
            (graph, name, None, None, None)
        }
    };
    let k = args
        .k
        .or(k0)
        .ok_or("--k required for edge-list instances")?;
    let q = args
        .q
        .or(q0)
        .ok_or("--q required for edge-list instances")?;
    let balance = match args.tau {
        Some(t) => Balance::Tau(t),
        None => bal0.unwrap_or(Balance::Tau(f64::INFINITY)),
    };
    Instance::new(graph, k, q, balance, name).map_err(|e| e.to_string())
}

fn read_parts_file(path: &Path) -> Result<Vec<Vec<usize>>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let parts = value
        .get("parts")
        .ok_or("partition file needs a top-level \"parts\" array")?;
    serde_json::from_value(parts.clone()).map_err(|e| e.to_string())
}

fn emit_result(
    inst: &Instance,
    record: &RunOutput,
    out: Option<&Path>,
    format: FormatArg,
) -> Result<(), String> {
    let text = match format {
        FormatArg::Json => record.to_json(),
        FormatArg::Dot => match (&record.parts, &record.roots) {
            (Some(parts), Some(roots)) => {
                let p = Partition {
                    parts: parts.clone(),
                    roots: roots.clone(),
                };
                render_partition_dot(&p, &inst.graph)
            }
            _ => {
                eprintln!("no partition to render; emitting JSON result");
                record.to_json()
            }
        },
    };
    write_or_print(out, &text)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
