//! End-to-end exercises of the CLI subcommands and exit-code contract.

use hcgp_cli::{cli, EXIT_INCONCLUSIVE, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE};
use std::path::Path;

fn run(args: &[&str]) -> i32 {
    cli(std::iter::once("hcgp").chain(args.iter().copied()))
}

fn write_instance(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn c6_json(dir: &Path) -> String {
    write_instance(
        dir,
        "c6.json",
        r#"{"name":"c6","n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]],"k":2,"q":2,"balance":{"tau":"inf"}}"#,
    )
}

#[test]
fn generate_then_solve_exact_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g34.json");
    let code = run(&[
        "generate",
        "--kind",
        "grid(3,4)",
        "--k",
        "2",
        "--q",
        "2",
        "--tau",
        "0.1",
        "--out",
        inst.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);

    let out = dir.path().join("result.json");
    let code = run(&[
        "solve-exact",
        "--instance",
        inst.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["instance_name"], "grid(3,4)");
    assert!(v["objective"].as_f64().unwrap() > 0.0);
    assert!(v["parts"].as_array().unwrap().len() == 2);

    // Verify the solver's own partition.
    let parts = dir.path().join("parts.json");
    std::fs::write(
        &parts,
        format!("{{\"parts\": {}}}", v["parts"]),
    )
    .unwrap();
    let code = run(&[
        "verify",
        "--instance",
        inst.to_str().unwrap(),
        "--partition",
        parts.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn exact_on_c6_is_infeasible_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let inst = c6_json(dir.path());
    let code = run(&["solve-exact", "--instance", &inst]);
    assert_eq!(code, EXIT_INFEASIBLE);
}

#[test]
fn heuristic_on_c6_is_inconclusive_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = c6_json(dir.path());
    let code = run(&[
        "solve-heuristic",
        "--instance",
        &inst,
        "--max-restarts",
        "20",
    ]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["solve-exact", "--bogus", "x"]), EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(run(&["solve-heuristic"]), EXIT_USAGE);
}

#[test]
fn heuristic_wrong_q_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        "k4.json",
        r#"{"name":"k4","n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],"k":2,"q":3,"balance":{"tau":"inf"}}"#,
    );
    assert_eq!(run(&["solve-heuristic", "--instance", &inst]), EXIT_USAGE);
}

#[test]
fn edge_list_input_requires_k_and_q() {
    let dir = tempfile::tempdir().unwrap();
    let edges = write_instance(dir.path(), "p4.edges", "4 3\n0 1\n1 2\n2 3\n");
    assert_eq!(run(&["solve-exact", "--instance", &edges]), EXIT_USAGE);
    // With k, q and tau the path works end to end (P4, k=2, q=1).
    let code = run(&[
        "solve-exact",
        "--instance",
        &edges,
        "--k",
        "2",
        "--q",
        "1",
        "--tau",
        "inf",
    ]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn preprocess_biconnected_and_raise() {
    let dir = tempfile::tempdir().unwrap();
    // Triangle with a pendant; block extraction keeps the triangle.
    let inst = write_instance(
        dir.path(),
        "tri.json",
        r#"{"name":"tri","n":4,"edges":[[0,1],[1,2],[0,2],[2,3]],"k":2,"q":1,"balance":{"tau":"inf"}}"#,
    );
    let out = dir.path().join("tri-pre.json");
    let code = run(&[
        "preprocess",
        "--instance",
        &inst,
        "--biconnected",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 3);

    // Raising a path to 2-connected closes the cycle.
    let edges = write_instance(dir.path(), "p3.edges", "3 2\n0 1\n1 2\n");
    let out2 = dir.path().join("p3-raised.edges");
    let code = run(&[
        "preprocess",
        "--instance",
        &edges,
        "--k",
        "2",
        "--q",
        "1",
        "--raise-q",
        "2",
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&out2).unwrap();
    assert!(text.starts_with("3 3\n"));
}

#[test]
fn export_lp_writes_model() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_instance(
        dir.path(),
        "k3.json",
        r#"{"name":"k3","n":3,"edges":[[0,1],[1,2],[0,2]],"k":2,"q":1,"balance":{"tau":"inf"}}"#,
    );
    let out = dir.path().join("k3.lp");
    let code = run(&["export-lp", "--instance", &inst, "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("Minimize"));
    assert!(text.contains("Binaries"));
    assert!(text.contains("x_2_2"));
}

#[test]
fn dot_output_and_report_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g24.json");
    assert_eq!(
        run(&[
            "generate",
            "--kind",
            "grid(2,4)",
            "--name",
            "g24",
            "--k",
            "2",
            "--q",
            "2",
            "--tau",
            "0.1",
            "--out",
            inst.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let dot = dir.path().join("g24.dot");
    assert_eq!(
        run(&[
            "solve-exact",
            "--instance",
            inst.to_str().unwrap(),
            "--format",
            "dot",
            "--out",
            dot.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph partition {"));
    assert!(text.contains("doublecircle"));

    // Exact + heuristic records aggregate into one table row.
    let er = dir.path().join("exact.json");
    let hr = dir.path().join("heur.json");
    assert_eq!(
        run(&[
            "solve-exact",
            "--instance",
            inst.to_str().unwrap(),
            "--out",
            er.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    assert_eq!(
        run(&[
            "solve-heuristic",
            "--instance",
            inst.to_str().unwrap(),
            "--seed",
            "5",
            "--out",
            hr.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let csv = dir.path().join("report.csv");
    assert_eq!(
        run(&[
            "report",
            "--records",
            er.to_str().unwrap(),
            hr.to_str().unwrap(),
            "--out",
            csv.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("graph,tau,k,opt,"));
    assert!(text.lines().count() == 2);
    assert!(text.contains("g24"));
}

#[test]
fn settings_matrix_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g34.json");
    assert_eq!(
        run(&[
            "generate", "--kind", "grid(3,4)", "--k", "2", "--q", "2", "--tau", "inf",
            "--out", inst.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let out = dir.path().join("matrix.json");
    assert_eq!(
        run(&[
            "settings-matrix",
            "--instance",
            inst.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
}
