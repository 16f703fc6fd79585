use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gonil::report::{AnalyzeReport, CheckReport, ExampleReport};
use gonil::{Graph, GraphLieAlgebra, Metric};

fn gonil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gonil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

const P3: &str = "3\n1 2\n2 3\n";
const K4: &str = "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn analyze_reports_the_failing_edge() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", P3);
    let out = gonil(&["analyze", &p3]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("not a cluster graph: edge 1–2 joins non-equivalent vertices"));
}

#[test]
fn analyze_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let out = gonil(&["--json", "analyze", &k4]);
    assert_eq!(out.status.code(), Some(0));
    let report: AnalyzeReport = serde_json::from_str(&stdout(&out)).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim(), stdout(&out).trim());
}

#[test]
fn check_p3_is_consistent_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", P3);
    let dump = dir.path().join("cases");
    let out = gonil(&["--json", "check", &p3, "--standard", "--dump-dir", dump.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: CheckReport = serde_json::from_str(&stdout(&out)).unwrap();
    let c = &r.classification;
    assert!(c.agree);
    assert!(!c.cluster.is_cluster);
    assert!(!c.nr.holds);
    assert!(c.go_sampled.is_no());
    assert!(c.go_sampled.witness_from_family());
    assert!(r.dump.is_none());
    assert!(!dump.exists());
}

#[test]
fn check_semi_standard_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let out = gonil(&["--json", "check", &k4, "--semi-standard", "2,3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: CheckReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(r.classification.nr.holds);
    assert!(r.classification.semi_standard.holds);
    assert!(r.classification.agree);
}

#[test]
fn check_metric_file() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4);
    let algebra = GraphLieAlgebra::new(Graph::parse(K4).unwrap());
    let metric = write(dir.path(), "m.json", &Metric::standard(&algebra).to_json());
    let out = gonil(&["check", &k4, "--metric", &metric]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdicts agree:      yes"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", P3);
    let k4 = write(dir.path(), "k4.txt", K4);
    let bad_graph = write(dir.path(), "bad.txt", "3\n1 4\n");
    let wrong_dim = write(dir.path(), "m.json", r#"{"dim": 1, "gram": [["1"]]}"#);
    let not_pd = write(
        dir.path(),
        "np.json",
        r#"{"dim": 2, "gram": [["1", "2"], ["2", "1"]]}"#,
    );
    let missing = dir.path().join("missing.txt").display().to_string();
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", &missing],
        vec!["analyze", &bad_graph],
        vec!["check", &p3, "--semi-standard", "1,2"],
        vec!["check", &k4, "--semi-standard", "1"],
        vec!["check", &k4, "--semi-standard", "0,1"],
        vec!["check", &k4, "--metric", &wrong_dim],
        vec!["check", &k4, "--metric", &not_pd],
        vec!["check", &k4],
        vec!["crossval", "--trials", "0"],
    ];
    for args in cases {
        let out = gonil(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn example_reproduces_the_worked_example() {
    let out = gonil(&["--json", "example"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ExampleReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(r.constructed.nr.holds);
    assert!(r.constructed.semi_standard.holds);
    let text = stdout(&gonil(&["example"]));
    assert!(text.contains("phi-space dimension: 6"));
    assert!(text.contains("unit weights give the standard metric: yes"));
}

#[test]
fn crossval_small_sweep_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("cases");
    let out = gonil(&[
        "--json",
        "crossval",
        "--trials",
        "6",
        "--max-vertices",
        "5",
        "--seed",
        "3",
        "--only-noncluster",
        "--dump-dir",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["trials"], 6);
    assert_eq!(v["cases"], v["agreements"]);
    assert_eq!(v["noncluster_trials"], 6);
    assert_eq!(v["noncluster_with_family_witness"], 6);
    assert!(!dump.exists());
}

#[test]
fn crossval_with_a_fixed_graph() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.txt", P3);
    let out = gonil(&["crossval", "--trials", "2", "--graph", &p3]);
    assert_eq!(out.status.code(), Some(0));
}
