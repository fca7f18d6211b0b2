use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_submod-bench");

fn bench(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const SWEEP: &str = r#"
output = "runs.csv"
k_values = [5, 10]
repetitions = 2
base_seed = 99
record_timing = false

[dataset]
kind = "er"
n = 80
p = 0.06
seed = 7

[objective]
kind = "maxcut"

[[algorithms]]
name = "pig"

[[algorithms]]
name = "interlace_greedy"

[[algorithms]]
name = "fast_random_greedy"
"#;

#[test]
fn gen_er_complete_graph_has_all_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let res = bench(&["gen-er", "--n", "10", "--p", "1.0", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let edges = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count();
    assert_eq!(edges, 45);
}

#[test]
fn missing_config_is_a_config_error() {
    assert_eq!(bench(&["run", "--config", "missing.toml"]).status.code(), Some(1));
}

#[test]
fn unknown_flag_prints_usage() {
    let res = bench(&["run", "--colour", "red"]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("Usage"));
}

#[test]
fn invalid_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", &SWEEP.replace("repetitions = 2", "repetitions = 0"));
    assert_eq!(bench(&["run", "--config", &cfg]).status.code(), Some(1));
}

#[test]
fn missing_edge_list_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let body = SWEEP.replace(
        "kind = \"er\"\nn = 80\np = 0.06\nseed = 7",
        "kind = \"edge_list\"\npath = \"nowhere.txt\"",
    );
    let cfg = write_config(dir.path(), "c.toml", &body);
    assert_eq!(bench(&["run", "--config", &cfg]).status.code(), Some(1));
}

#[test]
fn check_reports_zero_violations() {
    for objective in ["maxcut", "revmax"] {
        let res = bench(&["check", "--objective", objective]);
        assert!(res.status.success());
        assert!(String::from_utf8_lossy(&res.stdout).contains(" 0 violations"));
    }
}

#[test]
fn run_writes_schema_and_row_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sweep.toml", SWEEP);
    let res = bench(&["run", "--config", &cfg]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(dir.path().join("runs.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dataset,objective,algorithm,k,rep,seed,value,queries,rounds,wall_ms"));
    let rows: Vec<&str> = lines.collect();
    // 3 algorithms x 2 budgets x 2 reps, then one mean row per cell.
    assert_eq!(rows.len(), 12 + 6);
    assert_eq!(rows.iter().filter(|r| r.contains(",mean,")).count(), 6);
    assert!(dir.path().join("runs.summary.csv").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sweep.toml", SWEEP);
    let mut outputs = Vec::new();
    for _ in 0..2 {
        assert!(bench(&["run", "--config", &cfg]).status.success());
        outputs.push((
            fs::read(dir.path().join("runs.csv")).unwrap(),
            fs::read(dir.path().join("runs.summary.csv")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn opt_enumerates_tiny_instances() {
    let dir = tempfile::tempdir().unwrap();
    let body = SWEEP.replace("n = 80", "n = 9").replace("k_values = [5, 10]", "k_values = [1, 2]");
    let cfg = write_config(dir.path(), "tiny.toml", &body);
    let res = bench(&["opt", "--config", &cfg]);
    assert!(res.status.success());
    let out = String::from_utf8_lossy(&res.stdout);
    assert!(out.contains("k=1 opt=") && out.contains("k=2 opt="));
}
