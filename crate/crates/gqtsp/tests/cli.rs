use std::fs;
use std::path::{Path, PathBuf};

use gqtsp::cli::run;
use gqtsp::exit;
use serde_json::Value;

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

fn gqtsp(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gqtsp").chain(args.iter().copied()), &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json(p: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn four_city_graph(dir: &Path) -> String {
    let g = path(dir, "g4.json");
    let r = gqtsp(&["gen", "-n", "4", "-d", "3", "--seed", "1", "-o", &g]);
    assert_eq!(r.code, exit::OK, "{}", r.stderr);
    g
}

#[test]
fn gen_writes_graph_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let g = four_city_graph(dir.path());
    let doc = json(&g);
    assert_eq!(doc["format"], "gqtsp-graph");
    assert_eq!(doc["cities"], 4);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 6);
    let manifest = json(&format!("{g}.manifest.json"));
    assert_eq!(manifest["command"], "gen");
    assert_eq!(manifest["seed"], 1);
    assert!(manifest.get("timings").is_none_or(Value::is_null));
    let outputs: Vec<PathBuf> =
        manifest["outputs"].as_array().unwrap().iter().map(|v| PathBuf::from(v.as_str().unwrap())).collect();
    assert_eq!(outputs, [PathBuf::from(&g)]);
}

#[test]
fn gen_respects_degree_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g6.json");
    assert_eq!(gqtsp(&["gen", "-n", "6", "-d", "4", "--seed", "3", "-o", &g]).code, exit::OK);
    let doc = json(&g);
    let mut degree = [0usize; 6];
    for e in doc["edges"].as_array().unwrap() {
        degree[e[0].as_u64().unwrap() as usize] += 1;
        degree[e[1].as_u64().unwrap() as usize] += 1;
    }
    assert!(degree.iter().all(|&d| (2..=4).contains(&d)), "{degree:?}");
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.json");
    assert_eq!(gqtsp(&["--timings", "gen", "-n", "4", "-d", "3", "-o", &g]).code, exit::OK);
    let manifest = json(&format!("{g}.manifest.json"));
    assert!(manifest["timings"]["elapsed_ms"].is_number());
}

#[test]
fn solve_finds_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let g = four_city_graph(dir.path());
    let s = path(dir.path(), "solve.json");
    let r = gqtsp(&["solve", &g, "--seed", "3", "-o", &s]);
    assert_eq!(r.code, exit::OK, "{}", r.stderr);
    let doc = json(&s);
    assert_eq!(doc["format"], "gqtsp-solve");
    assert_eq!(doc["optimal"], true);
    let best = doc["best"]["cost"].as_f64().unwrap();
    let opt = doc["optimum"]["cost"].as_f64().unwrap();
    assert!((best - opt).abs() < 1e-9);
}

#[test]
fn solve_max_objective_reports_longest_tour() {
    let dir = tempfile::tempdir().unwrap();
    let g = four_city_graph(dir.path());
    let r = gqtsp(&["solve", &g, "--objective", "max", "--seed", "2"]);
    assert_eq!(r.code, exit::OK, "{}", r.stderr);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["objective"], "max");
    // Four cities have three tours; the longest is not the 1.4678 one.
    assert!(doc["best"]["cost"].as_f64().unwrap() > 1.5);
    assert_eq!(doc["optimal"], true);
}

#[test]
fn graph_without_tour_exits_no_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "bowtie.json");
    // Two triangles sharing city 0: every degree is at least two, no tour.
    let doc = r#"{
  "format": "gqtsp-graph",
  "version": 1,
  "cities": 5,
  "degree": 4,
  "coordinates": null,
  "edges": [[0, 1, 1.0], [1, 2, 1.0], [0, 2, 1.0], [0, 3, 1.0], [3, 4, 1.0], [0, 4, 1.0]]
}
"#;
    fs::write(&g, doc).unwrap();
    let r = gqtsp(&["solve", &g]);
    assert_eq!(r.code, exit::NO_CYCLE, "{}", r.stderr);
}

#[test]
fn malformed_graph_is_not_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "bad.json");
    fs::write(&g, "{\"format\": \"something-else\"}").unwrap();
    let r = gqtsp(&["solve", &g]);
    assert_ne!(r.code, exit::OK);
    assert!(!r.stderr.is_empty());
    assert_eq!(gqtsp(&["solve", &path(dir.path(), "missing.json")]).code, exit::OTHER);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gqtsp(&["solve", "--no-such-flag"]).code, exit::USAGE);
    assert_eq!(gqtsp(&["verify", "everything"]).code, exit::USAGE);
    assert_eq!(gqtsp(&["gen", "-n", "4", "-d", "4", "-o", "unused.json"]).code, exit::USAGE);
    assert_eq!(gqtsp(&["qubits", "--range", "8..4"]).code, exit::USAGE);
    assert_eq!(gqtsp(&["--help"]).code, exit::OK);
}

#[test]
fn large_solve_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g6.json");
    assert_eq!(gqtsp(&["gen", "-n", "6", "-o", &g]).code, exit::OK);
    let r = gqtsp(&["solve", &g]);
    assert_eq!(r.code, exit::RESOURCE, "{}", r.stderr);
    assert_eq!(gqtsp(&["sweep", &g, "-k", "1"]).code, exit::RESOURCE);
}

#[test]
fn qubit_cap_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let g = four_city_graph(dir.path());
    let r = gqtsp(&["solve", &g, "--mode", "gate-level", "--max-qubits", "20"]);
    assert_eq!(r.code, exit::RESOURCE, "{}", r.stderr);
}

#[test]
fn sweep_csv_starts_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let g = four_city_graph(dir.path());
    let s = path(dir.path(), "sweep.csv");
    let r = gqtsp(&["sweep", &g, "-k", "10", "-o", &s]);
    assert_eq!(r.code, exit::OK, "{}", r.stderr);
    assert!(r.stdout.contains("estimated_iterations=8"), "{}", r.stdout);
    let csv = fs::read_to_string(&s).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("iteration,p1,p2,p3"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    // Each tour is two words out of 2^8.
    for p in &rows[0][1..] {
        assert!((p - 2.0 / 256.0).abs() < 1e-12);
    }
    let best = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert!((7.0..=9.0).contains(&best[0]));
}

#[test]
fn verify_suites_pass() {
    for (suite, range) in [("hcd", "4..5"), ("mcx", "3..6"), ("qaqr", "1..4"), ("clc", "4")] {
        let r = gqtsp(&["verify", suite, "--range", range]);
        assert_eq!(r.code, exit::OK, "{suite}: {}{}", r.stdout, r.stderr);
    }
}

#[test]
fn verify_report_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let v = path(dir.path(), "v.json");
    assert_eq!(gqtsp(&["verify", "qaqr", "--range", "1..3", "-o", &v]).code, exit::OK);
    let doc = json(&v);
    assert_eq!(doc["passed"], true);
    assert!(!doc["cases"].as_array().unwrap().is_empty());
}

#[test]
fn qubits_table_matches_budgets() {
    let r = gqtsp(&["qubits", "--range", "4..8"]);
    assert_eq!(r.code, exit::OK);
    for total in ["23", "25", "31", "35", "45"] {
        assert!(r.stdout.contains(total), "{}", r.stdout);
    }
    let dir = tempfile::tempdir().unwrap();
    let q = path(dir.path(), "q.json");
    assert_eq!(gqtsp(&["qubits", "--range", "6", "-o", &q]).code, exit::OK);
    assert!(json(&q).to_string().contains("31"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = four_city_graph(dir.path());
    let s = path(dir.path(), "s.json");
    let mut seen = Vec::new();
    for _ in 0..2 {
        assert_eq!(gqtsp(&["solve", &g, "--seed", "5", "-o", &s]).code, exit::OK);
        seen.push((fs::read(&s).unwrap(), fs::read(format!("{s}.manifest.json")).unwrap()));
    }
    assert_eq!(seen[0], seen[1]);
}
