use std::io::Write;
use std::process::{Command, Output, Stdio};

use findim::families::{generate, FamilySpec};
use findim::io::parse_edge_list;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_findim"));
    c.env_remove("FINDIM_EXACT_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn findim")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn findim");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn error_code(out: &Output) -> String {
    assert_eq!(out.status.code(), Some(2), "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stderr).expect("json error");
    v["error"]["code"].as_str().unwrap().to_string()
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const LN2_LN3: f64 = 0.630929753571;

#[test]
fn dim_of_p4() {
    let dir = TempDir::new().unwrap();
    let p4 = file(&dir, "p4.edges", "a b\nb c\nc d\n");
    let v = json(&run(&["dim", "--graph", &p4]));
    assert_eq!(v["kind"], "finite");
    assert_eq!(v["value"].as_f64().unwrap(), LN2_LN3);
    assert_eq!(v["N"], 2);
    assert_eq!(v["diameter"].as_f64().unwrap(), 3.0);
    assert_eq!(v["symbolic"], "ln(2)/ln(3)");
    assert_eq!(v["covering"], serde_json::json!([["a", "b"], ["c", "d"]]));
}

#[test]
fn generated_lpq_piped_into_dim() {
    let g = run(&["gen", "--family", "lpq", "--p", "3", "--q", "4"]);
    assert!(g.status.success());
    let v = json(&run_stdin(&["dim"], &String::from_utf8(g.stdout).unwrap()));
    assert_eq!(v["value"].as_f64().unwrap(), LN2_LN3);
}

#[test]
fn weighted_graph_uses_root_finder() {
    let v = json(&run_stdin(&["dim"], "0 1\n1 2 2\n2 3\n"));
    assert_eq!(v["method"], "fh");
    assert_eq!(v["diameter"].as_f64().unwrap(), 4.0);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 2f64.ln() / 4f64.ln()).abs() < 1e-9);
    assert!((v["box_value"].as_f64().unwrap() - value).abs() < 1e-7);
    let fb = json(&run_stdin(&["dim", "--method", "fb"], "0 1\n1 2 2\n2 3\n"));
    assert_eq!(fb["method"], "fb");
}

#[test]
fn dim_special_cases() {
    assert_eq!(json(&run_stdin(&["dim"], "solo\n"))["kind"], "zero");
    let k5 = run(&["gen", "--family", "complete", "--n", "5"]);
    let v = json(&run_stdin(&["dim"], &String::from_utf8(k5.stdout).unwrap()));
    assert_eq!(v["kind"], "infinite");
    assert!(v.get("value").is_none());
}

#[test]
fn uniform_space_is_not_intrinsic() {
    let dir = TempDir::new().unwrap();
    let body: String = (0..5)
        .map(|i| (0..5).map(|j| if i == j { "0" } else { "1" }).collect::<Vec<_>>().join(",") + "\n")
        .collect();
    let m = file(&dir, "uniform5.csv", &body);
    let v = json(&run(&["intrinsic-check", "--matrix", &m]));
    assert_eq!(v["intrinsic"], false);
    assert_eq!(v["segment_graph"], Value::Null);
}

#[test]
fn p4_metric_is_intrinsic() {
    let v = json(&run_stdin(&["intrinsic-check"], "0,1,2,3\n1,0,1,2\n2,1,0,1\n3,2,1,0\n"));
    assert_eq!(v["intrinsic"], true);
    assert_eq!(v["max_count"], 3);
    assert_eq!(v["segment_graph"]["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_2_with_codes() {
    assert_eq!(error_code(&run_stdin(&["dim"], "0,1,3\n1,0,1\n3,1,0\n")), "E_TRIANGLE");
    assert_eq!(error_code(&run_stdin(&["dim"], "0,1\n2,0\n")), "E_ASYMMETRIC");
    assert_eq!(error_code(&run_stdin(&["dim"], "a b\nc d\n")), "E_DISCONNECTED");
    assert_eq!(error_code(&run_stdin(&["dim"], "a b x\n")), "E_PARSE");
    assert_eq!(error_code(&run(&["dim", "/nonexistent/file.edges"])), "E_IO");
    assert_eq!(error_code(&run_stdin(&["cover", "--eta", "0.5"], "0 1\n1 2\n")), "E_ETA_BELOW_NABLA");
    assert_eq!(error_code(&run(&["gen", "--family", "lpq", "--p", "1", "--q", "3"])), "E_INVALID_FAMILY");
    assert_eq!(error_code(&run(&["construct-dim", "--interval", "3/2", "3/2"])), "E_INTERVAL_TOO_TIGHT");
    assert_eq!(error_code(&run_stdin(&["dim", "--tol", "0"], "0 1\n")), "E_INVALID_PARAMETER");
    assert_eq!(error_code(&run_stdin(&["clique-cover"], "0,1\n1,0\n")), "E_USAGE");
}

#[test]
fn exact_cap_from_environment() {
    let weighted = "0 1\n1 2 2\n2 3\n3 4\n";
    let out = bin()
        .args(["dim"])
        .env("FINDIM_EXACT_CAP", "3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(weighted.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(error_code(&out), "E_TOO_LARGE");
    assert!(json(&run_stdin(&["dim", "--exact-cap", "5"], weighted))["value"].is_number());
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--theorem", "oracle", "--n", "4", "--samples", "10", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 5);
    let seq = run(&["sweep", "--theorem", "oracle", "--n", "4", "--samples", "10", "--seed", "5", "--sequential"]);
    assert_eq!(seq.stdout, a.stdout);
}

#[test]
fn generated_graphs_roundtrip_through_edge_lists() {
    let cases: Vec<(Vec<&str>, FamilySpec)> = vec![
        (vec!["--family", "complete", "--n", "4"], FamilySpec::Complete { n: 4 }),
        (vec!["--family", "path", "--n", "5"], FamilySpec::Path { n: 5 }),
        (vec!["--family", "star", "--n", "6"], FamilySpec::Star { n: 6 }),
        (vec!["--family", "cycle", "--n", "12"], FamilySpec::Cycle { n: 12 }),
        (
            vec!["--family", "lpq", "--p", "3", "--q", "3", "--bridges", "0-0,1-0"],
            FamilySpec::Lpq { p: 3, q: 3, bridges: Some(vec![(0, 0), (1, 0)]) },
        ),
        (
            vec!["--family", "double-star", "--n", "2", "--m", "3", "--x", "0.3"],
            FamilySpec::DoubleStar { n: 2, m: 3, x: 0.3 },
        ),
        (vec!["--family", "path-plus-star", "--m", "3", "--k", "4"], FamilySpec::PathPlusStar { m: 3, c: 2 }),
    ];
    for (args, params) in cases {
        let mut full = vec!["gen"];
        full.extend(&args);
        let out = run(&full);
        assert!(out.status.success(), "{args:?}");
        let parsed = parse_edge_list(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert_eq!(parsed, generate(&params).unwrap(), "{args:?}");
    }
}

#[test]
fn lpq_variant_stream() {
    let out = run(&["gen", "--family", "lpq", "--p", "2", "--q", "2", "--variants", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        let v = json(&run_stdin(&["dim"], line));
        assert_eq!(v["value"].as_f64().unwrap(), LN2_LN3);
    }
}

#[test]
fn cover_and_clique_cover() {
    let v = json(&run_stdin(&["cover", "--s", "1"], "a b\nb c\n"));
    assert_eq!(v["weight"].as_f64().unwrap(), 2.0);
    assert_eq!(v["optimal"], true);
    let g = json(&run_stdin(&["cover", "--s", "1", "--greedy"], "a b\nb c\n"));
    assert_eq!(g["optimal"], false);
    assert!(g["weight"].as_f64().unwrap() >= 2.0);
    let star = run(&["gen", "--family", "star", "--n", "6"]);
    let v = json(&run_stdin(&["clique-cover"], &String::from_utf8(star.stdout).unwrap()));
    assert_eq!(v["theta"], 5);
}

#[test]
fn products() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.edges", "0 1\n1 2\n");
    let p4 = file(&dir, "p4.edges", "0 1\n1 2\n2 3\n");
    let c4 = file(&dir, "c4.json", r#"{"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]]}"#);
    let v = json(&run(&["product", "--left", &p3, "--right", &p3]));
    assert_eq!(v["product"]["value"].as_f64().unwrap(), 2.0);
    assert_eq!(v["product"]["N"], 4);
    assert_eq!(v["dim_subadditive"], true);
    assert_eq!(v["profile_check"]["pass"], true);
    let v = json(&run(&["product", "--left", &p3, "--right", &p4]));
    assert_eq!(v["product"]["diameter"], 3);
    let v = json(&run(&["product", "--left", &p4, "--right", &c4, "--kind", "cartesian"]));
    assert_eq!(v["product"]["value"].as_f64().unwrap(), round12(8f64.ln() / 5f64.ln()));
    assert_eq!(v["N_submultiplicative"], false);
    assert_eq!(v["profile_check"]["product"]["big_delta"].as_f64().unwrap(), 5.0);
    let emitted = run(&["product", "--left", &p3, "--right", &p3, "--emit"]);
    let g = parse_edge_list(&String::from_utf8(emitted.stdout).unwrap()).unwrap();
    assert_eq!(g.len(), 9);
    assert_eq!(g.edge_count(), 20);
}

fn round12(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap()
}

#[test]
fn construct_dim() {
    let v = json(&run(&["construct-dim", "--target", "1"]));
    assert_eq!(v["construction"], "double-star");
    assert!(v["abs_error"].as_f64().unwrap() <= 1e-6);
    let v = json(&run(&["construct-dim", "--interval", "1", "1.585"]));
    assert_eq!(v["in_interval"], true);
    let d = v["verified"]["value"].as_f64().unwrap();
    assert!((1.0..=1.585).contains(&d));
    let edges = run(&["construct-dim", "--interval", "1", "2", "--emit"]);
    assert!(parse_edge_list(&String::from_utf8(edges.stdout).unwrap()).unwrap().is_tree());
}

#[test]
fn sweeps() {
    let v = json(&run(&["sweep", "--theorem", "extremal", "--n", "4"]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["checked"], 37);
    let v = json(&run(&["sweep", "--theorem", "trees", "--n", "6"]));
    assert_eq!(v["pass"], true);
    let v = json(&run(&["sweep", "--theorem", "intrinsic", "--n", "4", "--samples", "3"]));
    assert_eq!(v["pass"], true);
}

#[test]
fn props_and_table_output() {
    let v = json(&run_stdin(&["props"], "0 1\n1 2 3\n"));
    assert_eq!(v["delta"].as_f64().unwrap(), 1.0);
    assert_eq!(v["nabla"].as_f64().unwrap(), 3.0);
    assert_eq!(v["diameter"].as_f64().unwrap(), 4.0);
    assert_eq!(v["locally_uniform"], false);
    assert_eq!(v["tree"], true);
    let t = run_stdin(&["props", "--output", "table"], "0 1\n1 2\n");
    let text = String::from_utf8(t.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("locally_uniform") && l.ends_with("true")));
}
