use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxnorm")).args(args).env_remove("COXNORM_ORDER_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn group_info() {
    let o = run(&["group-info", "--group", "A3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["order"], 24);
    assert_eq!(v["positive_roots"], 6);
    assert_eq!(v["max_length"], 6);
    assert_eq!(v["reflections"], 6);
    assert_eq!(json_lines(&run(&["group-info", "--group", "I2:3"]))[0]["order"], 6);
    assert_eq!(run(&["group-info", "--group", "Z9"]).status.code(), Some(2));
}

#[test]
fn order_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_coxnorm"))
        .args(["group-info", "--group", "A3"])
        .env("COXNORM_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["group-info", "--group", "A3", "--order-cap", "24"]).status.code(), Some(0));
}

fn vertex_count(doc: &Value) -> usize {
    doc["parts"].as_array().unwrap().iter().map(|p| p["vertices"].as_array().unwrap().len()).sum()
}

#[test]
fn build_presets_and_custom_groups() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("c6.dot");
    let o = run(&["build", "--preset", "c6", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["schema"], "coxnorm.graph/v1");
    assert_eq!(vertex_count(&doc), 6);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("--"));

    let doc: Value = serde_json::from_str(&stdout(&run(&["build", "--preset", "q3_hypercube"]))).unwrap();
    assert_eq!(vertex_count(&doc), 8);

    let out = dir.path().join("k4.json");
    let o = run(&["build", "--group", "A3", "--s1", "1,2", "--s2", "0,2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(vertex_count(&doc), 10);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);

    let o = run(&["build", "--preset", "tetra_flag_3graph", "--dot", dir.path().join("x.dot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["build", "--preset", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--group", "A3", "--s1", "1,x"]).status.code(), Some(2));
}

#[test]
fn percolate_presets() {
    let o = run(&["percolate", "--preset", "c6"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines[0]["steps"].as_array().unwrap().len(), 6);
    assert_eq!(lines[1]["verdict"], "pass");
    assert_eq!(lines[1]["annotation"], "norming");
    assert_eq!(lines[1]["seed"], 0);
    let lines = json_lines(&run(&["percolate", "--preset", "k1_4"]));
    assert_eq!(lines[1]["annotation"], "weakly norming");
}

#[test]
fn corrupted_certificates_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["percolate", "--preset", "subdivided_k4", "--out", p]).status.code(), Some(0));
    let o = run(&["percolate", "--verify", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let original = doc.clone();
    doc["steps"][3]["reflection_word"] = serde_json::json!([0, 1]);
    doc["steps"][9]["reflection_word"] = serde_json::json!([5]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = run(&["percolate", "--verify", p]);
    assert_eq!(o.status.code(), Some(1));
    let report = &json_lines(&o)[0];
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["sizes"]["first_invalid_step"], 3);
    assert!(report["violations"][0].as_str().unwrap().starts_with("step 3"));

    let mut doc = original;
    doc["steps"].as_array_mut().unwrap().truncate(4);
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = run(&["percolate", "--verify", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("replay reaches"));

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["percolate", "--verify", p]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "holder", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());

    let o = run(&["verify", "--suite", "sidorenko", "--trials", "100", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 1200);
    assert!(lines.iter().all(|l| l["verdict"] == "pass" && l["seed"] == 0));

    let o = run(&["verify", "--suite", "sandwich", "--trials", "200", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o).len(), 400);

    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "complex", "--preset", "k1_4", "--trials", "2"]).status.code(), Some(2));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--suite", "triangle", "--preset", "c6", "--trials", "20", "--seed", "7"];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json_lines(&a).iter().all(|l| l["seed"] == 7));
    let c = run(&["verify", "--suite", "triangle", "--preset", "c6", "--trials", "20", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn failing_checks_exit_one() {
    // a negative slack turns every tight or near-tight comparison into a failure
    let o = run(&["verify", "--suite", "domination", "--trials", "5", "--tol=-10"]);
    assert_eq!(o.status.code(), Some(1));
}
