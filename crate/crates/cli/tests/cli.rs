use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eschenburg"))
        .args(args)
        .env_remove("ESCHENBURG_THREADS")
        .env_remove("ESCHENBURG_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_e5() {
    let o = run(&["analyze", "--p", "1,1,5", "--q", "0,0,7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("h = 11"));
    assert!(text.contains("coho-one(5)"));
    let v = json(&["analyze", "--p", "1,1,5", "--q", "0,0,7", "--json"]);
    assert_eq!(v["space"]["h"], 11);
    assert_eq!(v["space"]["manifold"], true);
    assert_eq!(v["space"]["positively_curved"], true);
}

#[test]
fn analyze_orbifold_has_one_circle() {
    let v = json(&["analyze", "--p", "5,3,-5", "--q", "2,1,0", "--json"]);
    assert_eq!(v["space"]["manifold"], false);
    let circles: Vec<_> =
        v["space"]["self_locus"]["circles"].as_array().unwrap().iter().filter(|c| c["singular"] == true).collect();
    assert_eq!(circles.len(), 1);
    assert_eq!(circles[0]["order"], 3);
}

#[test]
fn trace_imbalance_is_a_usage_error() {
    let o = run(&["analyze", "--p", "1,2,3", "--q", "1,2,4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trace imbalance"));
    assert_eq!(run(&["analyze", "--p", "1,x,3", "--q", "0,0,6"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--p", "1,2", "--q", "0,0,3"]).status.code(), Some(2));
}

#[test]
fn one_point_none_exits_one() {
    let o = run(&["one-point", "--p", "1,1,5", "--q", "0,0,7"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn alpha_h1_holds() {
    let v = json(&["alpha", "--p", "8,3,0", "--q", "7,5,-1", "--json"]);
    assert_eq!(v["h"], 1);
    assert_eq!(v["predicate"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 24);
}

#[test]
fn construct_with_provenance() {
    let v = json(&["construct", "--p", "1,1,5", "--q", "0,0,7", "--sigma", "id", "--eps", "1,1", "--s", "1", "--json"]);
    assert_eq!(v["witness"]["a"], serde_json::json!([1, 5, 1]));
    assert_eq!(v["witness"]["b"], serde_json::json!([5, 2, 0]));
    assert_eq!(v["witness"]["provenance"]["sigma"], "id");
    assert_eq!(v["locus"]["summary"]["singular_faces"], 0);
    let bad = run(&["construct", "--p", "3,2,1", "--q", "4,2,0", "--sigma", "(13)", "--eps", "1,1", "--s", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["analyze", "--p", "1,1,5", "--q", "0,0,7", "--a", "0,1,1", "--b", "0,0,2", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let scan = ["scan", "--hmax", "200", "--json"];
    let one = run(&scan).stdout;
    let four = run(&["scan", "--hmax", "200", "--json", "--threads", "4"]).stdout;
    assert_eq!(one, four);
}

#[test]
fn scan_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = run(&["scan", "--hmax", "300", "--threads", "4", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("spaces:"));
    let lines = std::fs::read_to_string(&out).unwrap();
    let v = json(&["scan", "--hmax", "300", "--json"]);
    assert_eq!(lines.lines().count() as u64, v["totals"]["spaces"].as_u64().unwrap());
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert!(first["h"].as_u64().unwrap() <= 300);
}

#[test]
fn config_file_defaults_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "convention = \"distinct\"\nthreads = 2\n").unwrap();
    let from_cfg = json(&["--config", cfg.to_str().unwrap(), "scan", "--hmax", "100", "--json"]);
    assert_eq!(from_cfg["convention"], "transpose-distinct");
    let flag =
        json(&["--config", cfg.to_str().unwrap(), "scan", "--hmax", "100", "--json", "--convention", "identified"]);
    assert_eq!(flag["convention"], "transpose-identified");
    assert_eq!(from_cfg["totals"]["spaces"].as_u64().unwrap(), 2 * flag["totals"]["spaces"].as_u64().unwrap());
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "scan", "--hmax", "10"]).status.code(), Some(2));
}

#[test]
fn verify_reports_without_failing() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify", "--json"]);
    let items = v["items"].as_array().unwrap();
    let status = |id: &str| items.iter().find(|i| i["id"] == id).unwrap()["status"].clone();
    assert_eq!(status("coho2-1-2-3"), "match");
    assert_eq!(status("coho1-d5-a0,1,1-b0,0,2"), "match");
    assert_eq!(status("coho1-d5-a0,-1,1-b0,0,0"), "mismatch");
    assert_eq!(v["counts"]["unexpected"], 0);
    assert_eq!(run(&["verify", "--strict"]).status.code(), Some(0));
}

#[test]
fn verify_strict_gates_on_expected_matches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.toml");
    std::fs::write(
        &path,
        "[[item]]\nid = \"wrong\"\nkind = \"space\"\nclaim = \"x\"\np = [1, 1, 5]\nq = [0, 0, 7]\n[item.expect]\nh = 13\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["verify", "--corpus", p]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--corpus", p, "--strict"]).status.code(), Some(1));
}

#[test]
fn oracle_subcommands() {
    let v = json(&["oracle", "lattice", "--v", "2,0", "--w", "1,3", "--json"]);
    assert_eq!(v["points"], 6);
    assert_eq!(v["minor_gcd"], 6);
    let o = run(&["oracle", "isotropy", "--p", "1,1,5", "--q", "0,0,7", "--a", "0,1,1", "--b", "0,0,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all orders agree"));
    assert!(stdout(&run(&["oracle", "box", "--hmax", "11"])).contains("spaces with h <= 11"));
}

#[test]
fn export_dot_graph() {
    let o = run(&["export-dot", "--p", "1,2,3", "--q", "0,0,6", "--a", "0,0,0", "--b", "1,-1,0"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph singular_locus"));
    assert_eq!(dot.matches(" -- ").count(), 9);
    let t = run(&["export-dot", "--p", "3,2,1", "--q", "4,2,0", "--a", "1,1,0", "--b", "2,0,0", "--torus"]);
    assert!(t.status.success());
}
