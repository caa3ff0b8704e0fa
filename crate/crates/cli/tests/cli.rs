use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paramseries"))
        .args(args)
        .env_remove("PARAMSERIES_PRECISION")
        .output()
        .expect("spawn paramseries")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_zeta_two() {
    let o = run(&["eval", "zeta", "--s", "2", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let value = out.lines().find_map(|l| l.strip_prefix("value: ")).unwrap();
    assert!(value.starts_with("1.6449340668"), "{value}");
    // floor(256 log10 2) - 5 = 72 significant digits
    assert_eq!(value.chars().filter(char::is_ascii_digit).count(), 72);
}

#[test]
fn eval_gamma_json_schema() {
    let o = run(&["eval", "gamma-loggamma", "--mu", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["est_tail", "mu", "params", "precision_bits", "representation", "terms", "validity", "value"]
    );
    assert!(v["value"].as_str().unwrap().starts_with("0.5772156649"));
    assert!(v["terms"].is_u64());
    assert_eq!(v["precision_bits"], 256);
    assert_eq!(v["validity"], "safe");
    assert!(v["est_tail"].is_string());
}

#[test]
fn domain_error_exits_two() {
    let o = run(&["eval", "zeta", "--s", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("s > 1"));
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(run(&["eval", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "zeta", "--s", "2", "--precision", "32"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn not_converged_exits_three() {
    let o = run(&["eval", "pi-amore", "--max-terms", "20"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("converged: false"));
}

#[test]
fn verify_selected_check() {
    let o = run(&["verify", "--only", "binomial-identity", "--n-max", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS binomial-identity"));
}

#[test]
fn verify_detects_injected_fault() {
    let o = run(&["verify", "--only", "amore-pi,binomial-identity", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL amore-pi"), "{out}");
    assert!(out.contains("PASS binomial-identity"), "{out}");
}

#[test]
fn sweep_rows_follow_grid() {
    let args = ["sweep", "pi-amore", "--mu-grid", "0.25,0.5,1", "--tolerance", "1e-10"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "mu,terms_to_tolerance,final_error,tolerance");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0.25") && lines[3].starts_with("1.0"));
    // same config, same bytes, regardless of thread scheduling
    assert_eq!(stdout(&run(&args)), out);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(stdout(&run(&seq)), out);
}

#[test]
fn sweep_empty_grid_is_header_only() {
    let o = run(&["sweep", "pi-amore", "--mu-grid", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "mu,terms_to_tolerance,final_error,tolerance\n");
}

#[test]
fn sweep_invalid_mu_exits_two_without_output() {
    let dir = std::env::temp_dir().join(format!("paramseries-sweep-{}", std::process::id()));
    let path = dir.to_string_lossy().to_string();
    let o = run(&["sweep", "pi-amore", "--mu-grid", "1,-0.5", "--out", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!dir.exists());
}

#[test]
fn sweep_json() {
    let o = run(&["sweep", "pi-amore", "--mu-grid", "1", "--tolerance", "1e-8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = &v["records"][0];
    assert!(rec["mu"].is_string() && rec["final_error"].is_string());
    assert!(rec["terms_to_tolerance"].is_u64());
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_paramseries"))
        .args(["eval", "zeta", "--s", "3", "--format", "json"])
        .env("PARAMSERIES_PRECISION", "128")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["precision_bits"], 128);
    assert!(v["value"].as_str().unwrap().starts_with("1.20205690315959"));
}

#[test]
fn constants_blocks() {
    let o = run(&["constants", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let blocks = v["constants"].as_array().unwrap();
    let names: Vec<&str> = blocks.iter().map(|b| b["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["pi", "gamma", "M"]);
    for b in blocks {
        assert!(b["routes"].as_array().unwrap().len() >= 2);
        let spread: f64 = b["max_pairwise_delta"].as_str().unwrap().parse().unwrap();
        assert!(spread <= 1e-10, "{}: {spread}", b["name"]);
    }
    assert_eq!(blocks[2]["headline"]["stated"], "1.257746");
    assert!(blocks[2]["headline"]["rounded"].is_string());
}
