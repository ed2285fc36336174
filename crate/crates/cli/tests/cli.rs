use std::process::Command;

use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (Value, i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_matpatch"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap_or(-1), stdout)
}

fn run(args: &[&str]) -> (Value, i32) {
    let (v, code, _) = run_env(args, &[]);
    (v, code)
}

fn all_checks_pass(v: &Value) -> bool {
    v["checks"].as_object().expect("checks object").values().all(|b| b == &Value::Bool(true))
}

const F2A4: &str = r#"{"base":"Z/2","vars":["a"],"truncate":{"vars":["a"],"order":4}}"#;

#[test]
fn det_of_identity() {
    let m = r#"{"r":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
    let (v, code) = run(&["mat", "det", "--ring", "Z", "--matrix", m]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"det": "1", "checks": {}}));
}

#[test]
fn hensel_lift_example() {
    let (v, code) = run(&["hensel", "lift", "--ring", F2A4, "--f", "t^2 + t + a", "--g-bar", "t", "--h-bar", "t + 1"]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    assert_eq!(v["g"]["coeffs"], serde_json::json!(["a^2 + a", "1"]));
    assert_eq!(v["h"]["coeffs"], serde_json::json!(["a^2 + a + 1", "1"]));
}

#[test]
fn murthy_verify() {
    let (v, code) = run(&["umrow", "murthy", "--ell", "2", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["sum"], "1");
    assert_eq!(v["checks"]["bezout_sum_one"], true);
}

#[test]
fn output_is_byte_identical() {
    let args = ["umrow", "orbits", "--ring", "Z/6", "--r", "2"];
    let (_, _, a) = run_env(&args, &[]);
    let (_, _, b) = run_env(&args, &[]);
    assert_eq!(a, b);
    let (v, code) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(v["unimodular_rows"], 24);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 1);
}

#[test]
fn budget_env_caps_enumeration() {
    let (v, code, _) = run_env(&["umrow", "orbits", "--ring", "Z/6", "--r", "3"], &[("MATPATCH_BUDGET", "100")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "BudgetExceeded");
}

#[test]
fn exit_codes() {
    let (_, code) = run(&["mat", "det", "--ring", "Z", "--nonsense", "1"]);
    assert_eq!(code, 2);
    let (_, code) = run(&["mat", "det", "--ring", "Z", "--matrix", "{\"r\":"]);
    assert_eq!(code, 2);
    let (v, code) = run(&["ring", "normalize", "--ring", "Z[x]", "--expr", "x + q"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "UnknownVariable");
    let (v, code) = run(&["ring", "normalize", "--ring", "Z[x]", "--expr", "x + * 2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "SyntaxError");
}

#[test]
fn ring_normalize_and_text_format() {
    let ring = r#"{"base":"Z","vars":["a","x","y"],"relations":["x*y - a^2"]}"#;
    let (v, code) = run(&["ring", "normalize", "--ring", ring, "--expr", "x^2*y^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "a^4");
    let out = Command::new(env!("CARGO_BIN_EXE_matpatch"))
        .args(["--format", "text", "ring", "normalize", "--ring", ring, "--expr", "x*y + 1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("normal_form: a^2 + 1"), "{text}");
    assert!(text.contains("checks.reparse_fixed_point: true"), "{text}");
}

#[test]
fn whitehead_and_reduce() {
    let m = r#"{"r":2,"entries":[["1 + a","0"],["0","1 + a + a^2 + a^3"]]}"#;
    let (v, code) = run(&["mat", "whitehead", "--ring", F2A4, "--matrix", m]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    let (v, code) = run(&["factor", "reduce", "--ring", F2A4, "--matrix", m]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
}

#[test]
fn factor_subcommands() {
    let (v, code) = run(&["factor", "suslin", "--ring", "Z[b,d,g,t]", "--b", "b", "--d", "d", "--g", "g"]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    assert_eq!(v["matrix"]["entries"][0][0], "b*d*g*t + 1");

    let w = r#"{"r":2,"gens":[{"i":1,"j":2,"z":"x"},{"i":2,"j":1,"z":"1 + x"}]}"#;
    let split = r#"[["x","0"],["1","x"]]"#;
    let (v, code) = run(&["factor", "regroup", "--ring", "Z/3[x]", "--word", w, "--split", split]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));

    let comax = ["--f", "x", "--g", "1 - x", "--u", "1", "--v", "1"];
    let mut args = vec!["factor", "partfrac", "--ring", "Z[x]", "--num", "1", "--k", "1"];
    args.extend(comax);
    let (v, code) = run(&args);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));

    let w = r#"{"r":2,"gens":[{"i":1,"j":2,"z":"1"}]}"#;
    let mut args = vec!["factor", "zsplit2", "--ring", "Q[x]", "--word", w];
    args.extend(comax);
    let (v, code) = run(&args);
    assert_eq!(code, 0, "{v}");
    assert!(all_checks_pass(&v));
}

#[test]
fn hensel_subcommands() {
    let (v, code) = run(&["hensel", "resultant", "--ring", "Z/3", "--f", "t^2 + 1", "--g", "t + 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["resultant"], "2");
    assert!(all_checks_pass(&v));

    let (v, code) = run(&["hensel", "root", "--ring", F2A4, "--f", "t^2 + t + a"]);
    assert_eq!(code, 0);
    assert_eq!(v["root"], "a^2 + a");

    let (v, code) = run(&["hensel", "split", "--ring", F2A4, "--f", "a*t^2 + t"]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));

    let (v, code) = run(&["hensel", "overring-witness", "--ring", F2A4, "--alpha", "a^2", "--g", "x"]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    assert_eq!(v["checks"].as_object().unwrap().len(), 8);
}

#[test]
fn patch_subcommands() {
    let sq = r#"{"ambient":"Z/2[x,y]","i":["y"],"j":["x"]}"#;
    let (v, code) = run(&["patch", "square", "--square", sq]);
    assert_eq!(code, 0);
    assert_eq!(v["d"]["vars"], serde_json::json!(["x", "y"]));

    let murthy = r#"{"ambient":"Z/2[a,x,y,t]","i":["t"],"j":["t - (x*y - a^2)"]}"#;
    let sigma = r#"{"r":2,"entries":[["1","x"],["0","1"]]}"#;
    let (v, code) = run(&["patch", "idempotent", "--square", murthy, "--sigma", sigma]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    let zero: Vec<Vec<&str>> = vec![vec!["0"; 4]; 4];
    assert_eq!(v["residue"]["entries"], serde_json::json!(zero));

    let cert = r#"{"vars":["z1"],"sigma_prime":[["1","z1"],["0","1"]],"assign":{"z1":"x"}}"#;
    let (v, code) = run(&["patch", "factorize", "--square", murthy, "--sigma", sigma, "--cert", cert]);
    assert_eq!(code, 0, "{v}");
    assert!(all_checks_pass(&v));
    let (_, code) = run(&["patch", "factorize", "--square", murthy, "--sigma", sigma]);
    assert_eq!(code, 2);
}

#[test]
fn umrow_subcommands() {
    let maps = r#"[{"target":"Z/2","images":[]},{"target":"Z/3","images":[]}]"#;
    let (v, code) = run(&["umrow", "reduce", "--ring", "Z/6", "--row", r#"["2","3"]"#, "--maps", maps]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));

    let comp = r#"{"r":2,"entries":[["x","1"],["-1","0"]]}"#;
    let (v, code) = run(&[
        "umrow", "check", "--ring", "Z[x]", "--row", r#"["x","1"]"#, "--witness", r#"["0","1"]"#, "--completion", comp,
    ]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    let (v, code) = run(&["umrow", "check", "--ring", "Z[x]", "--row", r#"["x","2"]"#, "--witness", r#"["0","1"]"#]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "NotComaximal");
}

#[test]
fn pseudo_subcommands() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let cert = r#"{"vars":["z1","z2"],"sigma_prime":[["1 + z1*z2","z1"],["z2","1"]],"assign":{"z1":"x","z2":"x^2"}}"#;
    let path = format!("{dir}/cert.json");
    std::fs::write(&path, cert).unwrap();
    let good = r#"{"r":2,"entries":[["1 + x^3","x"],["x^2","1"]]}"#;
    let bad = r#"{"r":2,"entries":[["1","x"],["0","1"]]}"#;
    let (v, code) = run(&["pseudo", "verify", "--ring", "Z[x]", "--cert", &path, "--matrix", good]);
    assert_eq!((code, &v["valid"]), (0, &Value::Bool(true)));
    let (v, code) = run(&["pseudo", "verify", "--ring", "Z[x]", "--cert", &path, "--matrix", bad]);
    assert_eq!((code, &v["valid"]), (1, &Value::Bool(false)));

    let (v, code) = run(&["pseudo", "compose", "--ring", "Z[x]", "--cert", &path, "--with", cert]);
    assert_eq!(code, 0);
    assert_eq!(v["cert"]["vars"].as_array().unwrap().len(), 4);

    let w = r#"{"r":2,"gens":[{"i":1,"j":2,"z":"x"},{"i":2,"j":1,"z":"x"}]}"#;
    let (v, code) = run(&["pseudo", "fromword", "--ring", "Z[x]", "--word", w]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));

    let target = r#"{"base":"Z/2","vars":["a"],"truncate":{"vars":["a"],"order":4}}"#;
    let c = r#"{"vars":["z1"],"sigma_prime":[["1","z1"],["0","1"]],"assign":{"z1":"a"}}"#;
    let (v, code) = run(&["pseudo", "lift", "--ring", "Z/2[a]", "--target", target, "--cert", c]);
    assert_eq!(code, 0);
    assert_eq!(v["cert"]["assign"]["z1"], "a");

    let (v, code) = run(&["pseudo", "isotopy", "--ring", "Z[x]", "--cert", cert]);
    assert_eq!(code, 0);
    assert!(all_checks_pass(&v));
    assert_eq!(v["tau0"]["entries"], serde_json::json!([["1", "0"], ["0", "1"]]));
}
