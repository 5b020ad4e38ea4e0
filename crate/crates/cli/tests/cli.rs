use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_snowflake"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--output", "machine"]);
    let o = run(&all);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("json document"))
}

#[test]
fn equitable_verdicts() {
    let (c, doc) = machine(&["equitable", "-p", "2", "-q", "1"]);
    assert_eq!(c, 1);
    assert_eq!(doc["result"]["verdict"], "Infeasible");
    assert_eq!(doc["schema_version"], 1);
    let (c, doc) = machine(&["equitable", "-p", "1", "-q", "2", "--search"]);
    assert_eq!(c, 0);
    assert_eq!(doc["result"]["verdict"], "Feasible");
    assert_eq!(doc["result"]["valid"], true);
    assert!(doc["result"]["search"].is_array());
}

#[test]
fn cover_report() {
    let o = run(&["cover", "-p", "3", "-q", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("index 2"));
    assert!(!stdout(&o).contains("FAIL"));
    let (c, doc) = machine(&["cover", "-p", "5", "-q", "2", "--emit", "presentation"]);
    assert_eq!(c, 0);
    assert_eq!(doc["result"]["generators"].as_array().unwrap().len(), 4);
    assert_eq!(doc["result"]["relators"].as_array().unwrap().len(), 3);
    let o = run(&["cover", "-p", "3", "-q", "1", "--emit", "table", "--output", "csv"]);
    assert_eq!(stdout(&o), "coset,a,a^-1,b,b^-1,t,t^-1\n0,1,1,0,0,0,0\n1,0,0,1,1,1,1\n");
}

#[test]
fn cover_limit_is_exhaustion() {
    let o = run(&["--max-cosets", "1", "cover", "-p", "3", "-q", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn word_problem() {
    let o = run(&["wp", "--group", "G", "-p", "3", "-q", "1", "--word", "a b a^-1 b^-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("trivial"));
    let (c, doc) = machine(&["wp", "--group", "G", "-p", "3", "-q", "1", "--word", "s^-1 b s"]);
    assert_eq!(c, 1);
    assert_eq!(doc["result"]["syllables"], 2);
    let (c, _) = machine(&["wp", "--group", "R", "-p", "3", "-q", "1", "--word", "x^2 y^-2"]);
    assert_eq!(c, 0);
    let (c, _) = machine(&["wp", "--group", "klein", "-p", "3", "-q", "1", "--word", "t^-1 a^2 t", "--strategy", "random"]);
    assert_eq!(c, 1);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["bogus"])), 3);
    assert_eq!(code(&run(&["wp", "--group", "G", "--word", "a c"])), 3);
    assert_eq!(code(&run(&["present", "--family", "R"])), 3);
    assert_eq!(code(&run(&["alpha", "-p", "0", "-q", "1"])), 3);
    assert_eq!(code(&run(&["--max-states", "0", "alpha", "-p", "1", "-q", "1"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    let (c, doc) = machine(&["density", "--rho", "1", "--eps", "0.1"]);
    assert_eq!(c, 3);
    assert!(doc["result"]["error"].is_string());
}

#[test]
fn present_families() {
    let o = run(&["present", "--family", "R", "--params", "2,2,2,5"]);
    assert_eq!(stdout(&o), "gens: x y t\nx^2 y^-2\nt^-1 x^2 t y^-1 x^-5\n");
    let (_, doc) = machine(&["present", "--family", "G", "-p", "3", "-q", "1"]);
    assert_eq!(doc["result"]["generators"], serde_json::json!(["a", "b", "s", "t"]));
}

#[test]
fn area_and_profile() {
    let (c, doc) = machine(&["area", "--family", "Z2", "--word", "[a^2, b]"]);
    assert_eq!((c, doc["result"]["area"].as_u64()), (0, Some(2)));
    let (c, _) = machine(&["area", "--family", "Z2", "--word", "a b"]);
    assert_eq!(c, 1);
    let o = run_env(&["area", "--family", "Z2", "--word", "[a^3, b^3]"], &[("SNOWFLAKE_MAX_STATES", "10")]);
    assert_eq!(code(&o), 2);
    let o = run(&["profile", "--family", "Z2", "--maxlen", "8", "--output", "csv"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(rows[0], "n,max_area,words_examined");
    assert_eq!(rows.len(), 9);
    assert!(rows[8].starts_with("8,4,"));
}

#[test]
fn exponents() {
    let (_, doc) = machine(&["alpha", "-p", "3", "-q", "1"]);
    assert!((doc["result"]["alpha"].as_f64().unwrap() - 6f64.log2()).abs() < 1e-12);
    let (c, doc) = machine(&["density", "--rho", "3", "--eps", "0.01"]);
    assert_eq!(c, 0);
    let (p, q) = (doc["result"]["p"].as_f64().unwrap(), doc["result"]["q"].as_f64().unwrap());
    assert!((2.0 * (2.0 * p / q).log2() - 3.0).abs() < 0.01);
    let (c, _) = machine(&["density", "--rho", "3", "--eps", "1e-9", "--q-max", "3"]);
    assert_eq!(c, 1);
    let (c, doc) = machine(&["witness", "-p", "3", "-q", "1", "-k", "1"]);
    assert_eq!(c, 0);
    assert_eq!(doc["result"]["word"], "s^-1 a s t^-1 a t");
    assert_eq!(doc["result"]["exponent"], "6");
}

#[test]
fn seeded_output_is_reproducible() {
    let base = ["confluence", "--group", "G", "-p", "2", "-q", "1", "--count", "300", "--output", "machine"];
    let seeded = [&base[..], &["--seed", "7"]].concat();
    let (a, b) = (run(&seeded), run(&seeded));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(run_env(&base, &[("SNOWFLAKE_SEED", "7")]).stdout, a.stdout);
    assert_ne!(run(&base).stdout, a.stdout);
}
