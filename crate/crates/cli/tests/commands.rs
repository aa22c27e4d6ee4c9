use std::path::PathBuf;

use cutpoint_cli::{parse_automaton, run_command, CommandOutcome};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cutpoint-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> CommandOutcome {
    run_command(std::iter::once("cutpoint").chain(args.iter().copied()))
}

fn construct(name: &str, args: &[&str]) -> PathBuf {
    let mut argv = vec!["construct"];
    argv.extend_from_slice(args);
    let out = run(&argv);
    assert_eq!(out.exit_code, 0, "{}", out.diagnostics);
    scratch(name, &out.report)
}

fn p(path: &PathBuf) -> &str {
    path.to_str().unwrap()
}

const SWAP_PFA: &str = r#"{
    "model": "pfa", "states": 2, "alphabet": ["a"], "scalar": "rational",
    "transitions": {"a": [["0", "1"], ["1", "0"]]},
    "initial": 1, "final": ["0", "1"]
}"#;

#[test]
fn enum_px_half() {
    let f = construct("px_half.json", &["px", "--x", "1/2"]);
    let out = run(&["enum", p(&f), "--cutpoint", "2/5", "--mode", "strict", "--max", "4"]);
    assert_eq!((out.exit_code, out.report.as_str()), (0, "00101\n"));
}

#[test]
fn classify_swap_pfa() {
    let f = scratch("swap.json", SWAP_PFA);
    let out = run(&["classify-2pfa", p(&f), "--cutpoint", "1/2"]);
    assert_eq!(out.exit_code, 0, "{}", out.diagnostics);
    assert_eq!(out.report.lines().next(), Some("CoEven"));
    let out = run(&["--json", "classify-2pfa", p(&f), "--cutpoint", "1/2"]);
    let v: serde_json::Value = serde_json::from_str(&out.report).unwrap();
    assert_eq!(v["language"], "CoEven");
}

#[test]
fn separate_rotations() {
    let f = construct("rot21.json", &["rotation", "--triple", "2,1"]);
    let out = run(&["separate", p(&f), "--cutpoint-a", "1/10", p(&f), "--cutpoint-b", "1/5", "--max", "100"]);
    assert_eq!(out.exit_code, 0, "{}", out.diagnostics);
    assert_eq!(out.report.lines().next(), Some("m=12"));
    assert!(out.report.contains("32125393/244140625"));
    let out = run(&["separate", p(&f), "--cutpoint-a", "1/10", p(&f), "--cutpoint-b", "1/5", "--max", "11"]);
    assert_eq!(out.exit_code, 3);
}

#[test]
fn csv_px_half() {
    let f = construct("px_half_csv.json", &["px", "--x", "1/2"]);
    let out = run(&["csv", p(&f), "--max", "2"]);
    assert_eq!(out.report, "m,value_exact,value_float\n0,0,0.0\n1,0,0.0\n2,1,1.0\n");
    let f = construct("modn4.json", &["modn", "--n", "4"]);
    let out = run(&["csv", p(&f), "--max", "0"]);
    assert_eq!(out.report, "m,value_exact,value_float\n0,,1.0\n");
}

#[test]
fn eval_and_trace() {
    let f = construct("px_half_eval.json", &["px", "--x", "1/2"]);
    let out = run(&["eval", p(&f), "--word", "aa"]);
    assert_eq!(out.report, "f(aa) = 1 (1.0)\n");
    let out = run(&["--json", "eval", p(&f), "--length", "2", "--trace"]);
    let v: serde_json::Value = serde_json::from_str(&out.report).unwrap();
    assert_eq!(v["value"], "1");
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 3);
    assert_eq!(trace[2]["vector"], serde_json::json!(["0", "0", "1"]));
    let r = construct("rot21_mc.json", &["rotation", "--triple", "2,1", "--model", "mcqfa"]);
    let out = run(&["eval", p(&r), "--word", "a"]);
    assert!(out.report.starts_with("f(a) = 9/25"), "{}", out.report);
    let out = run(&["eval", p(&r), "--word", "b"]);
    assert_eq!(out.exit_code, 2);
}

#[test]
fn construct_outputs_parse_and_validate() {
    for args in [
        vec!["rotation", "--triple", "2,1"],
        vec!["rotation", "--triple", "4,3", "--model", "mcqfa"],
        vec!["px", "--x", "1/4"],
        vec!["px", "--x", "0.3"],
        vec!["modn", "--n", "6"],
    ] {
        let f = construct("c.json", &args);
        let text = std::fs::read_to_string(&f).unwrap();
        assert!(parse_automaton(&text).is_ok(), "{args:?}");
        assert_eq!(run(&["validate", p(&f)]).exit_code, 0);
    }
    assert_eq!(run(&["construct", "px", "--x", "3/4"]).exit_code, 2);
    assert_eq!(run(&["construct", "rotation", "--triple", "3,1"]).exit_code, 2);
}

#[test]
fn invalid_and_malformed_documents() {
    let f = scratch(
        "bad_sum.json",
        r#"{"model": "pfa", "states": 2, "alphabet": ["a"], "scalar": "rational",
            "transitions": {"a": [["0.5", "0"], ["0.4", "1"]]}, "initial": 1, "final": ["0", "1"]}"#,
    );
    let out = run(&["validate", p(&f)]);
    assert_eq!(out.exit_code, 1);
    assert!(out.diagnostics.contains("transition 'a'"), "{}", out.diagnostics);
    let out = run(&["--json", "eval", p(&f), "--word", "a"]);
    let v: serde_json::Value = serde_json::from_str(&out.report).unwrap();
    assert_eq!(v["exit_code"], 1);
    assert!(!v["violations"].as_array().unwrap().is_empty());

    let f = scratch("garbage.json", "{ not json");
    assert_eq!(run(&["eval", p(&f), "--word", ""]).exit_code, 2);
    assert_eq!(run(&["eval", "/nonexistent/file.json", "--word", ""]).exit_code, 2);
}

#[test]
fn usage_errors() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.exit_code, 2);
    assert!(out.diagnostics.contains("Usage"), "{}", out.diagnostics);
    assert_eq!(run(&[]).exit_code, 2);
    assert_eq!(run(&["enum", "x.json", "--cutpoint", "1/2", "--mode", "sideways", "--max", "3"]).exit_code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.exit_code, 0);
    assert!(help.report.contains("classify-2pfa"));
}

#[test]
fn one_state_commands() {
    let out = run(&["decompose-1gfa", "--numbers", "a=1/2,b=2", "--cutpoint", "1", "--direction", "gt"]);
    assert_eq!(out.exit_code, 0, "{}", out.diagnostics);
    assert_eq!(out.report, "Sol({a,b}; a:log 2, b:log 1/2; log 1) & Par({a,b}, {}, 0)\n");

    let json = run(&["--json", "decompose-1gfa", "--numbers", "a=-1/2,b=2,c=0", "--cutpoint", "-1", "--direction", "lt"]);
    let desc = scratch("desc.json", &json.report);
    let built = run(&["build-1gfa", p(&desc)]);
    assert_eq!(built.exit_code, 0, "{}", built.diagnostics);
    let built_json = run(&["--json", "build-1gfa", p(&desc)]);
    let v: serde_json::Value = serde_json::from_str(&built_json.report).unwrap();
    let gfa = parse_automaton(&v["gfa"].to_string()).unwrap();
    assert_eq!(gfa.model_name(), "gfa");

    let out = run(&["chomsky", "--numbers", "a=1/2,b=2", "--cutpoint", "1", "--direction", "gt"]);
    assert_eq!(out.report, "ContextFreeNonRegular\n");
    let out = run(&["chomsky", "--numbers", "a=2,b=1/3", "--cutpoint", "1"]);
    assert_eq!(out.report, "NonContextFree\n");
    let sol = scratch("sol.json", r#"{"letters": ["a", "b"], "bases": {"a": "2", "b": "3"}, "threshold": "5"}"#);
    assert_eq!(run(&["chomsky", p(&sol)]).report, "Regular\n");
    assert_eq!(run(&["chomsky", p(&desc)]).exit_code, 0);
}

#[test]
fn density_exit_codes() {
    let out = run(&["density", "--triple", "2,1", "--bins", "4", "--max", "100"]);
    assert_eq!(out.exit_code, 0);
    assert!(out.report.starts_with("triple (2, 1) bins 4"), "{}", out.report);
    let out = run(&["--json", "density", "--triple", "3,2", "--bins", "7", "--max", "0"]);
    assert_eq!(out.exit_code, 3);
    let v: serde_json::Value = serde_json::from_str(&out.report).unwrap();
    assert_eq!(v["misses"], 6);
}

#[test]
fn exclusive_transform() {
    let r = construct("rot21_x.json", &["rotation", "--triple", "2,1", "--model", "mcqfa"]);
    let out = run(&["transform", "exclusive-to-zero", p(&r), "--cutpoint", "1/2"]);
    assert_eq!(out.exit_code, 0, "{}", out.diagnostics);
    let t = scratch("excl.json", &out.report);
    let aut = parse_automaton(&out.report).unwrap();
    assert_eq!(aut.states(), 5);
    let csv = run(&["csv", p(&t), "--max", "1"]);
    let rows: Vec<&str> = csv.report.lines().collect();
    let v0: f64 = rows[1].split(',').nth(2).unwrap().parse().unwrap();
    let v1: f64 = rows[2].split(',').nth(2).unwrap().parse().unwrap();
    assert!((v0 - 0.1).abs() < 1e-12 && (v1 - 49.0 / 6250.0).abs() < 1e-12);

    let out = run(&["transform", "exclusive-to-zero", p(&r), "--cutpoint", "0"]);
    assert_eq!(out.exit_code, 0);
    assert!(out.diagnostics.contains("unchanged"));
    let px = construct("px_x.json", &["px", "--x", "1/2"]);
    assert_eq!(run(&["transform", "exclusive-to-zero", p(&px), "--cutpoint", "1/2"]).exit_code, 2);
}

#[test]
fn verify_single_suite() {
    let out = run(&["verify", "--suite", "mcqfa"]);
    assert_eq!(out.exit_code, 0, "{}", out.report);
    let lines: Vec<&str> = out.report.lines().collect();
    assert!(lines[0].starts_with("PASS 11"), "{}", out.report);
    assert!(lines[1].starts_with("PASS 13"), "{}", out.report);
    assert_eq!(lines[2], "2 of 2 passed");
}
