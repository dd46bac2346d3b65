use std::process::{Command, Output};

use serde_json::Value;

fn magnus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnus")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = magnus(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn derive_commutator() {
    let v = json(&["derive", "--rank", "2", "x1 x2 x1^-1 x2^-1"]);
    let d = &v["derivatives"];
    assert_eq!(
        d[0]["derivative"],
        serde_json::json!([{"at": [0, 0], "coeff": 1}, {"at": [0, 1], "coeff": -1}])
    );
    assert_eq!(
        d[1]["derivative"],
        serde_json::json!([{"at": [0, 0], "coeff": -1}, {"at": [1, 0], "coeff": 1}])
    );
}

#[test]
fn wordproblem_non_commuting() {
    let o = magnus(&["wordproblem", "--rank", "2", "x1 x2", "x2 x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn wordproblem_double_commutator_by_degree() {
    let c = "x1 x2 x1^-1 x2^-1 x1 x1 x2 x1^-1 x1^-1 x2^-1 x2 x1 x2^-1 x1^-1 x2 x1 x1 x2^-1 x1^-1 x1^-1";
    let run = |d: &str| stdout(&magnus(&["wordproblem", "--rank", "2", "--degree", d, c, ""])).trim().to_string();
    assert_eq!(run("2"), "true");
    assert_eq!(run("3"), "false");
}

#[test]
fn length_of_identity_is_zero() {
    let v = json(&["length", "--rank", "2", ""]);
    for key in ["lengthFN", "sumFlow", "qEdges", "sumLamps", "wreathCircuit", "wreathWalk"] {
        assert_eq!(v[key], 0, "{key}");
    }
}

#[test]
fn length_reports_both_wreath_variants() {
    let v = json(&["length", "--rank", "2", "x1 x1"]);
    assert_eq!(v["lengthFN"], 2);
    assert_eq!(v["wreathCircuit"], 6);
    assert_eq!(v["wreathWalk"], 4);
}

#[test]
fn geodesic_word_round_trips_through_wordproblem() {
    for w in ["x1 x1 x2 x1^-1 x1^-1 x2^-1", "x1 x2 x1 x2^-1 x1^-1 x1^-1", "x2 x1 x3^-1 x1 x2^-1"] {
        let v = json(&["geodesic-word", "--rank", "3", w]);
        let g = v["geodesic"].as_str().unwrap();
        assert_eq!(g.split_whitespace().count() as u64, v["length"].as_u64().unwrap());
        let o = magnus(&["wordproblem", "--rank", "3", w, g]);
        assert_eq!(stdout(&o).trim(), "true", "{w} vs {g}");
    }
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["embed", "--rank", "3", "x1 x3 x2^-1 x1 x3^-1"];
    let a = stdout(&magnus(&args));
    assert_eq!(a, stdout(&magnus(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", a);
}

#[test]
fn verify_qi_runs_are_identical() {
    let args = [
        "verify-qi", "--rank", "2", "--seed", "7", "--samples", "40", "--max-len", "10", "--oracle-radius", "4",
    ];
    let a = magnus(&args);
    let b = magnus(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 40);
}

#[test]
fn verify_qi_exit_code_tracks_summary() {
    let o = magnus(&["verify-qi", "--rank", "2", "--samples", "30", "--max-len", "8", "--oracle-radius", "0"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let expected = if v["summary"]["passed"].as_bool().unwrap() { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expected));
}

#[test]
fn csv_and_text_formats() {
    let o = magnus(&["length", "--rank", "2", "--format", "csv", "x1 x1"]);
    assert_eq!(
        stdout(&o),
        "input,lengthFN,sumFlow,qEdges,sumLamps,wreathCircuit,wreathWalk\nx1 x1,2,2,0,2,6,4\n"
    );
    let o = magnus(&["geodesic-word", "--rank", "2", "--format", "text", "x1 x2 x2^-1"]);
    assert_eq!(stdout(&o), "x1\n");
}

#[test]
fn bad_generator_is_an_input_error() {
    let o = magnus(&["flow", "--rank", "2", "x1 x3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("x3"));
}

#[test]
fn parse_error_names_position() {
    let o = magnus(&["flow", "--rank", "2", "x1 y2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"y2\""));
}

#[test]
fn capacity_error_exit_code() {
    let o = magnus(&["length", "--rank", "2", "--kernel-cap", "2", "x1 x2 x1 x2 x1 x2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_rank_is_usage_error() {
    assert_eq!(magnus(&["flow", "x1"]).status.code(), Some(3));
    assert_eq!(magnus(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_keys_are_sorted() {
    for args in [
        vec!["geodesic-word", "--rank", "2", "x1 x2 x1^-1"],
        vec!["length", "--rank", "2", "x1 x2 x1^-1"],
        vec!["verify-qi", "--rank", "2", "--samples", "5", "--oracle-radius", "3"],
    ] {
        let text = stdout(&magnus(&args));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }
}
