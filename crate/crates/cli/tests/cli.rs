use std::process::{Command, Output};

use serde_json::Value;

fn ncsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncsym"))
        .args(args)
        .env_remove("NCSYM_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = ncsym(&full);
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn convert_examples() {
    let o = ncsym(&["convert", "x{1,3/2}", "--to", "m"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-1*m{1/2/3} - 1*m{1/2,3} - 1*m{1,2/3}");
    let o = ncsym(&["convert", "x{1,2,3}", "--to", "m"]);
    assert_eq!(
        stdout(&o),
        "2*m{1/2/3} + 1*m{1/2,3} + 1*m{1,2/3} + 1*m{1,3/2}"
    );
    let o = ncsym(&["convert", "p{1,2}", "--to", "p"]);
    assert_eq!(stdout(&o), "1*p{1,2}");
    let o = ncsym(&["convert", "--sym", "x{2}", "--to", "e"]);
    assert_eq!(stdout(&o), "-2*e{2}");
}

#[test]
fn printed_output_parses_back() {
    let first = stdout(&ncsym(&["convert", "x{1,2,3/4}", "--to", "e"]));
    let again = stdout(&ncsym(&["convert", &first, "--to", "e"]));
    assert_eq!(first, again);
}

#[test]
fn coproduct_examples() {
    let o = ncsym(&["coproduct", "p{1,3/2}"]);
    assert_eq!(
        stdout(&o),
        "1*1 (x) p{1,3/2} + 1*p{1} (x) p{1,2} + 1*p{1,2} (x) p{1} + 1*p{1,3/2} (x) 1"
    );
    let o = ncsym(&["coproduct", "x{1,2,3/4}", "--split", "1,2"]);
    assert_eq!(stdout(&o), "1*x{1/2} (x) x{3/4} - 1*x{1,2} (x) x{3/4}");
    assert_eq!(stdout(&ncsym(&["coproduct", "1"])), "1*1 (x) 1");
}

#[test]
fn species_and_mobius() {
    let o = ncsym(&["species", "mu", "m{1,2}", "m{3,5/4}"]);
    assert_eq!(
        stdout(&o),
        "1*m{1,2/3,5/4} + 1*m{1,2,3,5/4} + 1*m{1,2,4/3,5}"
    );
    let o = ncsym(&["species", "delta", "p{1,2/3,5/4}", "--split", "1,2"]);
    assert_eq!(stdout(&o), "1*p{1,2} (x) p{3,5/4}");
    assert_eq!(stdout(&ncsym(&["mobius", "1/3/24", "13/24"])), "-1");
    assert_eq!(stdout(&ncsym(&["mobius", "1/3/24", "1234"])), "2");
}

#[test]
fn graph_backends_agree() {
    let v = json(&["graph", "1/2/3", "--sink", "2"]);
    assert_eq!(v["backends_agree"], true);
    assert_eq!(v["counts"][0]["count"], "2");
}

#[test]
fn exit_codes() {
    assert_eq!(
        ncsym(&["convert", "q{1}", "--to", "m"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncsym(&["convert", "p{1}", "--to", "z"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ncsym(&["coproduct", "x{1,2}", "--split", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ncsym(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        ncsym(&["check", "--suite", "mobius", "--max-n", "1"])
            .status
            .code(),
        Some(0)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_ncsym"))
        .args(["check", "--suite", "lattice", "--max-n", "4"])
        .env("NCSYM_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_report_position() {
    let v = json(&["convert", "p{1} + y{1}", "--to", "m"]);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["position"], 7);
}

#[test]
fn json_schema() {
    let v = json(&["convert", "x{1,3/2}", "--to", "p"]);
    assert_eq!(v["command"], "convert");
    assert_eq!(v["kind"], "ncsym");
    let t = &v["terms"][1];
    assert_eq!(t["basis"], "p");
    assert_eq!(t["blocks"], serde_json::json!([[1, 3], [2]]));
    assert_eq!(
        (t["numerator"].as_str(), t["denominator"].as_str()),
        (Some("1"), Some("1"))
    );

    let v = json(&["coproduct", "p{1,3/2}"]);
    assert_eq!(v["kind"], "tensor");
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    assert_eq!(v["terms"][0]["left"], serde_json::json!([]));

    let v = json(&["check", "--suite", "coproduct-x", "--max-n", "4"]);
    assert_eq!(v["passed"], true);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["suite"] == "coproduct-x"));
}

#[test]
fn verify_expression_against_oracle() {
    let o = ncsym(&["verify", "x{1,2,3} - 2*p{1/2}"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("PASS").count(), 4);
}
