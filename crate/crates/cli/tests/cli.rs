use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs with `--format json`, returning the exit code and parsed report.
fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn column(v: &Value, section: &str, key: &str) -> Vec<Value> {
    v["results"][section]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].clone())
        .collect()
}

#[test]
fn validate_reports_semisimplicity() {
    let (code, v) = json(&["validate", "builtin:UT2eps"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["checks"]["associative"], true);
    assert_eq!(v["results"]["lie"]["l_semisimple"], false);
    let (code, v) = json(&["validate", "builtin:M2sl2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["lie"]["l_semisimple"], true);
    assert_eq!(v["results"]["lie"]["killing_rank"], 3);
}

#[test]
fn validate_lists_associativity_witness() {
    let (code, v) = json(&["validate", &data("nonassociative.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["checks"]["associativity_witness"], "(0, 0, 0)");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn envelope_keys_in_order() {
    let out = run(&["exponent", "builtin:F2", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["command", "input_digest", "version", "seed", "results", "warnings"];
    let pos: Vec<usize> = keys
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn closed_form_mismatch_is_flagged() {
    let (code, v) = json(&["codim", "builtin:UT2eps", "--max-n", "2", "--formula"]);
    assert_eq!(code, 6);
    assert_eq!(column(&v, "codimensions", "c_n_L"), [2, 5]);
    assert_eq!(column(&v, "codimensions", "c_n"), [1, 2]);
    assert_eq!(column(&v, "codimensions", "formula"), [0, 3]);
    assert_eq!(column(&v, "codimensions", "flag"), ["MISMATCH", "MISMATCH"]);
    assert!(v["warnings"][0].as_str().unwrap().contains("n = 1, 2"));
}

#[test]
fn codim_examples() {
    let (code, v) = json(&["codim", "builtin:F1", "--max-n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(column(&v, "codimensions", "c_n_L"), [1, 1, 1, 1]);
    let (_, v) = json(&["codim", "builtin:UT2eps+UT2eps", "--max-n", "2"]);
    assert_eq!(column(&v, "codimensions", "c_n_L"), [2, 5]);
    let (_, v) = json(&["codim", "builtin:UT2eps", "--max-n", "3", "--ordinary"]);
    assert_eq!(column(&v, "codimensions", "c_n_L"), [Value::Null, Value::Null, Value::Null]);
    assert_eq!(column(&v, "codimensions", "c_n"), [1, 2, 6]);
}

#[test]
fn file_and_builtin_agree() {
    let (_, a) = json(&["codim", "builtin:UT2eps", "--max-n", "3"]);
    let (_, b) = json(&["codim", &data("ut2eps.json"), "--max-n", "3"]);
    assert_eq!(a["results"]["codimensions"], b["results"]["codimensions"]);
    assert_ne!(a["input_digest"], b["input_digest"]);
}

#[test]
fn budget_overrun_keeps_completed_rows() {
    let (code, v) = json(&["codim", "builtin:M2sl2", "--max-n", "4"]);
    assert_eq!(code, 4);
    assert_eq!(column(&v, "codimensions", "n"), [1, 2, 3]);
    assert!(v["warnings"][0].as_str().unwrap().contains("degree 4"));
}

#[test]
fn cocharacter_rows() {
    let rows = |v: &Value| -> Vec<(String, i64, i64, i64)> {
        v["results"]["multiplicities"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["m_L"].as_i64().unwrap() > 0)
            .map(|r| {
                (
                    r["partition"].as_str().unwrap().to_string(),
                    r["m_L"].as_i64().unwrap(),
                    r["m"].as_i64().unwrap(),
                    r["below_first_row"].as_i64().unwrap(),
                )
            })
            .collect()
    };
    let (_, v) = json(&["cocharacter", "builtin:UT2eps", "--n", "2"]);
    assert_eq!(rows(&v), [("(2)".into(), 3, 1, 0), ("(1,1)".into(), 2, 1, 1)]);
    let (_, v) = json(&["cocharacter", "builtin:F1", "--n", "3"]);
    assert_eq!(rows(&v), [("(3)".into(), 1, 1, 0)]);
    let (_, v) = json(&["cocharacter", "builtin:UT2eps", "--n", "1"]);
    assert_eq!(rows(&v), [("(1)".into(), 2, 1, 0)]);
}

#[test]
fn classify_examples() {
    let (code, v) = json(&["classify", "builtin:UT2eps"]);
    assert_eq!(code, 7);
    let r = &v["results"];
    assert_eq!(r["summary"]["exponent"], 2);
    assert_eq!(r["summary"]["polynomial_growth"], false);
    assert_eq!(r["witness"]["blocks"], "(1, 2)");
    assert_eq!(r["witness"]["element"], "e12");
    assert_eq!(r["hypothesis"]["l_semisimple"], false);

    let (code, v) = json(&["classify", "builtin:F2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["summary"]["polynomial_growth"], true);
    let verdicts = column(&v, "conditions", "verdict");
    assert!(verdicts
        .iter()
        .all(|x| x == &Value::Bool(true) || x == "consistent at computed n"));

    let (_, v) = json(&["classify", "builtin:M2sl2", "--depth", "2"]);
    assert_eq!(v["results"]["summary"]["exponent"], 4);
    assert_eq!(v["results"]["witness"]["kind"], "matrix_block");

    let (_, v) = json(&["classify", &data("dual_scaling.json")]);
    assert_eq!(v["results"]["summary"]["exponent"], 1);
    assert_eq!(v["results"]["summary"]["q"], 2);
    assert_eq!(v["results"]["summary"]["max_n"], 4);
}

#[test]
fn identity_verdicts() {
    let (code, v) = json(&[
        "check-identity",
        "builtin:UT2eps",
        "--poly",
        "x1^epseps - x1^eps",
        "--poly",
        "x1*x2 - x2*x1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(column(&v, "verdicts", "identity"), [true, false]);
}

#[test]
fn parser_errors_exit_one() {
    let out = run(&["check-identity", "builtin:UT2eps", "--poly", "x1^foo"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown operator"));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn consequences_cross_check() {
    let (code, v) = json(&[
        "consequences",
        "builtin:UT2eps",
        "--gens",
        &data("ut2eps_generators.txt"),
        "--n",
        "2",
        "--cross-check",
    ]);
    assert_eq!(code, 0);
    let s = &v["results"]["summary"];
    assert_eq!((s["ideal_dim"].clone(), s["quotient_dim"].clone()), (3.into(), 5.into()));
    assert_eq!(s["cross_check"], "OK");
}

#[test]
fn non_split_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gaussian.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "basis": ["1", "i"],
            "table": [[0,0,[[0,"1"]]], [0,1,[[1,"1"]]], [1,0,[[1,"1"]]], [1,1,[[0,"-1"]]]]}"#,
    )
    .unwrap();
    let out = run(&["exponent", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hint"));
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"dim\": 2,\n  \"basis\": [\"a\" \"b\"]\n}").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":3:"));
}

#[test]
fn reports_are_reproducible_and_formats_agree() {
    let args = ["classify", "builtin:UT3", "--depth", "2", "--seed", "5", "--format", "json"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);

    let (_, v) = json(&["codim", "builtin:UT2eps", "--max-n", "3"]);
    let csv = String::from_utf8(run(&["codim", "builtin:UT2eps", "--max-n", "3", "--format", "csv"]).stdout).unwrap();
    let table: Vec<&str> = csv
        .lines()
        .skip_while(|l| *l != "# section codimensions")
        .skip(2)
        .collect();
    for (line, row) in table.iter().zip(v["results"]["codimensions"].as_array().unwrap()) {
        let want = format!("{},{},{}", row["n"], row["c_n_L"], row["c_n"]);
        assert_eq!(*line, want);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["decompose", "builtin:UT2eps", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["derivation_split"][0]["outer_part_zero"], true);
}
