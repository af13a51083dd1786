use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ybe(args: &[&str]) -> Run {
    ybe_with_stdin(args, None)
}

fn ybe_with_stdin(args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ybe"));
    cmd.args(args)
        .env("NO_COLOR", "1")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    cmd.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = cmd.spawn().expect("spawn ybe");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    let Output {
        status,
        stdout,
        stderr,
    } = child.wait_with_output().unwrap();
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn matrix_file(dir: &Path, name: &str, field: &str, rows: &[&[&str]]) -> String {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    let doc = serde_json::json!({ "field": field, "rows": rows });
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn units3(dir: &Path) -> (String, String, String) {
    let z = "0";
    (
        matrix_file(
            dir,
            "e11.json",
            "rat",
            &[&["1", z, z], &[z, z, z], &[z, z, z]],
        ),
        matrix_file(
            dir,
            "e12.json",
            "rat",
            &[&[z, "1", z], &[z, z, z], &[z, z, z]],
        ),
        matrix_file(
            dir,
            "e23.json",
            "rat",
            &[&[z, z, z], &[z, z, "1"], &[z, z, z]],
        ),
    )
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let x = matrix_file(dir.path(), "x.json", "rat", &[&["1", "5"], &["0", "0"]]);
    let r = ybe(&["verify", "--jordan", "0^2", "--X", &x]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("solution: PASS"));

    let id = matrix_file(dir.path(), "i.json", "rat", &[&["1", "0"], &["0", "1"]]);
    let r = ybe(&["verify", "--jordan", "1^2", "--X", &id]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("residual"));
    assert!(r.stdout.contains("[0, 1]"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": \"rat\",\n \"rows\": [[\"1\",]]}").unwrap();
    let r = ybe(&["verify", "--jordan", "1^2", "--X", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    let r = ybe(&["verify", "--jordan", "1^2", "--X", "/nonexistent/x.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_reads_stdin_and_checks_fields() {
    let doc = r#"{"field": "gf:3", "rows": [["1", "2"], ["0", "0"]]}"#;
    let r = ybe_with_stdin(
        &["verify", "--field", "gf:3", "--jordan", "0^2", "--X", "-"],
        Some(doc),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = ybe_with_stdin(
        &["verify", "--field", "gf:5", "--jordan", "0^2", "--X", "-"],
        Some(doc),
    );
    assert_eq!(r.code, 2);
    let r = ybe_with_stdin(&["verify", "--jordan", "0^3", "--X", "-"], Some(doc));
    assert_eq!(r.code, 2);
}

#[test]
fn construct_examples() {
    let r = ybe(&[
        "construct",
        "--family",
        "ex1",
        "--params",
        "branch=plus",
        "λ=1",
        "a=4",
        "--json",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        v["solution"]["rows"],
        serde_json::json!([["3", "4"], ["-1", "-1"]])
    );

    let r = ybe(&[
        "construct",
        "--family",
        "ex2",
        "--params",
        "a=1",
        "b=1",
        "α=0",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("ab=0 violated"), "{}", r.stderr);

    let r = ybe(&[
        "construct",
        "--family",
        "commuting",
        "--params",
        "n=3",
        "variant=with_B",
        "α=2",
        "β=5",
        "--json",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let rows = v["solution"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], serde_json::json!(["0", "1", "2", "5"]));

    let r = ybe(&["construct", "--family", "no-such-family"]);
    assert_eq!(r.code, 2);
}

#[test]
fn construct_output_feeds_verify() {
    let dir = TempDir::new().unwrap();
    let x = dir.path().join("x.json");
    let a = dir.path().join("a.json");
    let r = ybe(&[
        "construct",
        "--family",
        "ex3",
        "--params",
        "a=1",
        "b=1",
        "f=1",
        "i=-1",
        "--out",
        x.to_str().unwrap(),
        "--coefficient-out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = ybe(&[
        "verify",
        "--A",
        a.to_str().unwrap(),
        "--X",
        x.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn census_examples() {
    let r = ybe(&["census", "--jordan", "0^2", "--field", "gf:3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("solutions: 15"));

    let r = ybe(&["census", "--jordan", "1^2", "--field", "gf:2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("solutions: 4"));
    assert!(r.stdout.contains("0 failed"));

    let r = ybe(&[
        "enumerate",
        "--jordan",
        "0^4",
        "--field",
        "gf:2",
        "--commuting",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("solutions: 8"));

    let r = ybe(&["census", "--jordan", "0^4", "--field", "gf:3"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("budget"));

    let r = ybe(&["census", "--jordan", "0^2"]);
    assert_eq!(r.code, 2, "rationals cannot be enumerated");
}

#[test]
fn census_reports_property_failures_with_exit_one() {
    let r = ybe(&["census", "--jordan", "1^2,1^2", "--field", "gf:2"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("two-block-kernel-classification"));
}

#[test]
fn census_json_round_trips_and_is_deterministic() {
    let args = ["census", "--jordan", "0^3", "--field", "gf:2", "--json"];
    let first = ybe(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let report = ybe::io::parse_census(&first.stdout).unwrap();
    assert_eq!(report.total(), 20);
    assert!(report.unmatched().is_empty());
    assert_eq!(ybe::io::census_to_json(&report), first.stdout);
    let second = ybe(&args);
    assert_eq!(first.stdout, second.stdout);
    let seq = ybe(&[
        "census",
        "--jordan",
        "0^3",
        "--field",
        "gf:2",
        "--json",
        "--sequential",
    ]);
    assert_eq!(seq.stdout, first.stdout);
}

#[test]
fn census_out_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("census.json");
    let r = ybe(&[
        "census",
        "--jordan",
        "1^2",
        "--field",
        "gf:3",
        "--json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(std::fs::read_to_string(out).unwrap(), r.stdout);
}

#[test]
fn sylvester_examples() {
    let dir = TempDir::new().unwrap();
    let one = matrix_file(dir.path(), "one.json", "rat", &[&["1"]]);
    let mone = matrix_file(dir.path(), "mone.json", "rat", &[&["-1"]]);
    let four = matrix_file(dir.path(), "four.json", "rat", &[&["4"]]);
    let zero = matrix_file(dir.path(), "zero.json", "rat", &[&["0"]]);

    let r = ybe(&[
        "sylvester",
        "--A",
        &one,
        "--B",
        &one,
        "--C",
        &four,
        "--json",
    ]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["outcome"], "unique");
    assert_eq!(v["solution"], serde_json::json!([["2"]]));
    assert_eq!(v["unique_for_every_c"], true);

    let r = ybe(&[
        "sylvester",
        "--A",
        &one,
        "--B",
        &mone,
        "--C",
        &zero,
        "--json",
    ]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["outcome"], "affine");
    assert_eq!(v["kernel"].as_array().unwrap().len(), 1);

    let r = ybe(&["sylvester", "--A", &one, "--B", &mone, "--C", &one]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("inconsistent"));

    let a = matrix_file(dir.path(), "a.json", "rat", &[&["1", "1"], &["0", "1"]]);
    let b = matrix_file(dir.path(), "b.json", "rat", &[&["-2", "-1"], &["0", "-2"]]);
    let c = matrix_file(dir.path(), "c.json", "rat", &[&["3", "-1"], &["7", "2/5"]]);
    let r = ybe(&["sylvester", "--A", &a, "--B", &b, "--C", &c]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("outcome: unique"));
    assert!(r.stdout.contains("residual: 0"));
}

#[test]
fn groebner_examples() {
    let dir = TempDir::new().unwrap();
    let gens = dir.path().join("gens.txt");
    std::fs::write(&gens, "# a linear chain\nx - y\ny - z\n").unwrap();
    let r = ybe(&["groebner", "--gens", gens.to_str().unwrap(), "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["x - z", "y - z"]));

    let r = ybe(&[
        "groebner",
        "--ideal",
        "ybe",
        "--jordan",
        "0^3",
        "--pair-cap",
        "3",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("pair cap"), "{}", r.stderr);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "x - y\nx + + y\n").unwrap();
    let r = ybe(&["groebner", "--gens", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn groebner_probes_for_the_nilpotent_three_block() {
    let probes = [
        "--probe", "d", "--probe", "e", "--probe", "g", "--probe", "h", "--probe", "a*f+b*i",
    ];
    let mut args = vec![
        "groebner", "--ideal", "ybe", "--jordan", "0^3", "--order", "lex:a..i",
    ];
    args.extend(probes);
    // the ideal is not radical: these vanish on every solution without lying in the ideal
    let r = ybe(&args);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("reduced basis (27)"));
    args.push("--radical");
    let r = ybe(&args);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = ybe(&[
        "groebner",
        "--ideal",
        "ybe",
        "--jordan",
        "0^3",
        "--radical",
        "--probe",
        "c",
    ]);
    assert_eq!(r.code, 1);
}

#[test]
fn pencil_examples() {
    let dir = TempDir::new().unwrap();
    let (e11, e12, e23) = units3(dir.path());
    let r = ybe(&["pencil", "--jordan", "0^3", "--X0", &e11, "--X1", &e12]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    let r = ybe(&[
        "pencil", "--jordan", "0^3", "--X0", &e11, "--X1", &e23, "--json",
    ]);
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let third = &v["conditions"][2];
    assert_eq!(third["holds"], false);
    assert_eq!(
        third["value"],
        serde_json::json!([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]])
    );
    assert_eq!(v["samples"][0]["is_solution"], false);

    let not_solution = matrix_file(
        dir.path(),
        "ns.json",
        "rat",
        &[&["1", "1", "0"], &["0", "1", "1"], &["0", "0", "1"]],
    );
    let r = ybe(&[
        "pencil",
        "--jordan",
        "0^3",
        "--X0",
        &e11,
        "--X1",
        &not_solution,
    ]);
    assert_eq!(r.code, 2);
}

fn basis(r: &Run) -> Vec<Value> {
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    v["basis"].as_array().unwrap().clone()
}

#[test]
fn centralizer_examples() {
    let r = ybe(&["centralizer", "--jordan", "0^3", "--json"]);
    assert_eq!(r.code, 0);
    let b = basis(&r);
    assert_eq!(b.len(), 3);
    assert_eq!(
        b[0],
        serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    );

    let r = ybe(&[
        "centralizer",
        "--jordan",
        "0^3,2^2",
        "--annihilator",
        "--json",
    ]);
    let b = basis(&r);
    assert_eq!(b.len(), 1);
    assert_eq!(b[0][0], serde_json::json!(["0", "0", "1", "0", "0"]));

    let r = ybe(&[
        "centralizer",
        "--jordan",
        "1^1,1^1",
        "--annihilator",
        "--json",
    ]);
    assert!(basis(&r).is_empty());
}

#[test]
fn families_listing() {
    let r = ybe(&["families", "--json"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    for n in [
        "invertible-2x2",
        "nilpotent-2x2",
        "nilpotent-3x3",
        "commuting-nilpotent",
        "pencil",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    let r = ybe(&["families"]);
    assert!(r.stdout.contains("aliases: ex1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ybe(&[]).code, 2);
    assert_eq!(ybe(&["verify", "--X", "x.json"]).code, 2);
    assert_eq!(
        ybe(&["verify", "--A", "a", "--jordan", "0^2", "--X", "x"]).code,
        2
    );
    assert_eq!(
        ybe(&["census", "--jordan", "0^2", "--field", "gf:4"]).code,
        2
    );
    assert_eq!(
        ybe(&["census", "--jordan", "0^2", "--field", "gf:2", "--budget", "3"]).code,
        2
    );
}
