//! End-to-end runs of the `seplab` binary.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn seplab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_seplab")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = seplab(args);
    assert!(code <= 1, "exit {code}: {stderr}");
    (code, serde_json::from_str(&stdout).unwrap())
}

#[test]
fn measure_commands() {
    let (code, v) = json(&["measure", "--fn", "esym:4,8", "--measure", "dim_partials"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rank"], 46);
    assert!(v["result"]["rank"].as_u64().unwrap() >= 28);
    let (_, v) = json(&["measure", "--fn", "det:2", "--measure", "hessian_rank", "--point", "1,0,0,0"]);
    assert_eq!(v["result"]["rank"], 4);
    let a = seplab(&["measure", "--fn", "rand:2,2,7", "--measure", "shifted", "--k", "1", "--l", "1"]);
    let b = seplab(&["measure", "--fn", "rand:2,2,7", "--measure", "shifted", "--k", "1", "--l", "1"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["config"]["k"], 1);
    assert_eq!(v["result"]["measure"], "shifted");
}

#[test]
fn invariance_commands() {
    let (code, v) = json(&["invariance", "--fn", "esym:2,4", "--measure", "dim_partials", "--trials", "20", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["all_equal"], true);
    assert_eq!(v["result"]["values"].as_array().unwrap().len(), 20);
    assert_eq!(json(&["invariance", "--fn", "poly:3:-4", "--trials", "5"]).0, 0);
    let (code, v) = json(&["invariance", "--fn", "poly:2:x1^2", "--measure", "term_count", "--trials", "10"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["all_equal"], false);
    let (code, _) = json(&["invariance", "--fn", "esym:2,3", "--field", "Fp:2", "--exhaustive"]);
    assert_eq!(code, 0);
}

#[test]
fn separate_commands() {
    let (code, v) = json(&[
        "separate", "--module", "minors:dim_partials:16", "--easy", "depth3:8,4,1", "--hard", "esym:4,8", "--trials", "20",
        "--seed", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["separating"], true);
    assert_eq!(v["result"]["hard_rank"], 46);
    let (_, v) = json(&["separate", "--module", "minors:dim_partials:16", "--n", "8", "--d", "4", "--s", "1", "--hard", "easy:5", "--trials", "5"]);
    assert_eq!(v["result"]["separating"], false);
    assert_eq!(v["result"]["hard_nonvanish"], false);
    let (_, v) = json(&["separate", "--module", "minors:dim_partials:16", "--easy", "depth3:8,4,1", "--hard", "esym:4,8", "--trials", "0"]);
    assert_eq!(v["result"]["insufficient_evidence"], true);
    assert_eq!(v["result"]["separating"], false);
    let (_, v) = json(&["separate", "--module", "empty", "--easy", "depth3:4,2,1", "--hard", "esym:2,4", "--trials", "3"]);
    assert_eq!(v["result"]["separating"], false);
}

#[test]
fn separate_csv_rows() {
    let (code, out, _) = seplab(&[
        "separate", "--module", "minors:dim_partials:4", "--easy", "depth3:4,2,1", "--hard", "esym:2,4", "--trials", "4",
        "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# config: "));
    assert_eq!(lines[1], "trial,seed,rank,bound,vanished");
    assert_eq!(lines.len(), 6);
    assert!(lines[2].ends_with(",4,4,true"));
}

#[test]
fn table_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.csv");
    let ps = p.to_str().unwrap();
    let (code, _, _) = seplab(&["table", "--format", "csv", "--out", ps]);
    assert_eq!(code, 0);
    let body = std::fs::read_to_string(&p).unwrap();
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(body.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 21);
    for r in rows.iter().filter(|r| &r[2] == "computed") {
        let dim: u64 = r[3].parse().unwrap();
        let binom: u64 = r[4].parse().unwrap();
        assert!(dim >= binom);
        assert!(!r[5].is_empty() && !r[6].is_empty());
        assert_eq!(&r[8], "true");
    }
    assert_eq!(rows.iter().filter(|r| &r[2] == "skipped").count(), 2);
}

#[test]
fn rs_distance_command() {
    let (code, v) = json(&["rs-distance", "--fn", "mod3:3", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["distance"], 2);
    assert_eq!(v["result"]["agreement"], 6);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("parity.tt");
    std::fs::write(&p, "n=4\n0110100110010110\n").unwrap();
    let (_, v) = json(&["rs-distance", "--table", p.to_str().unwrap(), "--d", "0"]);
    assert_eq!(v["result"]["distance"], 8);
    assert_eq!(seplab(&["rs-distance", "--fn", "mod3:12", "--d", "3"]).0, 3);
    assert_eq!(seplab(&["rs-distance", "--fn", "mod3:3", "--d", "1", "--field", "Q"]).0, 2);
}

#[test]
fn gk_check_command() {
    let (code, v) = json(&["gk-check", "--fn", "poly:4:x1*x2*x3*x4", "--field", "Fp:2", "--r", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["property_holds"], true);
    let (_, a) = json(&["gk-check", "--fn", "det:2", "--field", "Fp:3", "--r", "1", "--set-size", "3", "--seed", "4"]);
    let (_, b) = json(&[
        "gk-check", "--fn", "det:2", "--field", "Fp:3", "--r", "1", "--set-size", "3", "--seed", "4", "--strategy", "stacked",
    ]);
    assert_eq!(a["result"]["intersection_dim"], b["result"]["intersection_dim"]);
    assert_eq!(seplab(&["gk-check", "--fn", "det:3", "--field", "Fp:3"]).0, 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(seplab(&[]).0, 2);
    assert_eq!(seplab(&["measure"]).0, 2);
    assert_eq!(seplab(&["measure", "--fn", "esym:9,2"]).0, 2);
    assert_eq!(seplab(&["measure", "--fn", "esym:2,4", "--field", "Fp:4"]).0, 2);
    assert_eq!(seplab(&["measure", "--fn", "esym:2,4", "--measure", "hessian_rank"]).0, 2);
    assert_eq!(seplab(&["separate", "--module", "minors:x", "--easy", "depth3:4,2,1", "--hard", "esym:2,4"]).0, 2);
    assert_eq!(seplab(&["--help"]).0, 0);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let p = dir.path().join("out");
        let mut full: Vec<&str> = args.to_vec();
        let ps = p.to_str().unwrap().to_string();
        full.extend(["--out", &ps]);
        seplab(&full);
        std::fs::read(Path::new(&ps)).unwrap()
    };
    let args = ["invariance", "--fn", "rand:3,3,2", "--trials", "10", "--seed", "9", "--format", "csv"];
    let first = run(&args);
    assert_eq!(first, run(&args));
}
