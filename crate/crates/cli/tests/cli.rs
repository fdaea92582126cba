use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use oredim::complex::build_example_62;
use oredim::dimension::Record;
use oredim::json::complex_to_string;
use oredim::FieldDescriptor;
use tempfile::TempDir;

const ZMINUS1: &str = r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":2},"rows":1,"cols":1,
 "entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[1]},{"coeff":-1,"g":[0]}]}]}"#;
const HEIS: &str = r#"{"group":{"type":"Heis"},"field":{"type":"Fp","p":2},"rows":1,"cols":1,
 "entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[1,0,0]},{"coeff":1,"g":[0,0,0]}]}]}"#;
const SMINUS1: &str = r#"{"group":{"type":"Dinf"},"field":{"type":"Fp","p":3},"rows":1,"cols":1,
 "entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[0,1]},{"coeff":2,"g":[0,0]}]}]}"#;
const KOSZUL_ROW: &str = r#"{"group":{"type":"Zd","d":2},"field":{"type":"Q"},"rows":1,"cols":2,
 "entries":[{"row":0,"col":0,"terms":[{"coeff":"1/1","g":[1,0]},{"coeff":"-1/1","g":[0,0]}]},
            {"row":0,"col":1,"terms":[{"coeff":"1/1","g":[0,1]},{"coeff":"-1/1","g":[0,0]}]}]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn oredim(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_oredim"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("OREDIM_THREADS", t),
        None => cmd.env_remove("OREDIM_THREADS"),
    };
    cmd.output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn ore_on_z_minus_one() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "zminus1.json", ZMINUS1);
    let out = oredim(&["ore", "--input", path(&input)], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "method,level,normalizer,raw,normalized,certified\nore,,1,0,0/1,true\n");
}

#[test]
fn approx_writes_quotient_rows() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "zminus1.json", ZMINUS1);
    let table = dir.path().join("t.csv");
    let out = oredim(&["approx", "--input", path(&input), "--levels", "2,4,8", "--out", path(&table)], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.starts_with("method,level,normalizer,raw,normalized,certified\n"));
    let quotient: Vec<&str> = text.lines().filter(|l| l.starts_with("quotient,")).collect();
    assert_eq!(quotient, vec!["quotient,2,2,1,1/2,true", "quotient,4,4,1,1/4,true", "quotient,8,8,1,1/8,true"]);
}

#[test]
fn heisenberg_ore_is_unsupported() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "heisenberg_module.json", HEIS);
    let out = oredim(&["ore", "--input", path(&input)], None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr(&out).trim(), "Ore dimension directly computable only for Zd; use approximation");
    assert!(stdout(&out).is_empty());
}

#[test]
fn input_errors_exit_two_with_path() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"group":{"type":"Zd","d":1},"field":{"type":"Fp","p":2},"rows":1,"cols":1,"entries":[{"row":0,"col":0,"terms":[{"coeff":1,"g":[1,2]}]}]}"#,
    );
    let out = oredim(&["ore", "--input", path(&bad)], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("entries[0].terms[0].g"), "{}", stderr(&out));
    let good = write(&dir, "zminus1.json", ZMINUS1);
    for args in [
        vec!["approx", "--input", path(&good), "--levels", "4,2"],
        vec!["approx", "--input", path(&good), "--tol", "0"],
        vec!["ore", "--input", path(&good), "--rank-alg", "magic"],
        vec!["ore", "--input", "/nonexistent/m.json"],
        vec!["betti-finite", "--d", "2", "--n", "4", "--field", "4"],
    ] {
        assert_eq!(oredim(&args, None).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(oredim(&["ore", "--input", path(&good)], Some("0")).status.code(), Some(2));
}

#[test]
fn vdim_on_the_dihedral_group() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.json", SMINUS1);
    let out = oredim(&["vdim", "--input", path(&input), "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let records: Vec<Record> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!((records[0].method.as_str(), records[0].normalizer, records[0].raw), ("vdim", 2, 1));
    assert_eq!(oredim::json::ratio_string::to_string(&records[0].normalized), "1/2");
    let heis = write(&dir, "h.json", HEIS);
    assert_eq!(oredim(&["vdim", "--input", path(&heis)], None).status.code(), Some(3));
}

#[test]
fn homology_and_betti_tables() {
    let dir = TempDir::new().unwrap();
    let complex = build_example_62(2, 2, FieldDescriptor::prime(2).unwrap()).unwrap();
    let input = write(&dir, "c.json", &complex_to_string(&complex));
    let out = oredim(&["homology", "--input", path(&input), "--levels", "2,4"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ore-h2,,1,1,1/1,true\n"));
    assert!(text.contains("quotient-h3,4,4,4,1/1,true\n"));
    let out = oredim(&["betti-finite", "--d", "2", "--n", "8", "--field", "2", "--i-max", "2"], None);
    assert_eq!(
        stdout(&out),
        "method,level,normalizer,raw,normalized,certified\nbetti-b0,8,64,1,1/64,true\nbetti-b1,8,64,2,1/32,true\nbetti-b2,8,64,3,3/64,true\n"
    );
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k.json", KOSZUL_ROW);
    for format in ["csv", "json"] {
        let args = ["approx", "--input", path(&input), "--levels", "2,3,4,5", "--folner-sizes", "2,4,6", "--rank-alg", "prob", "--seed", "9", "--format", format];
        let one = oredim(&args, Some("1"));
        let four = oredim(&args, Some("4"));
        assert_eq!(one.status.code(), Some(0), "{}", stderr(&one));
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(one.stdout, oredim(&args, None).stdout);
    }
}

#[test]
fn json_reports_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k.json", KOSZUL_ROW);
    let out = oredim(&["approx", "--input", path(&input), "--levels", "2,3", "--folner-sizes", "2,3", "--format", "json"], None);
    let text = stdout(&out);
    let records: Vec<Record> = serde_json::from_str(&text).unwrap();
    assert_eq!(records.iter().map(|r| r.method.as_str()).collect::<Vec<_>>(), vec!["ore", "elek", "elek", "quotient", "quotient"]);
    assert_eq!(serde_json::to_string_pretty(&records).unwrap() + "\n", text);
    let csv_out = oredim(&["approx", "--input", path(&input), "--levels", "2,3", "--folner-sizes", "2,3"], None);
    let parsed: Vec<Record> =
        csv::Reader::from_reader(csv_out.stdout.as_slice()).deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(parsed, records);
}

#[test]
fn selftest_subset_passes() {
    let out = oredim(&["selftest", "--only", "4,6"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")));
    assert_eq!(oredim(&["selftest", "--only", "9"], None).status.code(), Some(2));
}
