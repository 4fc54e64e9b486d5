use std::path::PathBuf;

use rcfw_cli::{run, Outcome, EXIT_CAPACITY, EXIT_OK, EXIT_REJECT, EXIT_USAGE};
use serde_json::Value;
use tempfile::TempDir;

const CIRCLE: &str = "set C in R^2 := { x^2 + y^2 - 1 = 0 }\n";
const CUBE: &str = "\
set X in R^1 := { x + 1 > 0, 1 - x > 0 } | { x + 1 = 0 } | { x - 1 = 0 }
set Y in R^1 := { x + 1 > 0, 1 - x > 0 } | { x + 1 = 0 } | { x - 1 = 0 }
set G in R^2 := { y - x^3 = 0, x + 1 > 0, 1 - x > 0 } | { y - x^3 = 0, x + 1 = 0 } | { y - x^3 = 0, x - 1 = 0 }
";

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

fn rcfw(args: &[&str]) -> Outcome {
    let mut argv = vec!["rcfw"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = rcfw(&argv);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn describe_circle() {
    let d = Dir::new();
    let f = d.file("circle.sa", CIRCLE);
    let out = rcfw(&["describe", &f]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "n=2 p=1 q=2\n");
    let two = d.file("two.sa", "set A in R^1 := { x = 0 }\nset B in R^1 := { x > 0 }\n");
    assert_eq!(rcfw(&["describe", &two]).stdout, "A: n=1 p=1 q=1\nB: n=1 p=1 q=1\n");
}

#[test]
fn search_simplex() {
    let d = Dir::new();
    let f = d.file("simplex2.cx", "abc\n");
    let out = rcfw(&["pl", "search", &f, "--target", "a"]);
    assert_eq!(out.code, EXIT_OK);
    let steps: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("C ")).collect();
    assert_eq!(steps, ["C ab abc", "C b bc", "C c ac"]);
    let cert = d.file("cert.txt", &out.stdout);
    assert_eq!(rcfw(&["pl", "verify", &cert]).code, EXIT_OK);
    let bad = d.file("bad.txt", "base: abc\nfixed: a\ntarget: a\nC ab abc\nC c ac\nC b bc\n");
    let (code, v) = json(&["pl", "verify", &bad]);
    assert_eq!(code, EXIT_REJECT);
    assert_eq!(v["index"], 1);
}

#[test]
fn search_without_free_faces() {
    let d = Dir::new();
    let f = d.file("hollow.cx", "ab ac bc\n");
    let (code, v) = json(&["pl", "search", &f, "--target", "a"]);
    assert_eq!(code, EXIT_CAPACITY);
    assert_eq!(v["exhausted"], "complete");
    assert_eq!(rcfw(&["pl", "free-faces", &f]).stdout, "");
}

#[test]
fn decide_sentences() {
    let out = rcfw(&["decide", "forall x. x^2+1>0"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "true\n"));
    let out = rcfw(&["decide", "exists x. x^2+1=0"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_REJECT, "false\n"));
    let out = rcfw(&["decide", "(exists ((x Real)) (= (- (* x x) 2) 0))"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "true\n"));
    assert_eq!(rcfw(&["decide", "forall x. (x"]).code, EXIT_USAGE);
    let out = rcfw(&["--max-vars", "1", "decide", "forall x. forall y. x^2+y^2>=0"]);
    assert_eq!(out.code, EXIT_CAPACITY);
}

#[test]
fn capacity_overrides_are_bounded() {
    let d = Dir::new();
    let f = d.file("circle.sa", CIRCLE);
    assert_eq!(rcfw(&["--max-vars", "4", "describe", &f]).code, EXIT_USAGE);
    assert_eq!(rcfw(&["--degree-cap", "17", "describe", &f]).code, EXIT_USAGE);
    assert_eq!(rcfw(&["--budget", "10000001", "describe", &f]).code, EXIT_USAGE);
    assert_eq!(rcfw(&["--degree-cap", "1", "cad", "dimension", &f]).code, EXIT_CAPACITY);
    assert_eq!(rcfw(&["frobnicate"]).code, EXIT_USAGE);
    let help = rcfw(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("at most 3 real variables"));
}

#[test]
fn encode_decode_round_trip() {
    let d = Dir::new();
    let f = d.file("circle.sa", CIRCLE);
    let enc = rcfw(&["encode", &f, "--p", "2", "--q", "3"]);
    assert_eq!(enc.code, EXIT_OK);
    let pp = d.file("circle.pp", &enc.stdout);
    let dec = rcfw(&["decode", &pp, "--name", "D"]);
    assert_eq!(dec.code, EXIT_OK);
    let back = d.file("back.sa", &dec.stdout);
    let both = d.file("both.sa", &format!("{CIRCLE}{}", dec.stdout));
    assert_eq!(rcfw(&["cad", "equal", &f, &back]).code, EXIT_OK);
    assert_eq!(rcfw(&["cad", "equal", &both]).code, EXIT_OK);
}

#[test]
fn cad_queries() {
    let d = Dir::new();
    let f = d.file("circle.sa", CIRCLE);
    assert_eq!(rcfw(&["cad", "dimension", &f]).stdout, "1\n");
    assert_eq!(rcfw(&["cad", "components", &f]).stdout, "1\n");
    assert_eq!(rcfw(&["cad", "empty", &f]).code, EXIT_REJECT);
    let (code, v) = json(&["cad", "cells", &f]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["ambient"], 2);
    let cells = v["cells"].as_array().unwrap();
    let member = v["member"].as_array().unwrap();
    assert_eq!(cells.len(), member.len());
    let records: Vec<rcfw::cad::CellRecord> = serde_json::from_value(v["cells"].clone()).unwrap();
    assert_eq!(records.len(), cells.len());
    let on_circle = records.iter().zip(member).filter(|(_, m)| m.as_bool().unwrap());
    assert!(on_circle.clone().all(|(r, _)| r.dim <= 1));
    assert_eq!(on_circle.count(), 4);
}

#[test]
fn checks() {
    let d = Dir::new();
    let circle = d.file("circle.sa", CIRCLE);
    assert_eq!(rcfw(&["check", "manifold", &circle]).stdout, "manifold\n");
    assert_eq!(rcfw(&["check", "compact", &circle]).code, EXIT_OK);
    assert_eq!(rcfw(&["check", "regularity", &circle]).code, EXIT_OK);
    let lem = d.file("lem.sa", "set L in R^2 := { (x^2 + y^2)^2 - 2*(x^2 - y^2) = 0 }\n");
    let (code, v) = json(&["check", "manifold", &lem]);
    assert_eq!(code, EXIT_REJECT);
    assert_eq!(v["points"][0]["exact"], serde_json::json!(["0", "0"]));
    let cross = d.file("cross.sa", "set K in R^2 := { x*y = 0 }\n");
    let (code, v) = json(&["check", "regularity", &cross]);
    assert_eq!(code, EXIT_REJECT);
    assert_eq!(v["verdict"], "singular");
    let disk = d.file("disk.sa", "set D in R^2 := { x^2 + y^2 - 1 < 0 }\n");
    assert_eq!(rcfw(&["check", "manifold", &disk]).code, EXIT_CAPACITY);
    let cube = d.file("cube.sa", CUBE);
    assert_eq!(rcfw(&["check", "homeo", &cube]).stdout, "accept\n");
    let sq = d.file("sq.sa", &CUBE.replace("x^3", "x^2"));
    let (code, v) = json(&["check", "homeo", &sq]);
    assert_eq!(code, EXIT_REJECT);
    assert_eq!(v["reason"], "injective");
}

#[test]
fn emit_and_decide_schema() {
    let d = Dir::new();
    let seg = d.file(
        "seg.sa",
        "set S in R^1 := { x*(1 - x) > 0 } | { x = 0 } | { x - 1 = 0 }\n",
    );
    let out = rcfw(&["emit", "submanifold", "--n", "1", "--m", "1", "--set", &seg]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("(forall"));
    let s = d.file("sentence.smt", &out.stdout);
    // the closed segment has boundary points
    assert_eq!(rcfw(&["decide", "-f", &s]).stdout, "false\n");
    let sym = rcfw(&["--json", "emit", "homeomorphism", "--n", "1"]);
    let v: Value = serde_json::from_str(&sym.stdout).unwrap();
    assert_eq!(v["free"], serde_json::json!(["G", "X", "Y"]));
    assert!(v["formula"].as_str().unwrap().contains("(in G"));
}

#[test]
fn collar_and_collapse() {
    let out = rcfw(&["collar", "--m", "2", "1/2", "1/2", "0", "--lambda", "1"]);
    assert_eq!(out.stdout, "1/2 1/2 0\n");
    assert_eq!(rcfw(&["collar", "--m", "2", "1/2", "1/3", "0"]).code, EXIT_USAGE);
    let d = Dir::new();
    let f = d.file("t.cx", "abc\n");
    let out = rcfw(&["pl", "collapse", &f, "--step", "C ab abc", "--step", "C b bc"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "ac\n"));
    let (code, v) = json(&["pl", "collapse", &f, "--step", "C a ab"]);
    assert_eq!(code, EXIT_REJECT);
    assert_eq!(v["index"], 0);
    assert_eq!(rcfw(&["pl", "info", &f]).stdout, "dim=2 f=(3, 3, 1) chi=1\n");
}

#[test]
fn output_is_deterministic() {
    let d = Dir::new();
    let f = d.file("circle.sa", CIRCLE);
    for args in [
        vec!["--json", "cad", "cells", &f],
        vec!["check", "manifold", &f],
        vec!["encode", &f],
    ] {
        let a = rcfw(&args);
        let b = rcfw(&args);
        assert_eq!((a.code, a.stdout, a.stderr), (b.code, b.stdout, b.stderr));
    }
}
