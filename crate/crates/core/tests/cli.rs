use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sspforge"));
    c.env_remove("SSPFORGE_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        let dir = TempDir::new().unwrap();
        let d = dir.path();
        write(d, "ss.json", r#"{"problem":"ss","numbers":[1,2,3,4],"target":5}"#);
        write(d, "unsat.json", r#"{"problem":"sat","clauses":[[1],[-1]]}"#);
        write(
            d,
            "vc.json",
            r#"{"problem":"vc","vertices":["u","v"],"edges":[["u","v"]],"k":2}"#,
        );
        write(
            d,
            "k3.json",
            r#"{"problem":"dhc","vertices":["a","b","c"],"arcs":[["a","b"],["b","c"],["c","a"]]}"#,
        );
        write(d, "mis.json", r#"{"problem":"esat","clauses":[[1,2,3]]}"#);
        write(
            d,
            "mvc.json",
            r#"{"problem":"mvc","vertices":["a","b","c"],"edges":[["a","b"]],"k":2}"#,
        );
        write(d, "bad.json", r#"{"problem":"ss","numbers":[1],"target":1,"oops":1}"#);
        write(d, "f.cnf", "p cnf 3 2\n1 -2 0\n2 3 0\n");
        Fixture { dir }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }
}

#[test]
fn solve_lists_solutions() {
    let f = Fixture::new();
    let o = run(&["solve", &f.path("ss.json"), "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("count: 2"));
    assert!(s.contains("{1, 4}") && s.contains("{2, 3}"), "{s}");
    let o = run(&["solve", &f.path("unsat.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 0"));
}

#[test]
fn solve_budget_exit_code() {
    let f = Fixture::new();
    assert_eq!(
        run(&["--budget", "3", "solve", &f.path("ss.json")]).status.code(),
        Some(2)
    );
    let o = bin()
        .env("SSPFORGE_BUDGET", "3")
        .args(["solve", &f.path("ss.json")])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_one() {
    let f = Fixture::new();
    let o = run(&["solve", &f.path("bad.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oops"));
    assert_eq!(run(&["solve", &f.path("missing.json")]).status.code(), Some(1));
    assert_eq!(run(&["reduce", "ss_to_ks", &f.path("vc.json")]).status.code(), Some(1));
    assert_eq!(run(&["reduce", "nope", &f.path("ss.json")]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn help_goes_to_stdout() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Usage"));
    assert!(o.stderr.is_empty());
}

#[test]
fn reduce_outputs_target_document() {
    let f = Fixture::new();
    let o = run(&["reduce", "ss_to_p", &f.path("ss.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["problem"], "p");
    assert_eq!(v["numbers"], serde_json::json!([1, 2, 3, 4, 6, 6]));

    let o = run(&["reduce", "dhc_to_uhc", &f.path("k3.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);

    let o = run(&["reduce", "ss_to_p", &f.path("ss.json"), "--trace"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["embedding"].as_array().unwrap().len(), 4);
    assert_eq!(v["target"]["problem"], "p");
}

#[test]
fn stdin_and_dimacs() {
    let f = Fixture::new();
    let mut child = bin()
        .args(["solve", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"problem":"ss","numbers":[1,2,3,4],"target":5}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(stdout(&o).contains("count: 2"));
    let o = run(&["solve", &f.path("f.cnf")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 4"), "{}", stdout(&o));
}

#[test]
fn verify_exit_codes() {
    let f = Fixture::new();
    let o = run(&["verify", "esat_to_mis", &f.path("mis.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("spr: no") && s.ends_with("claims matched: yes\n"), "{s}");
    let o = run(&["verify", "esat_to_mis", &f.path("mis.json"), "--claim", "ssp,spr"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).ends_with("claims matched: no\n"));
    let o = run(&["verify", "tsat_to_esat", "--random", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mismatches 0"));
}

#[test]
fn verify_json_reports() {
    let f = Fixture::new();
    let o = run(&["verify", "ss_to_p", &f.path("ss.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!([2, 2]));
    assert_eq!(v["claims_matched"], true);
}

#[test]
fn certify_prints_partition() {
    let f = Fixture::new();
    let o = run(&["certify", "ss_to_p", &f.path("ss.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid: yes"));
}

#[test]
fn warns_on_non_optimal_k() {
    let f = Fixture::new();
    let o = run(&["solve", &f.path("mvc.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning: k=2"));
}

#[test]
fn graph_paths() {
    let o = run(&["graph", "--path", "esat", "mis", "--require", "ssp,spr"]);
    assert_eq!(stdout(&o), "esat_to_osat, osat_to_mis\n");
    let o = run(&["graph", "--path", "sat", "sat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    let o = run(&["graph", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 40);
}

#[test]
fn output_flag_writes_file() {
    let f = Fixture::new();
    let out = f.path("out.dot");
    let o = run(&["-o", &out, "graph"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(out)
        .unwrap()
        .starts_with("digraph compendium {"));
}

#[test]
fn every_command_is_byte_stable() {
    let f = Fixture::new();
    let (ss, vc, k3, mis) = (
        f.path("ss.json"),
        f.path("vc.json"),
        f.path("k3.json"),
        f.path("mis.json"),
    );
    let cnf = f.path("f.cnf");
    let cases: Vec<Vec<&str>> = vec![
        vec!["solve", &ss, "--all"],
        vec!["solve", &vc, "--all", "--format", "json"],
        vec!["reduce", "dhc_to_uhc", &k3, "--trace"],
        vec!["verify", "esat_to_mis", &mis, "--format", "json"],
        vec!["verify", "mis_to_cq", "--random", "12", "--seed", "5"],
        vec!["certify", "esat_to_osat", &mis],
        vec!["compose", "sat_to_tsat", "tsat_to_esat", "--instance", &cnf],
        vec!["graph", "--format", "dot"],
        vec!["graph", "--format", "json", "--require", "spr"],
        vec!["gen", "dhp", "--count", "3", "--seed", "11"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
    }
}
