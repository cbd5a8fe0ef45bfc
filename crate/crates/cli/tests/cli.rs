use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const EX1: &str = "context ctop level 0. context cbot level 1. cbot < ctop.\n\
                   module ctop { D(A => B). }\n\
                   module cbot { A(a). -B(a). }\n";

fn sckr(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sckr"))
        .args(args)
        .current_dir(dir)
        .env_remove("CKR_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn setup() -> tempfile::TempDir {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("ex1.ckr"), EX1).unwrap();
    fs::write(d.path().join("ex2.ckr"), EX1.replace("-B(a).", "")).unwrap();
    d
}

#[test]
fn translate_text_and_json() {
    let d = setup();
    let o = sckr(&["translate", "ex1.ckr"], d.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains(":- unsat(main)."));
    let o = sckr(&["translate", "--json", "ex1.ckr"], d.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["rules"].as_array().unwrap().iter().any(|r| r == ":- unsat(main)."));
    assert!(!v["facts"].as_array().unwrap().is_empty());
}

#[test]
fn empty_file_has_no_contexts() {
    let d = setup();
    fs::write(d.path().join("empty.ckr"), "").unwrap();
    let o = sckr(&["translate", "empty.ckr"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no contexts"));
    fs::write(d.path().join("bad.ckr"), "context c level 0. module c { A(a) }").unwrap();
    assert_eq!(sckr(&["models", "bad.ckr"], d.path()).status.code(), Some(2));
}

#[test]
fn models_report() {
    let d = setup();
    let o = sckr(&["models", "--json", "ex1.ckr"], d.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 1);
    assert_eq!(v["models"][0]["overridings"].as_array().unwrap().len(), 1);
    assert_eq!(v["models"][0]["cost"]["1"], 1);

    let v: serde_json::Value = serde_json::from_slice(&sckr(&["models", "--json", "ex2.ckr"], d.path()).stdout).unwrap();
    assert_eq!(v["count"], 1);
    assert!(v["models"][0]["overridings"].as_array().unwrap().is_empty());
}

#[test]
fn inconsistent_and_capped_exit_codes() {
    let d = setup();
    fs::write(d.path().join("inc.ckr"), "context c level 0. module c { A(a). -A(a). }").unwrap();
    let o = sckr(&["models", "--json", "inc.ckr"], d.path());
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 0);
    assert_eq!(sckr(&["query", "inc.ckr", "A(a)@c"], d.path()).status.code(), Some(3));

    assert_eq!(sckr(&["--max-ground-atoms", "3", "models", "ex1.ckr"], d.path()).status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_sckr"))
        .args(["models", "ex1.ckr"])
        .current_dir(d.path())
        .env("CKR_CAPS", "atoms=3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(sckr(&["--no-such-flag"], d.path()).status.code(), Some(1));
}

#[test]
fn queries() {
    let d = setup();
    assert_eq!(stdout(&sckr(&["query", "ex1.ckr", "A(a)@cbot"], d.path())).trim(), "entailed");
    assert_eq!(stdout(&sckr(&["query", "ex1.ckr", "B(a)@cbot"], d.path())).trim(), "not-entailed");
    assert_eq!(sckr(&["query", "ex1.ckr", "A(a)@nowhere"], d.path()).status.code(), Some(1));
    assert_eq!(stdout(&sckr(&["oracle", "query", "ex1.ckr", "-q", "B(a)@cbot"], d.path())).trim(), "not-entailed");
    assert_eq!(stdout(&sckr(&["oracle", "bcq", "ex2.ckr", "B(?x)@cbot"], d.path())).trim(), "entailed");
}

#[test]
fn oracle_models_match_program_models() {
    let d = setup();
    for f in ["ex1.ckr", "ex2.ckr"] {
        let a = sckr(&["models", "--json", f], d.path());
        let b = sckr(&["oracle", "models", "--json", f], d.path());
        assert_eq!(stdout(&a), stdout(&b));
    }
}

#[test]
fn oracle_check_rejects_tampered_models() {
    let d = setup();
    let o = sckr(&["models", "--json", "ex1.ckr"], d.path());
    fs::write(d.path().join("m.json"), &o.stdout).unwrap();
    assert_eq!(stdout(&sckr(&["oracle", "check", "ex1.ckr", "m.json"], d.path())).trim(), "true");

    let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["models"][0]["overridings"] = serde_json::json!([]);
    fs::write(d.path().join("t1.json"), v.to_string()).unwrap();
    assert_eq!(stdout(&sckr(&["oracle", "check", "ex1.ckr", "t1.json"], d.path())).trim(), "false");

    let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["models"][0]["facts_by_context"]["ctop"]["concepts"]["B"] = serde_json::json!(["a"]);
    fs::write(d.path().join("t2.json"), v.to_string()).unwrap();
    assert_eq!(stdout(&sckr(&["oracle", "check", "ex1.ckr", "t2.json"], d.path())).trim(), "false");
}

#[test]
fn compare_streams_one_line_per_instance() {
    let d = setup();
    let mut files = Vec::new();
    for seed in 0..50 {
        let prefix = format!("r{seed}");
        assert!(sckr(&["gen", "random", "--seed", &seed.to_string(), "--out", &prefix], d.path()).status.success());
        files.push(format!("{prefix}.ckr"));
    }
    let mut args = vec!["oracle", "models", "--compare"];
    args.extend(files.iter().map(String::as_str));
    let o = sckr(&args, d.path());
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert_eq!(out.lines().filter(|l| l.ends_with(" same")).count(), 50);
    assert!(out.contains("50 instance(s), 0 diff(s)"));
}

#[test]
fn generators_are_deterministic_and_translate() {
    let d = setup();
    for p in ["a", "b"] {
        let o = sckr(&["gen", "lexmax", "-n", "2", "-m", "2", "--seed", "7", "--out", p], d.path());
        assert!(o.status.success());
    }
    for ext in ["ckr", "query"] {
        let a = fs::read(d.path().join(format!("a.{ext}"))).unwrap();
        assert_eq!(a, fs::read(d.path().join(format!("b.{ext}"))).unwrap());
    }
    assert!(sckr(&["translate", "a.ckr"], d.path()).status.success());
    let o = sckr(&["--mode", "global", "oracle", "query", "--compare", "a.ckr"], d.path());
    assert!(o.status.success(), "{}", stdout(&o));

    assert!(sckr(&["gen", "qbf", "--seed", "1", "--out", "q"], d.path()).status.success());
    let side = fs::read_to_string(d.path().join("q.query")).unwrap();
    assert!(side.lines().next() == Some("mode=induced-local"));
    assert!(sckr(&["translate", "q.ckr"], d.path()).status.success());

    assert!(sckr(&["gen", "oddsat", "-l", "2", "--seed", "4", "--out", "o"], d.path()).status.success());
    let o = sckr(&["oracle", "query", "--compare", "o.ckr"], d.path());
    assert!(o.status.success(), "{}", stdout(&o));

    fs::write(d.path().join("f.cnf"), "p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
    let o = sckr(&["gen", "lexmax", "--dimacs", "f.cnf"], d.path());
    assert!(stdout(&o).contains("context c0"));
}

#[test]
fn report_schema_is_shipped() {
    let schema = include_str!("../../core/schema/model-report.schema.json");
    let s: serde_json::Value = serde_json::from_str(schema).unwrap();
    assert_eq!(s["title"], "sckr model report");
}
