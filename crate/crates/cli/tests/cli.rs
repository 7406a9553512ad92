use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const GAMMA_INF: &str = "# infinite sets need not cancel\ne & f = 0\n|e + f| <= |e|\n!(|f| <= |0|)\n";
const INCOMPARABLE: &str = "!(|a| >= |b|)\n!(|b| >= |a|)\n";
const SUBTRACTION: &str = "x & z = 0\ny & z = 0\n|y + z| >= |x + z|\ngoal: |x| <= |y|\n";
const HALVES: &str = "a1 & a2 = 0\nb1 & b2 = 0\n|a1| = |a2|\n|b1| = |b2|\n|a1 + a2| <= |b1 + b2|\ngoal: |a1| <= |b1|\n";

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cardcomp")).args(args).output().unwrap()
}

fn run_on(args: &[&str], file: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(file.to_str().unwrap());
    run(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gamma_inf_verdicts_per_logic() {
    let w = Workspace::new();
    let p = w.file("g.txt", GAMMA_INF);
    let ded = run_on(&["sat", "--logic", "ded"], &p);
    assert_eq!(code(&ded), 1);
    assert!(stdout(&ded).contains("certificate 1"));
    assert_eq!(code(&run_on(&["sat", "--logic", "fin"], &p)), 1);
    let card = run_on(&["--format", "json", "sat", "--logic", "card"], &p);
    assert_eq!(code(&card), 0);
    let v = json(&card);
    assert_eq!(v["verdict"], "sat");
    assert_eq!(v["model"]["kind"], "infinitary");
}

#[test]
fn default_logic_is_card_and_header_is_honoured() {
    let w = Workspace::new();
    assert_eq!(code(&run_on(&["sat"], &w.file("a.txt", GAMMA_INF))), 0);
    let with_header = format!("logic: ded\n{GAMMA_INF}");
    let p = w.file("b.txt", &with_header);
    assert_eq!(code(&run_on(&["sat"], &p)), 1);
    assert_eq!(code(&run_on(&["sat", "--logic", "card"], &p)), 0);
}

#[test]
fn malformed_input_exits_two() {
    let w = Workspace::new();
    let o = run_on(&["sat"], &w.file("bad.txt", "|a| >= |b|\n|a| >= (b\n"));
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("offset"), "{err}");
    assert_eq!(code(&run(&["sat", "/nonexistent/problem.txt"])), 2);
}

#[test]
fn resource_limits_exit_three() {
    let w = Workspace::new();
    let p = w.file("inc.txt", INCOMPARABLE);
    assert_eq!(code(&run_on(&["sat", "--max-labels", "1"], &p)), 3);
    assert_eq!(code(&run_on(&["sat", "--logic", "ded", "--step-budget", "0"], &p)), 3);
    assert_eq!(code(&run_on(&["oracle", "--step-budget", "10"], &p)), 3);
}

#[test]
fn entailment_commands() {
    let w = Workspace::new();
    for logic in ["fin", "ded"] {
        let o = run_on(&["entail", "--logic", logic], &w.file("sub.txt", SUBTRACTION));
        assert_eq!(code(&o), 0, "{logic}");
    }
    for logic in ["fin", "ded", "card"] {
        let o = run_on(&["--format", "json", "entail", "--logic", logic], &w.file("half.txt", HALVES));
        assert_eq!(code(&o), 0, "{logic}");
        assert_eq!(json(&o)["certificates"][0]["scale"], "2");
    }
    let inf = w.file("inf.txt", "e & f = 0\n|e + f| <= |e|\ngoal: |f| <= |0|\n");
    let o = run_on(&["--format", "json", "entail", "--logic", "card"], &inf);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "not_entailed");
    assert_eq!(code(&run_on(&["entail", "--logic", "ded"], &inf)), 0);
    assert_eq!(code(&run_on(&["entail"], &w.file("nogoal.txt", INCOMPARABLE))), 2);
}

#[test]
fn model_command() {
    let w = Workspace::new();
    let o = run_on(&["--format", "json", "model", "--zf", "--logic", "ded"], &w.file("inc.txt", INCOMPARABLE));
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["model"]["measures"].as_array().unwrap().len(), 2);
    assert_eq!(v["zf"]["families"].as_array().unwrap().len(), 2);

    let o = run_on(&["--format", "json", "model", "--logic", "ded"], &w.file("one.txt", "|a| >= |b|\n"));
    assert_eq!(json(&o)["model"]["measures"].as_array().unwrap().len(), 1);

    let o = run_on(&["model"], &w.file("unsat.txt", "|0'| <= |0|\n"));
    assert_eq!(code(&o), 1);

    let text = stdout(&run_on(&["model", "--zf", "--logic", "ded"], &w.file("inc2.txt", INCOMPARABLE)));
    assert!(text.contains("A_1") && text.contains("A_2"), "{text}");
}

#[test]
fn emitted_artifacts_verify() {
    let w = Workspace::new();
    let cases = [
        ("g.txt", GAMMA_INF, "sat"),
        ("inc.txt", INCOMPARABLE, "sat"),
        ("sub.txt", SUBTRACTION, "entail"),
        ("half.txt", HALVES, "entail"),
    ];
    for (name, body, cmd) in cases {
        let p = w.file(name, body);
        for logic in ["fin", "ded", "card"] {
            let o = run_on(&["--format", "json", cmd, "--logic", logic], &p);
            let report = w.file(&format!("{name}.{logic}.json"), &stdout(&o));
            let v = run(&["verify", report.to_str().unwrap(), p.to_str().unwrap()]);
            assert_eq!(code(&v), 0, "{name} {logic}: {}", stdout(&v));
        }
    }
}

#[test]
fn bare_and_tampered_artifacts() {
    let w = Workspace::new();
    let p = w.file("sub.txt", SUBTRACTION);
    let v = json(&run_on(&["--format", "json", "entail", "--logic", "ded"], &p));
    let cert = v["certificates"][0].clone();
    let bare = w.file("cert.json", &cert.to_string());
    assert_eq!(code(&run(&["verify", bare.to_str().unwrap(), p.to_str().unwrap()])), 0);

    let mut bumped = cert.clone();
    let m: u64 = bumped["premises"][0]["multiplicity"].as_str().unwrap().parse().unwrap();
    bumped["premises"][0]["multiplicity"] = Value::String((m + 1).to_string());
    let bad = w.file("bumped.json", &bumped.to_string());
    assert_eq!(code(&run(&["verify", bad.to_str().unwrap(), p.to_str().unwrap()])), 1);

    let g = w.file("g.txt", GAMMA_INF);
    let model = json(&run_on(&["--format", "json", "model", "--logic", "card"], &g))["model"].clone();
    let m = w.file("model.json", &model.to_string());
    assert_eq!(code(&run(&["verify", m.to_str().unwrap(), g.to_str().unwrap()])), 0);
    // an infinitary model is not a Dedekind-finite witness
    assert_eq!(
        code(&run(&["verify", "--logic", "ded", m.to_str().unwrap(), g.to_str().unwrap()])),
        1
    );
    let other = w.file("other.txt", "|f| <= |0|\n");
    assert_eq!(code(&run(&["verify", m.to_str().unwrap(), other.to_str().unwrap()])), 1);
}

#[test]
fn schema_command() {
    let gfc = run(&["schema", "gfc", "--k", "1", "--l", "2"]);
    assert_eq!(code(&gfc), 0);
    let text = stdout(&gfc);
    assert!(cardcomp::syntax::parse_formula(text.trim()).is_ok(), "{text}");

    let cgfc = run(&["schema", "cgfc", "--tree", "*"]);
    assert_eq!(code(&cgfc), 0);
    assert!(stdout(&cgfc).contains("u"));
    assert_eq!(code(&run(&["schema", "cgfc", "--tree", "(* *)", "--u", "a"])), 2);
    assert_eq!(code(&run(&["schema", "fc", "--n", "1"])), 0);

    let a = stdout(&run(&["--seed", "7", "schema", "gfc", "--random", "--k", "2", "--l", "2"]));
    let b = stdout(&run(&["--seed", "7", "schema", "gfc", "--random", "--k", "2", "--l", "2"]));
    assert_eq!(a, b);
    assert!(cardcomp::syntax::parse_formula(a.trim()).is_ok());
}

#[test]
fn generated_schema_instances_are_valid_in_ded() {
    let w = Workspace::new();
    for seed in 0..5 {
        let f = stdout(&run(&["--seed", &seed.to_string(), "schema", "gfc", "--random", "--k", "1", "--l", "2"]));
        let p = w.file("inst.txt", &format!("goal: {}", f.trim()));
        assert_eq!(code(&run_on(&["entail", "--logic", "ded"], &p)), 0, "seed {seed}: {f}");
    }
}

#[test]
fn oracle_command() {
    let w = Workspace::new();
    let p = w.file("inc.txt", INCOMPARABLE);
    assert_eq!(code(&run_on(&["oracle", "--logic", "ded", "--max-value", "2"], &p)), 0);
    assert_eq!(code(&run_on(&["oracle", "--logic", "fin", "--max-value", "2"], &p)), 1);
    let g = w.file("g.txt", GAMMA_INF);
    let o = run_on(&["--format", "json", "oracle", "--logic", "card", "--max-measures", "1", "--max-value", "1"], &g);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "found");
}

#[test]
fn output_is_deterministic() {
    let w = Workspace::new();
    let p = w.file("inc.txt", INCOMPARABLE);
    for args in [
        vec!["--format", "json", "sat", "--logic", "ded"],
        vec!["model", "--zf"],
        vec!["--format", "json", "sat", "--logic", "fin"],
    ] {
        let a = run_on(&args, &p);
        let b = run_on(&args, &p);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_cardcomp"))
        .args(["sat", "--logic", "ded", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(INCOMPARABLE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
