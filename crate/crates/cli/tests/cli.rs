use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn foliate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foliate"))
        .args(args)
        .env_remove("FOLIATE_MAX_PAIR_REDUCTIONS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn make_l1111(dir: &TempDir) -> PathBuf {
    let out = dir.path().join("l1111.form");
    let o = foliate(&["make", "logarithmic", "--factors", "z0,z1,z2,z3", "--weights", "1,1,1,-3", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

#[test]
fn make_then_check_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = make_l1111(&dir);
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.contains("expected-degree 2"));
    assert!(text.contains("form (z1*z2*z3) dz0 + (z0*z2*z3) dz1 + (z0*z1*z3) dz2 + (-3*z0*z1*z2) dz3"));
    let o = foliate(&["check", s(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("integrable: true"));
    assert!(stdout(&o).contains("codim 2: true"));
}

#[test]
fn classify_tetrahedron_json() {
    let dir = TempDir::new().unwrap();
    let f = make_l1111(&dir);
    let o = foliate(&["classify", s(&f), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["degree"], 2);
    for key in ["integrable", "saturated", "curve", "acm", "split"] {
        assert_eq!(v["verdicts"][key], true, "{key}");
    }
    assert_eq!(v["splitting_type"], serde_json::json!([0, 0]));
    assert_eq!(v["rao"], serde_json::json!({}));
    assert_eq!(v["details"]["betti"], serde_json::json!([{"0": 1}, {"3": 4}, {"4": 3}]));
    for key in ["input", "degree", "verdicts", "splitting_type", "rao", "family", "details", "timings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn reports_are_stable_apart_from_timings() {
    let dir = TempDir::new().unwrap();
    let f = make_l1111(&dir);
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.contains("total_ms")).collect::<Vec<_>>().join("\n");
    for cmd in ["classify", "determine", "family", "syzygies"] {
        let a = foliate(&[cmd, s(&f), "--json"]);
        let b = foliate(&[cmd, s(&f), "--json"]);
        assert_eq!(strip(&a), strip(&b), "{cmd}");
        let t1 = foliate(&[cmd, s(&f)]);
        let t2 = foliate(&[cmd, s(&f)]);
        assert_eq!(t1.stdout, t2.stdout, "{cmd}");
    }
}

#[test]
fn determine_verdicts() {
    let dir = TempDir::new().unwrap();
    let e = dir.path().join("exceptional_d2.form");
    assert_eq!(code(&foliate(&["make", "exceptional", "-d", "2", "-o", s(&e)])), 0);
    let o = foliate(&["determine", s(&e)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("determination: unique"), "{}", stdout(&o));

    let f = make_l1111(&dir);
    let v = json(&foliate(&["determine", s(&f), "--json"]));
    assert_eq!(v["verdicts"]["determination"], "non-unique");
    assert!(v["details"]["witness"].as_str().unwrap().contains("dz3"));
}

#[test]
fn family_of_pullbacks() {
    let dir = TempDir::new().unwrap();
    let plane = dir.path().join("plane.form");
    let o =
        foliate(&["make", "logarithmic", "--plane", "--factors", "z0,z1,z2", "--weights", "1,1,-2", "-o", s(&plane)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let pb = dir.path().join("pb.form");
    assert_eq!(code(&foliate(&["make", "pullback", s(&plane), "-o", s(&pb)])), 0);
    let v = json(&foliate(&["family", s(&pb), "--json"]));
    assert_eq!(v["family"]["integrable"], "positive-dimensional");
    assert_eq!(v["family"]["members"].as_array().unwrap().len(), 2);

    let v = json(&foliate(&["syzygies", s(&pb), "--json"]));
    assert_eq!(v["details"]["constant_syzygy_dim"], 1);
    assert_eq!(v["details"]["constant_syzygies"], serde_json::json!(["(1, 0, 0, 0)"]));

    // plane forms report saturation only
    let v = json(&foliate(&["classify", s(&plane), "--json"]));
    assert_eq!(v["verdicts"]["saturated"], true);
    assert_eq!(v["verdicts"]["split"], Value::Null);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let euler = write(&dir, "euler.form", "ring z0 z1 z2 z3\nform (z0) dz0\n");
    let o = foliate(&["check", s(&euler)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("2:1") && stderr(&o).contains("z0^2"), "{}", stderr(&o));

    let syntax = write(&dir, "syntax.form", "ring z0 z1 z2 z3\nform (z1) dz0 -\n");
    let o = foliate(&["classify", s(&syntax)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("2:16"), "{}", stderr(&o));

    let contact = write(&dir, "contact.form", "ring z0 z1 z2 z3\nform (z1) dz0 - (z0) dz1 + (z3) dz2 - (z2) dz3\n");
    for cmd in ["check", "classify", "family", "determine"] {
        assert_eq!(code(&foliate(&[cmd, s(&contact)])), 2, "{cmd}");
    }
    assert_eq!(code(&foliate(&["syzygies", s(&contact)])), 0);

    let f = make_l1111(&dir);
    let o = foliate(&["classify", s(&f), "--max-pair-reductions", "1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("budget"));
    let o = Command::new(env!("CARGO_BIN_EXE_foliate"))
        .args(["classify", s(&f)])
        .env("FOLIATE_MAX_PAIR_REDUCTIONS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);

    let quadric = write(
        &dir,
        "l112.form",
        &stdout(&foliate(&["make", "logarithmic", "--factors", "z0,z1,z0^2+z1^2+z2^2+z3^2", "--weights", "1,1,-1"])),
    );
    let o = foliate(&["determine", s(&quadric)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("split"));
    assert_eq!(code(&foliate(&["classify", s(&quadric)])), 0);
}

#[test]
fn corpus_directory_mode() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    let o = foliate(&["make", "corpus", s(&corpus)]);
    assert_eq!(code(&o), 0);
    let written = stdout(&o).lines().count();
    assert!(written >= 12);
    std::fs::write(corpus.join("notes.txt"), "ignored").unwrap();
    let o = foliate(&["classify", "--dir", s(&corpus), "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let items = json(&o);
    let items = items.as_array().unwrap();
    assert_eq!(items.len(), written);
    let mut inputs = Vec::new();
    for item in items {
        assert_eq!(item["details"]["routes_agree"], true, "{}", item["input"]);
        assert_eq!(
            item["verdicts"]["split"],
            item["verdicts"]["acm"].as_bool().unwrap() && item["verdicts"]["curve"].as_bool().unwrap()
        );
        inputs.push(item["input"].as_str().unwrap().to_string());
    }
    let mut sorted = inputs.clone();
    sorted.sort();
    assert_eq!(inputs, sorted);

    // a broken file raises the exit code but the rest still report
    write(&dir, "corpus/zz_broken.form", "ring z0 z1 z2 z3\nform dz0\n");
    let o = foliate(&["classify", "--dir", s(&corpus), "--json"]);
    assert_eq!(code(&o), 1);
    let items = json(&o);
    assert_eq!(items.as_array().unwrap().len(), written + 1);
    assert_eq!(items[written]["exit"], 1);
}

#[test]
fn invariance_flag() {
    let dir = TempDir::new().unwrap();
    let f = make_l1111(&dir);
    let v = json(&foliate(&["classify", s(&f), "--invariance", "2", "--seed", "9", "--json"]));
    assert_eq!(v["details"]["invariance"], "unchanged under 2 projectivities (seed 9)");
}

#[test]
fn engine_commands() {
    let fat = ["z0^2", "z0*z1", "z0*z2", "z0*z3"];
    for method in ["colon", "variables"] {
        let mut args = vec!["sat", "--method", method, "--json"];
        args.extend(fat);
        let v = json(&foliate(&args));
        assert_eq!(v["verdicts"]["saturated"], false);
        assert_eq!(v["details"]["saturation"], serde_json::json!(["z0"]));
    }
    let v = json(&foliate(&["gb", "--nvars", "3", "--order", "lex", "z0 - z1^2", "z1 - z2^3", "--json"]));
    assert_eq!(v["details"]["basis"].as_array().unwrap().len(), 2);
    assert_eq!(code(&foliate(&["gb", "--nvars", "3", "z0 +"])), 1);

    let dir = TempDir::new().unwrap();
    let f = make_l1111(&dir);
    let v = json(&foliate(&["sat", "--form", s(&f), "--json"]));
    assert_eq!(v["verdicts"]["saturated"], true);
    let v = json(&foliate(&["gb", "--form", s(&f), "--json"]));
    assert_eq!(v["details"]["krull_dim"], 2);
}

#[test]
fn pencil_and_stdout_output() {
    let o = foliate(&["make", "pencil", "--i", "0", "--j", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "expected-degree 0\nring z0 z1 z2 z3\nform (z1) dz0 + (-z0) dz1\n");
    let o = foliate(&["make", "exceptional", "-d", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn checked_in_corpus_is_current() {
    let dir = TempDir::new().unwrap();
    let fresh = dir.path().join("corpus");
    assert_eq!(code(&foliate(&["make", "corpus", s(&fresh)])), 0);
    let repo = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut names: Vec<_> = std::fs::read_dir(&fresh).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    for name in names {
        let want = std::fs::read_to_string(fresh.join(&name)).unwrap();
        let have = std::fs::read_to_string(repo.join(&name)).unwrap_or_default();
        assert_eq!(have, want, "corpus/{} is stale; regenerate with `foliate make corpus corpus`", name.to_string_lossy());
    }
}
