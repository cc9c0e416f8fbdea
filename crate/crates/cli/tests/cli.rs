use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delbound")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("delbound-cli-{}-{name}", std::process::id()))
}

#[test]
fn single_bounds_are_exact_rationals() {
    let o = run(&["bound", "single", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["entries"]["closed_form_single"]["exact"], "62/5");
    assert_eq!(v["entries"]["transversal_sum"]["floored"], "12");
    assert_eq!(v["entries"]["levenshtein"]["exact"], "18");
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["bound", "single", "--q", "1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alphabet"));
}

#[test]
fn resource_caps_exit_three() {
    assert_eq!(run(&["lp", "solve", "--n", "30"]).status.code(), Some(3));
    assert_eq!(run(&["exact", "mis", "--n", "20"]).status.code(), Some(3));
}

#[test]
fn vt_code_roundtrips_through_verify() {
    let o = run(&["codes", "vt", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 16);
    let path = scratch("vt7.txt");
    std::fs::write(&path, o.stdout).unwrap();
    let v = run(&["codes", "verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["valid"], true);
    std::fs::remove_file(path).ok();
}

#[test]
fn invalid_codebook_exits_two() {
    let path = scratch("bad.txt");
    std::fs::write(&path, "000\n001\n").unwrap();
    let o = run(&["codes", "verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violation"], serde_json::json!(["000", "001"]));
    std::fs::remove_file(path).ok();
}

#[test]
fn exact_search_reports_witness() {
    let o = run(&["exact", "mis", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["size"], 10);
    assert_eq!(v["proven_optimal"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 10);
}

#[test]
fn mps_export_is_well_formed() {
    let o = run(&["lp", "export", "--n", "3", "--integer"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for section in ["NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"] {
        assert!(text.lines().any(|l| l.starts_with(section)), "{section}");
    }
    assert_eq!(text.lines().filter(|l| l.starts_with(" L ")).count(), 4);
}

#[test]
fn ternary_table_matches() {
    let o = run(&["table", "1b"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("3,1,8,"));
    assert!(last.contains(",278,tenengolts("));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn fig2_shows_dominance() {
    let o = run(&["fig", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 49);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn suites_pass() {
    for name in ["invariants", "oracles", "duality", "rll"] {
        let o = run(&["suite", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(1));
}
