// SPDX-License-Identifier: Apache-2.0

mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::corpus_dir;
use revfault::faultlab::BenchmarkReport;

fn revfault(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revfault")).args(args).env_remove("REVFAULT_CORPUS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn corpus(name: &str) -> String {
    corpus_dir().join(format!("{name}.real")).display().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn validate_prints_dimensions() {
    let o = revfault(&["validate", &corpus("rd32")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("gates=4 wires=4 garbage=2"));
}

#[test]
fn validate_reports_line_anchored_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(tmp.path(), "bad.real", ".numvars 3\n.variables a b c\n.begin\nq3 a b c\n.end\n");
    let o = revfault(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    assert!(stderr(&o).contains("q3"));

    let empty = write(tmp.path(), "empty.real", "");
    let o = revfault(&["validate", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing .numvars"));

    let o = revfault(&["validate", "/nonexistent/nope.real"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn truth_dumps_the_fredkin_table() {
    let tmp = tempfile::tempdir().unwrap();
    let f = write(tmp.path(), "fredkin.real", ".numvars 3\n.variables A B C\n.begin\nf3 A B C\n.end\n");
    let o = revfault(&["truth", &f]);
    assert_eq!(o.status.code(), Some(0));
    let want = "A B C\n000 -> 000\n001 -> 001\n010 -> 010\n011 -> 011\n\
                100 -> 100\n101 -> 110\n110 -> 101\n111 -> 111\n";
    assert_eq!(stdout(&o), want);
}

#[test]
fn truth_respects_the_input_cap() {
    let o = revfault(&["truth", &corpus("rd32")]);
    assert_eq!(stdout(&o).lines().count(), 17);
    let o = revfault(&["--max-inputs", "3", "truth", &corpus("rd32")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"), "{}", stderr(&o));
    let o = revfault(&["truth", "--max-inputs", "4", &corpus("rd32")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn implications_on_rd32() {
    let o = revfault(&["implications", &corpus("rd32"), "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let natural: Vec<_> = text.lines().filter(|l| l.contains(" natural ")).collect();
    assert_eq!(natural.len(), 1);
    assert!(natural[0].ends_with("(a=0/1) \u{27f9} (a=0/1)"));
    assert!(text.lines().any(|l| l.contains("artificial [t2 a b] (b=0/1) \u{27f9} (b=0/1)")));

    let o = revfault(&["implications", &corpus("rd32"), "--natural", "--format", "csv"]);
    assert_eq!(stdout(&o), format!("origin,id,placement,implication\nnatural,{},,in:a=0/1 => out:a=0/1\n", natural[0].split(' ').next().unwrap()));
}

#[test]
fn implications_absent_where_expected() {
    for (name, flag) in [("hwb6-56", "--all"), ("ham7-25-49", "--natural")] {
        let o = revfault(&["implications", &corpus(name), flag]);
        assert_eq!(stdout(&o).trim(), "no implications", "{name}");
    }
}

#[test]
fn implication_listing_is_deterministic_across_workers() {
    let a = revfault(&["--workers", "1", "implications", &corpus("9symd2"), "--all", "--format", "json"]);
    let b = revfault(&["--workers", "3", "implications", &corpus("9symd2"), "--all", "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn impact_csv_and_id_lookup() {
    let o = revfault(&["impact", &corpus("rd32"), "--all", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "origin,id,placement,implication,error_detected,error_missed,impact");
    let rows: Vec<&str> = lines.collect();
    assert!(rows[0].starts_with("natural,"));
    assert!(rows.iter().skip(1).all(|r| r.starts_with("artificial,")));
    let id = rows[0].split(',').nth(1).unwrap();
    let last = rows[0].rsplit(',').next().unwrap();
    assert_eq!(last.split('.').nth(1).map(str::len), Some(2));

    let one = revfault(&["impact", &corpus("rd32"), "--implication", id, "--format", "csv"]);
    assert_eq!(stdout(&one).lines().nth(1).unwrap(), rows[0]);

    let bad = revfault(&["impact", &corpus("rd32"), "--implication", "ffffffffffff"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains(id), "{}", stderr(&bad));
}

#[test]
fn report_isolates_a_bad_file() {
    let src = tempfile::tempdir().unwrap();
    for name in common::CORPUS.iter().filter(|n| **n != "rd84-143") {
        std::fs::copy(corpus_dir().join(format!("{name}.real")), src.path().join(format!("{name}.real"))).unwrap();
    }
    write(src.path(), "broken.real", ".numvars 2\n.variables a b\n.begin\nt2 a a\n.end\n");
    let out = tempfile::tempdir().unwrap();
    let o = revfault(&["report", src.path().to_str().unwrap(), "--out", out.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let report = BenchmarkReport::from_json(&std::fs::read_to_string(out.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 10);
    assert_eq!(report.failures(), 1);
    assert_eq!(report.rows.iter().find(|r| r.is_failed()).unwrap().circuit, "broken");
    let t1 = std::fs::read_to_string(out.path().join("tables1.csv")).unwrap();
    let t2 = std::fs::read_to_string(out.path().join("tables2.csv")).unwrap();
    assert_eq!(t1.lines().count(), 11);
    assert_eq!(t2.lines().count(), 11);
    assert!(t2.starts_with("benchmark,natural_number,natural_avg_impact,artificial_number,artificial_avg_impact"));
}

#[test]
fn report_json_round_trips_and_honours_env_override() {
    let src = tempfile::tempdir().unwrap();
    std::fs::copy(corpus_dir().join("rd32.real"), src.path().join("rd32.real")).unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_revfault"))
        .args(["report", "--format", "json", "--out", out.path().to_str().unwrap()])
        .env("REVFAULT_CORPUS", src.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let printed = BenchmarkReport::from_json(&stdout(&o)).unwrap();
    let written = BenchmarkReport::from_json(&std::fs::read_to_string(out.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(printed, written);
    assert_eq!(printed.rows.len(), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = &v[0];
    for key in ["circuit", "gates", "wires", "garbage", "natural", "artificial", "fault_count", "vectors", "wall_ms"] {
        assert!(row.get(key).is_some(), "{key}");
    }
    assert!(row["natural"][0].get("implication").is_some());
    assert!(row["natural"][0].get("impact").is_some());
    assert!(row["artificial"][0].get("placement").is_some());
}

#[test]
fn bench_prints_seed_and_vector_count() {
    let a = stdout(&revfault(&["bench"]));
    assert!(a.contains("wires=10 gates=50 seed="));
    assert!(a.contains("vectors=1024"));
    let b = stdout(&revfault(&["bench"]));
    let strip = |s: &str| s.split(" sim_ms=").next().unwrap().to_string();
    assert_eq!(strip(&a), strip(&b));
    let tiny = stdout(&revfault(&["bench", "--wires", "1", "--gate-count", "1"]));
    assert!(tiny.contains("vectors=2"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(revfault(&["--bogus"]).status.code(), Some(1));
    assert_eq!(revfault(&["impact", &corpus("rd32")]).status.code(), Some(1));
    assert_eq!(revfault(&["--gates", "q9", "implications", &corpus("rd32")]).status.code(), Some(1));
    assert_eq!(revfault(&["--max-inputs", "0", "truth", &corpus("rd32")]).status.code(), Some(1));
    let help = revfault(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("report"));
}

#[test]
fn in_process_runner_matches_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = revfault::cli::run(["revfault", "validate", &corpus("hwb6-56")], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), stdout(&revfault(&["validate", &corpus("hwb6-56")])));
}
