use std::path::PathBuf;
use std::process::{Command, Output};

use cuntzlab::repro::strict3;
use cuntzlab::structure_file::StructureFile;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntzlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bivariant_catalog_e2_e3() {
    let o = run(&["bivariant", "--catalog", "E2", "E3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{0,2,3,inf}");
}

#[test]
fn axioms_report_o5_witness() {
    let o = run(&["axioms", &data("homE2E3.json"), "--check", "o5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("(2,2,0,0,3)"), "{}", stdout(&o));
    let j = run(&["--json", "axioms", &data("homE2E3.json"), "--check", "o5"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["checks"]["o5"]["witnesses"][0], serde_json::json!(["2", "2", "0", "0", "3"]));
    let e3 = run(&["hom", "E0", "E3", "--bivariant"]);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.json");
    std::fs::write(&f, &e3.stdout).unwrap();
    assert_eq!(run(&["axioms", f.to_str().unwrap(), "--check", "o5,o6"]).status.code(), Some(0));
}

#[test]
fn tau_of_strict3() {
    let o = run(&["tau", &data("strict3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{0}");
}

#[test]
fn data_files_are_canonical() {
    let hom = run(&["hom", "E2", "E3", "--bivariant"]);
    assert_eq!(stdout(&hom), std::fs::read_to_string(data("homE2E3.json")).unwrap());
    let s = StructureFile::from_q("strict3", &strict3()).to_json();
    assert_eq!(s, std::fs::read_to_string(data("strict3.json")).unwrap());
}

#[test]
fn written_files_reload_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for (s, t) in [("E1", "E2"), ("E0+E0", "E1"), ("0", "E2")] {
        for flag in [None, Some("--bivariant")] {
            let mut args = vec!["hom", s, t];
            args.extend(flag);
            let o = run(&args);
            assert_eq!(o.status.code(), Some(0));
            let text = stdout(&o);
            let back = StructureFile::parse(&text).unwrap();
            assert!(back.report().unwrap().is_empty());
            assert_eq!(back.to_json(), text);
            let path = dir.path().join("h.json");
            std::fs::write(&path, &text).unwrap();
            assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["tau"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["tau", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["bivariant", "E2", "Z"]).status.code(), Some(1));
    assert_eq!(run(&["tensor", "M1", "M1"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name":"x","elements":["0","1"],"zero":"0","add":[[0,1],[1,0]],"leq":[[1,1],[0,1]]}"#)
        .unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("associativity") || stdout(&o).contains("add-compatibility"), "{}", stdout(&o));
}

#[test]
fn compose_evaluate_tensor() {
    let o = run(&["compose", "Pbar->Pbar:soft(2)", "Pbar->Pbar:soft(3)"]);
    assert_eq!(stdout(&o).trim(), "Pbar->Pbar:soft(6)");
    let o = run(&["compose", "Nbar^3->Nbar^2:mat[[1,0,2],[0,1,inf]]", "Nbar^2->Nbar^3:mat[[1,1],[0,2],[3,0]]"]);
    assert_eq!(stdout(&o).trim(), "Nbar^2->Nbar^2:mat[[7,1],[inf,2]]");
    let o = run(&["compose", "E2->E3:2", "E1->E2:2"]);
    assert_eq!(stdout(&o).trim(), "E1->E3:inf");
    assert_eq!(stdout(&run(&["evaluate", "Pbar->Pbar:soft(2)", "3"])).trim(), "6");
    assert_eq!(stdout(&run(&["evaluate", "E1->E2:2", "1"])).trim(), "2");
    assert_eq!(stdout(&run(&["tensor", "R2", "R3"])).trim(), "R{2,3}");
    assert_eq!(stdout(&run(&["tensor", "E2", "Nbar"])).trim(), "E2");
    assert_eq!(run(&["compose", "nonsense", "E1->E2:2"]).status.code(), Some(1));
}

#[test]
fn adjunction_solid_catalog() {
    let o = run(&["adjunction", "E0", "E1", "E0+E0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("holds\n"));
    let o = run(&["--json", "solid", "M1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["statuses"], serde_json::json!([false, false, true, true, true]));
    assert!(stdout(&run(&["catalog", "list"])).contains("Pbar"));
    assert_eq!(run(&["catalog", "show", "Q"]).status.code(), Some(0));
    assert_eq!(run(&["catalog", "show", "Nope"]).status.code(), Some(1));
}

#[test]
fn repro_json_matches_golden() {
    let o = run(&["--json", "repro", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("golden/repro_all.json");
    assert_eq!(stdout(&o), golden);
    let one = run(&["repro", "ihom-R2-R3"]);
    assert!(stdout(&one).starts_with("PASS ihom-R2-R3: Pbar; Cu={0}"));
    assert_eq!(run(&["repro", "missing"]).status.code(), Some(1));
}

#[test]
fn path_command() {
    let o = run(&["path", "Pbar", "cut(scaled(2),1/4)", "--at", "1/2", "--compare", "scaled(2)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("value at 1/2: 1/2"), "{s}");
    assert!(s.contains("below: Le"), "{s}");
    assert_eq!(run(&["path", &data("strict3.json"), "const(0)"]).status.code(), Some(0));
    let o = run(&["path", &data("strict3.json"), "const(1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not self-related"));
    assert_eq!(run(&["path", "Pbar", "stitch[(1/2,const(2)),(1,const(1))]"]).status.code(), Some(1));
}
