use std::process::{Command, Output};

fn cdkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdkit"))
        .args(args)
        .output()
        .expect("run cdkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn info_reports_basic_invariants() {
    let o = cdkit(&["info", "Q8"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for line in [
        "order: 8",
        "abelian: false",
        "nilpotent: true",
        "center order: 2",
        "exponent: 4",
    ] {
        assert!(s.contains(line), "{line} missing from\n{s}");
    }
}

#[test]
fn cd_table_and_summary() {
    let o = cdkit(&["cd", "S3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.ends_with("m* = 9, δ = 5, v = 3\n"), "{s}");
    assert_eq!(
        s.lines()
            .filter(|l| l.trim_start().starts_with('H') && !l.contains("|H|"))
            .count(),
        6
    );
}

#[test]
fn cd_json_has_fixed_field_order() {
    let o = cdkit(&["cd", "C6", "--json"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let keys = [
        "\"label\"",
        "\"order\"",
        "\"m_star\"",
        "\"image\"",
        "\"delta\"",
        "\"v\"",
        "\"cd_member_count\"",
        "\"flags\"",
        "\"checks\"",
    ];
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| s.find(k).unwrap_or_else(|| panic!("{k}")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{s}");
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["m_star"], "36");
    assert_eq!(v["delta"], 3);
    assert_eq!(v["image"], serde_json::json!(["6", "12", "18", "36"]));
}

#[test]
fn dot_output_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.dot");
    let o = cdkit(&["cd", "Q8", "--dot", path.to_str().unwrap()]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph \"Q8\" {"));
    assert_eq!(dot.matches("->").count(), 7);
    assert_eq!(dot.matches("doublecircle").count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(cdkit(&["cd", "nonsense"]).status.code(), Some(2));
    assert_eq!(cdkit(&["cd", "C5000"]).status.code(), Some(4));
    assert_eq!(cdkit(&["cd", "metacyclic(7,3,3)"]).status.code(), Some(3));
    assert_eq!(cdkit(&["bogus"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "cayley 2\n1 0\n0 1\n").unwrap();
    let arg = format!("@{}", bad.display());
    assert_eq!(cdkit(&["info", &arg]).status.code(), Some(3));
    std::fs::write(&bad, "cayley 2\n0 1\n").unwrap();
    assert_eq!(cdkit(&["info", &arg]).status.code(), Some(2));
}

#[test]
fn export_then_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m27.grp");
    assert!(cdkit(&["export", "M27", path.to_str().unwrap()])
        .status
        .success());
    let o = cdkit(&["cd", &format!("@{}", path.display())]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("m* = 81, δ = 4, v = 2\n"));
}

#[test]
fn scan_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.json");
    let o = cdkit(&[
        "scan",
        "--max-order",
        "20",
        "--check",
        "delta",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["max_order"], 20);
    assert_eq!(v["check"], "delta");
    assert_eq!(v["summary"]["counterexamples"], 0);
    assert!(cdkit(&["scan", "--max-order", "500"]).status.code() != Some(0));
}

#[test]
fn documented_examples() {
    let s = stdout(&cdkit(&["cd", "Q8"]));
    assert!(s.ends_with("m* = 16, δ = 1, v = 1\n"), "{s}");
    assert!(s.contains("CD members: H1 H2 H3 H4 H5\n"), "{s}");
    assert!(stdout(&cdkit(&["cd", "C9"])).ends_with("m* = 81, δ = 2, v = 2\n"));
    let info = stdout(&cdkit(&["info", "M27"]));
    assert!(info.contains("order: 27") && info.contains("abelian: false"));
    assert!(info.contains("center order: 3") && info.contains("structure: ModularM(3,3)"));
}

#[test]
fn trivial_scan_and_nilpotent_listing() {
    let o = cdkit(&["scan", "--max-order", "1", "--check", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("groups scanned: 1\n"));
    let o = cdkit(&["scan", "--max-order", "60", "--check", "v"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let line = s
        .lines()
        .find(|l| l.starts_with("nilpotent with v = 3:"))
        .unwrap();
    let labels: Vec<&str> = line.split_whitespace().collect();
    for l in ["C6", "C8", "C27"] {
        assert!(labels.contains(&l), "{line}");
    }
}
