use std::fs;
use std::process::{Command, Output};

fn cc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
}

#[test]
fn wl_of_the_dodecahedron() {
    let o = cc(&["wl", "catalog:dodecahedron"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "rank"), Some("6"));
}

#[test]
fn wl_of_a_single_vertex_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.txt");
    fs::write(&path, "1 0\n").unwrap();
    let o = cc(&["wl", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "rank"), Some("1"));
}

#[test]
fn s2_of_the_icosahedron() {
    let o = cc(&["s2", "catalog:icosahedron", "--matrix", "L", "--eigenvalue", "auto"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lambda: f64 = field(&out, "lambda").unwrap().parse().unwrap();
    assert!((lambda - (5.0 - 5f64.sqrt())).abs() < 1e-6);
    assert_eq!(field(&out, "W"), Some("4"));
    assert_eq!(field(&out, "faithful"), Some("true"));
}

#[test]
fn json_output_parses() {
    let o = cc(&["--format", "json", "s2", "catalog:cube", "--eigenvalue", "fiedler"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["W"], 4);
}

#[test]
fn rigid_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = cc(&["rigid", "catalog:icosahedron", "--certificate", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "rigid"), Some("true"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(cert).unwrap()).unwrap();
    assert_eq!(v["final_size"], 12);
    assert_eq!(v["rigid"], true);
}

#[test]
fn literal_rule_is_available() {
    let o = cc(&["rigid", "catalog:cube", "--rule", "literal"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "rigid"), Some("false"));
}

#[test]
fn inv_json_feeds_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let o = cc(&["--format", "json", "inv", "catalog:alt5/orbits=20"]);
    assert!(o.status.success());
    fs::write(&path, &o.stdout).unwrap();
    let o = cc(&["wl", path.to_str().unwrap()]);
    assert_eq!(field(&stdout(&o), "rank"), Some("8"));
    let o = cc(&["schurian", path.to_str().unwrap()]);
    assert_eq!(field(&stdout(&o), "schurian"), Some("true"));
    let o = cc(&["tensor", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("r\ts\tt\tc\n"));
}

#[test]
fn group_json_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    fs::write(&path, r#"{"degree": 5, "generators": [[1, 2, 3, 4, 0]]}"#).unwrap();
    let o = cc(&["inv", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "rank"), Some("5"));
}

#[test]
fn search_counts_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let o = cc(&["search", "catalog:sym4I/orbits=6+4", "--emit-witnesses", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "polyhedral"), Some("1"));
    let witnesses: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().starts_with("witness-"))
        .collect();
    assert_eq!(witnesses.len(), 1);
    let o = cc(&["kappa", witnesses[0].path().to_str().unwrap()]);
    assert_eq!(field(&stdout(&o), "polyhedral"), Some("true"));
}

#[test]
fn search_without_filters_keeps_more() {
    let a = stdout(&cc(&["search", "catalog:alt5/orbits=30"]));
    let b = stdout(&cc(&["search", "catalog:alt5/orbits=30", "--no-wl-filter", "--no-phi-reduce"]));
    assert_eq!(field(&a, "wl_exact"), Some("5"));
    assert_eq!(field(&b, "wl_exact"), Some("52"));
}

#[test]
fn planarity_and_connectivity() {
    let o = stdout(&cc(&["planar", "catalog:moebius-kantor"]));
    assert_eq!(field(&o, "planar"), Some("false"));
    assert!(field(&o, "kuratowski").is_some());
    let o = stdout(&cc(&["kappa", "catalog:cube"]));
    assert_eq!(field(&o, "kappa"), Some("3"));
}

#[test]
fn iso_and_aut() {
    let o = stdout(&cc(&["iso", "catalog:cube", "catalog:cube"]));
    assert_eq!(field(&o, "isomorphic"), Some("true"));
    let o = stdout(&cc(&["aut", "catalog:cube"]));
    assert_eq!(field(&o, "order"), Some("48"));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(cc(&["wl", "catalog:no-such-solid"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3\n0 0\n").unwrap();
    assert_eq!(cc(&["wl", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cc(&["s2", "catalog:cube", "--eigenvalue", "7.5"]).status.code(), Some(2));
}

#[test]
fn size_bound_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_cc"))
        .args(["aut", "catalog:dodecahedron"])
        .env("CC_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let a = cc(&["tables"]);
    let b = cc(&["tables"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let row = out.lines().find(|l| l.starts_with("truncated-octahedron\t")).unwrap();
    let cells: Vec<&str> = row.split('\t').collect();
    assert_eq!(&cells[3..6], &["16", "11", "11"]);
}
