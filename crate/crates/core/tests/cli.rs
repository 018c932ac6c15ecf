use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tautforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(tautforge(&["--help"]).status.code(), Some(0));
    assert_eq!(tautforge(&["--version"]).status.code(), Some(0));
}

#[test]
fn unknown_subcommand_exits_one() {
    let out = tautforge(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn garbage_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.tri",
        "tautri 1\ntets 1\ntet 0: 0 1023 | banana\n",
    );
    let out = tautforge(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let missing = dir.path().join("missing.tri");
    assert_eq!(
        tautforge(&["validate", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn validate_corpus_file() {
    let out = tautforge(&["validate", &data("ptorus_RL.tri"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tet_count"], 2);
    assert_eq!(v["edge_class_count"], 2);
}

#[test]
fn layer_then_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("f8.tri");
    let out = tautforge(&[
        "layer",
        "--surface",
        "ptorus",
        "--word",
        "RL",
        "--out",
        out_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tetrahedra"], 2);
    assert_eq!(v["cusps"], 1);

    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        written,
        std::fs::read_to_string(data("ptorus_RL.tri")).unwrap()
    );

    let out = tautforge(&["taut", "enumerate", out_path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["count"].as_u64().unwrap() >= 1);

    let out = tautforge(&["taut", "check", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn layer_from_spec_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = tautforge::layering::MonodromySpec::from_ptorus_word("RRL").unwrap();
    let spec_path = write(dir.path(), "spec.json", &spec.to_json());
    let out_path = dir.path().join("m.tri");
    let out = tautforge(&[
        "layer",
        "--spec",
        &spec_path,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        std::fs::read_to_string(data("ptorus_RRL.tri")).unwrap()
    );
}

#[test]
fn layer_construction_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.tri");
    let out = tautforge(&[
        "layer",
        "--surface",
        "ptorus",
        "--word",
        "RR",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = tautforge(&[
        "layer",
        "--surface",
        "ptorus",
        "--word",
        "RX",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_taut_coorientation_exits_two() {
    use tautforge::taut::{check_full_taut, Coorientation};
    use tautforge::tri::format::{parse, serialize};
    let tri = parse(&std::fs::read_to_string(data("ptorus_RL.tri")).unwrap())
        .unwrap()
        .tri;
    let bad = Coorientation::all(&tri)
        .find(|c| !check_full_taut(&tri, c))
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c.tri",
        &serialize(&tri, Some(&bad.tet_flags(&tri))),
    );
    let out = tautforge(&["taut", "check", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stdout).contains("taut            false"));
}

#[test]
fn coor_index_out_of_range_exits_one() {
    let out = tautforge(&["taut", "check", &data("ptorus_RL.tri"), "--coor", "999"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn carried_lists_fiber() {
    let out = tautforge(&[
        "carried",
        &data("ptorus_RL.tri"),
        "--max-total",
        "2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sols = v["solutions"].as_array().unwrap();
    assert!(sols
        .iter()
        .any(|s| s["total"] == 2 && s["euler_characteristic"] == -1));
}

#[test]
fn discs_reports_counts() {
    let out = tautforge(&[
        "discs",
        &data("ptorus_RL.tri"),
        "--tet",
        "0",
        "--max-cusps",
        "4",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["patterns"], 118);
    assert_eq!(v["arc_table"].as_array().unwrap().len(), 72);
    let out = tautforge(&["discs", &data("ptorus_RL.tri"), "--tet", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn flippath_between_surfaces() {
    use tautforge::surface::format::serialize_surface;
    use tautforge::surface::SurfaceIdealTri;
    let dir = tempfile::tempdir().unwrap();
    let a = SurfaceIdealTri::punctured_surface(1, 2).unwrap();
    let b = a.apply_flip(0).unwrap();
    let pa = write(dir.path(), "a.surf", &serialize_surface(&a));
    let pb = write(dir.path(), "b.surf", &serialize_surface(&b));
    let out = tautforge(&["flippath", &pa, &pb, "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["length"], 1);

    let far = SurfaceIdealTri::punctured_surface(0, 5).unwrap();
    let pf = write(dir.path(), "f.surf", &serialize_surface(&far));
    assert_eq!(tautforge(&["flippath", &pa, &pf]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "discs",
        &data("ptorus_RLL.tri"),
        "--tet",
        "2",
        "--max-cusps",
        "4",
        "--json",
    ];
    let runs: Vec<Output> = (0..3).map(|_| tautforge(&args)).collect();
    assert!(runs.windows(2).all(|w| w[0].stdout == w[1].stdout));
}
