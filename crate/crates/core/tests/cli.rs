use std::process::{Command, Output};

use hyperquintic::cli::{Payload, ReportDocument};

fn quintic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintic")).args(args).output().expect("binary runs")
}

fn document(args: &[&str]) -> ReportDocument {
    let out = quintic(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid report document")
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["census", "--n", "2"][..],
        &["verify", "--n", "8", "--alpha", "0", "--beta", "1"],
        &["verify", "--n", "8", "--alpha", "1", "--beta", "b"],
        &["arnold", "--n", "0", "--degree", "5"],
        &["pentagon", "--n", "2"],
        &["tables", "--which", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(quintic(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn unsupported_dimension_exits_with_two() {
    let out = quintic(&["census", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn arnold_document() {
    let doc = document(&["arnold", "--n", "8", "--degree", "5"]);
    assert_eq!(doc.command, "arnold");
    match doc.payload {
        Payload::Arnold(a) => assert_eq!(a.value, "27876"),
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn verify_best_member() {
    let doc = document(&["verify", "--n", "8", "--alpha", "3", "--beta", "-1"]);
    let Payload::Verify(v) = doc.payload else { panic!("verify payload") };
    assert_eq!(v.result.total_nodes, 23436);
    assert!(v.result.all_nodes && !v.result.exceptional);
    assert!(doc.warnings.is_empty(), "{:?}", doc.warnings);
}

#[test]
fn verify_quadratic_member() {
    // b^2 = 85, the member (30 : -13 + sqrt 85)
    let doc = document(&["verify", "--n", "8", "--alpha", "30", "--beta", "-13 + b", "--field", "b^2 - 85"]);
    let Payload::Verify(v) = doc.payload else { panic!("verify payload") };
    assert_eq!(v.result.total_nodes, 17136);
}

#[test]
fn exceptional_member_is_flagged() {
    let doc = document(&["verify", "--n", "8", "--alpha", "5", "--beta", "-3"]);
    let Payload::Verify(v) = doc.payload else { panic!("verify payload") };
    assert!(v.result.exceptional && !v.result.all_nodes);
    assert!(doc.warnings.iter().any(|w| w.contains("exceptional")));
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        let mut v: serde_json::Value =
            serde_json::from_slice(&quintic(&["census", "--n", "6"]).stdout).expect("json");
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn json_round_trip() {
    let out = quintic(&["census", "--n", "5"]);
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).expect("json");
    let again: ReportDocument = serde_json::from_str(&hyperquintic::cli::to_json(&doc)).expect("json");
    assert_eq!(doc, again);
    let Payload::Census(r) = doc.payload else { panic!("census payload") };
    assert_eq!(r.best_node_count(), 210);
}

#[test]
fn table_formats() {
    let md = quintic(&["--format", "md", "tables", "--which", "1"]);
    assert!(md.status.success());
    let md = String::from_utf8(md.stdout).unwrap();
    assert!(md.contains("| 12600 |"), "{md}");
    assert!(md.contains("beta*c^2 + (3*alpha + 4*beta)"));

    let csv = quintic(&["--format", "csv", "tables", "--which", "3"]);
    assert!(csv.status.success());
    let csv = String::from_utf8(csv.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,symmetric,pentagon,Ar_n(5)"));
    assert!(csv.lines().any(|l| l == "8,23436,23126,27876"), "{csv}");
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("quintic-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pentagon.json");
    let out = quintic(&["--out", path.to_str().unwrap(), "pentagon", "--n", "8"]);
    assert!(out.status.success());
    let doc: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let Payload::Pentagon(p) = doc.payload else { panic!("pentagon payload") };
    assert_eq!(p.affine_count, "23126");
    std::fs::remove_dir_all(&dir).ok();
}
