//! End-to-end checks of the command-line front end: exit codes, report
//! round-trips, and deterministic output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rigami"))
}

struct Sandbox {
    dir: PathBuf,
}

impl Sandbox {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("rigami-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        Sandbox { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn write_fixtures(&self) {
        let out = bin()
            .args(["fixtures", "--dir"])
            .arg(&self.dir)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
}

impl Drop for Sandbox {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn analyze_json_round_trips() {
    let sandbox = Sandbox::new("analyze");
    sandbox.write_fixtures();
    let out = bin()
        .arg("analyze")
        .arg(sandbox.path("degree3_vertex.json"))
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let report: rigami::report::AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.rank, 2);
    assert_eq!(report.m, 1);
    assert_eq!(report.s, 1);
    assert!(report.prestress_stable);
    let back = serde_json::to_string_pretty(&report).unwrap();
    let reparsed: rigami::report::AnalysisReport = serde_json::from_str(&back).unwrap();
    assert_eq!(report, reparsed);
}

#[test]
fn count_matches_the_expected_shape() {
    let sandbox = Sandbox::new("count");
    sandbox.write_fixtures();
    let out = bin()
        .arg("count")
        .arg(sandbox.path("fig3_composite.json"))
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["I"], 2);
    assert_eq!(v["J"], 11);
    assert_eq!(v["H"], 1);
    assert_eq!(v["K"], 9);
    assert_eq!(v["jacobian_shape"], serde_json::json!([12, 11]));
}

#[test]
fn deterministic_output_for_fixed_seed() {
    let sandbox = Sandbox::new("determinism");
    sandbox.write_fixtures();
    let run = || {
        let out = bin()
            .arg("analyze")
            .arg(sandbox.path("degree5_hole.json"))
            .args(["--format", "json", "--samples", "2000", "--seed", "7"])
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run(), run());
}

#[test]
fn exit_codes_follow_the_contract() {
    let sandbox = Sandbox::new("exits");
    sandbox.write_fixtures();

    // Unknown subcommand: usage, exit 2.
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Unknown flag: usage, exit 2.
    let out = bin()
        .arg("analyze")
        .arg(sandbox.path("degree3_vertex.json"))
        .arg("--frobnicate")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Missing file: input error, exit 2.
    let out = bin()
        .arg("analyze")
        .arg(sandbox.path("missing.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Schematic structure without lenient geometry: input error, exit 2.
    let out = bin()
        .arg("analyze")
        .arg(sandbox.path("degree5_hole_eq21.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // With lenient geometry the statics pipeline runs.
    let out = bin()
        .arg("jacobian")
        .arg(sandbox.path("degree5_hole_eq21.json"))
        .arg("--lenient-geometry")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not planar"));

    // Unresolvable load: analysis error, exit 1.
    std::fs::write(
        sandbox.path("bad_load.json"),
        r#"{"load": [1.0, 1.0, 1.0]}"#,
    )
    .unwrap();
    let out = bin()
        .arg("resolve-load")
        .arg(sandbox.path("degree3_vertex.json"))
        .arg("--load")
        .arg(sandbox.path("bad_load.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resolve_load_reports_per_unit_stress() {
    let sandbox = Sandbox::new("load");
    sandbox.write_fixtures();
    std::fs::write(sandbox.path("load.json"), r#"{"load": [1.0, 0.5, -1.5]}"#).unwrap();
    let out = bin()
        .arg("resolve-load")
        .arg(sandbox.path("degree3_vertex.json"))
        .arg("--load")
        .arg(sandbox.path("load.json"))
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let entries: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["kind"], "vertex");
    assert!(entries[0]["force"].is_null());
}

#[test]
fn prestress_and_second_order_subcommands() {
    let sandbox = Sandbox::new("stab");
    sandbox.write_fixtures();
    let out = bin()
        .arg("prestress")
        .arg(sandbox.path("degree3_vertex.json"))
        .args(["--search", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: rigami::report::StabilityReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.classification, "prestress-stable");
    assert!(report.certified_t.is_some());

    // Explicit destabilizing stress.
    std::fs::write(sandbox.path("neg.json"), r#"{"stress": [0.0, 0.0, -1.0]}"#).unwrap();
    let out = bin()
        .arg("prestress")
        .arg(sandbox.path("degree3_vertex.json"))
        .arg("--stress")
        .arg(sandbox.path("neg.json"))
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: rigami::report::StabilityReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.classification, "not-stable");

    let out = bin()
        .arg("second-order")
        .arg(sandbox.path("degree4_cone.json"))
        .arg("--classify")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("second-order foldable"));

    std::fs::write(sandbox.path("flex.json"), r#"{"flex": [1.0, 1.0, 1.0]}"#).unwrap();
    let out = bin()
        .arg("second-order")
        .arg(sandbox.path("degree3_vertex.json"))
        .arg("--flex")
        .arg(sandbox.path("flex.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("blocked"));
}

#[test]
fn double_cone_exports_labelled_bars() {
    let sandbox = Sandbox::new("cone");
    sandbox.write_fixtures();
    let out = bin()
        .arg("double-cone")
        .arg(sandbox.path("tetrahedron.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let export: rigami::barjoint::FrameworkExport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(export.joints.len(), 12);
    assert_eq!(export.bars.len(), 30);
    assert_eq!(export.crease_bars.len(), 6);
}
