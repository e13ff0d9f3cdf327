use std::path::Path;
use std::process::{Command, Output};

use fnr_core::closedform::contains;
use fnr_core::{Branch, Containment};
use tempfile::TempDir;

fn fnr(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fnr"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("FNR_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn rows(csv_text: &str) -> Vec<Vec<String>> {
    let mut rd = csv::Reader::from_reader(csv_text.as_bytes());
    rd.records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for dir in [&a, &b] {
        assert_eq!(code(&fnr(&["support-lines", "--r", "0.5"], dir.path())), 0);
        assert_eq!(code(&fnr(&["boundary", "--r", "0.5"], dir.path())), 0);
        assert_eq!(code(&fnr(&["resultant", "--r", "1/2", "--degree-bound", "20"], dir.path())), 0);
        assert_eq!(code(&fnr(&["verify", "--N", "64"], dir.path())), 0);
    }
    for name in [
        "support-lines.csv",
        "support-lines.svg",
        "boundary.csv",
        "boundary.svg",
        "resultant.json",
        "resultant.txt",
        "verify.json",
    ] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
}

#[test]
fn support_lines_csv() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&fnr(&["support-lines", "--r", "0.5", "--samples", "180"], dir.path())), 0);
    let text = read(dir.path(), "support-lines.csv");
    assert!(text.starts_with("theta,offset\n"));
    let rows = rows(&text);
    assert_eq!(rows.len(), 180);
    let zero = rows.iter().find(|r| r[0].parse::<f64>().unwrap() == 0.0).unwrap();
    assert_eq!(zero[1].parse::<f64>().unwrap(), 1.5);
    // 17 significant digits
    assert_eq!(zero[1], "1.5000000000000000e0");
}

#[test]
fn zero_radius_support_lines_are_the_unit_circle() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&fnr(&["support-lines", "--r", "0"], dir.path())), 0);
    for row in rows(&read(dir.path(), "support-lines.csv")) {
        assert_eq!(row[1].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn boundary_csv_contents() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&fnr(&["boundary", "--r", "0.5"], dir.path())), 0);
    let text = read(dir.path(), "boundary.csv");
    assert!(text.starts_with("theta,x,y,branch\n"));
    let rows = rows(&text);
    let parsed: Vec<(f64, f64, Branch)> = rows
        .iter()
        .map(|r| (r[1].parse().unwrap(), r[2].parse().unwrap(), r[3].parse().unwrap()))
        .collect();

    let right = parsed.iter().max_by(|p, q| p.0.total_cmp(&q.0)).unwrap();
    assert_eq!((right.0, right.1, right.2), (1.5, 0.0, Branch::CircleRight));
    let transitions = parsed.windows(2).filter(|w| w[0].2 != w[1].2).count();
    assert_eq!(transitions, 4);

    for (x, y, _) in &parsed {
        let c = contains(*x, *y, 0.5, 720).unwrap();
        assert!(matches!(c, Containment::Boundary { .. }), "({x}, {y}) -> {c:?}");
    }
}

#[test]
fn boundary_svg_structure() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&fnr(&["boundary", "--r", "0.5", "--marker-color", "black"], dir.path())), 0);
    let text = read(dir.path(), "boundary.svg");
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.root().children().filter(|n| n.is_element()).count(), 1);

    let class = |c: &str| doc.descendants().filter(|n| n.attribute("class") == Some(c)).count();
    assert_eq!(class("switching-point"), 4);
    assert_eq!(class("aux-circle"), 2);
    assert_eq!(class("switching-line"), 4);
    assert_eq!(class("boundary"), 1);
    assert!(class("aux-sextic") >= 2);

    let group = |id: &str| doc.descendants().find(|n| n.attribute("id") == Some(id)).unwrap();
    assert!(group("boundary").attribute("stroke-dasharray").is_none());
    for id in ["circles", "sextic", "switching-lines"] {
        assert!(group(id).attribute("stroke-dasharray").is_some(), "{id}");
    }
    assert_eq!(group("switching-points").attribute("fill"), Some("black"));
}

#[test]
fn support_lines_svg_parses() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&fnr(&["support-lines", "--samples", "180"], dir.path())), 0);
    let text = read(dir.path(), "support-lines.svg");
    let doc = roxmltree::Document::parse(&text).unwrap();
    let lines = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("support-line"))
        .count();
    assert_eq!(lines, 180);
}

#[test]
fn zero_radius_boundary_is_refused() {
    let dir = TempDir::new().unwrap();
    let o = fnr(&["boundary", "--r", "0"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unit disk"));
    assert!(!dir.path().join("boundary.csv").exists());
}

#[test]
fn verify_default_passes() {
    let dir = TempDir::new().unwrap();
    let o = fnr(&["verify"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "verify.json")).unwrap();
    assert_eq!(report["pass"], true);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for want in ["numerical-radius", "oracle-convergence", "dual-route", "ellipse-gap", "phase-invariance"] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn verify_with_zero_convergence_budget_fails() {
    let dir = TempDir::new().unwrap();
    let o = fnr(&["verify", "--tol-conv", "0"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle-convergence"));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "verify.json")).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn verify_with_rotated_coupling() {
    let dir = TempDir::new().unwrap();
    let (s, c) = (std::f64::consts::PI / 7.0).sin_cos();
    let a = format!("{c},{s}");
    let o = fnr(&["verify", "--a", &a, "--N", "200"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "verify.json")).unwrap();
    let phase = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "phase-invariance")
        .unwrap();
    assert_eq!(phase["pass"], true);
}

#[test]
fn resultant_command() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&fnr(&["resultant", "--r", "1/2"], dir.path())), 0);
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "resultant.json")).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["reports"][0]["r"], "1/2");
    assert!(read(dir.path(), "resultant.txt").contains("held-out nonzero residuals 0/"));

    let o = fnr(&["resultant", "--r", "0"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn mutated_resultant_fails_with_dump() {
    let dir = TempDir::new().unwrap();
    let o = fnr(&["resultant", "--r", "1/2", "--mutate"], dir.path());
    assert_eq!(code(&o), 1);
    let text = read(dir.path(), "resultant.txt");
    assert!(text.contains("status          FAIL"));
    assert!(text.contains("residuals at held-out points:"));
}

#[test]
fn usage_errors() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["boundary", "--r", "0.5", "--a", "1,0"][..],
        &["boundary", "--format", "json"],
        &["boundary", "--format", "png"],
        &["verify", "--format", "csv"],
        &["boundary", "--r", "-1"],
        &["boundary", "--r", "0.5", "--r", "1"],
        &["boundary", "--samples", "4"],
        &["verify", "--tol-env", "-1"],
        &["bogus"],
    ] {
        assert_eq!(code(&fnr(args, dir.path())), 2, "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_fnr"))
        .args(["support-lines", "--out"])
        .arg(dir.path())
        .env("FNR_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn thread_cap_is_honoured() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fnr"))
        .args(["boundary", "--out"])
        .arg(dir.path())
        .env("FNR_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("occupied");
    std::fs::write(&file, "x").unwrap();
    assert_eq!(code(&fnr(&["boundary"], &file)), 3);
    assert_eq!(code(&fnr(&["verify", "--N", "16"], &file)), 3);
}

#[test]
fn help_exits_cleanly() {
    let o = Command::new(env!("CARGO_BIN_EXE_fnr")).arg("--help").output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("support-lines"));
}
