//! End-to-end behaviour of the `sheetfk` binary: exit codes, flags, files.

use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sheetfk"))
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("sheetfk_cli_{}_{name}", std::process::id()))
}

#[test]
fn solutions_found_exits_zero_with_json_on_stdout() {
    let out = bin().arg("--scene").arg(fixture("octagon8.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"taut_set\": [4, 5, 8]"));
    assert!(text.contains("\"stats\""));
}

#[test]
fn zero_solutions_exits_three() {
    // holding height too low for any equilibrium above the ground
    let path = temp("grounded.json");
    std::fs::write(
        &path,
        r#"{"version":1,"units":"m","n":4,"z_r":0.05,
            "sheet_vertices":[[1,0],[0,1],[-1,0],[0,-1]],
            "robots":[[0.4,0],[0,0.4],[-0.4,0],[0,-0.4]]}"#,
    )
    .unwrap();
    let out = bin().arg("--scene").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"solutions\": [\n  ]"));
    std::fs::remove_file(path).ok();
}

#[test]
fn parse_error_exits_one() {
    let path = temp("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = bin().arg("--scene").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
    std::fs::remove_file(path).ok();

    let out = bin().arg("--scene").arg("/nonexistent/scene.json").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validation_error_exits_two_and_names_the_pair() {
    let out = bin()
        .arg("--scene")
        .arg(fixture("infeasible_pair.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("robots 1 and 2"), "stderr: {err}");
}

#[test]
fn stats_flag_prints_counts() {
    let out = bin()
        .arg("--scene")
        .arg(fixture("octagon8.json"))
        .arg("--stats")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("step 1 (taut sets):               219"), "stdout: {text}");
    assert!(text.contains("step 2 (form closure):            182"));
}

#[test]
fn lowest_energy_emits_single_solution() {
    let out = bin()
        .arg("--scene")
        .arg(fixture("four_robot.json"))
        .arg("--lowest-energy")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("\"taut_set\"").count(), 1);
    assert!(text.contains("\"taut_set\": [1, 2, 3]"), "lowest equilibrium is the first row");
}

#[test]
fn out_file_and_formats() {
    let json_path = temp("out.json");
    let csv_path = temp("out.csv");
    let status = bin()
        .arg("--scene")
        .arg(fixture("four_robot.json"))
        .arg("--out")
        .arg(&json_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let status = bin()
        .arg("--scene")
        .arg(fixture("four_robot.json"))
        .arg("--format")
        .arg("csv")
        .arg("--out")
        .arg(&csv_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let json = std::fs::read_to_string(&json_path).unwrap();
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("taut_set,x_vo_m,y_vo_m,x_o_m,y_o_m,z_o_m,energy_J,k1,stability,margins\n"));
    // identical numeric content in both formats
    for token in json.split(|c: char| !(c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == 'e')) {
        if token.contains('e') && token.contains('.') {
            assert!(csv.contains(token), "csv missing numeric token {token}");
        }
    }
    std::fs::remove_file(json_path).ok();
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn figure_written_with_taut_segments() {
    let fig = temp("fig.svg");
    let status = bin()
        .arg("--scene")
        .arg(fixture("octagon8_regular.json"))
        .arg("--figure")
        .arg(&fig)
        .arg("--out")
        .arg(temp("fig_out.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let svg = std::fs::read_to_string(&fig).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<line").count(), 16); // 8 cables + 8 chords
    std::fs::remove_file(fig).ok();
    std::fs::remove_file(temp("fig_out.json")).ok();
}

#[test]
fn cluster_flag_groups_near_identical_solutions() {
    let out = bin()
        .arg("--scene")
        .arg(fixture("octagon8.json"))
        .arg("--cluster")
        .arg("0.005")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"clusters\""));
    // the two near-coincident equilibria (indices 1 and 5) group together
    assert!(text.contains("[1, 5]"), "stdout: {text}");
}

#[test]
fn pivot_index_flag_changes_nothing_observable() {
    let base = bin().arg("--scene").arg(fixture("octagon8.json")).output().unwrap();
    let piv = bin()
        .arg("--scene")
        .arg(fixture("octagon8.json"))
        .arg("--pivot-index")
        .arg("5")
        .output()
        .unwrap();
    let a = String::from_utf8(base.stdout).unwrap();
    let b = String::from_utf8(piv.stdout).unwrap();
    // positions agree to the full 9 emitted digits
    assert_eq!(a, b);
}

#[test]
fn oracle_flag_reports_stability_and_equilibria() {
    let out = bin()
        .arg("--scene")
        .arg(fixture("octagon8_regular.json"))
        .arg("--oracle")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"stability\": \"strict_local_min\""));
    assert!(text.contains("\"oracle\""));
    assert!(text.contains("\"ground_contact\": false"));
}

#[test]
fn tolerances_flag_round_trips() {
    let out = bin()
        .arg("--scene")
        .arg(fixture("octagon8.json"))
        .arg("--tolerances")
        .arg("slack=1e-9,rank=1e-9")
        .arg("--stats")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = bin()
        .arg("--scene")
        .arg(fixture("octagon8.json"))
        .arg("--tolerances")
        .arg("nope=1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
