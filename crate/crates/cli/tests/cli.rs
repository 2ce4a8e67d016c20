//! End-to-end checks of the command-line interface: exit codes, output
//! shapes, determinism, and the documented error paths.

use std::io::Write;
use std::process::{Command, Stdio};

const Z_ESCAPING: &str = r#"{"prefix":[],"tail":{"kind":"radial_power","phase":[1.0,0.0],"a":1.0,"p":1.0}}"#;
const U_HALF_RATE: &str = r#"{"prefix":[],"tail":{"kind":"radial_power","phase":[1.0,0.0],"a":0.5,"p":1.0}}"#;
const W_SQUARE_RATE: &str = r#"{"prefix":[],"tail":{"kind":"radial_power","phase":[1.0,0.0],"a":1.0,"p":2.0}}"#;
const MIXED_PHASE: &str = r#"{"prefix":[],"tail":{"kind":"radial_power","phase":[0.0,1.0],"a":1.0,"p":1.0}}"#;
const CONFIG: &str = r#"{"sigma":0.5,"rho_gap":0.1,"count_hint":16}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_gleason"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf8 stdout"),
        String::from_utf8(output.stderr).expect("utf8 stderr"),
    )
}

fn run_with_stdin(args: &[&str], input: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gleason"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin write");
    let output = child.wait_with_output().expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf8 stdout"),
    )
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout.trim()).expect("valid JSON output")
}

#[test]
fn rho_reports_the_certified_enclosure() {
    let (code, out, _) = run(&["rho", "--z", Z_ESCAPING, "--w", U_HALF_RATE]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["rho"]["lo"], 0.5);
    assert_eq!(doc["rho"]["hi"], 0.5);
    assert_eq!(doc["attained_at"], 1);
    assert_eq!(doc["certified"], true);
}

#[test]
fn gleason_norm_command_certifies_boundary_pairs() {
    let (code, out, _) = run(&["gleason-norm", "--z", Z_ESCAPING, "--w", W_SQUARE_RATE]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["gleason_norm"]["lo"], 2.0);
    assert_eq!(doc["gleason_norm"]["hi"], 2.0);
}

#[test]
fn same_part_verdicts_and_exit_codes() {
    let (code, out, _) = run(&["same-part", "--z", Z_ESCAPING, "--w", U_HALF_RATE]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["verdict"], "same");

    let (code, out, _) = run(&["same-part", "--z", Z_ESCAPING, "--w", W_SQUARE_RATE]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["verdict"], "different");
    assert_eq!(doc["witness"]["kind"], "tail-approach");

    // mixed phases refuse certification: exit 2 with the examined range
    let (code, out, _) = run(&[
        "same-part",
        "--max-index",
        "2000",
        "--z",
        Z_ESCAPING,
        "--w",
        MIXED_PHASE,
    ]);
    assert_eq!(code, 2);
    let doc = json(&out);
    assert_eq!(doc["verdict"], "undetermined");
    assert!(doc["rho_lo"].as_f64().unwrap() < 1.0);
    assert_eq!(doc["examined_up_to"], 2000);
}

#[test]
fn classify_reports_the_case_labels() {
    let (code, out, _) = run(&["classify", "--z", r#"{"prefix":[],"tail":{"kind":"zero"}}"#]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["case"], "(i)");

    let interleaved = r#"{"prefix":[],"tail":{"kind":"interleaved","parts":[{"kind":"zero"},{"kind":"radial_power","phase":[1.0,0.0],"a":1.0,"p":1.0}]}}"#;
    let (code, out, _) = run(&["classify", "--z", interleaved]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["case"], "(v)");
}

#[test]
fn parse_errors_name_the_field_and_exit_one() {
    let bad = r#"{"prefix":[],"tail":{"kind":"radial_power","phase":[1.0,0.0],"a":-2.0,"p":1.0}}"#;
    let (code, out, err) = run(&["rho", "--z", bad, "--w", Z_ESCAPING]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("tail.a"), "stderr: {err}");
}

#[test]
fn csv_is_rejected_outside_shift_radius() {
    let (code, _, err) = run(&["--format", "csv", "classify", "--z", Z_ESCAPING]);
    assert_eq!(code, 1);
    assert!(err.contains("shift-radius"), "stderr: {err}");
}

#[test]
fn shift_radius_emits_csv_samples() {
    let (code, out, _) = run(&[
        "--format",
        "csv",
        "shift-radius",
        "--b",
        "0.5",
        "--margin",
        "0.1",
        "--samples",
        "4",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.trim().lines().collect();
    assert_eq!(lines[0], "re,im,rho_to_center");
    assert_eq!(lines.len(), 5);
    for line in &lines[1..] {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 3);
        assert!(fields[2] < 0.8);
    }
}

#[test]
fn shift_radius_json_matches_the_closed_form() {
    let (code, out, _) = run(&["shift-radius", "--b", "0.5", "--margin", "1e-9"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    let radius = doc["radius"].as_f64().unwrap();
    assert!((radius - 3.0 / 7.0).abs() < 1e-8);
    assert!(doc["max_norm_distance_on_circle"].as_f64().unwrap() < 1.0);
}

#[test]
fn autom_apply_round_trips_through_the_descriptor_format() {
    let center = r#"{"prefix":[[0.4,0.1]],"tail":{"kind":"constant","value":[0.2,-0.3]}}"#;
    let arg = r#"{"prefix":[[0.1,0.0],[0.0,0.5]],"tail":{"kind":"constant","value":[0.0,0.1]}}"#;
    let (code, out, _) = run(&["autom-apply", "--center", center, "--z", arg]);
    assert_eq!(code, 0);
    let image = json(&out)["result"].to_string();
    // the image is a valid descriptor: distance from itself is zero
    let (code, out, _) = run(&["rho", "--z", &image, "--w", &image]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["rho"]["hi"], 0.0);
}

#[test]
fn autom_apply_names_the_scan_backed_limitation() {
    let center = r#"{"prefix":[],"tail":{"kind":"constant","value":[0.5,0.0]}}"#;
    let (code, _, err) = run(&["autom-apply", "--center", center, "--z", Z_ESCAPING]);
    assert_eq!(code, 1);
    assert!(err.contains("closed tail form"), "stderr: {err}");
}

#[test]
fn autom_check_reports_matching_routes() {
    let center = r#"{"prefix":[[0.3,0.0],[0.0,-0.2]],"tail":{"kind":"zero"}}"#;
    let arg = r#"{"prefix":[[0.0,0.8],[0.5,0.1]],"tail":{"kind":"zero"}}"#;
    let (code, out, _) = run(&["autom-check", "--center", center, "--z", arg]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert!(doc["route_difference"].as_f64().unwrap() <= 1e-9);
    assert!(doc["involution_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn operator_rho_scalar_case() {
    let (code, out, _) = run(&["operator-rho", "--r", "[[[0.5,0.0]]]", "--s", "[[[-0.5,0.0]]]"]);
    assert_eq!(code, 0);
    assert!((json(&out)["rho"].as_f64().unwrap() - 0.8).abs() < 1e-12);

    let (code, _, err) = run(&["operator-rho", "--r", "[[[1.0,0.0]]]", "--s", "[[[0.0,0.0]]]"]);
    assert_eq!(code, 1);
    assert!(err.contains("contraction"), "stderr: {err}");
}

#[test]
fn blaschke_eval_paths() {
    let (code, out, _) = run(&["blaschke-eval", "--config", CONFIG, "--at-origin"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert!((doc["value"][0].as_f64().unwrap() - 0.5217165042620078).abs() < 1e-10);
    assert!(doc["modulus_hi"].as_f64().unwrap() < 1.0);

    let (code, out, _) = run(&["blaschke-eval", "--config", CONFIG, "--at-zk", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["value"][0], 0.0);

    // boundary-normed sequences are rejected
    let (code, _, err) = run(&["blaschke-eval", "--config", CONFIG, "--z", Z_ESCAPING]);
    assert_eq!(code, 1);
    assert!(err.contains("not certified below"), "stderr: {err}");
}

#[test]
fn blaschke_separate_certificate_holds() {
    let (code, out, _) = run(&["blaschke-separate", "--config", CONFIG]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["monotone"], true);
    assert_eq!(doc["vanishing_ok"], true);
    assert_eq!(doc["certificate"]["holds"], true);
    assert!(doc["certificate"]["value_lo"].as_f64().unwrap() >= 0.81);
}

#[test]
fn peak_eval_attains_two_at_the_peak() {
    let theta = r#"{"prefix":[0.3,-1.2],"tail":0.7}"#;
    let (code, out, _) = run(&["peak-eval", "--theta", theta, "--at-peak"]);
    assert_eq!(code, 0);
    assert!((json(&out)["modulus"].as_f64().unwrap() - 2.0).abs() < 1e-12);

    let (code, out, _) = run(&[
        "peak-eval",
        "--theta",
        theta,
        "--x",
        r#"{"prefix":[],"tail":{"kind":"zero"}}"#,
    ]);
    assert_eq!(code, 0);
    assert!((json(&out)["modulus"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn descriptors_can_arrive_on_stdin() {
    let (code, out) = run_with_stdin(&["classify", "--z", "-"], Z_ESCAPING);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["case"], "(iv)");
}

#[test]
fn output_is_deterministic() {
    let (_, first, _) = run(&["classify", "--z", Z_ESCAPING]);
    let (_, second, _) = run(&["classify", "--z", Z_ESCAPING]);
    assert_eq!(first, second);
}
