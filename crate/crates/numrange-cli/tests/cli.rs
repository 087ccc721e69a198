//! Command-level contracts: formats, determinism, exit-code mapping.

use numrange_cli::commands::{run_check, run_curve, run_probe, run_range, Format, KSelect};
use numrange_cli::input::MatrixInput;
use numrange_cli::CliError;

fn m1_input() -> MatrixInput {
    MatrixInput::parse(
        r#"{"dense": {"n": 3, "entries": [[0,0],[-0.5,0],[0,0],[2,0],[0,0],[-0.5,0],[0,0],[0.5,0],[1.4142135623730951,0]]}}"#,
    )
    .unwrap()
}

fn m3_input() -> MatrixInput {
    MatrixInput::parse(
        r#"{"dense": {"n": 5, "entries": [
            [1,0],[1,0],[0,0],[0,0],[0,0],
            [0.25,0],[2,0],[0.5,0],[0,0],[0,0],
            [0,0],[0.25,0],[0,0],[0.75,0],[0,0],
            [0,0],[0,0],[0.25,0],[-2,0],[1,0],
            [0,0],[0,0],[0,0],[0.25,0],[-1,0]]}}"#,
    )
    .unwrap()
}

#[test]
fn range_reports_empty_rank2_for_m1() {
    let out = run_range(&m1_input(), KSelect::One(2), 512, 1e-6, "auto", Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "empty");
}

#[test]
fn range_reports_origin_point_for_reciprocal_middle() {
    let input = MatrixInput::parse(r#"{"reciprocal": {"n": 5, "a1": 2.0, "a2": 1.05}}"#).unwrap();
    let out = run_range(&input, KSelect::One(3), 512, 1e-6, "auto", Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "point");
    assert!(v["center"][0].as_f64().unwrap().abs() < 1e-6);
    assert!(v["center"][1].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn range_normal_square_rank2_is_origin() {
    let input =
        MatrixInput::parse(r#"{"normal": {"eigenvalues": [[1,0],[0,1],[-1,0],[0,-1]]}}"#).unwrap();
    let out = run_range(&input, KSelect::One(2), 1024, 1e-6, "normal", Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "point");
    assert!(v["center"][0].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn range_all_lists_every_k() {
    let out = run_range(&m1_input(), KSelect::All, 256, 1e-6, "auto", Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    assert_eq!(arr[0]["k"], 1);
    assert_eq!(arr[0]["kind"], "polygon");
    assert_eq!(arr[1]["kind"], "empty");
    assert_eq!(arr[2]["kind"], "empty");
}

#[test]
fn curve_csv_has_header_and_full_grid() {
    let out = run_curve(&m3_input(), KSelect::All, 128, Format::Csv, false).unwrap();
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "theta,k,re,im");
    // Three components (ceil(5/2)) times the grid size.
    assert_eq!(out.lines().count() - 1, 3 * 128);
    // Round-trip safe floats.
    let row = out.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields.len(), 4);
    fields[0].parse::<f64>().unwrap();
}

#[test]
fn curve_svg_is_deterministic() {
    let a = run_curve(&m3_input(), KSelect::All, 128, Format::Svg, true).unwrap();
    let b = run_curve(&m3_input(), KSelect::All, 128, Format::Svg, true).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("<svg"));
}

#[test]
fn curve_on_non_generic_input_exits_3() {
    let input =
        MatrixInput::parse(r#"{"normal": {"eigenvalues": [[1,0],[0,1],[-1,0]]}}"#).unwrap();
    match run_curve(&input, KSelect::All, 64, Format::Csv, false) {
        Err(err @ CliError::NonGeneric(_)) => {
            assert_eq!(err.exit_code(), 3);
            // The failing angle is part of the diagnostic.
            assert!(err.to_string().contains("theta"));
        }
        other => panic!("expected non-generic error, got {other:?}"),
    }
}

#[test]
fn invalid_inputs_exit_2() {
    assert_eq!(MatrixInput::parse("{]").unwrap_err().exit_code(), 2);
    let too_big_k = run_range(&m1_input(), KSelect::One(9), 64, 1e-6, "auto", Format::Json);
    assert_eq!(too_big_k.unwrap_err().exit_code(), 2);
    let bad_method = run_range(&m1_input(), KSelect::One(1), 64, 1e-6, "qr", Format::Json);
    assert_eq!(bad_method.unwrap_err().exit_code(), 2);
}

#[test]
fn check_reports_m3_generic_with_empty_middle() {
    let report = run_check(&m3_input(), 360, 1e-6, "auto").unwrap();
    assert!(report.contains("genericity: generic"));
    assert!(report.contains("Lambda_3 (odd middle): empty"));
    assert!(report.contains("odd-middle consistency: PASS"));
}

#[test]
fn check_warns_on_balanced_pairs() {
    let input = MatrixInput::parse(
        r#"{"tridiag2p": {"n": 4, "a1": [0,0], "a2": [0,0], "b1": [1,0], "c1": [1,0], "b2": [2,0], "c2": [0.5,0]}}"#,
    )
    .unwrap();
    let report = run_check(&input, 360, 1e-6, "auto").unwrap();
    assert!(report.contains("warning: balanced off-diagonal pair"));
    assert!(report.contains("closed-form vs dense oracle"));
    assert!(report.contains("PASS"));
}

#[test]
fn check_passes_reciprocal_suite() {
    let input = MatrixInput::parse(r#"{"reciprocal": {"n": 6, "A1": 1.05, "A2": 1.62}}"#).unwrap();
    let report = run_check(&input, 360, 1e-6, "auto").unwrap();
    assert!(report.contains("method: reciprocal"));
    assert!(report.contains("closed-form vs dense oracle"));
    assert!(report.contains("axis symmetry"));
    assert!(!report.contains("FAIL"));
}

#[test]
fn probe_requires_even_reciprocal() {
    let odd = MatrixInput::parse(r#"{"reciprocal": {"n": 5, "a1": 2.0, "a2": 1.05}}"#).unwrap();
    assert_eq!(run_probe(&odd, 256).unwrap_err().exit_code(), 2);
    let dense = m1_input();
    assert_eq!(run_probe(&dense, 256).unwrap_err().exit_code(), 2);
    let even = MatrixInput::parse(r#"{"reciprocal": {"n": 4, "A1": 1.3, "A2": 1.3}}"#).unwrap();
    let table = run_probe(&even, 256).unwrap();
    assert!(table.contains("control"));
}

#[test]
fn range_csv_and_svg_formats_render() {
    let csv = run_range(&m1_input(), KSelect::All, 128, 1e-6, "auto", Format::Csv).unwrap();
    assert!(csv.starts_with("k,kind,index,re,im"));
    let svg = run_range(&m1_input(), KSelect::One(1), 128, 1e-6, "auto", Format::Svg).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
}
