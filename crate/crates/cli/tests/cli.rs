//! End-to-end tests of the binary: exit codes, file formats, reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_moebius-kinetics"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("moebius-kinetics-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn metric_passes_in_the_interior() {
    let out = run(&["metric", "--r", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("gram matrix"));
    assert!(text.contains("max entrywise error"));
}

#[test]
fn metric_reports_near_boundary_truncation_without_hiding_it() {
    // at r = 0.9 the 256-node trapezoid truncation is ~1.2e-9 > 1e-10;
    // the command reports the measured error and exits 1
    let out = run(&["metric", "--r", "0.9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("max entrywise error"));
}

#[test]
fn metric_rejects_bad_radius_and_bad_nodes() {
    assert_eq!(run(&["metric", "--r", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["metric", "--r", "0.0"]).status.code(), Some(2));
    assert_eq!(
        run(&["metric", "--r", "0.5", "--nodes", "7"]).status.code(),
        Some(2)
    );
}

#[test]
fn metric_writes_field_samples() {
    let base = tmpfile("fields");
    let out = run(&["metric", "--r", "0.5", "--out", base.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["t", "rho", "theta"] {
        let p = base.with_extension(format!("{name}.csv"));
        let text = std::fs::read_to_string(&p).expect("field csv written");
        assert!(text.starts_with("# moebius-kinetics field v1\n"));
        assert!(text.lines().nth(1).unwrap() == "node,z_re,z_im,field_re,field_im");
        std::fs::remove_file(p).ok();
    }
    let p = base.with_extension("gram.csv");
    let text = std::fs::read_to_string(&p).expect("gram csv written");
    assert!(text.starts_with("# moebius-kinetics gram v1\n"));
    assert_eq!(text.lines().count(), 5);
    std::fs::remove_file(p).ok();
}

#[test]
fn radial_geodesic_keeps_theta_constant() {
    let path = tmpfile("radial.csv");
    let out = run(&[
        "geodesic", "--r", "0.5", "--c", "0", "--length", "0.3",
        "--step", "0.001", "--outward", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.starts_with("s,")) {
        let theta: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert_eq!(theta, 0.0);
    }
    std::fs::remove_file(path).ok();
}

#[test]
fn clairaut_geodesic_reports_the_turning_radius() {
    let path = tmpfile("clairaut.csv");
    let out = run(&[
        "geodesic", "--r", "0.85", "--c", "1", "--length", "2",
        "--step", "0.0005", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let min_line = text.lines().find(|l| l.starts_with("min rho")).unwrap();
    let value: f64 = min_line.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((value - 0.57735).abs() < 1e-4, "min rho {value}");
    std::fs::remove_file(path).ok();
}

#[test]
fn geodesic_rejects_infeasible_momentum_and_big_steps() {
    // c^2/G(r) > v^2 at this radius
    assert_eq!(
        run(&["geodesic", "--r", "0.2", "--c", "2", "--out", "/tmp/x.csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["geodesic", "--r", "0.5", "--step", "0.01", "--out", "/tmp/x.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn geodesic_json_format() {
    let path = tmpfile("path.json");
    let out = run(&[
        "geodesic", "--r", "0.6", "--c", "0.5", "--length", "0.1",
        "--step", "0.001", "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "moebius-kinetics path v1");
    assert_eq!(doc["samples"].as_array().unwrap().len(), 101);
    std::fs::remove_file(path).ok();
}

#[test]
fn validate_group_suite_passes_and_is_machine_readable() {
    let out = run(&["validate", "--suite", "group", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "moebius-kinetics report v1");
    assert_eq!(doc["pass"], true);
    let checks = doc["suites"][0]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["pass"].as_bool().unwrap());
        assert!(c["value"].is_number() && c["tolerance"].is_number());
    }
}

#[test]
fn validate_metric_suite_reports_the_boundary_finding() {
    // the r = 0.9 gram check measures quadrature truncation above its
    // 1e-10 bound; the report carries the failure and the exit code is 1
    let out = run(&["validate", "--suite", "metric"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pass"], false);
    let checks = doc["suites"][0]["checks"].as_array().unwrap();
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| !c["pass"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("r=0.9"));
}

#[test]
fn validate_clairaut_suite_carries_the_verdict() {
    let out = run(&["validate", "--suite", "clairaut"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let notes = doc["suites"][0]["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("verdict")));
}

#[test]
fn validate_rejects_unknown_suites() {
    assert_eq!(run(&["validate", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn energy_trace_of_a_motion_file() {
    use moebius_kinetics::{MoebiusMap, SampledMotion, UnitComplex};
    let times: Vec<f64> = (0..1001).map(|i| i as f64 * 0.001).collect();
    let maps = times
        .iter()
        .map(|&t| MoebiusMap::rotation(UnitComplex::from_angle(t)))
        .collect();
    let motion = SampledMotion::new(times, maps).unwrap();
    let input = tmpfile("motion.json");
    std::fs::write(&input, motion.to_json()).unwrap();

    let trace = tmpfile("trace.csv");
    let out = run(&[
        "energy", "--input", input.to_str().unwrap(),
        "--out", trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&trace).unwrap();
    assert!(text.starts_with("# moebius-kinetics energy v1\n"));
    // unit-speed rotation: every energy sample is pi
    let first = text.lines().nth(2).unwrap();
    let e: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((e - std::f64::consts::PI).abs() < 1e-8);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("action"));
    std::fs::remove_file(input).ok();
    std::fs::remove_file(trace).ok();
}

#[test]
fn energy_rejects_malformed_files() {
    let input = tmpfile("bad.json");
    std::fs::write(&input, "{\"times\": [0, 1], \"maps\": []}").unwrap();
    assert_eq!(
        run(&["energy", "--input", input.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_file(input).ok();
}

#[test]
fn plot_draws_circle_trajectory_and_tangency() {
    let path = tmpfile("plotpath.csv");
    let out = run(&[
        "geodesic", "--r", "0.85", "--c", "1", "--length", "1",
        "--step", "0.001", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg_path = tmpfile("plot.svg");
    let out = run(&["plot", "--input", path.to_str().unwrap(), "--out", svg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.contains("moebius-kinetics plot v1"));
    assert!(svg.contains("<circle r=\"1\""));
    assert!(svg.contains("polyline"));
    assert!(svg.contains("stroke-dasharray")); // tangency circle
    std::fs::remove_file(path).ok();
    std::fs::remove_file(svg_path).ok();
}

#[test]
fn plot_rejects_malformed_input() {
    let input = tmpfile("garbage.csv");
    std::fs::write(&input, "not,a,path\n1,2\n").unwrap();
    assert_eq!(
        run(&["plot", "--input", input.to_str().unwrap(), "--out", "/tmp/x.svg"])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_file(input).ok();
}
