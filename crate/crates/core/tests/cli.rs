//! End-to-end checks of the `froi` binary.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

fn froi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_froi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = froi(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn fields(line: &str) -> Vec<f64> {
    line.split(',').map(|f| f.parse().unwrap()).collect()
}

#[test]
fn coeffs_of_kind_c() {
    let csv = stdout(&["coeffs", "--integrator", "C", "--h", "0.002"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "kind,omega_select_rad_s,h_s,a_prev,b_now,b_prev,c_now,c_prev");
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(row[0], "C");
    let v: Vec<f64> = row[3..].iter().map(|f| f.parse().unwrap()).collect();
    let h: f64 = 0.002;
    assert_eq!(v[0], 1.0);
    assert_eq!(v[1], h / 2.0);
    assert_eq!(v[2], h / 2.0);
    assert!((v[3] + h * h / 12.0).abs() < 1e-22);
    assert!((v[4] - h * h / 12.0).abs() < 1e-22);
}

#[test]
fn sweep_notch_of_kind_a_sits_at_sixty_hertz() {
    let csv = stdout(&["freq-sweep", "--integrator", "A", "--h", "0.002", "--fselect", "60"]);
    let (omega, _) = csv
        .lines()
        .skip(1)
        .map(fields)
        .filter(|r| r[0] > 0.0)
        .map(|r| (r[0], r[3]))
        .fold(
            (0.0, f64::INFINITY),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        );
    assert!((omega / (2.0 * PI) - 60.0).abs() < 1e-9, "minimum at {omega} rad/s");
}

#[test]
fn case_one_reproduces_the_steady_state_table() {
    let csv = stdout(&["case", "--id", "1"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "step_us,A,B,C,D,TR,BE");
    assert_eq!(lines[1], "125,0.0000,0.0000,0.0000,0.0370,0.0185,2.5803");
    assert_eq!(lines[6], "4000,0.0000,0.0000,0.7593,40.1607,19.7071,84.2506");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["case", "--id", "2"][..],
        &["stability-map", "--integrator", "B", "--n", "51"],
        &[
            "freq-sweep",
            "--integrator",
            "B",
            "--log",
            "--fmin",
            "1",
            "--fmax",
            "1000",
            "--n",
            "301",
        ],
        &["transient-gains"],
        &["demo-transient", "--startup", "B", "--integrator", "A"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn step_bound_violation_fails_with_the_bound() {
    let out = froi(&["coeffs", "--integrator", "B", "--h", "0.01"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("0.00833"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_integrator_is_rejected() {
    assert!(!froi(&["coeffs", "--integrator", "Q"]).status.success());
}

#[test]
fn stability_map_writes_grid_and_sidecar() {
    let out = scratch("map_c.csv");
    stdout(&[
        "stability-map",
        "--integrator",
        "C",
        "--n",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 12);
    assert!(csv.starts_with("re_lambda_h,"));
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("csv.json")).unwrap()).unwrap();
    assert_eq!(side["kind"], "C");
    assert_eq!(side["n"], 11);
    assert_eq!(side["ranges"]["re"][0], -50.0);
}

#[test]
fn config_file_supplies_options_and_flags_override_it() {
    let cfg = scratch("coeffs.json");
    std::fs::write(&cfg, r#"{"integrator": "TR", "h": 0.5}"#).unwrap();
    let from_file = stdout(&["coeffs", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file.lines().nth(1).unwrap(), "TR,0.0,0.5,1.0,0.25,0.25,0.0,0.0");
    let overridden = stdout(&["coeffs", "--config", cfg.to_str().unwrap(), "--h", "0.25"]);
    assert!(overridden.lines().nth(1).unwrap().starts_with("TR,0.0,0.25,"));

    std::fs::write(&cfg, r#"{"integrator": "TR", "step": 0.5}"#).unwrap();
    assert!(!froi(&["coeffs", "--config", cfg.to_str().unwrap()]).status.success());
}

#[test]
fn verify_roots_reports_every_check_passing() {
    for kind in ["A", "B", "C", "D"] {
        let csv = stdout(&["verify-roots", "--integrator", kind]);
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")), "{kind}:\n{csv}");
    }
}

#[test]
fn demo_transient_shows_trapezoidal_ringing() {
    let csv = stdout(&["demo-transient"]);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    assert_eq!(header, ["t_s", "exact", "A", "B", "C", "D", "TR", "BE"]);
    let rows: Vec<Vec<f64>> = csv.lines().skip(1).map(fields).collect();
    // 50 ms at 2 ms.
    assert_eq!(rows.len(), 26);
    let dev: Vec<f64> = rows[1..8].iter().map(|r| r[6] - r[1]).collect();
    assert!(dev.windows(2).all(|w| w[0] * w[1] < 0.0), "{dev:?}");
}
