//! Behavior tests for the `mta` binary: exit codes, reproducibility, and
//! calibration-file overrides.

use std::process::Command;

fn mta() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mta"))
}

#[test]
fn missing_required_option_exits_2_with_usage() {
    let out = mta().arg("constants").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("usage:"), "{err}");
    assert!(err.contains("--n"), "{err}");
}

#[test]
fn unknown_command_exits_2() {
    let out = mta().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constants_reports_the_sharp_moser_threshold() {
    let out = mta()
        .args(["constants", "--n", "2", "--k", "1", "--q", "2", "--d", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    // κ² = 4π for the first-order two-dimensional case
    let line = body
        .lines()
        .find(|l| l.starts_with("threshold.T1_0.exponent="))
        .expect("threshold line");
    let value: f64 = line
        .split('=')
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    assert!(body.starts_with("# mta "));
    assert!(body.contains("# config:"));
    assert!(body.contains("ell_k_n=1/1"));
}

#[test]
fn constants_with_infinite_q_uses_unit_conjugate_exponent() {
    let out = mta()
        .args([
            "constants", "--n", "3", "--alpha", "1.5", "--k", "1", "--q", "inf", "--d", "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    let get = |key: &str| -> f64 {
        body.lines()
            .find(|l| l.starts_with(key))
            .unwrap()
            .split('=')
            .nth(1)
            .unwrap()
            .split_whitespace()
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    // q' = 1: linear and exponent normalizations coincide
    assert_eq!(
        get("threshold.Tinf.linear="),
        get("threshold.Tinf.exponent=")
    );
}

#[test]
fn verify_suite_output_is_byte_identical_across_runs() {
    let run = || {
        let out = mta()
            .args(["verify", "--suite", "hardy", "--seed", "7"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_seed_changes_are_visible_but_still_pass() {
    let out = mta()
        .args(["verify", "--suite", "hardy", "--seed", "11"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("# seed=11"));
    assert!(body.contains("total pass="));
}

#[test]
fn tampered_calibration_file_fails_with_named_check() {
    // an absurdly small first-term constant breaks the two-term bound
    let dir = std::env::temp_dir().join("mta-tamper-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tampered.kv");
    std::fs::write(&path, "oneil_c.n2.a1.d2.r1_5=0.0001\n").unwrap();
    let out = mta()
        .args([
            "verify",
            "--suite",
            "oneil",
            "--seed",
            "7",
            "--calibration",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(
        body.contains("check=oneil.bound_lebesgue status=FAIL"),
        "{body}"
    );
}

#[test]
fn repo_calibration_file_matches_frozen_table() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/calibration.kv");
    let body = std::fs::read_to_string(path).unwrap();
    let cal = mta_core::calibration::Calibration::frozen();
    let mut seen = 0usize;
    for line in body.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').unwrap();
        let file_value: f64 = v.trim().parse().unwrap();
        let frozen = cal
            .get(k.trim())
            .unwrap_or_else(|| panic!("key {k} missing from the frozen table"));
        assert_eq!(file_value, frozen, "mismatch for {k}");
        seen += 1;
    }
    assert_eq!(seen, cal.entries().count(), "entry count mismatch");
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = std::env::temp_dir().join("mta-config-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.kv");
    std::fs::write(&path, "n=2\nk=1\nq=2\nd=2\nseed=3\n").unwrap();
    let out = mta()
        .args([
            "constants",
            "--config",
            path.to_str().unwrap(),
            "--seed",
            "9",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("# seed=9"), "{body}");
    assert!(body.contains("n=2"));
}

#[test]
fn sweep_emits_records_and_summary() {
    let out = mta()
        .args([
            "sweep",
            "--theorem",
            "T1",
            "--nu",
            "hyperplane",
            "--beta-multiple",
            "1.5",
            "--h",
            "0.0078125",
            "--params",
            "0.13,0.09,0.063,0.044,0.032",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("param,norm,expint,log_expint,beta"));
    assert!(body.contains("verdict=BLOWUP"), "{body}");
    assert!(body.contains("certificates_ok=true"));
}

#[test]
fn atoms_measure_without_center_mass_is_inconclusive() {
    // an atomic measure living away from the family center fails the
    // non-degeneracy gate: the sweep reports instead of claiming sharpness
    let dir = std::env::temp_dir().join("mta-atoms-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("offset_atoms.csv");
    let mut body = String::new();
    for i in 0..64 {
        let t = i as f64 / 64.0;
        body.push_str(&format!("{},{},{}\n", 0.6 + 0.3 * t, 0.5, 1.0 / 64.0));
    }
    std::fs::write(&path, body).unwrap();
    let out = mta()
        .args([
            "sweep",
            "--theorem",
            "T1",
            "--nu",
            &format!("atoms:{}", path.display()),
            "--d",
            "1",
            "--beta-multiple",
            "1.2",
            "--h",
            "0.015625",
            "--params",
            "0.2,0.15,0.11,0.08",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("certificates_ok=false"), "{body}");
    assert!(body.contains("verdict=INCONCLUSIVE"), "{body}");
}

#[test]
fn family_command_emits_grid_csv_with_sidecar() {
    let out = mta()
        .args([
            "family",
            "--kind",
            "weak_endpoint_f",
            "--param",
            "1.0",
            "--n",
            "2",
            "--h",
            "0.125",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.contains("# family kind=weak_endpoint_f param=1"), "{body}");
    assert!(body.contains("n=2,h="), "{body}");
    let grid = mta_cli::csv::read_grid_function(&body).unwrap();
    assert_eq!(grid.dims, vec![16, 16]);
}
