//! End-to-end checks of the `gsg` binary: exit-code families, manifest
//! reproducibility, and emitted artifact shapes the library tests do not
//! reach through the API. Everything runs the real executable via
//! `CARGO_BIN_EXE_gsg` in a fresh temporary directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

/// Runs the binary with `--out <out>`; a config string, when given, is
/// written next to the output directory and passed via `--config`.
fn run_at(out: &Path, scratch: &Path, args: &[&str], config: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gsg"));
    cmd.args(args).arg("--out").arg(out);
    if let Some(text) = config {
        let path = scratch.join("config.json");
        fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.output().unwrap()
}

/// Standard invocation: output under `<dir>/out`, success required.
fn run_ok(dir: &Path, args: &[&str], config: Option<&str>) -> PathBuf {
    let out = dir.join("out");
    let o = run_at(&out, dir, args, config);
    assert!(
        o.status.success(),
        "gsg {args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    out
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr_of(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Parses a CSV written by the binary into (header, rows). The emitter never
/// quotes numeric tables, so a plain comma split is faithful here.
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

// ---------------------------------------------------------------------------
// exit-code families
// ---------------------------------------------------------------------------

#[test]
fn unknown_config_key_exits_2_with_key_named() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_at(
        &dir.path().join("out"),
        dir.path(),
        &["entangle", "--preset", "paper-2017-screened"],
        Some(r#"{"frobnicate": 1}"#),
    );
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_of(&o);
    assert!(err.contains("config error"), "missing error class: {err}");
    assert!(err.contains("frobnicate"), "missing offending key: {err}");
}

#[test]
fn out_of_domain_value_exits_2_with_key_path() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_at(
        &dir.path().join("out"),
        dir.path(),
        &["entangle", "--preset", "paper-2017-screened"],
        Some(r#"{"experiment": {"mass_a_kg": -1e-14}}"#),
    );
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_of(&o);
    assert!(err.contains("config error"), "missing error class: {err}");
    assert!(err.contains("experiment.mass_a_kg"), "missing key path: {err}");
}

#[test]
fn unknown_preset_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_at(&dir.path().join("out"), dir.path(), &["entangle", "--preset", "no-such"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr_of(&o).contains("unknown preset"));
}

#[test]
fn undersized_fock_truncation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // n_fock = 3 passes validation but cannot hold the k = 0.2 coherent
    // branches, so the run must die on the truncation guard, not mis-report.
    let o = run_at(
        &dir.path().join("out"),
        dir.path(),
        &["oracle-check"],
        Some(r#"{"oracle": {"j_values": [0.5], "k_values": [0.2], "times_over_ts": [1.0], "n_fock": 3}}"#),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr_of(&o).contains("numerical error"), "stderr: {}", stderr_of(&o));
}

#[test]
fn unwritable_out_dir_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "not a directory").unwrap();
    let o = run_at(
        &blocker.join("out"),
        dir.path(),
        &["husimi", "--preset", "paper-2017-screened"],
        None,
    );
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr_of(&o).contains("io error"), "stderr: {}", stderr_of(&o));
}

// ---------------------------------------------------------------------------
// manifest determinism
// ---------------------------------------------------------------------------

#[test]
fn manifest_checksums_verify_and_reproduce() {
    let cfg = r#"{"experiment": {"j": 0.5}}"#;
    let args = ["entangle", "--preset", "paper-2017-screened"];
    let sums = |dir: &Path| -> Vec<(String, String, u64)> {
        let out = run_ok(dir, &args, Some(cfg));
        let manifest = json_file(&out.join("manifest.json"));
        manifest["outputs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|rec| {
                let path = rec["path"].as_str().unwrap().to_string();
                let bytes = fs::read(out.join(&path)).unwrap();
                // Recorded checksum must match the bytes actually on disk.
                let digest = format!("{:x}", Sha256::digest(&bytes));
                assert_eq!(rec["sha256"].as_str().unwrap(), digest, "checksum mismatch for {path}");
                assert_eq!(rec["bytes"].as_u64().unwrap(), bytes.len() as u64);
                (path, digest, bytes.len() as u64)
            })
            .collect()
    };

    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = sums(a.path());
    let paths: Vec<&str> = first.iter().map(|(p, _, _)| p.as_str()).collect();
    assert!(paths.contains(&"summary.json"));
    assert!(paths.contains(&"schmidt.csv"));
    assert!(paths.contains(&"witness_gellmann.csv"));
    // Identical config in a fresh directory reproduces identical bytes.
    assert_eq!(first, sums(b.path()));

    let s = json_file(&a.path().join("out/summary.json"));
    let entropy = s["entropy_nats_pure"].as_f64().unwrap();
    let negativity = s["negativity"].as_f64().unwrap();
    assert!((entropy - 0.5892).abs() < 2e-3, "entropy {entropy}");
    assert!((negativity + 0.4471).abs() < 2e-3, "negativity {negativity}");
    // The emitted witness is self-checking: Tr(W rho) reproduces N.
    let tr = s["witness_trace_check"].as_f64().unwrap();
    assert!((tr - negativity).abs() < 1e-8, "witness trace {tr} vs {negativity}");
}

// ---------------------------------------------------------------------------
// subcommand artifacts
// ---------------------------------------------------------------------------

#[test]
fn husimi_peaks_where_the_state_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(
        dir.path(),
        &["husimi", "--preset", "paper-2017-screened"],
        Some(r#"{"experiment": {"j": 2}}"#),
    );
    let s = json_file(&out.join("summary.json"));
    assert_eq!(s["family"].as_str().unwrap(), "css");
    let max_theta = s["max"]["theta_rad"].as_f64().unwrap();
    let max_phi = s["max"]["phi_rad"].as_f64().unwrap();
    assert!((max_theta - std::f64::consts::FRAC_PI_2).abs() < 0.1, "max theta {max_theta}");
    assert!(max_phi.abs() < 0.1, "max phi {max_phi}");
    let integral = s["normalization_integral"].as_f64().unwrap();
    assert!((integral - 1.0).abs() < 1e-2, "integral {integral}");
    let (header, rows) = read_csv(&out.join("husimi.csv"));
    assert_eq!(header, ["theta_rad", "phi_rad", "q"]);
    assert!(!rows.is_empty());
}

#[test]
fn decohere_emits_weakening_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(
        dir.path(),
        &["decohere", "--preset", "paper-2017-screened"],
        Some(
            r#"{"decohere": {"limit": "short", "j_values": [0.5, 2],
                "dimensionless_rate_values": [0, 0.5], "grid_n": 11}}"#,
        ),
    );
    let (header, rows) = read_csv(&out.join("curves.csv"));
    assert_eq!(
        header,
        [
            "j",
            "rate_hz",
            "dimensionless_rate",
            "negativity_reoptimized",
            "theta_opt_rad",
            "negativity_fixed_theta",
            "theta_star_rad",
        ]
    );
    assert_eq!(rows.len(), 4, "2 spins x 2 rates");
    for pair in rows.chunks(2) {
        let clean: f64 = pair[0][3].parse().unwrap();
        let damped: f64 = pair[1][3].parse().unwrap();
        assert!(clean < 0.0, "undamped pair not entangled: {clean}");
        assert!(damped >= clean - 1e-12, "dephasing strengthened entanglement");
    }
    let s = json_file(&out.join("summary.json"));
    assert_eq!(s["limit"].as_str().unwrap(), "short");
    assert_eq!(s["reoptimized"].as_array().unwrap().len(), 4);
}

#[test]
fn tables_reproduce_coherent_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(
        dir.path(),
        &["tables", "--preset", "paper-2017-screened"],
        Some(r#"{"optimize": {"grid_n": 101}}"#),
    );
    let css_column = |name: &str| -> Vec<(f64, f64)> {
        let (header, rows) = read_csv(&out.join(name));
        assert_eq!(&header[..3], &["family", "j", header[2].as_str()]);
        rows.iter()
            .filter(|r| r[0] == "css")
            .map(|r| (r[1].parse().unwrap(), r[2].parse().unwrap()))
            .collect()
    };

    let entropy = css_column("table1.csv");
    let expected = [(0.5, 0.59), (2.0, 1.19), (5.0, 1.32), (10.0, 1.32)];
    assert_eq!(entropy.len(), 4);
    for ((j, v), (je, ve)) in entropy.iter().zip(expected) {
        assert_eq!(*j, je);
        assert!((v - ve).abs() <= 0.02, "entropy j={j}: {v} vs {ve}");
    }

    let negativity = css_column("table2.csv");
    let expected = [(0.5, -0.44), (2.0, -1.40), (5.0, -2.02), (10.0, -2.43)];
    assert_eq!(negativity.len(), 4);
    for ((j, v), (je, ve)) in negativity.iter().zip(expected) {
        assert_eq!(*j, je);
        assert!((v - ve).abs() <= 0.02, "negativity j={j}: {v} vs {ve}");
    }

    let s = json_file(&out.join("summary.json"));
    assert_eq!(s["table1_entropy_nats"].as_array().unwrap().len(), 16);
    assert_eq!(s["table2_negativity"].as_array().unwrap().len(), 8);
}
