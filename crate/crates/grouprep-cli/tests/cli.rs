//! End-to-end runs of the binary: exit codes, file inputs, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grouprep"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("GROUPREP_CONFIG").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const CHI_CERT: &str = "\
representation = pi-affine
target = chi01
grid = line(-1, 2, 1024)
term = 1 * affine(1,0)
term = -0.7071067811865476 * affine(1/2,0)
term = -0.7071067811865476 * affine(1/2,1/2)
";

#[test]
fn suite_affine_chi_passes() {
    let out = run(&["suite", "affine-chi"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("[PASS]"), "{text}");
    assert!(text.contains("summary:"), "{text}");
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = run(&["suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown suite"));
}

#[test]
fn bad_flags_are_usage_error() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn verify_certificate_file() {
    let dir = tempfile::tempdir().unwrap();
    let cert = write(dir.path(), "chi.cert", CHI_CERT);
    let out = run(&["verify", &cert]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // breaking a coefficient must flip the exit code
    let broken = write(dir.path(), "broken.cert", &CHI_CERT.replace("0.7071", "0.7"));
    assert_eq!(run(&["verify", &broken]).status.code(), Some(1));
}

#[test]
fn malformed_certificate_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.cert", "representation = pi-affine\nterm = chi\n");
    let out = run(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn probe_independent_translates() {
    let dir = tempfile::tempdir().unwrap();
    let probe = write(
        dir.path(),
        "z.probe",
        "representation = pi-affine\nvector = gaussian\ngrid = line(-8,8,512)\n\
         element = affine(1,0)\nelement = affine(1,1)\nelement = affine(1,-1)\n",
    );
    let out = run(&["probe", &probe]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("independent"), "{text}");
}

#[test]
fn gring_torsion_prints_witness() {
    let out = run(&["gring", "torsion", "--m", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("kernel witness"), "{text}");
    assert!(text.contains("zmod(3,"), "{text}");
}

#[test]
fn gring_probe_formal_sum() {
    let dir = tempfile::tempdir().unwrap();
    // 1 - g over Z^1 has full rank on every ball
    let f = write(dir.path(), "a.sum", "1 * zn(0)\n-1 * zn(1)\n");
    let out = run(&["gring", "probe", &f, "--radius", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // the torsion pattern over Z/3 is a genuine zero divisor
    let z = write(dir.path(), "z.sum", "1 * zmod(3,0)\n-1 * zmod(3,1)\n");
    let out = run(&["gring", "probe", &z]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("kernel witness"), "{text}");
}

#[test]
fn config_controls_outputs_and_env_path_works() {
    let dir = tempfile::tempdir().unwrap();
    let text_path = dir.path().join("report.txt");
    let records_path = dir.path().join("report.jsonl");
    let config = write(
        dir.path(),
        "run.toml",
        &format!(
            "seed = 7\n[output]\ntext = {:?}\nrecords = {:?}\n",
            text_path.to_str().unwrap(),
            records_path.to_str().unwrap()
        ),
    );

    let out = bin()
        .args(["suite", "refinement"])
        .env("GROUPREP_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records = std::fs::read(&records_path).unwrap();
    assert!(text_path.exists());

    // determinism: same config + seed => identical machine-readable bytes
    let out2 = bin()
        .args(["suite", "refinement", "--config", &config])
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(std::fs::read(&records_path).unwrap(), records);
}

#[test]
fn bad_config_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "bad.toml", "[tolerances]\nidentity = -1.0\n");
    let out = bin().args(["suite", "refinement", "--config", &config]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("identity"));
}

#[test]
fn admissibility_reports_constant() {
    let out = run(&["admissibility", "--function", "odd-gaussian"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");

    // plain Gaussian diverges logarithmically: inconclusive, exit 3
    let out = run(&["admissibility", "--function", "gaussian"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}
