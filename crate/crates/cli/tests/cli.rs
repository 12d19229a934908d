//! End-to-end checks of the binary: canonical output, exit codes,
//! determinism and config round-trips.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weylspec"))
}

fn write_config(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

const SU2_X_SO3: &str = r#"
[[factor]]
type = "A"
rank = 1
kind = "group"
scale = "1/4"

[[factor]]
type = "A"
rank = 1
kind = "group"
gamma = ["1/2,-1/2"]
scale = "1"
"#;

const SO3_CFG: &str = r#"
[[factor]]
type = "A"
rank = 1
kind = "group"
gamma = ["1/2,-1/2"]
"#;

#[test]
fn roots_b2_golden_fields() {
    let out = bin().args(["roots", "B", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"root_count\": 8"));
    // 2rho = 3 eps1 + eps2
    assert!(text.contains("\"two_rho\": [\n      \"3\",\n      \"1\"\n    ]"));
    assert!(text.contains("\"center_invariant_factors\": [\n      2\n    ]"));
}

#[test]
fn roots_rejects_bad_rank_with_exit_2() {
    let out = bin().args(["roots", "B", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["roots", "Q", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wave_reproduces_cancellation_example() {
    let cfg = write_config(SU2_X_SO3);
    let out = bin()
        .args(["wave", "--config", cfg.path().to_str().unwrap(), "--bound", "5/2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"len2\": \"5/2\""));
    assert!(text.contains("\"leading_certified_nonzero\": false"));
}

#[test]
fn spectrum_is_byte_deterministic() {
    let cfg = write_config(SU2_X_SO3);
    let run = || {
        bin()
            .args(["spectrum", "--config", cfg.path().to_str().unwrap(), "--bound", "3"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn rank_of_so3_is_one() {
    let cfg = write_config(SO3_CFG);
    let out = bin()
        .args(["rank", "--config", cfg.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"rank\": 1"));
}

#[test]
fn clu_witness_and_classh() {
    let cfg = write_config(SU2_X_SO3);
    let out = bin()
        .args(["clu", "--config", cfg.path().to_str().unwrap(), "--bound", "5/2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"verdict\": \"witness\""));
    let out = bin()
        .args(["classh", "--config", cfg.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"in_class\": false"));
}

#[test]
fn so3_clean_and_surd_parsing() {
    let out = bin().args(["so3", "--alpha", "1", "--A", "1/2", "clean"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"verdict\": \"unclean\""));
    assert!(text.contains("\"j\": 1"));
    assert!(text.contains("\"k\": 4"));
    let out = bin()
        .args(["so3", "--alpha", "1", "--A", "1:surd 2", "clean"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"verdict\": \"clean\""));
    // non-positive metric: config error
    let out = bin().args(["so3", "--alpha", "0", "--A", "1", "clean"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn so3_wave0_biinvariant_value() {
    let out = bin().args(["so3", "--alpha", "1", "--A", "1", "wave0"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // -16 sqrt2 pi = -71.0861...: 12 significant digits in the rendering
    assert!(text.contains("\"magnitude_float\": 7.10861270105e1"), "{text}");
    assert!(text.contains("\"sign\": -1"));
}

#[test]
fn so3_conj_agrees_with_verify() {
    let out = bin()
        .args(["so3", "--alpha", "1", "--A", "1/2", "conj", "--p", "1", "--q", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"morse_index_primitive\": 3"));
    let out = bin()
        .args(["verify", "conj", "--alpha", "1", "--A", "1/2", "--p", "1", "--q", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"agree\": true"));
}

#[test]
fn verify_closure_and_enum_pass() {
    let out = bin()
        .args(["verify", "closure", "--alpha", "1", "--A", "1/2", "--bound", "5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"pass\": true"));
    let out = bin().args(["verify", "enum", "--seed", "3", "--trials", "4"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"agree\": true"));
}

#[test]
fn csv_format_and_out_file() {
    let cfg = write_config(SO3_CFG);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = bin()
        .args([
            "spectrum",
            "--config",
            cfg.path().to_str().unwrap(),
            "--bound",
            "2",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("len2"));
    assert!(out.stdout.is_empty());
}

#[test]
fn config_echo_round_trips() {
    let cfg: weylspec_cli::config::ConfigFile = toml::from_str(SU2_X_SO3).unwrap();
    let (space, metric) = weylspec_cli::config::build(&cfg).unwrap();
    let echo = weylspec_cli::config::echo_toml(&cfg);
    let cfg2: weylspec_cli::config::ConfigFile = toml::from_str(&echo).unwrap();
    let (space2, metric2) = weylspec_cli::config::build(&cfg2).unwrap();
    assert_eq!(space.integral_lattice(), space2.integral_lattice());
    assert_eq!(space.dim(), space2.dim());
    assert_eq!(metric.scales, metric2.scales);
}
