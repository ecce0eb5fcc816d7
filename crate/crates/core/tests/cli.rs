use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn maxvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxvar"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    v.as_object_mut().unwrap().remove("timings_ms");
    v
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = maxvar(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let got = json_of(&out);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("MAXVAR_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(got, want, "{name} drifted from its golden file");
}

#[test]
fn golden_reports() {
    golden(
        "hilbert_fermat_3_4.json",
        &["hilbert", "--fermat", "3", "4", "--format", "json"],
        0,
    );
    golden(
        "hilbert_cone.json",
        &["hilbert", "tests/data/cone.txt", "-n", "3", "--format", "json"],
        2,
    );
    golden(
        "wlp_fermat_3_4.json",
        &["wlp", "--fermat", "3", "4", "--format", "json"],
        0,
    );
    golden(
        "maxvar_hypersurface_quartic.json",
        &[
            "maxvar",
            "hypersurface",
            "tests/data/quartic.txt",
            "-e",
            "1",
            "--format",
            "json",
        ],
        0,
    );
    golden(
        "maxvar_double_cover_fermat_2_6.json",
        &["maxvar", "double-cover", "--fermat", "2", "6", "--format", "json"],
        0,
    );
    golden(
        "maxvar_trivial.json",
        &[
            "maxvar",
            "hypersurface",
            "--fermat",
            "3",
            "4",
            "-e",
            "5",
            "--format",
            "json",
        ],
        0,
    );
    golden(
        "rank_oracle_identity.json",
        &["rank-oracle", "tests/data/identity.dump", "--format", "json"],
        0,
    );
}

#[test]
fn schema_fields() {
    let out = maxvar(&[
        "wlp", "--fermat", "2", "6", "--format", "json", "--seed", "7", "--trials", "5",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["command", "input", "config", "verdict", "dims", "rank", "timings_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["trials"], 5);
    assert_eq!(v["verdict"], "holds");
    assert!(v.get("witness").is_none());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| maxvar(args).status.code();
    assert_eq!(code(&["hilbert", "--fermat", "4", "3"]), Some(0));
    assert_eq!(code(&["maxvar", "hypersurface", "--fermat", "3", "3"]), Some(3));
    assert_eq!(code(&["maxvar", "double-cover", "--fermat", "2", "4"]), Some(3));
    assert_eq!(
        code(&["maxvar", "hypersurface", "tests/data/cone.txt", "-n", "3"]),
        Some(4)
    );
    assert_eq!(code(&["wlp", "tests/data/cone.txt", "-n", "3"]), Some(2));
    assert_eq!(code(&["rank-oracle", "tests/data/corrupt.dump"]), Some(1));
    assert_eq!(code(&["rank-oracle", "tests/data/missing.dump"]), Some(1));
    assert_eq!(code(&["hilbert", "--fermat", "3", "4", "--prime", "3"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["--version"]), Some(0));
}

#[test]
fn parse_errors_point_at_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "x0^4 + 3*x1^\n").unwrap();
    let out = maxvar(&["hilbert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte"), "{err}");
}

#[test]
fn fermat_ideal_dump_round_trips_through_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j4.dump");
    let dump = maxvar(&["dump-ideal", "--fermat", "3", "4", "--degree", "4"]);
    assert_eq!(dump.status.code(), Some(0));
    std::fs::write(&path, &dump.stdout).unwrap();
    let out = maxvar(&["rank-oracle", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["details"]["sparse_rank"], 16);
    assert_eq!(v["details"]["oracle_rank"], 16);
}

#[test]
fn cache_hits_reproduce_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("ranks.jsonl");
    let cache = cache.to_str().unwrap();
    let args = [
        "hilbert",
        "tests/data/quartic.txt",
        "--format",
        "json",
        "--cache",
        cache,
    ];
    let first = json_of(&maxvar(&args));
    let second = json_of(&maxvar(&args));
    assert_eq!(first["cache"]["hit"], false);
    assert_eq!(first["cache"]["appended"], 10);
    assert_eq!(second["cache"]["hit"], true);
    assert_eq!(first["dims"], second["dims"]);
    assert_eq!(first["verdict"], second["verdict"]);
    let m = json_of(&maxvar(&[
        "maxvar",
        "hypersurface",
        "tests/data/quartic.txt",
        "--format",
        "json",
        "--cache",
        cache,
    ]));
    assert_eq!(m["cache"]["hit"], true);
    assert_eq!(m["verdict"], "maximal-variation-certified");
    assert_eq!(
        std::fs::read_to_string(dir.path().join("ranks.jsonl"))
            .unwrap()
            .lines()
            .count(),
        10
    );
}
