//! End-to-end checks of the binary: JSON round-trips, cache byte-identity,
//! and the exit-code contract.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kqcoop"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kqcoop-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn ext_json_roundtrip() {
    let dir = tmp_dir("roundtrip");
    let chart = dir.join("m2.json");
    let status = bin()
        .args([
            "ext", "--module", "M2", "--smax", "4", "--tmax", "10", "--wmin", "-2",
        ])
        .arg("--out")
        .arg(&chart)
        .status()
        .unwrap();
    assert!(status.success());
    // load -> re-emit must be the identity
    let re = dir.join("re.json");
    let status = bin()
        .args(["chart", "--format", "json"])
        .arg("--input")
        .arg(&chart)
        .arg("--out")
        .arg(&re)
        .status()
        .unwrap();
    assert!(status.success());
    let a = std::fs::read(&chart).unwrap();
    let b = std::fs::read(&re).unwrap();
    assert_eq!(a, b, "JSON -> load -> JSON is not the identity");
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tmp_dir("cache");
    let cache = dir.join("cache");
    let cold = dir.join("cold.json");
    let warm = dir.join("warm.json");
    for out in [&cold, &warm] {
        let status = bin()
            .args([
                "ext", "--module", "HZ1", "--smax", "4", "--tmax", "10", "--wmin", "-2",
            ])
            .arg("--cache-dir")
            .arg(&cache)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&cold).unwrap();
    let b = std::fs::read(&warm).unwrap();
    assert_eq!(a, b, "cold and warm cache outputs differ");
    // also honored through the environment variable
    let env_out = dir.join("env.json");
    let status = bin()
        .args([
            "ext", "--module", "HZ1", "--smax", "4", "--tmax", "10", "--wmin", "-2",
        ])
        .env("KQCOOP_CACHE", &cache)
        .arg("--out")
        .arg(&env_out)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&env_out).unwrap(), a);
}

#[test]
fn tsv_and_svg_emit() {
    let dir = tmp_dir("emit");
    let tsv = dir.join("m2.tsv");
    let status = bin()
        .args([
            "ext", "--module", "M2", "--smax", "3", "--tmax", "8", "--format", "tsv",
        ])
        .arg("--out")
        .arg(&tsv)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&tsv).unwrap();
    assert!(text.starts_with("s\tt\tw\tdim\tgens\n"));
    assert!(text.contains("0\t0\t0\t1\tM2:0.0.0.0"));
    // SVG: deterministic bytes across two runs
    let svg1 = dir.join("a.svg");
    let svg2 = dir.join("b.svg");
    for out in [&svg1, &svg2] {
        let status = bin()
            .args([
                "ext", "--module", "M2", "--smax", "3", "--tmax", "8", "--format", "svg",
            ])
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&svg1).unwrap();
    assert_eq!(a, std::fs::read(&svg2).unwrap(), "SVG emit not deterministic");
    assert!(String::from_utf8(a).unwrap().starts_with("<svg"));
}

#[test]
fn exit_codes() {
    // unknown flag: usage error, exit 1
    let status = bin().args(["ext", "--nonsense"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
    // malformed module: exit 1
    let status = bin()
        .args(["ext", "--module", "XYZ", "--smax", "2", "--tmax", "4"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // verification suites pass: exit 0
    let status = bin().args(["verify", "--suite", "steenrod"]).status().unwrap();
    assert_eq!(status.code(), Some(0));
    // unknown suite reports failure loudly: exit 2
    let status = bin().args(["verify", "--suite", "bogus"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn bg_dump_matches_comodule_schema() {
    let out = bin()
        .args(["bg", "--module", "HZ2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["name"], "HZ2");
    assert_eq!(json["basis"].as_array().unwrap().len(), 7);
    assert!(json["coaction"].is_object());
    // round-trip through the library loader
    let parsed: kqcoop_core::comodule::ComoduleJson =
        serde_json::from_slice(&out.stdout).unwrap();
    let module = kqcoop_core::comodule::Comodule::from_json(&parsed).unwrap();
    assert_eq!(module.rank(), 7);
}

#[test]
fn stems_examples() {
    let out = bin().args(["stems", "--eta", "--stem", "8"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("weight 4: F2{h1^0 v1^4 x}"));
    assert!(text.contains("weight 5: F2{h1^0 v1^0 y}"));
    assert!(text.contains("weight 8: F2{h1^8 v1^0 x}"));
}
