//! Exit-code and config-file contract: 0 success, 1 usage error,
//! 2 runtime error; TOML values fill in where flags are absent.

use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hcspace")
}

fn output(args: &[&str]) -> std::process::Output {
    Command::new(bin()).args(args).output().expect("spawn hcspace")
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(output(&["--version"]).status.code(), Some(0));
    assert_eq!(output(&["--help"]).status.code(), Some(0));
    assert_eq!(output(&["gen", "--help"]).status.code(), Some(0));

    // Usage errors: unknown flag, unknown subcommand, bad enum value.
    assert_eq!(output(&["gen", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(output(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(output(&["plot", "--kind", "pie"]).status.code(), Some(1));

    // Runtime errors: missing archive file, invalid generator argument.
    let missing = output(&["stats", "--archive", "/nonexistent/archive.jsonl"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    let bad_p = output(&["gen", "--kind", "erdos-renyi", "--p", "1.5"]);
    assert_eq!(bad_p.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("pipeline.toml");
    std::fs::write(&cfg, "n = 5\nseed = 9\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();

    // Values come from the config...
    let out = output(&["--config", cfg_s, "gen", "--kind", "circle", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("\"n\":5"), "n from config:\n{text}");

    // ...and a flag overrides its config value.
    let out2 = output(&["--config", cfg_s, "gen", "--kind", "circle", "--n", "7"]);
    let text2 = String::from_utf8(out2.stdout).unwrap();
    assert!(text2.contains("\"n\":7"), "flag beats config:\n{text2}");

    // Unknown keys are rejected as a runtime error.
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "n = 5\nnosuchkey = 1\n").unwrap();
    assert_eq!(
        output(&["--config", bad.to_str().unwrap(), "gen"]).status.code(),
        Some(2)
    );
}
