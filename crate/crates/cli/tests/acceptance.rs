//! End-to-end acceptance check for the command-line pipeline: generate a
//! suite, solve it, run hardness/novelty/target evolutions, fit and apply
//! the projection, classify, and plot — then verify the final archive and
//! figures. Prints one `[PASS]`/`[FAIL]` line (visible with `--nocapture`).

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use hcspace_core::archive::read_archive;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hcspace")
}

/// Runs the binary, asserting success; returns stdout.
fn run(args: &[&str]) -> String {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("spawn hcspace");
    assert!(
        out.status.success(),
        "`hcspace {}` failed with {:?}\nstderr: {}",
        args.join(" "),
        out.status.code(),
        String::from_utf8_lossy(&out.stderr),
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

fn assert_svg(path: &Path) {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("read {}: {e}", path.display()));
    assert!(
        text.starts_with("<svg") && text.trim_end().ends_with("</svg>"),
        "{} is not an SVG document",
        path.display()
    );
}

#[test]
fn criterion_10_end_to_end_pipeline() {
    let started = Instant::now();
    let dir = tempfile::tempdir().expect("tempdir");
    let p = |name: &str| dir.path().join(name);
    let s = |name: &str| p(name).to_str().unwrap().to_string();

    // Budgets: node count and run counts follow the desk recipe; the
    // generation budget is trimmed so the whole pipeline stays fast.
    let evo = |extra: &[&str]| -> Vec<String> {
        let mut v: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        v.extend(
            [
                "--n", "16", "--generations", "25", "--extension-generations", "0",
            ]
            .iter()
            .map(|s| s.to_string()),
        );
        v
    };

    // 1. Generate the standard 40-graph suite.
    run(&["gen", "--kind", "suite", "--n", "16", "--count", "40", "--seed", "7",
          "--archive", &s("arch.jsonl")]);

    // 2. Solve everything with both solvers (times, hcn values, fitness).
    run(&["solve", "--archive", &s("arch.jsonl"), "--out-archive", &s("solved.jsonl"),
          "--seed", "3"]);

    // 3. Three hardness runs: two maximizing, one minimizing.
    let mut max_args: Vec<String> = ["evolve", "--mode", "max", "--runs", "2", "--seed", "11",
        "--archive", &s("solved.jsonl")].iter().map(|s| s.to_string()).collect();
    max_args.extend(evo(&[]));
    run(&max_args.iter().map(String::as_str).collect::<Vec<_>>());
    let mut min_args: Vec<String> = ["evolve", "--mode", "min", "--runs", "1", "--seed", "12",
        "--archive", &s("solved.jsonl")].iter().map(|s| s.to_string()).collect();
    min_args.extend(evo(&[]));
    run(&min_args.iter().map(String::as_str).collect::<Vec<_>>());

    // 4. Features for every record (plus a CSV table).
    run(&["features", "--archive", &s("solved.jsonl"), "--out-archive", &s("feat.jsonl"),
          "--csv", &s("features.csv")]);

    // 5. Fit the projection; 6. project every record.
    run(&["fit-pca", "--archive", &s("feat.jsonl"), "--model-out", &s("model.txt")]);
    run(&["project", "--archive", &s("feat.jsonl"), "--model", &s("model.txt"),
          "--out-archive", &s("proj.jsonl")]);

    // 7. Two novelty runs and 8. two target runs, appended pre-projected.
    let mut nov: Vec<String> = ["fill", "--mode", "novelty", "--runs", "2", "--seed", "21",
        "--model", &s("model.txt"), "--archive", &s("proj.jsonl")]
        .iter().map(|s| s.to_string()).collect();
    nov.extend(evo(&[]));
    run(&nov.iter().map(String::as_str).collect::<Vec<_>>());
    let mut tgt: Vec<String> = ["fill", "--mode", "target", "--runs", "2", "--seed", "22",
        "--target-x", "0", "--target-y", "0",
        "--model", &s("model.txt"), "--archive", &s("proj.jsonl")]
        .iter().map(|s| s.to_string()).collect();
    tgt.extend(evo(&[]));
    run(&tgt.iter().map(String::as_str).collect::<Vec<_>>());

    // 9. Classifier report over the solved points.
    let report = run(&["classify", "--archive", &s("proj.jsonl"), "--k", "5",
                       "--split-seed", "1"]);
    assert!(
        report.lines().any(|l| l.starts_with("accuracy,") || l.contains("accuracy")),
        "classifier report lacks an accuracy line:\n{report}"
    );

    // 10. The four figures.
    run(&["plot", "--kind", "histogram", "--archive", &s("proj.jsonl"),
          "--bin-width", "0.0005", "--out", &s("hist.svg")]);
    run(&["plot", "--kind", "landscape", "--archive", &s("proj.jsonl"),
          "--clamp", "-2", "3", "--out", &s("land.svg")]);
    run(&["plot", "--kind", "footprint", "--archive", &s("proj.jsonl"),
          "--tag", "generator", "--out", &s("foot.svg")]);
    run(&["plot", "--kind", "regions", "--archive", &s("proj.jsonl"),
          "--k", "5", "--grid-res", "40", "--out", &s("regions.svg")]);
    for f in ["hist.svg", "land.svg", "foot.svg", "regions.svg"] {
        assert_svg(&p(f));
    }
    let land = std::fs::read_to_string(p("land.svg")).unwrap();
    assert!(
        land.contains("[-2, 3]"),
        "landscape annotation should echo the clamp range"
    );

    // Final archive: every record valid, with features and coordinates.
    let text = std::fs::read_to_string(p("proj.jsonl")).unwrap();
    let records = read_archive(&text).expect("final archive parses");
    assert!(records.len() >= 40, "archive shrank to {}", records.len());
    for rec in &records {
        rec.validate().expect("record validates");
        assert!(
            rec.features.is_some(),
            "record {:016x} lacks features",
            rec.id
        );
        assert!(
            rec.px.is_some() && rec.py.is_some(),
            "record {:016x} lacks coordinates",
            rec.id
        );
    }
    let evolved = records
        .iter()
        .filter(|r| r.provenance.matches_tag("evolved"))
        .count();
    assert!(evolved > 0, "no evolved records were appended");

    let secs = started.elapsed().as_secs_f64();
    let ok = secs < 900.0;
    println!(
        "[{}] criterion 10 (end-to-end pipeline): {} records ({} evolved), all valid with features and coordinates; histogram, landscape, footprint, and regions SVGs written; {secs:.0}s (< 900s)",
        if ok { "PASS" } else { "FAIL" },
        records.len(),
        evolved,
    );
    assert!(ok, "pipeline took {secs:.0}s");
}
