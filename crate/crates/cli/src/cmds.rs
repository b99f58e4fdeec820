//! Non-evolutionary subcommands: gen, solve, features, fit-pca, project,
//! classify, stats.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context};
use hcspace_core::analysis::{evaluate_classifier, LabeledPoint};
use hcspace_core::archive::{InstanceRecord, Provenance};
use hcspace_core::features::{feature_vector, FeatureVector, FEATURE_COUNT, FEATURE_NAMES};
use hcspace_core::generate::{generate, kind_from_name, standard_suite, GeneratorSpec};
use hcspace_core::projection::{fit, from_text, project, to_text, ProjectionModel};
use hcspace_core::rng::derive2;
use hcspace_core::solver::{
    runtime_difference_fitness, timed_solve, MslsParams, RuntimeDiffConfig, SolverChoice,
    SolverConfig,
};

use crate::ioutil::{append_records, read_records, write_records, write_text};

// ---- gen -------------------------------------------------------------------

pub struct GenArgs {
    pub kind: String,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub p: Option<f64>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub m: Option<usize>,
    pub branching: Option<usize>,
    pub archive: Option<PathBuf>,
}

pub fn cmd_gen(a: &GenArgs) -> anyhow::Result<()> {
    let specs: Vec<GeneratorSpec> = if a.kind == "suite" {
        standard_suite(a.n, a.count, a.seed)
    } else {
        let (rows, cols) = match (a.rows, a.cols) {
            (Some(r), Some(c)) => (Some(r), Some(c)),
            (None, None) => (None, None),
            _ => bail!("--rows and --cols must be given together"),
        };
        let kind = kind_from_name(&a.kind, a.p, rows, cols, a.m, a.branching, a.n)
            .context("resolving generator kind")?;
        (0..a.count)
            .map(|i| GeneratorSpec {
                kind: kind.clone(),
                n: a.n,
                seed: derive2(a.seed, i as u64),
            })
            .collect()
    };
    let mut records = Vec::with_capacity(specs.len());
    for spec in &specs {
        let g = generate(spec)
            .with_context(|| format!("generating {} graph with n = {}", spec.kind.name(), spec.n))?;
        records.push(InstanceRecord::from_graph(
            &g,
            Provenance::Generator {
                kind: spec.kind.name().to_string(),
            },
        ));
    }
    append_records(a.archive.as_deref(), &records)
}

// ---- solve -----------------------------------------------------------------

pub struct SolveArgs {
    pub archive: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub exact: bool,
    pub heuristic: bool,
    pub exact_limit: usize,
    pub restarts: usize,
    pub repeats: usize,
    pub seed: u64,
    pub skip_solved: bool,
}

pub fn cmd_solve(a: &SolveArgs) -> anyhow::Result<()> {
    let mut records = read_records(a.archive.as_deref())?;
    // With no selector flags, solve with both and record the difference.
    let both = !a.exact && !a.heuristic;
    let want_exact = a.exact || both;
    let want_heuristic = a.heuristic || both;
    for rec in &mut records {
        let g = rec.graph()?;
        let msls = MslsParams {
            restarts: a.restarts,
            // Derive the heuristic seed from the record id so results do
            // not depend on archive ordering.
            seed: derive2(a.seed, rec.id),
            ..MslsParams::default()
        };
        let need_exact =
            want_exact && !(a.skip_solved && rec.t_exact.is_some() && rec.hcn_exact.is_some());
        let need_heuristic = want_heuristic
            && !(a.skip_solved && rec.t_heuristic.is_some() && rec.hcn_heuristic.is_some());
        let solver = SolverConfig {
            exact_limit: a.exact_limit,
            msls,
        };
        let ctx = || format!("solving instance {:016x}", rec.id);
        if need_exact && need_heuristic {
            let diff_cfg = RuntimeDiffConfig {
                solver,
                repeats: a.repeats,
            };
            let sample = runtime_difference_fitness(&g, &diff_cfg).with_context(ctx)?;
            rec.fitness = Some(sample.fitness);
            rec.t_exact = Some(sample.t_exact);
            rec.t_heuristic = Some(sample.t_heuristic);
            rec.hcn_exact = Some(sample.hcn_exact as u64);
            rec.hcn_heuristic = Some(sample.hcn_heuristic as u64);
        } else {
            if need_exact {
                let r = timed_solve(SolverChoice::Exact, &g, &solver).with_context(ctx)?;
                rec.t_exact = Some(r.cpu_seconds);
                rec.hcn_exact = Some(r.hcn as u64);
            }
            if need_heuristic {
                let r = timed_solve(SolverChoice::Heuristic, &g, &solver).with_context(ctx)?;
                rec.t_heuristic = Some(r.cpu_seconds);
                rec.hcn_heuristic = Some(r.hcn as u64);
            }
            if let (Some(te), Some(th)) = (rec.t_exact, rec.t_heuristic) {
                rec.fitness = Some(th - te);
            }
        }
    }
    write_records(a.out.as_deref(), &records)
}

// ---- features --------------------------------------------------------------

pub struct FeaturesArgs {
    pub archive: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

pub fn cmd_features(a: &FeaturesArgs) -> anyhow::Result<()> {
    let mut records = read_records(a.archive.as_deref())?;
    let mut csv = String::from("id,");
    csv.push_str(&FEATURE_NAMES.join(","));
    csv.push('\n');
    for rec in &mut records {
        let g = rec.graph()?;
        let fv = feature_vector(&g);
        let arr = fv.as_array();
        rec.features = Some(arr.to_vec());
        csv.push_str(&format!("{:016x}", rec.id));
        for v in arr {
            csv.push(',');
            csv.push_str(&v.to_string());
        }
        csv.push('\n');
    }
    if let Some(path) = &a.csv {
        std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    write_records(a.out.as_deref(), &records)
}

/// Pulls the stored feature vector out of a record, or explains what to
/// run first.
fn stored_features(rec: &InstanceRecord) -> anyhow::Result<FeatureVector> {
    let Some(f) = &rec.features else {
        bail!(
            "record {:016x} has no features; run the features command first",
            rec.id
        );
    };
    let arr: [f64; FEATURE_COUNT] = f
        .as_slice()
        .try_into()
        .with_context(|| format!("record {:016x} feature arity", rec.id))?;
    Ok(FeatureVector::from_array(&arr))
}

// ---- fit-pca ---------------------------------------------------------------

pub struct FitPcaArgs {
    pub archive: Option<PathBuf>,
    pub model_out: Option<PathBuf>,
}

pub fn cmd_fit_pca(a: &FitPcaArgs) -> anyhow::Result<()> {
    let records = read_records(a.archive.as_deref())?;
    let vectors: Vec<FeatureVector> = records
        .iter()
        .map(stored_features)
        .collect::<anyhow::Result<_>>()?;
    let model = fit(&vectors).context("fitting projection")?;
    eprintln!(
        "fitted on {} instances; variance explained: {} {}",
        vectors.len(),
        model.variance_explained[0],
        model.variance_explained[1]
    );
    write_text(a.model_out.as_deref(), &to_text(&model))
}

// ---- project ---------------------------------------------------------------

pub struct ProjectArgs {
    pub archive: Option<PathBuf>,
    pub model: PathBuf,
    pub out: Option<PathBuf>,
}

pub fn load_model(path: &std::path::Path) -> anyhow::Result<ProjectionModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_text(&text).with_context(|| format!("parsing model {}", path.display()))
}

pub fn cmd_project(a: &ProjectArgs) -> anyhow::Result<()> {
    let model = load_model(&a.model)?;
    let mut records = read_records(a.archive.as_deref())?;
    for rec in &mut records {
        let fv = stored_features(rec)?;
        let (x, y) = project(&model, &fv)
            .with_context(|| format!("projecting record {:016x}", rec.id))?;
        rec.px = Some(x);
        rec.py = Some(y);
    }
    write_records(a.out.as_deref(), &records)
}

// ---- classify --------------------------------------------------------------

pub struct ClassifyArgs {
    pub archive: Option<PathBuf>,
    pub k: usize,
    pub split_seed: u64,
    pub report: Option<PathBuf>,
}

pub fn labeled_points(records: &[InstanceRecord]) -> Vec<LabeledPoint> {
    records.iter().filter_map(LabeledPoint::from_record).collect()
}

pub fn cmd_classify(a: &ClassifyArgs) -> anyhow::Result<()> {
    let records = read_records(a.archive.as_deref())?;
    let points = labeled_points(&records);
    let skipped = records.len() - points.len();
    if skipped > 0 {
        eprintln!("skipping {skipped} records without coordinates or runtime difference");
    }
    let report = evaluate_classifier(&points, a.split_seed, a.k)
        .context("evaluating solver-choice classifier")?;
    let mut out = String::new();
    out.push_str("k,train_size,test_size,accuracy\n");
    out.push_str(&format!(
        "{},{},{},{}\n",
        report.k, report.train_size, report.test_size, report.accuracy
    ));
    out.push_str("confusion,predicted-exact-faster,predicted-heuristic-faster\n");
    out.push_str(&format!(
        "actual-exact-faster,{},{}\n",
        report.confusion[0][0], report.confusion[0][1]
    ));
    out.push_str(&format!(
        "actual-heuristic-faster,{},{}\n",
        report.confusion[1][0], report.confusion[1][1]
    ));
    out.push_str("misclassified\n");
    for id in &report.misclassified {
        out.push_str(&format!("{id:016x}\n"));
    }
    write_text(a.report.as_deref(), &out)
}

// ---- stats -----------------------------------------------------------------

pub struct StatsArgs {
    pub archive: Option<PathBuf>,
}

fn range_lines<T: PartialOrd + Copy + std::fmt::Display>(
    out: &mut String,
    key: &str,
    values: &[T],
) {
    if values.is_empty() {
        return;
    }
    let mut lo = values[0];
    let mut hi = values[0];
    for &v in &values[1..] {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    out.push_str(&format!("{key}_min,{lo}\n{key}_max,{hi}\n"));
}

pub fn cmd_stats(a: &StatsArgs) -> anyhow::Result<()> {
    let records = read_records(a.archive.as_deref())?;
    let mut out = String::new();
    out.push_str(&format!("records,{}\n", records.len()));
    range_lines(&mut out, "n", &records.iter().map(|r| r.n).collect::<Vec<_>>());
    let diffs: Vec<f64> = records.iter().filter_map(|r| r.runtime_diff()).collect();
    out.push_str(&format!("with_runtime_diff,{}\n", diffs.len()));
    range_lines(&mut out, "runtime_diff", &diffs);
    let hcn: Vec<u64> = records.iter().filter_map(|r| r.hcn_exact).collect();
    range_lines(&mut out, "hcn_exact", &hcn);
    out.push_str(&format!(
        "with_features,{}\n",
        records.iter().filter(|r| r.features.is_some()).count()
    ));
    out.push_str(&format!(
        "with_coords,{}\n",
        records
            .iter()
            .filter(|r| r.px.is_some() && r.py.is_some())
            .count()
    ));
    let mut by_source: BTreeMap<String, usize> = BTreeMap::new();
    for r in &records {
        let key = match &r.provenance {
            Provenance::Generator { kind } => format!("generator:{kind}"),
            Provenance::Evolved { mode, .. } => format!("evolved:{mode}"),
        };
        *by_source.entry(key).or_default() += 1;
    }
    for (key, count) in &by_source {
        out.push_str(&format!("source:{key},{count}\n"));
    }
    write_text(None, &out)
}
