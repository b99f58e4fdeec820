//! Evolution subcommands: `evolve` (runtime-difference hardness runs) and
//! `fill` (novelty / target-point landscape filling).

use std::path::PathBuf;

use anyhow::{bail, Context};
use hcspace_core::archive::{InstanceRecord, Provenance};
use hcspace_core::evolve::{
    run_evolution, Direction, EvolutionConfig, EvolutionRun, FitnessMode, GenerationStats,
};
use hcspace_core::features::feature_vector;
use hcspace_core::projection::project;
use hcspace_core::rng::derive2;
use hcspace_core::solver::{MslsParams, RuntimeDiffConfig, SolverConfig};

use crate::cmds::load_model;
use crate::ioutil::append_records;

/// Settings shared by `evolve` and `fill`.
pub struct EvoShared {
    pub n: usize,
    pub seed: u64,
    pub runs: usize,
    pub pop_size: usize,
    pub offspring: usize,
    pub generations: usize,
    pub extension_generations: usize,
    pub extension_window: usize,
    pub hof_size: usize,
    pub tournament_size: usize,
    pub mutation_rate: f64,
    pub workers: usize,
    /// Directory for per-run generation-stats CSV files, when wanted.
    pub stats_dir: Option<PathBuf>,
}

impl EvoShared {
    /// The evolution config for run `r`. Each run gets its own seed and
    /// its own initial edge probability, spread over [0.1, 0.9].
    fn config(&self, r: usize, direction: Direction) -> (EvolutionConfig, u64) {
        let run_seed = derive2(self.seed, r as u64);
        let p = if self.runs <= 1 {
            0.5
        } else {
            0.1 + 0.8 * r as f64 / (self.runs - 1) as f64
        };
        let cfg = EvolutionConfig {
            n: self.n,
            pop_size: self.pop_size,
            offspring_count: self.offspring,
            mutation_rate: self.mutation_rate,
            generations: self.generations,
            extension_generations: self.extension_generations,
            extension_window: self.extension_window,
            hof_size: self.hof_size,
            tournament_size: self.tournament_size,
            direction,
            seed: run_seed,
            initial_edge_p: p,
            eval_workers: self.workers,
            ..EvolutionConfig::default()
        };
        (cfg, run_seed)
    }

    fn write_stats(&self, mode: &str, r: usize, stats: &[GenerationStats]) -> anyhow::Result<()> {
        let Some(dir) = &self.stats_dir else {
            return Ok(());
        };
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(format!("stats-{mode}-run{r}.csv"));
        std::fs::write(&path, stats_csv(stats))
            .with_context(|| format!("writing {}", path.display()))
    }
}

/// Renders per-generation statistics as CSV.
pub fn stats_csv(stats: &[GenerationStats]) -> String {
    let mut out = String::from("gen,min,mean,max,mean_edges\n");
    for s in stats {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.generation, s.fitness_min, s.fitness_mean, s.fitness_max, s.mean_edges
        ));
    }
    out
}

fn hof_records(
    run: &EvolutionRun,
    run_id: u64,
    mode: &str,
    store_fitness: bool,
) -> Vec<InstanceRecord> {
    run.hof
        .entries()
        .iter()
        .map(|e| {
            let mut rec = InstanceRecord::from_graph(
                &e.graph,
                Provenance::Evolved {
                    run_id,
                    generation: e.generation,
                    mode: mode.to_string(),
                },
            );
            if store_fitness {
                // Runtime-difference fitness goes in the fitness field
                // proper; geometric fitness is stored out-of-band below.
                rec.fitness = Some(e.fitness);
            } else if let Some(v) = serde_json::Number::from_f64(e.fitness) {
                rec.extra
                    .insert("evo_fitness".to_string(), serde_json::Value::Number(v));
            }
            rec
        })
        .collect()
}

// ---- evolve ----------------------------------------------------------------

pub struct EvolveArgs {
    pub shared: EvoShared,
    pub direction: Direction,
    pub exact_limit: usize,
    pub restarts: usize,
    pub repeats: usize,
    pub archive: Option<PathBuf>,
}

pub fn cmd_evolve(a: &EvolveArgs) -> anyhow::Result<()> {
    let mode = match a.direction {
        Direction::Maximize => "runtime-diff-max",
        Direction::Minimize => "runtime-diff-min",
    };
    let mut records = Vec::new();
    for r in 0..a.shared.runs {
        let (cfg, run_seed) = a.shared.config(r, a.direction);
        let fitness = FitnessMode::RuntimeDiff(RuntimeDiffConfig {
            solver: SolverConfig {
                exact_limit: a.exact_limit,
                msls: MslsParams {
                    restarts: a.restarts,
                    seed: derive2(run_seed, 0xD15C),
                    ..MslsParams::default()
                },
            },
            repeats: a.repeats,
        });
        let run = run_evolution(&cfg, &fitness, None)
            .with_context(|| format!("evolution run {r} ({mode})"))?;
        eprintln!(
            "run {r} ({mode}): {} generations{}, best fitness {}",
            run.stats.len() - 1,
            if run.extended { " (extended)" } else { "" },
            run.hof.best().map(|e| e.fitness).unwrap_or(f64::NAN)
        );
        a.shared.write_stats(mode, r, &run.stats)?;
        records.extend(hof_records(&run, run_seed, mode, true));
    }
    append_records(a.archive.as_deref(), &records)
}

// ---- fill ------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum FillMode {
    Novelty,
    Target,
}

pub struct FillArgs {
    pub shared: EvoShared,
    pub mode: FillMode,
    pub model: PathBuf,
    /// Existing projected archive that defines the landscape.
    pub archive: PathBuf,
    /// Where new records go; defaults to appending to `archive` itself.
    pub out: Option<PathBuf>,
    pub target: Option<(f64, f64)>,
}

pub fn cmd_fill(a: &FillArgs) -> anyhow::Result<()> {
    let model = load_model(&a.model)?;
    let records = crate::ioutil::read_records(Some(&a.archive))?;
    let mut landscape: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| Some((r.px?, r.py?)))
        .collect();
    let (mode_name, direction) = match a.mode {
        FillMode::Novelty => {
            if landscape.is_empty() {
                bail!(
                    "novelty filling needs a projected landscape; no record in {} has coordinates",
                    a.archive.display()
                );
            }
            ("novelty", Direction::Maximize)
        }
        FillMode::Target => ("target", Direction::Minimize),
    };
    let target = match (a.mode, a.target) {
        (FillMode::Target, Some(t)) => Some(t),
        (FillMode::Target, None) => bail!("target filling needs --target-x and --target-y"),
        (FillMode::Novelty, _) => None,
    };

    let mut new_records = Vec::new();
    for r in 0..a.shared.runs {
        let (cfg, run_seed) = a.shared.config(r, direction);
        let fitness = match a.mode {
            FillMode::Novelty => FitnessMode::Novelty {
                landscape: landscape.clone(),
                model: model.clone(),
            },
            FillMode::Target => {
                let (x, y) = target.expect("target checked above");
                FitnessMode::Target {
                    x,
                    y,
                    model: model.clone(),
                }
            }
        };
        let run = run_evolution(&cfg, &fitness, None)
            .with_context(|| format!("fill run {r} ({mode_name})"))?;
        eprintln!(
            "fill run {r} ({mode_name}): {} generations{}, best fitness {}",
            run.stats.len() - 1,
            if run.extended { " (extended)" } else { "" },
            run.hof.best().map(|e| e.fitness).unwrap_or(f64::NAN)
        );
        a.shared.write_stats(mode_name, r, &run.stats)?;
        let mut batch = hof_records(&run, run_seed, mode_name, false);
        // New instances carry features and coordinates immediately, and
        // join the landscape so the next run sees the filled-in space.
        for rec in &mut batch {
            let g = rec.graph()?;
            let fv = feature_vector(&g);
            let (x, y) = project(&model, &fv)
                .with_context(|| format!("projecting evolved record {:016x}", rec.id))?;
            rec.features = Some(fv.as_array().to_vec());
            rec.px = Some(x);
            rec.py = Some(y);
            landscape.push((x, y));
        }
        new_records.extend(batch);
    }
    let out = a.out.as_deref().unwrap_or(&a.archive);
    append_records(Some(out), &new_records)
}
