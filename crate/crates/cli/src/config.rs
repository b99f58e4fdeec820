//! Optional TOML configuration shared by all subcommands.
//!
//! Every field is optional; resolution order for each setting is
//! command-line flag, then config file, then built-in default.

use std::path::Path;

use anyhow::Context;
use serde::Deserialize;

/// Mirrors the tunable knobs of the pipeline. Unknown keys are rejected
/// so typos fail loudly instead of being ignored.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub n: Option<usize>,
    pub seed: Option<u64>,
    // Solver settings.
    pub exact_limit: Option<usize>,
    pub restarts: Option<usize>,
    pub repeats: Option<usize>,
    // Evolution settings.
    pub pop_size: Option<usize>,
    pub offspring: Option<usize>,
    pub generations: Option<usize>,
    pub extension_generations: Option<usize>,
    pub extension_window: Option<usize>,
    pub hof_size: Option<usize>,
    pub tournament_size: Option<usize>,
    pub mutation_rate: Option<f64>,
    pub workers: Option<usize>,
    pub runs: Option<usize>,
    // Classifier settings.
    pub k: Option<usize>,
    pub split_seed: Option<u64>,
    // Plot settings.
    pub bin_width: Option<f64>,
    pub grid_res: Option<usize>,
}

impl PipelineConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<PipelineConfig> {
        match path {
            None => Ok(PipelineConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))
            }
        }
    }
}

/// Flag, then config, then default.
pub fn pick<T: Copy>(flag: Option<T>, cfg: Option<T>, default: T) -> T {
    flag.or(cfg).unwrap_or(default)
}
