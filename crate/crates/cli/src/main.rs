//! `hcspace` — generate, solve, evolve, and chart Hamiltonian-completion
//! instance spaces from the command line.
//!
//! Commands compose through line-delimited archives: producers append
//! records, transformers rewrite them, and chart commands render SVG.
//! Exit codes: 0 success, 1 usage error, 2 runtime error.

mod cmds;
mod config;
mod evo;
mod ioutil;
mod plot;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hcspace_core::evolve::Direction;
use hcspace_core::solver::DEFAULT_EXACT_LIMIT;

use config::{pick, PipelineConfig};

#[derive(Parser)]
#[command(
    name = "hcspace",
    version,
    about = "Instance-space toolkit for the Hamiltonian completion problem"
)]
struct Cli {
    /// TOML config file; command-line flags override config values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    /// Maximize the runtime difference (heuristic-hard instances).
    Max,
    /// Minimize it (heuristic-easy instances).
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum FillModeArg {
    /// Maximize distance to the nearest landscape point.
    Novelty,
    /// Minimize distance to a fixed landscape point.
    Target,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKindArg {
    Histogram,
    Landscape,
    Footprint,
    Regions,
    Coefficients,
    FitnessCurves,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate graphs and append them to an archive (or stdout).
    Gen {
        /// Generator kind (erdos-renyi, circle, grid, star,
        /// preferential-attachment, structured-tree) or `suite` for the
        /// standard mix.
        #[arg(long, default_value = "erdos-renyi")]
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        /// How many graphs to produce.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Edge probability for erdos-renyi.
        #[arg(long)]
        p: Option<f64>,
        /// Grid rows (with --cols; default splits n near-squarely).
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Edges per new node for preferential-attachment.
        #[arg(long)]
        m: Option<usize>,
        /// Branching factor for structured-tree.
        #[arg(long)]
        branching: Option<usize>,
        /// Archive file to append to (stdout if omitted).
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
    },
    /// Solve archived instances and record times, hcn values, and fitness.
    Solve {
        /// Input archive (stdin if omitted).
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        /// Output file for the updated records (stdout if omitted).
        #[arg(long, value_name = "FILE")]
        out_archive: Option<PathBuf>,
        /// Run only the exact solver.
        #[arg(long)]
        exact: bool,
        /// Run only the multi-start local search heuristic.
        #[arg(long)]
        heuristic: bool,
        /// Largest n the exact solver will accept.
        #[arg(long)]
        exact_limit: Option<usize>,
        /// Heuristic restarts.
        #[arg(long)]
        restarts: Option<usize>,
        /// Timing repetitions (median is recorded).
        #[arg(long)]
        repeats: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Leave records that already carry the requested results alone.
        #[arg(long)]
        skip_solved: bool,
    },
    /// Evolve instances for extreme runtime difference; append hall of
    /// fame to the archive.
    Evolve {
        /// Whether to maximize or minimize the runtime difference.
        #[arg(long, value_enum, default_value = "max")]
        mode: DirectionArg,
        #[arg(long)]
        n: Option<usize>,
        /// Independent runs (each gets its own seed and initial density).
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long)]
        pop_size: Option<usize>,
        #[arg(long)]
        offspring: Option<usize>,
        #[arg(long)]
        mutation_rate: Option<f64>,
        #[arg(long)]
        hof_size: Option<usize>,
        #[arg(long)]
        tournament_size: Option<usize>,
        #[arg(long)]
        extension_generations: Option<usize>,
        #[arg(long)]
        extension_window: Option<usize>,
        /// Parallel fitness evaluation workers.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        exact_limit: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        repeats: Option<usize>,
        /// Archive file to append hall-of-fame records to (stdout if
        /// omitted).
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        /// Directory for per-run generation-stats CSV files.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Evolve instances toward empty or targeted landscape regions and
    /// append them, pre-projected, to the archive.
    Fill {
        #[arg(long, value_enum)]
        mode: FillModeArg,
        /// Fitted projection model file.
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Projected archive defining the landscape; receives the new
        /// records unless --out-archive is given.
        #[arg(long, value_name = "FILE")]
        archive: PathBuf,
        /// Append new records here instead of to --archive.
        #[arg(long, value_name = "FILE")]
        out_archive: Option<PathBuf>,
        /// Target-point coordinates (target mode).
        #[arg(long, allow_negative_numbers = true)]
        target_x: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        target_y: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long)]
        pop_size: Option<usize>,
        #[arg(long)]
        offspring: Option<usize>,
        #[arg(long)]
        mutation_rate: Option<f64>,
        #[arg(long)]
        hof_size: Option<usize>,
        #[arg(long)]
        tournament_size: Option<usize>,
        #[arg(long)]
        extension_generations: Option<usize>,
        #[arg(long)]
        extension_window: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
        /// Directory for per-run generation-stats CSV files.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Compute the ten-feature vector for every record.
    Features {
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out_archive: Option<PathBuf>,
        /// Also write a feature table as CSV.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Fit the log/z-score/PCA projection on an archive's features.
    FitPca {
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        /// Model file to write (stdout if omitted).
        #[arg(long, value_name = "FILE")]
        model_out: Option<PathBuf>,
    },
    /// Project every record into landscape coordinates with a fitted model.
    Project {
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "FILE")]
        out_archive: Option<PathBuf>,
    },
    /// Evaluate the solver-choice nearest-neighbour classifier.
    Classify {
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        /// Neighbours consulted per query.
        #[arg(long)]
        k: Option<usize>,
        /// Seed for the 50/50 train/test shuffle.
        #[arg(long)]
        split_seed: Option<u64>,
        /// Report file (stdout if omitted).
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Render an SVG figure from an archive, model, or stats CSV.
    Plot {
        #[arg(long, value_enum, default_value = "landscape")]
        kind: PlotKindArg,
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
        /// Projection model (coefficients plot).
        #[arg(long, value_name = "FILE")]
        model: Option<PathBuf>,
        /// Per-generation stats CSV (fitness-curves plot).
        #[arg(long, value_name = "FILE")]
        stats: Option<PathBuf>,
        /// Provenance tag to highlight (footprint plot).
        #[arg(long)]
        tag: Option<String>,
        /// Color field for the landscape plot (only runtime_diff).
        #[arg(long, default_value = "runtime_diff")]
        color: String,
        /// Neighbours for the regions plot.
        #[arg(long)]
        k: Option<usize>,
        /// Cells per axis in the regions plot.
        #[arg(long)]
        grid_res: Option<usize>,
        /// Histogram bin width in seconds.
        #[arg(long)]
        bin_width: Option<f64>,
        /// Clamp range for histogram values / landscape colors.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        clamp: Option<Vec<f64>>,
        /// SVG file to write (stdout if omitted).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Summarize an archive (counts, ranges, sources) as key,value lines.
    Stats {
        #[arg(long, value_name = "FILE")]
        archive: Option<PathBuf>,
    },
}

fn shared_evo(
    cfg: &PipelineConfig,
    n: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    generations: Option<usize>,
    pop_size: Option<usize>,
    offspring: Option<usize>,
    mutation_rate: Option<f64>,
    hof_size: Option<usize>,
    tournament_size: Option<usize>,
    extension_generations: Option<usize>,
    extension_window: Option<usize>,
    workers: Option<usize>,
    stats_dir: Option<PathBuf>,
) -> evo::EvoShared {
    evo::EvoShared {
        n: pick(n, cfg.n, 16),
        seed: pick(seed, cfg.seed, 0),
        runs: pick(runs, cfg.runs, 1),
        pop_size: pick(pop_size, cfg.pop_size, 20),
        offspring: pick(offspring, cfg.offspring, 30),
        generations: pick(generations, cfg.generations, 100),
        extension_generations: pick(extension_generations, cfg.extension_generations, 100),
        extension_window: pick(extension_window, cfg.extension_window, 25),
        hof_size: pick(hof_size, cfg.hof_size, 300),
        tournament_size: pick(tournament_size, cfg.tournament_size, 2),
        mutation_rate: pick(mutation_rate, cfg.mutation_rate, 0.03),
        workers: pick(workers, cfg.workers, 1),
        stats_dir,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = PipelineConfig::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Gen {
            kind,
            n,
            count,
            seed,
            p,
            rows,
            cols,
            m,
            branching,
            archive,
        } => cmds::cmd_gen(&cmds::GenArgs {
            kind,
            n: pick(n, cfg.n, 16),
            count: pick(count, None, 1),
            seed: pick(seed, cfg.seed, 0),
            p,
            rows,
            cols,
            m,
            branching,
            archive,
        }),
        Cmd::Solve {
            archive,
            out_archive,
            exact,
            heuristic,
            exact_limit,
            restarts,
            repeats,
            seed,
            skip_solved,
        } => cmds::cmd_solve(&cmds::SolveArgs {
            archive,
            out: out_archive,
            exact,
            heuristic,
            exact_limit: pick(exact_limit, cfg.exact_limit, DEFAULT_EXACT_LIMIT),
            restarts: pick(restarts, cfg.restarts, 32),
            repeats: pick(repeats, cfg.repeats, 1),
            seed: pick(seed, cfg.seed, 0),
            skip_solved,
        }),
        Cmd::Evolve {
            mode,
            n,
            runs,
            seed,
            generations,
            pop_size,
            offspring,
            mutation_rate,
            hof_size,
            tournament_size,
            extension_generations,
            extension_window,
            workers,
            exact_limit,
            restarts,
            repeats,
            archive,
            out,
        } => cmds_evolve(
            &cfg,
            mode,
            n,
            runs,
            seed,
            generations,
            pop_size,
            offspring,
            mutation_rate,
            hof_size,
            tournament_size,
            extension_generations,
            extension_window,
            workers,
            exact_limit,
            restarts,
            repeats,
            archive,
            out,
        ),
        Cmd::Fill {
            mode,
            model,
            archive,
            out_archive,
            target_x,
            target_y,
            n,
            runs,
            seed,
            generations,
            pop_size,
            offspring,
            mutation_rate,
            hof_size,
            tournament_size,
            extension_generations,
            extension_window,
            workers,
            out,
        } => {
            let shared = shared_evo(
                &cfg,
                n,
                runs,
                seed,
                generations,
                pop_size,
                offspring,
                mutation_rate,
                hof_size,
                tournament_size,
                extension_generations,
                extension_window,
                workers,
                out,
            );
            let target = match (target_x, target_y) {
                (Some(x), Some(y)) => Some((x, y)),
                (None, None) => None,
                _ => anyhow::bail!("--target-x and --target-y must be given together"),
            };
            evo::cmd_fill(&evo::FillArgs {
                shared,
                mode: match mode {
                    FillModeArg::Novelty => evo::FillMode::Novelty,
                    FillModeArg::Target => evo::FillMode::Target,
                },
                model,
                archive,
                out: out_archive,
                target,
            })
        }
        Cmd::Features {
            archive,
            out_archive,
            csv,
        } => cmds::cmd_features(&cmds::FeaturesArgs {
            archive,
            out: out_archive,
            csv,
        }),
        Cmd::FitPca { archive, model_out } => {
            cmds::cmd_fit_pca(&cmds::FitPcaArgs { archive, model_out })
        }
        Cmd::Project {
            archive,
            model,
            out_archive,
        } => cmds::cmd_project(&cmds::ProjectArgs {
            archive,
            model,
            out: out_archive,
        }),
        Cmd::Classify {
            archive,
            k,
            split_seed,
            report,
        } => cmds::cmd_classify(&cmds::ClassifyArgs {
            archive,
            k: pick(k, cfg.k, 5),
            split_seed: pick(split_seed, cfg.split_seed, 0),
            report,
        }),
        Cmd::Plot {
            kind,
            archive,
            model,
            stats,
            tag,
            color,
            k,
            grid_res,
            bin_width,
            clamp,
            out,
        } => {
            if color != "runtime_diff" {
                anyhow::bail!("unsupported color field {color:?}; only runtime_diff is available");
            }
            let clamp = match clamp.as_deref() {
                Some([lo, hi]) => Some((*lo, *hi)),
                Some(_) => anyhow::bail!("--clamp takes exactly two values"),
                None => None,
            };
            plot::cmd_plot(&plot::PlotArgs {
                kind: match kind {
                    PlotKindArg::Histogram => plot::PlotKind::Histogram,
                    PlotKindArg::Landscape => plot::PlotKind::Landscape,
                    PlotKindArg::Footprint => plot::PlotKind::Footprint,
                    PlotKindArg::Regions => plot::PlotKind::Regions,
                    PlotKindArg::Coefficients => plot::PlotKind::Coefficients,
                    PlotKindArg::FitnessCurves => plot::PlotKind::FitnessCurves,
                },
                archive,
                model,
                stats,
                tag,
                k: pick(k, cfg.k, 5),
                grid_res: pick(grid_res, cfg.grid_res, 60),
                bin_width: pick(bin_width, cfg.bin_width, 0.05),
                clamp,
                out,
            })
        }
        Cmd::Stats { archive } => cmds::cmd_stats(&cmds::StatsArgs { archive }),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmds_evolve(
    cfg: &PipelineConfig,
    mode: DirectionArg,
    n: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    generations: Option<usize>,
    pop_size: Option<usize>,
    offspring: Option<usize>,
    mutation_rate: Option<f64>,
    hof_size: Option<usize>,
    tournament_size: Option<usize>,
    extension_generations: Option<usize>,
    extension_window: Option<usize>,
    workers: Option<usize>,
    exact_limit: Option<usize>,
    restarts: Option<usize>,
    repeats: Option<usize>,
    archive: Option<PathBuf>,
    out: Option<PathBuf>,
) -> anyhow::Result<()> {
    let shared = shared_evo(
        cfg,
        n,
        runs,
        seed,
        generations,
        pop_size,
        offspring,
        mutation_rate,
        hof_size,
        tournament_size,
        extension_generations,
        extension_window,
        workers,
        out,
    );
    evo::cmd_evolve(&evo::EvolveArgs {
        shared,
        direction: match mode {
            DirectionArg::Max => Direction::Maximize,
            DirectionArg::Min => Direction::Minimize,
        },
        exact_limit: pick(exact_limit, cfg.exact_limit, DEFAULT_EXACT_LIMIT),
        restarts: pick(restarts, cfg.restarts, 32),
        repeats: pick(repeats, cfg.repeats, 1),
        archive,
    })
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(2);
    }
}
