//! Evolutionary search over graph space.
//!
//! The engine breeds bit-vector graphs toward high (or low) fitness:
//! clone / mutate / two-point-crossover offspring, 2-way tournament
//! selection over the offspring pool only, a deduplicating hall of fame,
//! and an optional one-shot extension when the fitness trend is still
//! climbing at the scheduled end.
//!
//! Reproducibility is structural, not incidental: every offspring slot
//! draws from its own ChaCha stream derived from (seed, generation, slot),
//! selection from (seed, generation), and initial graphs from (seed, index).
//! Fitness evaluation may fan out over a thread pool, but results are
//! collected in slot order and no random stream crosses a thread, so the
//! run is bit-identical for any worker count — a property the test suite
//! pins down.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::feature_vector;
use crate::generate::{generate, GeneratorKind, GeneratorSpec};
use crate::graph::Graph;
use crate::projection::{project, ProjectionModel};
use crate::rng;
use crate::solver::{runtime_difference_fitness, RuntimeDiffConfig};

/// Which way fitness is "better".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

impl Direction {
    /// Is `a` strictly better than `b` in this direction?
    #[inline]
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Maximize => a > b,
            Direction::Minimize => a < b,
        }
    }

    /// The better of the per-generation aggregates for trend purposes.
    #[inline]
    fn best_of_stats(self, s: &GenerationStats) -> f64 {
        match self {
            Direction::Maximize => s.fitness_max,
            Direction::Minimize => s.fitness_min,
        }
    }
}

/// Engine settings. Defaults are the desk-scale values used across the
/// toolkit (population 20, 30 offspring, 100 + 100 generations).
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionConfig {
    /// Node count of every graph in the run.
    pub n: usize,
    /// Parent population size.
    pub pop_size: usize,
    /// Offspring bred (and evaluated) per generation.
    pub offspring_count: usize,
    /// Probabilities of (clone, mutate, crossover) per offspring slot.
    pub op_probs: [f64; 3],
    /// Mutation budget as a fraction of the parent's edge count.
    pub mutation_rate: f64,
    /// Scheduled generations (excluding the optional extension).
    pub generations: usize,
    /// Extra generations granted when the extension rule fires.
    pub extension_generations: usize,
    /// Trailing window the extension rule inspects.
    pub extension_window: usize,
    /// Hall-of-fame capacity.
    pub hof_size: usize,
    /// Tournament draws per selected parent.
    pub tournament_size: usize,
    pub direction: Direction,
    pub seed: u64,
    /// Edge probability of the default random initial population.
    pub initial_edge_p: f64,
    /// Fitness evaluation threads (1 = evaluate on the calling thread).
    pub eval_workers: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            n: 16,
            pop_size: 20,
            offspring_count: 30,
            op_probs: [1.0 / 3.0; 3],
            mutation_rate: 0.03,
            generations: 100,
            extension_generations: 100,
            extension_window: 25,
            hof_size: 300,
            tournament_size: 2,
            direction: Direction::Maximize,
            seed: 0,
            initial_edge_p: 0.5,
            eval_workers: 1,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::invalid("pop_size must be >= 2".to_string()));
        }
        if self.offspring_count == 0 {
            return Err(Error::invalid("offspring_count must be >= 1".to_string()));
        }
        if self.op_probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::invalid("op probabilities must lie in [0, 1]".to_string()));
        }
        let sum: f64 = self.op_probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "op probabilities sum to {sum}, expected 1"
            )));
        }
        if !(self.mutation_rate > 0.0 && self.mutation_rate <= 1.0) {
            return Err(Error::invalid("mutation_rate must lie in (0, 1]".to_string()));
        }
        if self.hof_size == 0 {
            return Err(Error::invalid("hof_size must be >= 1".to_string()));
        }
        if self.tournament_size == 0 {
            return Err(Error::invalid("tournament_size must be >= 1".to_string()));
        }
        if self.extension_window < 2 {
            return Err(Error::invalid("extension_window must be >= 2".to_string()));
        }
        if !(0.0..=1.0).contains(&self.initial_edge_p) {
            return Err(Error::invalid("initial_edge_p must lie in [0, 1]".to_string()));
        }
        if self.eval_workers == 0 {
            return Err(Error::invalid("eval_workers must be >= 1".to_string()));
        }
        Ok(())
    }
}

/// Anything that can score a graph. Implementations must be pure
/// functions of the graph up to measurement noise they own (the runtime
/// fitness is noisy by nature; the engine's caching still makes one graph
/// get one score within a run).
pub trait FitnessEval: Sync {
    fn evaluate(&self, g: &Graph) -> Result<f64>;
}

/// The three instance-space fitness functions.
pub enum FitnessMode {
    /// Heuristic CPU seconds minus exact CPU seconds (see
    /// [`runtime_difference_fitness`]). Maximize for heuristic-hard
    /// instances, minimize for heuristic-easy ones.
    RuntimeDiff(RuntimeDiffConfig),
    /// Distance from the graph's projected point to the nearest landscape
    /// point; maximize to fill empty space.
    Novelty {
        landscape: Vec<(f64, f64)>,
        model: ProjectionModel,
    },
    /// Distance from the graph's projected point to a fixed target;
    /// minimize to steer toward it.
    Target {
        x: f64,
        y: f64,
        model: ProjectionModel,
    },
}

impl FitnessEval for FitnessMode {
    fn evaluate(&self, g: &Graph) -> Result<f64> {
        match self {
            FitnessMode::RuntimeDiff(cfg) => Ok(runtime_difference_fitness(g, cfg)?.fitness),
            FitnessMode::Novelty { landscape, model } => novelty_fitness(g, landscape, model),
            FitnessMode::Target { x, y, model } => target_fitness(g, (*x, *y), model),
        }
    }
}

/// Distance from `g`'s projection to its nearest neighbor in `landscape`.
pub fn novelty_fitness(g: &Graph, landscape: &[(f64, f64)], model: &ProjectionModel) -> Result<f64> {
    if landscape.is_empty() {
        return Err(Error::invalid(
            "novelty fitness needs a non-empty landscape".to_string(),
        ));
    }
    let (x, y) = project(model, &feature_vector(g))?;
    let mut best = f64::INFINITY;
    for &(px, py) in landscape {
        let d = ((x - px).powi(2) + (y - py).powi(2)).sqrt();
        if d < best {
            best = d;
        }
    }
    Ok(best)
}

/// Distance from `g`'s projection to `target`.
pub fn target_fitness(g: &Graph, target: (f64, f64), model: &ProjectionModel) -> Result<f64> {
    let (x, y) = project(model, &feature_vector(g))?;
    Ok(((x - target.0).powi(2) + (y - target.1).powi(2)).sqrt())
}

// ---- variation operators -------------------------------------------------

/// Mutates a copy of `g`: picks `k` uniform in `[1, max(1, ceil(rate * |E|))]`
/// and applies `k` operations drawn uniformly from {add an absent edge,
/// remove a present edge, replace (remove one then add one)}. An operation
/// whose pool is empty (removing from an edgeless graph, adding to a
/// complete one) is a no-op, so at most `2k` bits change.
pub fn mutate(g: &Graph, rate: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut out = g.clone();
    let k_max = ((rate * g.edge_count() as f64).ceil() as usize).max(1);
    let k = rng.random_range(1..=k_max);
    for _ in 0..k {
        match rng.random_range(0..3u32) {
            0 => {
                add_random_absent(&mut out, rng);
            }
            1 => {
                remove_random_present(&mut out, rng);
            }
            _ => {
                if remove_random_present(&mut out, rng) {
                    add_random_absent(&mut out, rng);
                }
            }
        }
    }
    out
}

/// Sets a uniformly chosen absent pair; false if the graph is complete.
fn add_random_absent(g: &mut Graph, rng: &mut ChaCha8Rng) -> bool {
    let absent = g.bit_len() - g.edge_count();
    if absent == 0 {
        return false;
    }
    let mut ticket = rng.random_range(0..absent);
    for k in 0..g.bit_len() {
        if !g.bit(k) {
            if ticket == 0 {
                g.set_bit(k, true);
                return true;
            }
            ticket -= 1;
        }
    }
    unreachable!("ticket < number of absent pairs")
}

/// Clears a uniformly chosen present pair; false if the graph is empty.
fn remove_random_present(g: &mut Graph, rng: &mut ChaCha8Rng) -> bool {
    let present = g.edge_count();
    if present == 0 {
        return false;
    }
    let mut ticket = rng.random_range(0..present);
    for k in 0..g.bit_len() {
        if g.bit(k) {
            if ticket == 0 {
                g.set_bit(k, false);
                return true;
            }
            ticket -= 1;
        }
    }
    unreachable!("ticket < number of present pairs")
}

/// Two-point crossover on the edge bit vectors: cut points `p <= q` are
/// two uniform draws over `0..=len` (sorted), the first child takes
/// `a[0..p) + b[p..q) + a[q..len)`, the second is the mirror, and one of
/// the two is returned with equal probability.
pub fn crossover(a: &Graph, b: &Graph, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if a.n() != b.n() {
        return Err(Error::invalid(format!(
            "crossover parents disagree on n: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    let len = a.bit_len();
    let c1 = rng.random_range(0..=len);
    let c2 = rng.random_range(0..=len);
    let (p, q) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
    let mut child_a = a.clone();
    let mut child_b = b.clone();
    for k in p..q {
        child_a.set_bit(k, b.bit(k));
        child_b.set_bit(k, a.bit(k));
    }
    Ok(if rng.random_range(0..2u32) == 0 {
        child_a
    } else {
        child_b
    })
}

/// Breeds the full offspring pool for `generation`. Parents are drawn
/// uniformly; each slot owns an independent random stream derived from
/// `(cfg.seed, generation, slot)`, so the pool is reproducible regardless
/// of how it is later evaluated.
pub fn make_offspring(pop: &[Graph], cfg: &EvolutionConfig, generation: usize) -> Result<Vec<Graph>> {
    if pop.len() != cfg.pop_size {
        return Err(Error::invalid(format!(
            "population size {} does not match configured {}",
            pop.len(),
            cfg.pop_size
        )));
    }
    let mut offspring = Vec::with_capacity(cfg.offspring_count);
    for slot in 0..cfg.offspring_count {
        let mut rng = rng::chacha(rng::derive3(
            rng::derive2(cfg.seed, STREAM_OFFSPRING),
            generation as u64,
            slot as u64,
        ));
        let roll: f64 = rng.random();
        let pi = rng.random_range(0..pop.len());
        let child = if roll < cfg.op_probs[0] {
            pop[pi].clone()
        } else if roll < cfg.op_probs[0] + cfg.op_probs[1] {
            mutate(&pop[pi], cfg.mutation_rate, &mut rng)
        } else {
            // Partner index must differ (content may coincide; that is
            // just a self-crossover of a duplicated genotype).
            let pj = loop {
                let j = rng.random_range(0..pop.len());
                if j != pi {
                    break j;
                }
            };
            crossover(&pop[pi], &pop[pj], &mut rng)?
        };
        offspring.push(child);
    }
    Ok(offspring)
}

/// Selects `cfg.pop_size` parents from the offspring pool by repeated
/// tournaments: `tournament_size` uniform draws **with replacement**, the
/// strictly best wins, ties go to the earliest-drawn candidate.
pub fn tournament_select(
    candidates: &[(Graph, f64)],
    cfg: &EvolutionConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<(Graph, f64)> {
    let mut selected = Vec::with_capacity(cfg.pop_size);
    for _ in 0..cfg.pop_size {
        let mut winner = rng.random_range(0..candidates.len());
        for _ in 1..cfg.tournament_size {
            let challenger = rng.random_range(0..candidates.len());
            if cfg
                .direction
                .better(candidates[challenger].1, candidates[winner].1)
            {
                winner = challenger;
            }
        }
        selected.push(candidates[winner].clone());
    }
    selected
}

// ---- hall of fame ----------------------------------------------------------

/// One archived elite.
#[derive(Clone, Debug)]
pub struct HofEntry {
    pub graph: Graph,
    pub fitness: f64,
    /// Generation at which this graph was first evaluated.
    pub generation: usize,
}

/// Fixed-capacity, deduplicating best-so-far archive, sorted best-first.
#[derive(Debug)]
pub struct HallOfFame {
    capacity: usize,
    direction: Direction,
    entries: Vec<HofEntry>,
    members: HashSet<Graph>,
}

impl HallOfFame {
    pub fn new(capacity: usize, direction: Direction) -> Self {
        HallOfFame {
            capacity,
            direction,
            entries: Vec::new(),
            members: HashSet::new(),
        }
    }

    /// Offers a graph; returns whether it was admitted. A bit-identical
    /// graph already present is never re-admitted (first score sticks);
    /// once full, only strict improvements over the current worst enter.
    pub fn insert(&mut self, graph: Graph, fitness: f64, generation: usize) -> bool {
        if self.members.contains(&graph) {
            return false;
        }
        if self.entries.len() >= self.capacity {
            let worst = self.entries.last().expect("capacity >= 1").fitness;
            if !self.direction.better(fitness, worst) {
                return false;
            }
            let evicted = self.entries.pop().expect("non-empty");
            self.members.remove(&evicted.graph);
        }
        // Insert after any equal-fitness block: stable, earliest-first.
        let pos = self
            .entries
            .partition_point(|e| !self.direction.better(fitness, e.fitness));
        self.members.insert(graph.clone());
        self.entries.insert(
            pos,
            HofEntry {
                graph,
                fitness,
                generation,
            },
        );
        true
    }

    /// Best entry, if any.
    pub fn best(&self) -> Option<&HofEntry> {
        self.entries.first()
    }

    /// All entries, best first.
    pub fn entries(&self) -> &[HofEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}

// ---- trend rule -----------------------------------------------------------

/// Per-generation population summary.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub fitness_min: f64,
    pub fitness_mean: f64,
    pub fitness_max: f64,
    pub mean_edges: f64,
}

fn stats_of(generation: usize, pop: &[(Graph, f64)]) -> GenerationStats {
    let k = pop.len() as f64;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut edges = 0.0;
    for (g, f) in pop {
        min = min.min(*f);
        max = max.max(*f);
        sum += *f;
        edges += g.edge_count() as f64;
    }
    GenerationStats {
        generation,
        fitness_min: min,
        fitness_mean: sum / k,
        fitness_max: max,
        mean_edges: edges / k,
    }
}

/// Decides whether a finished run has earned its one extension: fits a
/// least-squares line through the window's per-generation best fitness
/// and fires when the slope still improves by more than 0.1% of the
/// window's largest absolute best value per generation.
pub fn extension_rule(window: &[GenerationStats], direction: Direction) -> bool {
    let k = window.len();
    if k < 2 {
        return false;
    }
    let ys: Vec<f64> = window.iter().map(|s| direction.best_of_stats(s)).collect();
    let xbar = (k as f64 - 1.0) / 2.0;
    let ybar = ys.iter().sum::<f64>() / k as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, y) in ys.iter().enumerate() {
        let dx = i as f64 - xbar;
        num += dx * (y - ybar);
        den += dx * dx;
    }
    let slope = num / den;
    let scale = ys.iter().fold(0.0f64, |a, y| a.max(y.abs()));
    let threshold = 0.001 * scale;
    match direction {
        Direction::Maximize => slope > threshold,
        Direction::Minimize => slope < -threshold,
    }
}

// ---- engine -----------------------------------------------------------------

/// Everything a finished run reports.
pub struct EvolutionRun {
    pub hof: HallOfFame,
    /// Selected-population stats per generation; index 0 is the evaluated
    /// initial population.
    pub stats: Vec<GenerationStats>,
    /// Hall-of-fame best fitness after each generation (same indexing as
    /// `stats`); monotone in the run's direction by construction.
    pub hof_best: Vec<f64>,
    /// Whether the one-shot extension fired.
    pub extended: bool,
}

const STREAM_INIT: u64 = 1;
const STREAM_OFFSPRING: u64 = 2;
const STREAM_SELECT: u64 = 3;

/// Caching, optionally parallel fitness evaluator. Unique graphs are
/// scored once per run; parallel scoring preserves slot order, keeping
/// the engine's output independent of `eval_workers`.
struct Evaluator<'a> {
    fitness: &'a dyn FitnessEval,
    cache: HashMap<Graph, f64>,
    pool: Option<rayon::ThreadPool>,
}

impl<'a> Evaluator<'a> {
    fn new(fitness: &'a dyn FitnessEval, workers: usize) -> Result<Self> {
        let pool = if workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| Error::invalid(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Evaluator {
            fitness,
            cache: HashMap::new(),
            pool,
        })
    }

    fn evaluate_all(&mut self, graphs: &[Graph]) -> Result<Vec<f64>> {
        let mut fresh: Vec<Graph> = Vec::new();
        let mut queued: HashSet<Graph> = HashSet::new();
        for g in graphs {
            if !self.cache.contains_key(g) && queued.insert(g.clone()) {
                fresh.push(g.clone());
            }
        }
        let fitness = self.fitness;
        let scores: Result<Vec<f64>> = match &self.pool {
            None => fresh.iter().map(|g| fitness.evaluate(g)).collect(),
            Some(pool) => pool.install(|| {
                fresh
                    .par_iter()
                    .map(|g| fitness.evaluate(g))
                    .collect::<Result<Vec<f64>>>()
            }),
        };
        for (g, s) in fresh.into_iter().zip(scores?) {
            self.cache.insert(g, s);
        }
        Ok(graphs.iter().map(|g| self.cache[g]).collect())
    }
}

/// Runs a full evolution. `initial` overrides the random starting
/// population (it must then contain exactly `pop_size` graphs on `n`
/// nodes). The returned hall of fame holds up to `hof_size` distinct
/// graphs, best first.
pub fn run_evolution(
    cfg: &EvolutionConfig,
    fitness: &dyn FitnessEval,
    initial: Option<Vec<Graph>>,
) -> Result<EvolutionRun> {
    cfg.validate()?;
    let init: Vec<Graph> = match initial {
        Some(graphs) => {
            if graphs.len() != cfg.pop_size {
                return Err(Error::invalid(format!(
                    "initial population has {} graphs, config wants {}",
                    graphs.len(),
                    cfg.pop_size
                )));
            }
            if let Some(g) = graphs.iter().find(|g| g.n() != cfg.n) {
                return Err(Error::invalid(format!(
                    "initial graph has n = {}, config wants {}",
                    g.n(),
                    cfg.n
                )));
            }
            graphs
        }
        None => (0..cfg.pop_size)
            .map(|i| {
                generate(&GeneratorSpec {
                    kind: GeneratorKind::ErdosRenyi {
                        p: cfg.initial_edge_p,
                    },
                    n: cfg.n,
                    seed: rng::derive3(cfg.seed, STREAM_INIT, i as u64),
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };

    let mut evaluator = Evaluator::new(fitness, cfg.eval_workers)?;
    let scores = evaluator.evaluate_all(&init)?;
    let mut pop: Vec<(Graph, f64)> = init.into_iter().zip(scores).collect();

    let mut hof = HallOfFame::new(cfg.hof_size, cfg.direction);
    for (g, f) in &pop {
        hof.insert(g.clone(), *f, 0);
    }
    let mut stats = vec![stats_of(0, &pop)];
    let mut hof_best = vec![hof.best().expect("population non-empty").fitness];

    let mut scheduled = cfg.generations;
    let mut extended = false;
    let mut generation = 1;
    while generation <= scheduled {
        let parents: Vec<Graph> = pop.iter().map(|(g, _)| g.clone()).collect();
        let offspring = make_offspring(&parents, cfg, generation)?;
        debug_assert_eq!(offspring.len(), cfg.offspring_count);
        let scores = evaluator.evaluate_all(&offspring)?;
        let pool: Vec<(Graph, f64)> = offspring.into_iter().zip(scores).collect();
        for (g, f) in &pool {
            hof.insert(g.clone(), *f, generation);
        }
        let mut sel_rng = rng::chacha(rng::derive3(cfg.seed, STREAM_SELECT, generation as u64));
        pop = tournament_select(&pool, cfg, &mut sel_rng);
        debug_assert_eq!(pop.len(), cfg.pop_size);
        stats.push(stats_of(generation, &pop));
        hof_best.push(hof.best().expect("hof non-empty").fitness);

        if generation == scheduled && !extended {
            let tail = cfg.extension_window.min(stats.len());
            if extension_rule(&stats[stats.len() - tail..], cfg.direction) {
                scheduled += cfg.extension_generations;
                extended = true;
            }
        }
        generation += 1;
    }

    Ok(EvolutionRun {
        hof,
        stats,
        hof_best,
        extended,
    })
}
