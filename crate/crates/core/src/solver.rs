//! Hamiltonian completion solvers and the runtime-difference fitness.
//!
//! Three ways to answer "how many edges must be added so this graph has a
//! Hamiltonian cycle":
//!
//! * [`exact_hcn`] — reduction to 0/1-weight TSP plus the subset DP of
//!   [`crate::tsp`]; exponential but exact, gated by a node limit;
//! * [`brute_force_hcn`] — enumerates all `(n-1)!/2` distinct cyclic
//!   tours; only for cross-checking tiny instances;
//! * [`msls_hcn`] — multi-start local search: random restarts, each
//!   descending by steepest 2-opt and single-node relocation passes. Never
//!   better than exact, usually equal on small graphs, and its *running
//!   time* varies with instance structure — which is the point.
//!
//! [`runtime_difference_fitness`] runs both solvers under a thread-CPU
//! clock and reports heuristic-seconds minus exact-seconds: positive means
//! the exact solver beat the heuristic on this instance. Both solves run
//! single-threaded on the calling thread, so the measurement excludes
//! scheduler noise from other threads and is meaningful under a parallel
//! evaluation pool.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;
use crate::tsp::{held_karp, reduce_to_tsp};

/// Default node cap for the exact solver.
pub const DEFAULT_EXACT_LIMIT: usize = 20;

/// Node cap for [`brute_force_hcn`]: 8!/2 = 20160 tours at n = 9.
pub const BRUTE_FORCE_MAX_NODES: usize = 9;

/// Outcome of one solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    /// Number of edges the completion adds (the solver's objective value).
    pub hcn: usize,
    /// The added edges as `(i, j)` with `i < j`, in tour order.
    pub added_edges: Vec<(usize, usize)>,
    /// Witness tour: a permutation of `0..n` starting at node 0 with the
    /// direction normalized (`tour[1] < tour[n-1]`).
    pub tour: Vec<usize>,
    /// Thread-CPU seconds consumed, when measured via [`timed_solve`]
    /// (plain solve calls leave it 0).
    pub cpu_seconds: f64,
}

fn added_edges_of_tour(g: &Graph, tour: &[usize]) -> Vec<(usize, usize)> {
    let n = tour.len();
    let mut added = Vec::new();
    for t in 0..n {
        let a = tour[t];
        let b = tour[(t + 1) % n];
        if !g.has_edge(a, b) {
            added.push((a.min(b), a.max(b)));
        }
    }
    added
}

/// Rotates a cyclic tour to start at node 0 and fixes the direction so
/// that `tour[1] < tour[n-1]`.
fn canonicalize_tour(tour: &mut Vec<usize>) {
    let n = tour.len();
    let zero = tour.iter().position(|&v| v == 0).expect("node 0 in tour");
    tour.rotate_left(zero);
    if n >= 3 && tour[1] > tour[n - 1] {
        tour[1..].reverse();
    }
}

/// Exact Hamiltonian completion via the TSP reduction, with the default
/// node limit of [`DEFAULT_EXACT_LIMIT`].
pub fn exact_hcn(g: &Graph) -> Result<SolveResult> {
    exact_hcn_with_limit(g, DEFAULT_EXACT_LIMIT)
}

/// Exact solve gated by a configurable node limit.
pub fn exact_hcn_with_limit(g: &Graph, exact_limit: usize) -> Result<SolveResult> {
    if g.n() > exact_limit {
        return Err(Error::CapacityExceeded {
            what: "exact completion solver",
            limit: exact_limit,
            got: g.n(),
        });
    }
    let inst = reduce_to_tsp(g);
    let (weight, tour) = held_karp(&inst)?;
    let added_edges = added_edges_of_tour(g, &tour);
    debug_assert_eq!(added_edges.len(), weight as usize);
    Ok(SolveResult {
        hcn: weight as usize,
        added_edges,
        tour,
        cpu_seconds: 0.0,
    })
}

/// Minimum completion size by enumerating every distinct cyclic tour:
/// node 0 pinned first and only directions with `tour[1] < tour[n-1]`
/// visited, so each of the `(n-1)!/2` cycles is evaluated exactly once.
pub fn brute_force_hcn(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::CapacityExceeded {
            what: "brute-force tour enumeration",
            limit: BRUTE_FORCE_MAX_NODES,
            got: n,
        });
    }
    let mut tour: Vec<usize> = (0..n).collect();
    let mut best = n; // the empty graph needs all n cycle edges
    permute_rest(g, &mut tour, 1, &mut best);
    Ok(best)
}

fn permute_rest(g: &Graph, tour: &mut Vec<usize>, at: usize, best: &mut usize) {
    let n = tour.len();
    if at == n {
        if tour[1] > tour[n - 1] {
            return; // the reversed twin was or will be evaluated
        }
        let missing = g.missing_tour_edges(tour).expect("permutation by construction");
        if missing < *best {
            *best = missing;
        }
        return;
    }
    for k in at..n {
        tour.swap(at, k);
        permute_rest(g, tour, at + 1, best);
        tour.swap(at, k);
    }
}

/// Multi-start local search parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct MslsParams {
    /// Independent random restarts per solve.
    pub restarts: usize,
    /// Stop a restart's descent after this many consecutive candidate
    /// moves evaluated without an applied improvement. `None` means the
    /// scale-adaptive default `50 * n`.
    pub max_no_improve: Option<usize>,
    /// Seed for restart tours; the whole solve is a pure function of
    /// `(graph, params)`.
    pub seed: u64,
    /// Stop restarting as soon as some restart reaches a zero-cost tour
    /// (a Hamiltonian cycle in the input itself) — it cannot be beaten.
    pub early_stop_at_zero: bool,
}

impl Default for MslsParams {
    fn default() -> Self {
        MslsParams {
            restarts: 32,
            max_no_improve: None,
            seed: 0,
            early_stop_at_zero: true,
        }
    }
}

impl MslsParams {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be >= 1".to_string()));
        }
        if self.max_no_improve == Some(0) {
            return Err(Error::invalid("max_no_improve must be >= 1".to_string()));
        }
        Ok(())
    }
}

/// Multi-start 2-opt / node-relocation heuristic for Hamiltonian
/// completion. Deterministic in `(g, params)`; the reported `hcn` is an
/// upper bound on the exact one (it is a valid completion's size).
pub fn msls_hcn(g: &Graph, params: &MslsParams) -> Result<SolveResult> {
    params.validate()?;
    let n = g.n();
    let cap = params.max_no_improve.unwrap_or(50 * n);
    let mut rng = rng::chacha(params.seed);

    let mut best_cost = usize::MAX;
    let mut best_tour: Vec<usize> = Vec::new();
    for _restart in 0..params.restarts {
        let mut tour = random_tour(n, &mut rng);
        let cost = descend(g, &mut tour, cap);
        if cost < best_cost {
            best_cost = cost;
            best_tour = tour;
            if best_cost == 0 && params.early_stop_at_zero {
                break;
            }
        }
    }

    canonicalize_tour(&mut best_tour);
    let added_edges = added_edges_of_tour(g, &best_tour);
    debug_assert_eq!(added_edges.len(), best_cost);
    Ok(SolveResult {
        hcn: best_cost,
        added_edges,
        tour: best_tour,
        cpu_seconds: 0.0,
    })
}

/// Uniform random permutation of `0..n` by an explicit Fisher–Yates so
/// the draw sequence is pinned by this crate, not a library's internals.
fn random_tour(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut tour: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        tour.swap(i, j);
    }
    tour
}

/// Steepest-descent local search alternating a full 2-opt pass with a
/// full single-node relocation pass. Each pass scans its entire
/// neighborhood and applies the single best strictly improving move
/// (first found wins ties). Stops at cost 0, when `cap` consecutive
/// candidate evaluations produced no applied improvement, or when both
/// passes of a round apply nothing (a joint local optimum).
fn descend(g: &Graph, tour: &mut Vec<usize>, cap: usize) -> usize {
    let mut cost = g
        .missing_tour_edges(tour)
        .expect("restart tours are permutations") as i64;
    let mut stale = 0usize; // consecutive non-improving candidate evaluations
    while cost > 0 {
        let mut improved = false;
        for pass in [Pass::TwoOpt, Pass::Relocate] {
            let (delta, scanned, mv) = match pass {
                Pass::TwoOpt => best_two_opt(g, tour),
                Pass::Relocate => best_relocation(g, tour),
            };
            if delta < 0 {
                match mv {
                    Move::TwoOpt { i, j } => tour[i + 1..=j].reverse(),
                    Move::Relocate { from, after } => apply_relocation(tour, from, after),
                    Move::None => unreachable!("improving pass returns a move"),
                }
                cost += delta;
                stale = 0;
                improved = true;
                debug_assert_eq!(cost, g.missing_tour_edges(tour).unwrap() as i64);
            } else {
                stale += scanned;
            }
            if cost == 0 || stale >= cap {
                return cost as usize;
            }
        }
        if !improved {
            break; // neither neighborhood improves: local optimum
        }
    }
    cost as usize
}

enum Pass {
    TwoOpt,
    Relocate,
}

enum Move {
    None,
    TwoOpt { i: usize, j: usize },
    Relocate { from: usize, after: usize },
}

#[inline]
fn miss(g: &Graph, a: usize, b: usize) -> i64 {
    (!g.has_edge(a, b)) as i64
}

/// Best 2-opt move: reverse `tour[i+1..=j]`, exchanging tour edges
/// `(t_i, t_{i+1})`, `(t_j, t_{j+1})` for `(t_i, t_j)`, `(t_{i+1}, t_{j+1})`.
/// Returns `(best delta, candidates scanned, move)`.
fn best_two_opt(g: &Graph, tour: &[usize]) -> (i64, usize, Move) {
    let n = tour.len();
    let mut best = 0i64;
    let mut best_move = Move::None;
    let mut scanned = 0usize;
    for i in 0..n - 1 {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue; // the two removed edges would coincide cyclically
            }
            scanned += 1;
            let (a, b) = (tour[i], tour[i + 1]);
            let (c, d) = (tour[j], tour[(j + 1) % n]);
            let delta = miss(g, a, c) + miss(g, b, d) - miss(g, a, b) - miss(g, c, d);
            if delta < best {
                best = delta;
                best_move = Move::TwoOpt { i, j };
            }
        }
    }
    (best, scanned, best_move)
}

/// Best single-node relocation: take the node at position `from` and
/// reinsert it after position `after`.
fn best_relocation(g: &Graph, tour: &[usize]) -> (i64, usize, Move) {
    let n = tour.len();
    let mut best = 0i64;
    let mut best_move = Move::None;
    let mut scanned = 0usize;
    for from in 0..n {
        let prev = tour[(from + n - 1) % n];
        let node = tour[from];
        let next = tour[(from + 1) % n];
        for after in 0..n {
            // Skip the two gaps adjacent to `from`: reinserting there
            // reproduces the same cyclic tour.
            if after == from || after == (from + n - 1) % n {
                continue;
            }
            scanned += 1;
            let x = tour[after];
            let y = tour[(after + 1) % n];
            let delta = miss(g, prev, next) + miss(g, x, node) + miss(g, node, y)
                - miss(g, prev, node)
                - miss(g, node, next)
                - miss(g, x, y);
            if delta < best {
                best = delta;
                best_move = Move::Relocate { from, after };
            }
        }
    }
    (best, scanned, best_move)
}

fn apply_relocation(tour: &mut Vec<usize>, from: usize, after: usize) {
    let node = tour.remove(from);
    let gap = if after > from { after - 1 } else { after };
    tour.insert(gap + 1, node);
}

// ---- timing ------------------------------------------------------------

/// CPU time consumed by the calling thread, in seconds.
#[cfg(unix)]
pub fn thread_cpu_seconds() -> f64 {
    let mut ts = libc::timespec {
        tv_sec: 0,
        tv_nsec: 0,
    };
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    debug_assert_eq!(rc, 0, "clock_gettime(CLOCK_THREAD_CPUTIME_ID) failed");
    ts.tv_sec as f64 + ts.tv_nsec as f64 * 1e-9
}

/// Fallback for platforms without thread CPU clocks: monotonic wall time.
#[cfg(not(unix))]
pub fn thread_cpu_seconds() -> f64 {
    use std::sync::OnceLock;
    use std::time::Instant;
    static START: OnceLock<Instant> = OnceLock::new();
    START.get_or_init(Instant::now).elapsed().as_secs_f64()
}

/// Which solver a timed call should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    Exact,
    Heuristic,
}

/// Shared solver settings for timed runs.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub exact_limit: usize,
    pub msls: MslsParams,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact_limit: DEFAULT_EXACT_LIMIT,
            msls: MslsParams::default(),
        }
    }
}

/// Runs one solver under the thread-CPU clock; only the solve itself is
/// inside the measured window (no reduction-to-record, no I/O).
pub fn timed_solve(which: SolverChoice, g: &Graph, cfg: &SolverConfig) -> Result<SolveResult> {
    let start = thread_cpu_seconds();
    let mut result = match which {
        SolverChoice::Exact => exact_hcn_with_limit(g, cfg.exact_limit)?,
        SolverChoice::Heuristic => msls_hcn(g, &cfg.msls)?,
    };
    result.cpu_seconds = (thread_cpu_seconds() - start).max(0.0);
    Ok(result)
}

/// Settings for the runtime-difference fitness.
#[derive(Clone, Debug, PartialEq)]
pub struct RuntimeDiffConfig {
    pub solver: SolverConfig,
    /// Timing repeats per solver; the reported times are medians. 1 (the
    /// default) means a single measurement each.
    pub repeats: usize,
}

impl Default for RuntimeDiffConfig {
    fn default() -> Self {
        RuntimeDiffConfig {
            solver: SolverConfig::default(),
            repeats: 1,
        }
    }
}

/// One fitness measurement with its raw ingredients.
#[derive(Clone, Debug, PartialEq)]
pub struct RuntimeDiffSample {
    /// `t_heuristic - t_exact`: positive means the exact solver was
    /// faster, i.e. the instance is hard for the heuristic.
    pub fitness: f64,
    pub t_exact: f64,
    pub t_heuristic: f64,
    pub hcn_exact: usize,
    pub hcn_heuristic: usize,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

/// Measures the runtime-difference fitness of a graph: median thread-CPU
/// time of the heuristic minus median thread-CPU time of the exact
/// solver, both solved on the calling thread.
pub fn runtime_difference_fitness(g: &Graph, cfg: &RuntimeDiffConfig) -> Result<RuntimeDiffSample> {
    if cfg.repeats == 0 {
        return Err(Error::invalid("timing repeats must be >= 1".to_string()));
    }
    let mut exact_times = Vec::with_capacity(cfg.repeats);
    let mut heur_times = Vec::with_capacity(cfg.repeats);
    let mut hcn_exact = 0;
    let mut hcn_heuristic = 0;
    for rep in 0..cfg.repeats {
        let e = timed_solve(SolverChoice::Exact, g, &cfg.solver)?;
        let h = timed_solve(SolverChoice::Heuristic, g, &cfg.solver)?;
        exact_times.push(e.cpu_seconds);
        heur_times.push(h.cpu_seconds);
        if rep == 0 {
            hcn_exact = e.hcn;
            hcn_heuristic = h.hcn;
        }
    }
    debug_assert!(hcn_heuristic >= hcn_exact);
    let t_exact = median(exact_times);
    let t_heuristic = median(heur_times);
    Ok(RuntimeDiffSample {
        fitness: t_heuristic - t_exact,
        t_exact,
        t_heuristic,
        hcn_exact,
        hcn_heuristic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorKind, GeneratorSpec};
    use proptest::prelude::*;

    fn er(n: usize, p: f64, seed: u64) -> Graph {
        generate(&GeneratorSpec {
            kind: GeneratorKind::ErdosRenyi { p },
            n,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn five_node_example_completion() {
        // Edges {0,1},{0,2},{1,2},{2,3},{3,4}: one added edge {0,4}
        // closes the tour 0-1-2-3-4; the tie against adding {1,4} is
        // broken lexicographically.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = exact_hcn(&g).unwrap();
        assert_eq!(r.hcn, 1);
        assert_eq!(r.tour, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.added_edges, vec![(0, 4)]);
    }

    #[test]
    fn petersen_graph_needs_one_edge() {
        // Outer 5-cycle, inner 5-star polygon, spokes; famously
        // non-Hamiltonian but Hamiltonian-connected, so exactly one edge
        // fixes it.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let r = exact_hcn(&g).unwrap();
        assert_eq!(r.hcn, 1);
        assert_eq!(g.missing_tour_edges(&r.tour).unwrap(), 1);
    }

    #[test]
    fn cycles_and_complete_graphs_need_nothing() {
        for n in [3, 6, 11, 16] {
            let c = generate(&GeneratorSpec {
                kind: GeneratorKind::Circle,
                n,
                seed: 0,
            })
            .unwrap();
            assert_eq!(exact_hcn(&c).unwrap().hcn, 0, "cycle n = {n}");
        }
        for n in [3, 8, 12] {
            assert_eq!(exact_hcn(&Graph::complete(n).unwrap()).unwrap().hcn, 0);
        }
    }

    #[test]
    fn empty_graph_needs_every_cycle_edge() {
        for n in [3usize, 5, 9] {
            let r = exact_hcn(&Graph::empty(n).unwrap()).unwrap();
            assert_eq!(r.hcn, n);
            assert_eq!(r.added_edges.len(), n);
            assert_eq!(r.tour, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn star_needs_all_but_two_leaf_links() {
        // A star's tour can use exactly two center edges; the remaining
        // n - 2 legs run between leaves and must all be added.
        for n in [4usize, 7, 10] {
            let g = generate(&GeneratorSpec {
                kind: GeneratorKind::Star,
                n,
                seed: 0,
            })
            .unwrap();
            assert_eq!(exact_hcn(&g).unwrap().hcn, n - 2);
        }
    }

    #[test]
    fn exact_matches_brute_force_on_random_graphs() {
        for seed in 0..40u64 {
            let n = 4 + (seed % 6) as usize; // 4..=9
            let g = er(n, 0.25 + 0.5 * (seed as f64 / 40.0), seed);
            let exact = exact_hcn(&g).unwrap().hcn;
            let brute = brute_force_hcn(&g).unwrap();
            assert_eq!(exact, brute, "n = {n}, seed = {seed}");
        }
    }

    #[test]
    fn size_limits_are_enforced_by_name() {
        let g = Graph::empty(10).unwrap();
        let err = brute_force_hcn(&g).unwrap_err();
        assert!(err.to_string().contains('9'), "{err}");
        let g = Graph::empty(21).unwrap();
        let err = exact_hcn(&g).unwrap_err();
        assert!(err.to_string().contains("20"), "{err}");
        // A raised limit admits the same graph (still under the DP cap).
        assert!(exact_hcn_with_limit(&g, 21).is_ok());
    }

    #[test]
    fn hcn_never_increases_when_edges_are_added() {
        for seed in 0..10u64 {
            let mut g = er(9, 0.2, seed);
            let mut last = exact_hcn(&g).unwrap().hcn;
            let absent: Vec<usize> = (0..g.bit_len()).filter(|&k| !g.bit(k)).collect();
            for &k in absent.iter().take(12) {
                g.set_bit(k, true);
                let now = exact_hcn(&g).unwrap().hcn;
                assert!(now <= last, "hcn rose from {last} to {now} on edge add");
                last = now;
            }
        }
    }

    #[test]
    fn msls_solves_easy_structures() {
        let params = MslsParams::default();
        let c = generate(&GeneratorSpec {
            kind: GeneratorKind::Circle,
            n: 14,
            seed: 0,
        })
        .unwrap();
        let r = msls_hcn(&c, &params).unwrap();
        assert_eq!(r.hcn, 0);
        assert_eq!(c.missing_tour_edges(&r.tour).unwrap(), 0);
        let k = Graph::complete(12).unwrap();
        assert_eq!(msls_hcn(&k, &params).unwrap().hcn, 0);
    }

    #[test]
    fn msls_is_deterministic_per_seed() {
        let g = er(16, 0.3, 5);
        let params = MslsParams {
            seed: 77,
            ..Default::default()
        };
        let a = msls_hcn(&g, &params).unwrap();
        let b = msls_hcn(&g, &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn msls_result_is_a_valid_completion() {
        for seed in 0..15u64 {
            let g = er(15, 0.35, seed);
            let r = msls_hcn(&g, &MslsParams::default()).unwrap();
            assert_eq!(r.added_edges.len(), r.hcn);
            // Adding the reported edges makes the tour a witness.
            let mut aug = g.clone();
            for &(a, b) in &r.added_edges {
                aug.set_edge(a, b, true).unwrap();
            }
            assert_eq!(aug.missing_tour_edges(&r.tour).unwrap(), 0);
            assert_eq!(r.tour[0], 0);
            assert!(r.tour[1] < r.tour[r.tour.len() - 1]);
        }
    }

    #[test]
    fn msls_params_validation() {
        let g = er(10, 0.3, 0);
        assert!(msls_hcn(
            &g,
            &MslsParams {
                restarts: 0,
                ..Default::default()
            }
        )
        .is_err());
        assert!(msls_hcn(
            &g,
            &MslsParams {
                max_no_improve: Some(0),
                ..Default::default()
            }
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn msls_never_beats_exact(n in 4usize..=12, seed in 0u64..200, pmil in 100u64..=900) {
            let g = er(n, pmil as f64 / 1000.0, seed);
            let exact = exact_hcn(&g).unwrap().hcn;
            let heur = msls_hcn(&g, &MslsParams::default()).unwrap().hcn;
            prop_assert!(heur >= exact, "heuristic {heur} < exact {exact}");
        }
    }

    #[test]
    fn timed_solve_measures_cpu() {
        let g = er(18, 0.5, 3);
        let r = timed_solve(SolverChoice::Exact, &g, &SolverConfig::default()).unwrap();
        // An 18-node subset DP costs well above clock resolution.
        assert!(r.cpu_seconds > 0.0);
        assert!(r.cpu_seconds < 30.0, "absurd exact time {}", r.cpu_seconds);
    }

    #[test]
    fn fitness_sample_is_consistent() {
        let g = er(14, 0.4, 8);
        let s = runtime_difference_fitness(&g, &RuntimeDiffConfig::default()).unwrap();
        assert!((s.fitness - (s.t_heuristic - s.t_exact)).abs() < 1e-12);
        assert!(s.t_exact >= 0.0 && s.t_heuristic >= 0.0);
        assert!(s.hcn_heuristic >= s.hcn_exact);
        // Objective values are deterministic even though times are not.
        let s2 = runtime_difference_fitness(&g, &RuntimeDiffConfig::default()).unwrap();
        assert_eq!(s.hcn_exact, s2.hcn_exact);
        assert_eq!(s.hcn_heuristic, s2.hcn_heuristic);
    }

    #[test]
    fn fitness_median_repeats() {
        let g = er(12, 0.4, 1);
        let cfg = RuntimeDiffConfig {
            repeats: 3,
            ..Default::default()
        };
        let s = runtime_difference_fitness(&g, &cfg).unwrap();
        assert!(s.t_exact >= 0.0);
        let bad = RuntimeDiffConfig {
            repeats: 0,
            ..Default::default()
        };
        assert!(runtime_difference_fitness(&g, &bad).is_err());
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(vec![5.0]), 5.0);
    }
}
