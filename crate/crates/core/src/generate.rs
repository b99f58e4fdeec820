//! Deterministic graph generators.
//!
//! Six families: Erdős–Rényi G(n, p), cycle, rectangular grid, star,
//! preferential attachment, and breadth-first b-ary trees. Randomized
//! families consume a `ChaCha8Rng` seeded from the `GeneratorSpec` seed, so a
//! `GeneratorSpec` is a complete, reproducible description of its graph.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// One generator family plus its family-specific parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorKind {
    /// Each node pair is an edge independently with probability `p`,
    /// drawn in edge-index order.
    ErdosRenyi { p: f64 },
    /// Single cycle 0-1-...-(n-1)-0.
    Circle,
    /// `rows x cols` lattice with 4-neighborhoods; requires rows*cols = n.
    Grid { rows: usize, cols: usize },
    /// Node 0 adjacent to all others, no other edges.
    Star,
    /// Barabási–Albert style growth: seed clique on `m + 1` nodes, then
    /// each new node attaches to `m` distinct existing nodes chosen with
    /// probability proportional to current degree.
    PreferentialAttachment { m: usize },
    /// Perfect `branching`-ary tree truncated to `n` nodes in
    /// breadth-first numbering: node k's parent is (k-1)/branching.
    StructuredTree { branching: usize },
}

impl GeneratorKind {
    /// Stable lowercase name used in provenance tags and CLI arguments.
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::ErdosRenyi { .. } => "erdos-renyi",
            GeneratorKind::Circle => "circle",
            GeneratorKind::Grid { .. } => "grid",
            GeneratorKind::Star => "star",
            GeneratorKind::PreferentialAttachment { .. } => "preferential-attachment",
            GeneratorKind::StructuredTree { .. } => "structured-tree",
        }
    }
}

/// Complete description of one generated graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
}

/// Generates the graph a spec describes. Same spec, same graph, always.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    let n = spec.n;
    match &spec.kind {
        GeneratorKind::ErdosRenyi { p } => erdos_renyi(n, *p, spec.seed),
        GeneratorKind::Circle => circle(n),
        GeneratorKind::Grid { rows, cols } => grid(*rows, *cols, n),
        GeneratorKind::Star => star(n),
        GeneratorKind::PreferentialAttachment { m } => preferential_attachment(n, *m, spec.seed),
        GeneratorKind::StructuredTree { branching } => structured_tree(n, *branching),
    }
}

fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::invalid(format!("edge probability {p} not in [0, 1]")));
    }
    let mut g = Graph::empty(n)?;
    let mut rng = rng::chacha(seed);
    // One Bernoulli draw per pair, in edge-index order: the stream layout
    // is part of the reproducibility contract.
    for k in 0..g.bit_len() {
        if rng.random_bool(p) {
            g.set_bit(k, true);
        }
    }
    Ok(g)
}

fn circle(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.set_edge(i, (i + 1) % n, true)?;
    }
    Ok(g)
}

fn grid(rows: usize, cols: usize, n: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols != n {
        return Err(Error::invalid(format!(
            "grid {rows}x{cols} does not cover n = {n} nodes"
        )));
    }
    let mut g = Graph::empty(n)?;
    let at = |r: usize, c: usize| r * cols + c;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                g.set_edge(at(r, c), at(r, c + 1), true)?;
            }
            if r + 1 < rows {
                g.set_edge(at(r, c), at(r + 1, c), true)?;
            }
        }
    }
    Ok(g)
}

fn star(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 1..n {
        g.set_edge(0, i, true)?;
    }
    Ok(g)
}

fn preferential_attachment(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m < 1 {
        return Err(Error::invalid("attachment count m must be >= 1".to_string()));
    }
    if m + 1 > n {
        return Err(Error::invalid(format!(
            "attachment count m = {m} needs a seed clique of {} nodes but n = {n}",
            m + 1
        )));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..=m {
        for j in i + 1..=m {
            g.set_edge(i, j, true)?;
        }
    }
    let mut degree: Vec<usize> = vec![0; n];
    for v in 0..=m {
        degree[v] = m;
    }
    let mut degree_sum = m * (m + 1);
    let mut rng = rng::chacha(seed);
    for v in m + 1..n {
        // Degree-proportional sampling with rejection of duplicates; the
        // seed clique guarantees every existing node has positive degree,
        // so each draw terminates.
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        while targets.len() < m {
            let mut ticket = rng.random_range(0..degree_sum);
            let mut chosen = 0;
            for u in 0..v {
                if ticket < degree[u] {
                    chosen = u;
                    break;
                }
                ticket -= degree[u];
            }
            if !targets.contains(&chosen) {
                targets.push(chosen);
            }
        }
        for &u in &targets {
            g.set_edge(u, v, true)?;
            degree[u] += 1;
        }
        degree[v] = m;
        degree_sum += 2 * m;
    }
    Ok(g)
}

fn structured_tree(n: usize, branching: usize) -> Result<Graph> {
    if branching < 1 {
        return Err(Error::invalid("branching factor must be >= 1".to_string()));
    }
    let mut g = Graph::empty(n)?;
    for k in 1..n {
        g.set_edge((k - 1) / branching, k, true)?;
    }
    Ok(g)
}

/// Grid sides for `n` nodes: the divisor pair `rows <= cols` with `rows`
/// closest to sqrt(n) from below. Always exists (1 x n at worst).
pub fn default_grid_dims(n: usize) -> (usize, usize) {
    let mut rows = 1;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            rows = d;
        }
        d += 1;
    }
    (rows, n / rows)
}

/// A deterministic mixed suite of `count` generator specs on `n` nodes:
/// the structured families first (cycle, star, grids, trees, attachment
/// graphs), then Erdős–Rényi specs with edge probabilities evenly spread
/// over [0.05, 0.95] and per-spec derived seeds.
pub fn standard_suite(n: usize, count: usize, seed: u64) -> Vec<GeneratorSpec> {
    let mut specs: Vec<GeneratorSpec> = Vec::new();
    let mut push = |kind: GeneratorKind, idx: usize| {
        specs.push(GeneratorSpec {
            kind,
            n,
            seed: rng::derive2(seed, idx as u64),
        });
    };
    push(GeneratorKind::Circle, 0);
    push(GeneratorKind::Star, 1);
    // Up to three non-path grids, widest first.
    let mut grids = 0;
    let mut r = 2;
    while r * r <= n && grids < 3 {
        if n % r == 0 {
            push(
                GeneratorKind::Grid { rows: r, cols: n / r },
                2 + grids,
            );
            grids += 1;
        }
        r += 1;
    }
    push(GeneratorKind::StructuredTree { branching: 2 }, 5);
    push(GeneratorKind::StructuredTree { branching: 3 }, 6);
    for (slot, m) in (1..=3usize).enumerate() {
        if m + 1 <= n {
            push(GeneratorKind::PreferentialAttachment { m }, 7 + slot);
        }
    }
    specs.truncate(count);
    let remaining = count - specs.len();
    for i in 0..remaining {
        let p = if remaining == 1 {
            0.5
        } else {
            0.05 + 0.90 * i as f64 / (remaining - 1) as f64
        };
        specs.push(GeneratorSpec {
            kind: GeneratorKind::ErdosRenyi { p },
            n,
            seed: rng::derive3(seed, 100, i as u64),
        });
    }
    debug_assert_eq!(specs.len(), count);
    specs
}

/// Parses a generator kind plus its parameters from CLI-ish tokens.
pub fn kind_from_name(
    name: &str,
    p: Option<f64>,
    rows: Option<usize>,
    cols: Option<usize>,
    m: Option<usize>,
    branching: Option<usize>,
    n: usize,
) -> Result<GeneratorKind> {
    match name {
        "erdos-renyi" => Ok(GeneratorKind::ErdosRenyi { p: p.unwrap_or(0.5) }),
        "circle" => Ok(GeneratorKind::Circle),
        "grid" => {
            let (dr, dc) = default_grid_dims(n);
            Ok(GeneratorKind::Grid {
                rows: rows.unwrap_or(dr),
                cols: cols.unwrap_or(dc),
            })
        }
        "star" => Ok(GeneratorKind::Star),
        "preferential-attachment" => Ok(GeneratorKind::PreferentialAttachment {
            m: m.unwrap_or(2),
        }),
        "structured-tree" => Ok(GeneratorKind::StructuredTree {
            branching: branching.unwrap_or(2),
        }),
        other => Err(Error::invalid(format!("unknown generator kind {other:?}"))),
    }
}

/// All generator names accepted by [`kind_from_name`].
pub const KIND_NAMES: [&str; 6] = [
    "erdos-renyi",
    "circle",
    "grid",
    "star",
    "preferential-attachment",
    "structured-tree",
];
