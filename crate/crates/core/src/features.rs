//! Ten structural graph features.
//!
//! The canonical ordering below is load-bearing: the archive's `features`
//! array, the CSV header, and the projection model's coefficient slots all
//! index features by this order.
//!
//! Conventions worth calling out:
//! * clustering is the *mean local* coefficient, with nodes of degree < 2
//!   contributing 0;
//! * degree moments are population moments (divide by n); skewness and
//!   kurtosis are defined as 0 when the degree variance is 0, and kurtosis
//!   is plain (not excess), so a non-degenerate normal-ish profile sits
//!   near 3;
//! * diameter of a disconnected graph is the sentinel `n`, one past the
//!   largest possible finite diameter `n - 1`.

use crate::graph::Graph;
use crate::linalg::{jacobi_eigen, SymMatrix};

/// Feature names in canonical order (CSV header, archive array order).
pub const FEATURE_NAMES: [&str; 10] = [
    "density",
    "clustering_coefficient",
    "energy",
    "max_degree",
    "degree_std",
    "degree_skewness",
    "degree_kurtosis",
    "diameter",
    "pct_degree1",
    "pct_degree2",
];

/// Number of features.
pub const FEATURE_COUNT: usize = 10;

/// One graph's feature values. Integer-valued features keep their integer
/// types here and are widened to f64 only in [`FeatureVector::as_array`].
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    pub density: f64,
    pub clustering_coefficient: f64,
    pub energy: f64,
    pub max_degree: usize,
    pub degree_std: f64,
    pub degree_skewness: f64,
    pub degree_kurtosis: f64,
    pub diameter: usize,
    pub pct_degree1: f64,
    pub pct_degree2: f64,
}

impl FeatureVector {
    /// Values as `[f64; 10]` in canonical order.
    pub fn as_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.density,
            self.clustering_coefficient,
            self.energy,
            self.max_degree as f64,
            self.degree_std,
            self.degree_skewness,
            self.degree_kurtosis,
            self.diameter as f64,
            self.pct_degree1,
            self.pct_degree2,
        ]
    }

    /// Rebuilds a vector from canonical-order values (the inverse of
    /// [`as_array`](Self::as_array); integral fields are rounded).
    pub fn from_array(values: &[f64; FEATURE_COUNT]) -> FeatureVector {
        FeatureVector {
            density: values[0],
            clustering_coefficient: values[1],
            energy: values[2],
            max_degree: values[3].round() as usize,
            degree_std: values[4],
            degree_skewness: values[5],
            degree_kurtosis: values[6],
            diameter: values[7].round() as usize,
            pct_degree1: values[8],
            pct_degree2: values[9],
        }
    }
}

/// Edge density: `|E| / C(n, 2)`.
pub fn density(g: &Graph) -> f64 {
    g.edge_count() as f64 / g.bit_len() as f64
}

/// Mean local clustering coefficient; degree < 2 contributes 0.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.n();
    let rows = g.neighbor_bitsets();
    let deg = g.degrees();
    let mut total = 0.0;
    for v in 0..n {
        if deg[v] < 2 {
            continue;
        }
        // Each triangle through v is counted twice by summing, over
        // neighbors u, the overlap |N(v) ∩ N(u)|.
        let mut twice_triangles = 0u64;
        for u in 0..n {
            if rows[v][u / 64] >> (u % 64) & 1 == 1 {
                twice_triangles += rows[v]
                    .iter()
                    .zip(rows[u].iter())
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum::<u64>();
            }
        }
        let triangles = twice_triangles as f64 / 2.0;
        let pairs = (deg[v] * (deg[v] - 1) / 2) as f64;
        total += triangles / pairs;
    }
    total / n as f64
}

/// Graph energy: sum of absolute adjacency eigenvalues.
pub fn energy(g: &Graph) -> f64 {
    let n = g.n();
    let mut a = SymMatrix::zeros(n);
    for (i, j) in g.edges() {
        a.set(i, j, 1.0);
    }
    jacobi_eigen(&a).values.iter().map(|v| v.abs()).sum()
}

/// (max degree, population std, skewness, kurtosis) of the degree
/// sequence. Skewness and kurtosis are 0 for a constant sequence.
pub fn degree_stats(g: &Graph) -> (usize, f64, f64, f64) {
    let deg = g.degrees();
    let n = deg.len() as f64;
    let max = deg.iter().copied().max().unwrap_or(0);
    let mean = deg.iter().sum::<usize>() as f64 / n;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for &d in &deg {
        let x = d as f64 - mean;
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if m2 == 0.0 {
        // Constant degrees: integer arithmetic makes the deviations exact
        // zeros, so this comparison is exact, not a tolerance.
        return (max, 0.0, 0.0, 0.0);
    }
    let std = m2.sqrt();
    (max, std, m3 / m2.powf(1.5), m4 / (m2 * m2))
}

/// Longest shortest path; `n` (one past any finite distance) when the
/// graph is disconnected.
pub fn diameter(g: &Graph) -> usize {
    let n = g.n();
    let adj = g.adjacency_lists();
    let mut best = 0usize;
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        dist.fill(usize::MAX);
        dist[start] = 0;
        queue.push_back(start);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    best = best.max(dist[u]);
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        if reached < n {
            return n; // disconnected sentinel
        }
    }
    best
}

/// Fractions of nodes with degree exactly 1 and exactly 2.
pub fn degree_fractions(g: &Graph) -> (f64, f64) {
    let deg = g.degrees();
    let n = deg.len() as f64;
    let d1 = deg.iter().filter(|&&d| d == 1).count() as f64 / n;
    let d2 = deg.iter().filter(|&&d| d == 2).count() as f64 / n;
    (d1, d2)
}

/// All ten features of a graph.
pub fn feature_vector(g: &Graph) -> FeatureVector {
    let (max_degree, degree_std, degree_skewness, degree_kurtosis) = degree_stats(g);
    let (pct_degree1, pct_degree2) = degree_fractions(g);
    FeatureVector {
        density: density(g),
        clustering_coefficient: clustering_coefficient(g),
        energy: energy(g),
        max_degree,
        degree_std,
        degree_skewness,
        degree_kurtosis,
        diameter: diameter(g),
        pct_degree1,
        pct_degree2,
    }
}
