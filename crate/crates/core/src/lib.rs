//! Instance-space toolkit for the Hamiltonian completion problem.
//!
//! The crate covers the full loop of an instance-space study at desk scale:
//!
//! * [`graph`] — compact undirected graphs stored as an upper-triangular
//!   bit vector, with text and hex interchange formats,
//! * [`generate`] — six deterministic graph generator families,
//! * [`solver`] — an exact solver (reduction to symmetric TSP + subset DP),
//!   a brute-force cross-check, a multi-start local-search heuristic, and
//!   the thread-CPU-time runtime-difference fitness built on top of them,
//! * [`evolve`] — an evolutionary engine that searches graph space for
//!   instances maximizing/minimizing a fitness (runtime difference,
//!   novelty, or distance to a target point),
//! * [`features`] — ten structural graph features,
//! * [`projection`] — log + z-score + PCA reduction of feature vectors to
//!   2-D landscape coordinates,
//! * [`analysis`] — histograms, provenance footprints, a k-NN runtime
//!   classifier, and a threshold rule for the hard-for-heuristic region,
//! * [`archive`] — append-only JSON-lines instance archives.
//!
//! Everything randomized takes explicit seeds and is reproducible bit for
//! bit; wall-clock never enters any decision path (CPU time is measured,
//! recorded, and compared, but only ever *reported* or fed to fitness).

pub mod analysis;
pub mod archive;
pub mod error;
pub mod evolve;
pub mod features;
pub mod generate;
pub mod graph;
pub mod linalg;
pub mod projection;
pub mod rng;
pub mod solver;
pub mod tsp;

pub use error::{Error, Result};
pub use graph::Graph;
