//! Reduction of Hamiltonian completion to symmetric TSP, plus an exact
//! tour solver.
//!
//! A graph on `n` nodes maps to a complete weighted graph where pair
//! weight is 0 if the edge exists and 1 if it does not. A minimum-weight
//! tour then uses as few absent edges as possible, so its weight *is* the
//! Hamiltonian completion number and its weight-1 legs name the edges to
//! add.
//!
//! The solver is the classic subset dynamic program over the `n - 1`
//! nodes `1..n` with node 0 pinned as the tour start: O(2^m · m^2) time,
//! O(2^m · m) bytes (one `u8` per state — tour weights never exceed `n`).
//! On top of the finished table a forward greedy pass extracts the
//! lexicographically smallest optimal tour, which pins down *which* tour
//! ties resolve to and makes results reproducible down to the added-edge
//! list.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Hard input cap for [`held_karp`]: the DP table at `n = 22` is already
/// ~44 MiB; past that the memory curve gets silly.
pub const HELD_KARP_MAX_NODES: usize = 22;

/// Symmetric 0/1-weight TSP instance produced by [`reduce_to_tsp`].
///
/// Weights are stored as a bit sequence parallel to the source graph's
/// edge vector: bit set means weight 1 (edge absent in the source graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TspInstance {
    n: usize,
    unit_weight_bits: Vec<u64>,
}

impl TspInstance {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of leg `{i, j}`: 0 when the source graph has the edge.
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        let k = crate::graph::edge_index(i, j, self.n).expect("valid node pair");
        (self.unit_weight_bits[k / 64] >> (k % 64) & 1) as u32
    }

    /// Raw weight-1 bit vector, same layout as [`Graph::words`].
    pub fn unit_weight_words(&self) -> &[u64] {
        &self.unit_weight_bits
    }

    /// Total weight of a cyclic tour (must be a permutation of `0..n`).
    pub fn tour_weight(&self, tour: &[usize]) -> Result<u32> {
        if tour.len() != self.n {
            return Err(Error::invalid(format!(
                "tour length {} != n = {}",
                tour.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &v in tour {
            if v >= self.n || seen[v] {
                return Err(Error::invalid(format!(
                    "tour is not a permutation of 0..{}",
                    self.n
                )));
            }
            seen[v] = true;
        }
        let mut w = 0;
        for t in 0..self.n {
            w += self.weight(tour[t], tour[(t + 1) % self.n]);
        }
        Ok(w)
    }
}

/// Builds the 0/1-weight TSP instance whose optimal tour weight equals the
/// source graph's Hamiltonian completion number.
pub fn reduce_to_tsp(g: &Graph) -> TspInstance {
    let len = g.bit_len();
    let mut words: Vec<u64> = g.words().iter().map(|w| !w).collect();
    // Keep the unused tail of the last word clean, mirroring Graph.
    let tail = len % 64;
    if tail != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
    TspInstance {
        n: g.n(),
        unit_weight_bits: words,
    }
}

const INF: u8 = u8::MAX;

/// Exact minimum-weight tour: `(weight, tour)`.
///
/// The tour is the lexicographically smallest optimal one, written
/// starting at node 0; because reading a cycle backwards costs the same,
/// lexicographic minimality also fixes the direction (the node after 0 is
/// strictly smaller than the node before it). Errors with the capacity
/// limit for `n > `[`HELD_KARP_MAX_NODES`].
pub fn held_karp(inst: &TspInstance) -> Result<(u32, Vec<usize>)> {
    let n = inst.n();
    if n > HELD_KARP_MAX_NODES {
        return Err(Error::CapacityExceeded {
            what: "exact tour solver (subset dynamic program)",
            limit: HELD_KARP_MAX_NODES,
            got: n,
        });
    }
    // Dense weight matrix: the DP inner loop is the hot path and bit
    // probing per access would dominate it.
    let mut w = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[i * n + j] = inst.weight(i, j) as u8;
            }
        }
    }

    // States are (nonempty subset of the m = n - 1 inner nodes, last inner
    // node in it). Inner index t stands for actual node t + 1.
    // dp[mask * m + t] = cheapest path 0 -> (all of mask) -> node t+1.
    let m = n - 1;
    let full: usize = (1usize << m) - 1;
    let mut dp = vec![INF; (full + 1) * m];
    for t in 0..m {
        dp[(1 << t) * m + t] = w[t + 1];
    }
    for mask in 1..=full {
        let mut lasts = mask;
        while lasts != 0 {
            let t = lasts.trailing_zeros() as usize;
            lasts &= lasts - 1;
            let base = dp[mask * m + t];
            if base == INF {
                continue;
            }
            let row = (t + 1) * n;
            let mut free = !mask & full;
            while free != 0 {
                let u = free.trailing_zeros() as usize;
                free &= free - 1;
                let cand = base + w[row + u + 1];
                let slot = &mut dp[(mask | 1 << u) * m + u];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }

    // Optimal closed-tour weight: best path end plus the closing leg.
    let mut best = u32::MAX;
    for t in 0..m {
        let v = dp[full * m + t];
        if v != INF {
            let total = v as u32 + w[(t + 1) * n] as u32;
            if total < best {
                best = total;
            }
        }
    }
    debug_assert!(best <= n as u32);

    // Lexicographically smallest optimal tour, grown from the front. At
    // each position the candidate nodes are tried ascending; node v + 1
    // fits iff
    //     prefix + w(cur, v + 1) + completion(v) == best
    // where completion(v) = dp[remaining][v] with `remaining` the unvisited
    // inner set (which contains v): the table entry is the cheapest path
    // 0 -> remaining -> v+1, and read backwards — weights are symmetric —
    // it is exactly the cheapest way to leave v+1, sweep the rest of the
    // unvisited nodes, and close at 0.
    let mut tour = Vec::with_capacity(n);
    tour.push(0usize);
    let mut visited: usize = 0;
    let mut prefix = 0u32;
    let mut cur = 0usize; // actual node id
    for _pos in 1..n {
        let remaining = !visited & full;
        let mut chosen = None;
        let mut cands = remaining;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let comp = dp[remaining * m + v];
            if comp == INF {
                continue;
            }
            if prefix + w[cur * n + v + 1] as u32 + comp as u32 == best {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("an optimal tour prefix always extends");
        prefix += w[cur * n + v + 1] as u32;
        visited |= 1 << v;
        cur = v + 1;
        tour.push(cur);
    }
    debug_assert_eq!(prefix + w[cur * n] as u32, best);
    debug_assert!(n < 3 || tour[1] < tour[n - 1], "direction not canonical");

    Ok((best, tour))
}
