//! Compact undirected simple graphs on `n >= 3` labeled nodes.
//!
//! The edge set is a bit vector over the strict upper triangle of the
//! adjacency matrix in row-major order: pair `(i, j)` with `i < j` lives at
//! [`edge_index`]`(i, j, n) = i*n - i*(i+1)/2 + (j - i - 1)`. Every format
//! below (bit string, hex, edge list) and every hash is defined over that
//! one canonical ordering, so two graphs are equal iff their bit vectors
//! are equal.
//!
//! Bits are packed into `u64` words, bit `k` of the vector at bit
//! `k % 64` of word `k / 64`. Unused trailing bits of the last word are
//! kept at zero as an invariant so derived `Eq`/`Hash` are sound.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Smallest supported node count. Below 3 nodes the completion problem
/// degenerates (no cycle exists), so the whole crate refuses such graphs.
pub const MIN_NODES: usize = 3;

/// Largest supported node count; keeps bit vectors and O(n^2) scans sane.
pub const MAX_NODES: usize = 4096;

/// Position of pair `(i, j)`, `i < j`, in the upper-triangular row-major
/// edge ordering of a graph on `n` nodes.
///
/// Errors when `i == j` or either endpoint is out of range.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i >= n || j >= n {
        return Err(Error::invalid(format!(
            "edge endpoint out of range: ({i}, {j}) with n = {n}"
        )));
    }
    if i == j {
        return Err(Error::invalid(format!("self-loop ({i}, {i}) has no index")));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    Ok(i * n - i * (i + 1) / 2 + (j - i - 1))
}

/// Number of node pairs (= bit-vector length) for `n` nodes.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn word_count(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Undirected simple graph as a fixed-size edge bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl Graph {
    fn check_n(n: usize) -> Result<()> {
        if !(MIN_NODES..=MAX_NODES).contains(&n) {
            return Err(Error::invalid(format!(
                "node count {n} outside supported range [{MIN_NODES}, {MAX_NODES}]"
            )));
        }
        Ok(())
    }

    /// Edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(Graph {
            n,
            words: vec![0; word_count(pair_count(n))],
        })
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for w in &mut g.words {
            *w = u64::MAX;
        }
        g.mask_tail();
        Ok(g)
    }

    /// Graph from an explicit edge list. Duplicate pairs are idempotent.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            g.set_edge(i, j, true)?;
        }
        Ok(g)
    }

    /// Number of nodes.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of the edge bit vector (= number of node pairs).
    #[inline]
    pub fn bit_len(&self) -> usize {
        pair_count(self.n)
    }

    /// Backing words, little-endian bit packing, trailing bits zero.
    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value of bit `k` of the edge vector.
    #[inline]
    pub fn bit(&self, k: usize) -> bool {
        debug_assert!(k < self.bit_len());
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    /// Sets bit `k` of the edge vector.
    #[inline]
    pub fn set_bit(&mut self, k: usize, present: bool) {
        debug_assert!(k < self.bit_len());
        if present {
            self.words[k / 64] |= 1u64 << (k % 64);
        } else {
            self.words[k / 64] &= !(1u64 << (k % 64));
        }
    }

    /// Whether edge `{i, j}` is present.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        match edge_index(i, j, self.n) {
            Ok(k) => self.bit(k),
            Err(_) => false,
        }
    }

    /// Adds or removes edge `{i, j}`.
    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) -> Result<()> {
        let k = edge_index(i, j, self.n)?;
        self.set_bit(k, present);
        Ok(())
    }

    fn mask_tail(&mut self) {
        let len = self.bit_len();
        let tail = len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    #[cfg(debug_assertions)]
    fn tail_is_clean(&self) -> bool {
        let tail = self.bit_len() % 64;
        tail == 0 || self.words.last().map_or(true, |w| w >> tail == 0)
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        #[cfg(debug_assertions)]
        debug_assert!(self.tail_is_clean());
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Degree of each node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for (i, j) in self.edges() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// Iterator over present edges `(i, j)` with `i < j`, ascending by
    /// [`edge_index`].
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.has_edge(i, j))
    }

    /// Per-node neighborhood bitsets (`n` rows of `ceil(n/64)` words).
    /// Shared workhorse for clustering, components, and diameter.
    pub fn neighbor_bitsets(&self) -> Vec<Vec<u64>> {
        let row_words = word_count(self.n);
        let mut rows = vec![vec![0u64; row_words]; self.n];
        for (i, j) in self.edges() {
            rows[i][j / 64] |= 1u64 << (j % 64);
            rows[j][i / 64] |= 1u64 << (i % 64);
        }
        rows
    }

    /// Adjacency lists, neighbors ascending.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, j) in self.edges() {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Number of connected components.
    pub fn connected_components(&self) -> usize {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut components = 0;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        components
    }

    /// Counts cyclic-tour edges absent from this graph.
    ///
    /// `tour` must be a permutation of `0..n`; the result is the number of
    /// consecutive pairs (wrapping around) that are not edges here — i.e.
    /// the number of edges a completion along this tour would have to add.
    /// Zero certifies the tour as a Hamiltonian-cycle witness.
    pub fn missing_tour_edges(&self, tour: &[usize]) -> Result<usize> {
        if tour.len() != self.n {
            return Err(Error::invalid(format!(
                "tour length {} does not match n = {}",
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
        let mut missing = 0;
        for t in 0..self.n {
            let a = tour[t];
            let b = tour[(t + 1) % self.n];
            if !self.has_edge(a, b) {
                missing += 1;
            }
        }
        Ok(missing)
    }

    // ---- interchange formats -------------------------------------------

    /// Builds a graph from a 0/1 adjacency matrix.
    ///
    /// The matrix must be square (`n` rows of `n` entries), symmetric,
    /// zero on the diagonal, with entries in `{0, 1}`.
    pub fn from_adjacency(matrix: &[Vec<u8>]) -> Result<Self> {
        let n = matrix.len();
        Self::check_n(n)?;
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "adjacency row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let mut g = Self::empty(n)?;
        for i in 0..n {
            if matrix[i][i] != 0 {
                return Err(Error::invalid(format!("nonzero diagonal at ({i}, {i})")));
            }
            for j in 0..n {
                let v = matrix[i][j];
                if v > 1 {
                    return Err(Error::invalid(format!(
                        "adjacency entry ({i}, {j}) = {v}, expected 0 or 1"
                    )));
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::invalid(format!(
                        "adjacency not symmetric at ({i}, {j})"
                    )));
                }
                if i < j && v == 1 {
                    g.set_edge(i, j, true)?;
                }
            }
        }
        Ok(g)
    }

    /// Full 0/1 adjacency matrix of this graph.
    pub fn to_adjacency(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.n]; self.n];
        for (i, j) in self.edges() {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        m
    }

    /// Edge bit vector as a '0'/'1' string in [`edge_index`] order.
    pub fn to_bit_string(&self) -> String {
        (0..self.bit_len())
            .map(|k| if self.bit(k) { '1' } else { '0' })
            .collect()
    }

    /// Parses a '0'/'1' string of exactly `n*(n-1)/2` characters.
    pub fn from_bit_string(n: usize, s: &str) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let expect = g.bit_len();
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != expect {
            return Err(Error::format(
                0,
                format!("bit string length {} != {expect} for n = {n}", chars.len()),
            ));
        }
        for (k, c) in chars.iter().enumerate() {
            match c {
                '0' => {}
                '1' => g.set_bit(k, true),
                other => {
                    return Err(Error::format(0, format!("bad bit character {other:?}")));
                }
            }
        }
        Ok(g)
    }

    /// Packed-byte form of the edge vector: bit `k` is bit `k % 8` of byte
    /// `k / 8`; trailing bits of the last byte are zero.
    pub fn to_bytes(&self) -> Vec<u8> {
        let len = self.bit_len();
        let mut bytes = vec![0u8; len.div_ceil(8)];
        for k in 0..len {
            if self.bit(k) {
                bytes[k / 8] |= 1 << (k % 8);
            }
        }
        bytes
    }

    /// Lowercase hex of [`Graph::to_bytes`]; the archive interchange form.
    pub fn to_edge_hex(&self) -> String {
        let mut s = String::with_capacity(self.bit_len().div_ceil(8) * 2);
        for b in self.to_bytes() {
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    /// Parses the hex form produced by [`Graph::to_edge_hex`].
    pub fn from_edge_hex(n: usize, hex: &str) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let len = g.bit_len();
        let expect_bytes = len.div_ceil(8);
        if hex.len() != expect_bytes * 2 {
            return Err(Error::format(
                0,
                format!(
                    "edge hex has {} chars, expected {} for n = {n}",
                    hex.len(),
                    expect_bytes * 2
                ),
            ));
        }
        let mut bytes = Vec::with_capacity(expect_bytes);
        for p in 0..expect_bytes {
            let pair = &hex[2 * p..2 * p + 2];
            let b = u8::from_str_radix(pair, 16)
                .map_err(|_| Error::format(0, format!("bad hex byte {pair:?}")))?;
            bytes.push(b);
        }
        for (k, word) in bytes.iter().enumerate() {
            for bit in 0..8 {
                if word >> bit & 1 == 1 {
                    let idx = k * 8 + bit;
                    if idx >= len {
                        return Err(Error::format(
                            0,
                            format!("edge hex sets bit {idx} beyond vector length {len}"),
                        ));
                    }
                    g.set_bit(idx, true);
                }
            }
        }
        Ok(g)
    }

    /// Plain-text edge list: header `n m`, then `m` lines `i j` with
    /// `i < j`, ascending by [`edge_index`].
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    /// Parses the edge-list text format. Blank lines and lines starting
    /// with `#` are ignored; errors name the offending 1-based line.
    pub fn from_edge_list_text(text: &str) -> Result<Self> {
        let mut content = text
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

        let (header_line, header) = content
            .next()
            .ok_or_else(|| Error::format(0, "empty edge-list input".to_string()))?;
        let mut parts = header.split_whitespace();
        let parse_usize = |tok: Option<&str>, what: &str, line: usize| -> Result<usize> {
            tok.ok_or_else(|| Error::format(line, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| Error::format(line, format!("bad {what}")))
        };
        let n = parse_usize(parts.next(), "node count", header_line)?;
        let m = parse_usize(parts.next(), "edge count", header_line)?;
        if parts.next().is_some() {
            return Err(Error::format(header_line, "trailing tokens in header"));
        }
        let mut g = Self::empty(n)
            .map_err(|e| Error::format(header_line, e.to_string()))?;

        let mut last_index: Option<usize> = None;
        let mut count = 0usize;
        for (line_no, line) in content {
            let mut parts = line.split_whitespace();
            let i = parse_usize(parts.next(), "edge endpoint", line_no)?;
            let j = parse_usize(parts.next(), "edge endpoint", line_no)?;
            if parts.next().is_some() {
                return Err(Error::format(line_no, "trailing tokens in edge line"));
            }
            if i >= j {
                return Err(Error::format(
                    line_no,
                    format!("edge ({i}, {j}) must satisfy i < j"),
                ));
            }
            let k = edge_index(i, j, n).map_err(|e| Error::format(line_no, e.to_string()))?;
            if let Some(prev) = last_index {
                if k <= prev {
                    return Err(Error::format(
                        line_no,
                        format!("edge ({i}, {j}) out of ascending edge-index order"),
                    ));
                }
            }
            last_index = Some(k);
            g.set_bit(k, true);
            count += 1;
        }
        if count != m {
            return Err(Error::format(
                header_line,
                format!("header promises {m} edges, found {count}"),
            ));
        }
        Ok(g)
    }

    /// Stable 64-bit content id: FNV-1a over `n` (8 LE bytes) followed by
    /// the packed edge bytes. Deterministic across platforms and releases,
    /// unlike the std hasher.
    pub fn stable_id(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |byte: u8| {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        for b in (self.n as u64).to_le_bytes() {
            eat(b);
        }
        for b in self.to_bytes() {
            eat(b);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_index_known_positions() {
        // Hand-checked positions in the row-major upper triangle for n=5:
        // row 0 holds pairs (0,1)..(0,4) at 0..3, row 1 starts at 4, etc.
        assert_eq!(edge_index(0, 1, 5).unwrap(), 0);
        assert_eq!(edge_index(0, 4, 5).unwrap(), 3);
        assert_eq!(edge_index(1, 2, 5).unwrap(), 4);
        assert_eq!(edge_index(2, 3, 5).unwrap(), 7);
        assert_eq!(edge_index(3, 4, 5).unwrap(), 9);
        // Symmetric arguments map to the same slot.
        assert_eq!(edge_index(4, 3, 5).unwrap(), 9);
    }

    #[test]
    fn edge_index_rejects_bad_input() {
        assert!(edge_index(2, 2, 5).is_err());
        assert!(edge_index(0, 5, 5).is_err());
        assert!(edge_index(7, 1, 5).is_err());
    }

    #[test]
    fn edge_index_is_bijective_for_small_n() {
        // The index must enumerate 0..pair_count(n) exactly once.
        for n in MIN_NODES..=20 {
            let mut seen = vec![false; pair_count(n)];
            for i in 0..n {
                for j in i + 1..n {
                    let k = edge_index(i, j, n).unwrap();
                    assert!(!seen[k], "duplicate index {k} for n={n}");
                    seen[k] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn five_node_example_bit_string() {
        // Adjacency of the 5-node example with edges
        // {0,2} {0,3} {0,4} {1,2} {2,3}: its row-major upper-triangle
        // readout is 0111100100.
        let matrix: Vec<Vec<u8>> = vec![
            vec![0, 0, 1, 1, 1],
            vec![0, 0, 1, 0, 0],
            vec![1, 1, 0, 1, 0],
            vec![1, 0, 1, 0, 0],
            vec![1, 0, 0, 0, 0],
        ];
        let g = Graph::from_adjacency(&matrix).unwrap();
        assert_eq!(g.to_bit_string(), "0111100100");
        assert_eq!(g.edge_count(), 5);
        // Decoding back to a matrix is the identity.
        assert_eq!(g.to_adjacency(), matrix);
        // Little-endian byte packing of 0111100100:
        // byte 0 = bits 01111001 read at positions 0..7 -> 0b10011110,
        // byte 1 = bits 00 -> 0x00.
        assert_eq!(g.to_edge_hex(), "9e00");
        assert_eq!(Graph::from_edge_hex(5, "9e00").unwrap(), g);
    }

    #[test]
    fn adjacency_validation() {
        let asym = vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]];
        assert!(Graph::from_adjacency(&asym).is_err());
        let diag = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]];
        assert!(Graph::from_adjacency(&diag).is_err());
        let big = vec![vec![0, 2, 0], vec![2, 0, 0], vec![0, 0, 0]];
        assert!(Graph::from_adjacency(&big).is_err());
    }

    #[test]
    fn node_count_bounds() {
        assert!(Graph::empty(2).is_err());
        assert!(Graph::empty(3).is_ok());
        assert!(Graph::empty(MAX_NODES).is_ok());
        assert!(Graph::empty(MAX_NODES + 1).is_err());
    }

    #[test]
    fn complete_graph_edges() {
        let g = Graph::complete(10).unwrap();
        assert_eq!(g.edge_count(), 45);
        assert_eq!(g.degrees(), vec![9; 10]);
        assert_eq!(g.connected_components(), 1);
    }

    #[test]
    fn components_and_degrees() {
        // Two disjoint triangles.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(g.connected_components(), 2);
        assert_eq!(g.degrees(), vec![2; 6]);
        assert_eq!(Graph::empty(7).unwrap().connected_components(), 7);
    }

    #[test]
    fn tour_edge_counting() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(); // path
        // The path tour is missing only the closing edge {4,0}.
        assert_eq!(g.missing_tour_edges(&[0, 1, 2, 3, 4]).unwrap(), 1);
        // A tour against the grain misses more.
        assert_eq!(g.missing_tour_edges(&[0, 2, 4, 1, 3]).unwrap(), 5);
        assert!(g.missing_tour_edges(&[0, 1, 2, 3]).is_err());
        assert!(g.missing_tour_edges(&[0, 1, 2, 3, 3]).is_err());
        assert!(g.missing_tour_edges(&[0, 1, 2, 3, 5]).is_err());
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (2, 3)]).unwrap();
        let text = g.to_edge_list_text();
        assert_eq!(text.lines().next().unwrap(), "5 5");
        let back = Graph::from_edge_list_text(&text).unwrap();
        assert_eq!(back, g);

        // Comments and blank lines are ignored.
        let commented = "# a graph\n\n5 1\n# the only edge\n0 2\n";
        assert_eq!(
            Graph::from_edge_list_text(commented).unwrap().edge_count(),
            1
        );

        // Wrong edge count is reported against the header line.
        let err = Graph::from_edge_list_text("5 2\n0 2\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }), "{err}");

        // Out-of-order edges are rejected with their line number.
        let err = Graph::from_edge_list_text("5 2\n1 2\n0 2\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err}");

        // i >= j is rejected.
        let err = Graph::from_edge_list_text("5 1\n2 0\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err}");
    }

    #[test]
    fn stable_id_matches_reference_fnv() {
        // Independent FNV-1a over the documented byte stream.
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (2, 3)]).unwrap();
        let mut bytes = (5u64).to_le_bytes().to_vec();
        bytes.extend([0x9e, 0x00]);
        let mut h: u64 = 0xcbf29ce484222325;
        for b in bytes {
            h = (h ^ b as u64).wrapping_mul(0x100000001b3);
        }
        assert_eq!(g.stable_id(), h);
        // Different n with the same (empty) edge bytes must differ.
        assert_ne!(
            Graph::empty(10).unwrap().stable_id(),
            Graph::empty(11).unwrap().stable_id()
        );
    }

    #[test]
    fn neighbor_bitsets_match_adjacency() {
        let g = Graph::from_edges(70, &[(0, 1), (0, 69), (2, 64), (68, 69)]).unwrap();
        let rows = g.neighbor_bitsets();
        for i in 0..70 {
            for j in 0..70 {
                let bit = rows[i][j / 64] >> (j % 64) & 1 == 1;
                assert_eq!(bit, g.has_edge(i, j), "mismatch at ({i}, {j})");
            }
        }
    }

    proptest! {
        #[test]
        fn bit_string_round_trips(n in 3usize..=64, seed in 0u64..1000) {
            let g = random_graph(n, seed);
            let s = g.to_bit_string();
            prop_assert_eq!(Graph::from_bit_string(n, &s).unwrap(), g);
        }

        #[test]
        fn hex_round_trips(n in 3usize..=64, seed in 0u64..1000) {
            let g = random_graph(n, seed);
            let h = g.to_edge_hex();
            prop_assert_eq!(Graph::from_edge_hex(n, &h).unwrap(), g.clone());
            // Hex is canonical: equal graphs, equal strings.
            prop_assert_eq!(g.clone().to_edge_hex(), h);
        }

        #[test]
        fn adjacency_round_trips(n in 3usize..=32, seed in 0u64..500) {
            let g = random_graph(n, seed);
            prop_assert_eq!(Graph::from_adjacency(&g.to_adjacency()).unwrap(), g);
        }

        #[test]
        fn edge_list_round_trips(n in 3usize..=32, seed in 0u64..500) {
            let g = random_graph(n, seed);
            prop_assert_eq!(Graph::from_edge_list_text(&g.to_edge_list_text()).unwrap(), g);
        }

        #[test]
        fn edge_count_matches_bits(n in 3usize..=64, seed in 0u64..500) {
            let g = random_graph(n, seed);
            let ones = g.to_bit_string().chars().filter(|&c| c == '1').count();
            prop_assert_eq!(g.edge_count(), ones);
            let degree_sum: usize = g.degrees().iter().sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
        }
    }

    /// Deterministic scrambled graph for property tests: flips each bit
    /// from a splitmix-derived keystream.
    fn random_graph(n: usize, seed: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for k in 0..g.bit_len() {
            if crate::rng::splitmix64(seed ^ (k as u64) << 17) & 1 == 1 {
                g.set_bit(k, true);
            }
        }
        g
    }
}
