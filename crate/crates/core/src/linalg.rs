//! Dense symmetric eigendecomposition via cyclic Jacobi rotations.
//!
//! Small and dependency-free on purpose: the graphs here are desk-scale,
//! so an O(n^3)-per-sweep method with excellent numerical behavior beats
//! pulling in a LAPACK binding. Eigenvectors are accumulated alongside the
//! eigenvalues because the PCA fit needs them; the graph-energy feature
//! simply ignores them.

/// A dense symmetric matrix in row-major order.
#[derive(Clone, Debug)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of side `n`.
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Wraps an existing row-major buffer of length `n * n`. The buffer is
    /// trusted to be symmetric; the eigensolver only reads `i <= j` and
    /// mirrors its own updates.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix buffer size mismatch");
        SymMatrix { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }
}

/// Result of [`jacobi_eigen`]: `values[k]` pairs with the eigenvector
/// stored in column `k` of `vectors` (row-major, side `n`).
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub n: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEigen {
    #[inline]
    pub fn vector_entry(&self, row: usize, k: usize) -> f64 {
        self.vectors[row * self.n + k]
    }

    /// Eigenvector for `values[k]`.
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.n).map(|r| self.vector_entry(r, k)).collect()
    }

    /// Indices of eigenvalues sorted descending (ties keep lower index).
    pub fn order_descending(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_by(|&a, &b| {
            self.values[b]
                .total_cmp(&self.values[a])
                .then(a.cmp(&b))
        });
        idx
    }
}

/// Off-diagonal Frobenius norm, the Jacobi convergence measure.
fn off_diagonal_norm(a: &SymMatrix) -> f64 {
    let n = a.n;
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let v = a.get(i, j);
            s += 2.0 * v * v;
        }
    }
    s.sqrt()
}

/// Convergence threshold for the off-diagonal norm.
pub const JACOBI_TOLERANCE: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Rotates away each upper-triangle entry in turn until the off-diagonal
/// Frobenius norm drops below [`JACOBI_TOLERANCE`]. Converges in a handful
/// of sweeps for the matrices this crate produces; `MAX_SWEEPS` is a
/// safety net, not a tuning knob. Returns eigenvalues in matrix order
/// (unsorted) with an orthonormal eigenvector per column.
pub fn jacobi_eigen(a: &SymMatrix) -> SymEigen {
    let n = a.n;
    let mut a = a.clone();
    // Eigenvector accumulator starts as the identity.
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    if n <= 1 {
        return SymEigen {
            n,
            values: (0..n).map(|i| a.get(i, i)).collect(),
            vectors: q,
        };
    }

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_TOLERANCE {
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apr = a.get(p, r);
                if apr.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let app = a.get(p, p);
                let arr = a.get(r, r);
                // Classic stable rotation computation (Golub & Van Loan).
                let tau = (arr - app) / (2.0 * apr);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == r {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akr = a.get(k, r);
                    a.set(k, p, c * akp - s * akr);
                    a.set(k, r, s * akp + c * akr);
                }
                a.set(p, p, app - t * apr);
                a.set(r, r, arr + t * apr);
                a.set(p, r, 0.0);

                for k in 0..n {
                    let qkp = q[k * n + p];
                    let qkr = q[k * n + r];
                    q[k * n + p] = c * qkp - s * qkr;
                    q[k * n + r] = s * qkp + c * qkr;
                }
            }
        }
    }
    debug_assert!(off_diagonal_norm(&a) < JACOBI_TOLERANCE * 10.0);

    SymEigen {
        n,
        values: (0..n).map(|i| a.get(i, i)).collect(),
        vectors: q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn reconstruct_max_error(a: &SymMatrix, e: &SymEigen) -> f64 {
        // max |(Q diag(values) Q^T - A)_{ij}|
        let n = a.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut v = 0.0;
                for k in 0..n {
                    v += e.vector_entry(i, k) * e.values[k] * e.vector_entry(j, k);
                }
                worst = worst.max((v - a.get(i, j)).abs());
            }
        }
        worst
    }

    fn random_symmetric(n: usize, seed: u64) -> SymMatrix {
        let mut a = SymMatrix::zeros(n);
        let mut state = seed;
        let mut next_unit = || {
            state = rng::splitmix64(state);
            // Map to [-1, 1).
            (state >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
        };
        for i in 0..n {
            for j in i..n {
                a.set(i, j, next_unit());
            }
        }
        a
    }

    #[test]
    fn diagonal_matrix_is_fixed_point() {
        let mut a = SymMatrix::zeros(4);
        for (i, v) in [3.0, -1.0, 0.5, 7.0].iter().enumerate() {
            a.set(i, i, *v);
        }
        let e = jacobi_eigen(&a);
        let mut vals = e.values.clone();
        vals.sort_by(f64::total_cmp);
        assert_eq!(vals, vec![-1.0, 0.5, 3.0, 7.0]);
        assert!(reconstruct_max_error(&a, &e) < 1e-12);
    }

    #[test]
    fn two_by_two_known_eigenvalues() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let mut a = SymMatrix::zeros(2);
        a.set(0, 0, 2.0);
        a.set(1, 1, 2.0);
        a.set(0, 1, 1.0);
        let e = jacobi_eigen(&a);
        let mut vals = e.values.clone();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn random_matrices_reconstruct_and_stay_orthonormal() {
        for (n, seed) in [(3usize, 1u64), (8, 2), (16, 3), (33, 4), (64, 5)] {
            let a = random_symmetric(n, seed);
            let e = jacobi_eigen(&a);
            assert!(
                reconstruct_max_error(&a, &e) < 1e-8,
                "reconstruction failed at n = {n}"
            );
            // Q^T Q = I.
            for c1 in 0..n {
                for c2 in c1..n {
                    let dot: f64 = (0..n)
                        .map(|r| e.vector_entry(r, c1) * e.vector_entry(r, c2))
                        .sum();
                    let expect = if c1 == c2 { 1.0 } else { 0.0 };
                    assert!(
                        (dot - expect).abs() < 1e-9,
                        "column dot ({c1}, {c2}) = {dot} at n = {n}"
                    );
                }
            }
            // Trace is preserved by similarity transforms.
            let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
            let vsum: f64 = e.values.iter().sum();
            assert!((trace - vsum).abs() < 1e-9);
        }
    }

    #[test]
    fn descending_order_indices() {
        let mut a = SymMatrix::zeros(3);
        a.set(0, 0, 1.0);
        a.set(1, 1, 5.0);
        a.set(2, 2, -2.0);
        let e = jacobi_eigen(&a);
        let order = e.order_descending();
        let sorted: Vec<f64> = order.iter().map(|&k| e.values[k]).collect();
        assert_eq!(sorted, vec![5.0, 1.0, -2.0]);
    }
}
