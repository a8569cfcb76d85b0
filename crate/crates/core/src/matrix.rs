//! Matrix constructions over a graph: adjacency-derived Laplacians, the
//! bordered signless Laplacian used by the edge bound, and the signed
//! incidence factorization.
//!
//! All entries are exact small integers stored as `f64`. Matrices with
//! dimension above [`DENSE_LIMIT`] use a symmetric sparse row layout;
//! smaller ones are dense.

use nalgebra::DMatrix;

use crate::graph::Graph;

/// Dimension above which matrices switch to sparse storage and eigensolves
/// switch to iterative methods.
pub const DENSE_LIMIT: usize = 512;

#[derive(Debug, Clone)]
enum Storage {
    Dense(DMatrix<f64>),
    /// Full symmetric rows: `rows[i]` holds `(j, value)` sorted by `j`,
    /// including the diagonal when nonzero.
    Sparse(Vec<Vec<(u32, f64)>>),
}

/// Symmetric real matrix with storage chosen by dimension.
#[derive(Debug, Clone)]
pub struct SymmetricMatrix {
    n: usize,
    storage: Storage,
}

impl SymmetricMatrix {
    /// Wrap a dense matrix; `m` must be exactly symmetric.
    pub fn from_dense(m: DMatrix<f64>) -> SymmetricMatrix {
        assert_eq!(m.nrows(), m.ncols(), "matrix must be square");
        debug_assert!(
            (0..m.nrows()).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)])),
            "matrix must be symmetric"
        );
        SymmetricMatrix {
            n: m.nrows(),
            storage: Storage::Dense(m),
        }
    }

    fn from_rows(n: usize, rows: Vec<Vec<(u32, f64)>>) -> SymmetricMatrix {
        if n <= DENSE_LIMIT {
            let mut m = DMatrix::zeros(n, n);
            for (i, row) in rows.iter().enumerate() {
                for &(j, v) in row {
                    m[(i, j as usize)] = v;
                }
            }
            SymmetricMatrix::from_dense(m)
        } else {
            SymmetricMatrix {
                n,
                storage: Storage::Sparse(rows),
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Dense(m) => m[(i, j)],
            Storage::Sparse(rows) => rows[i]
                .binary_search_by_key(&(j as u32), |&(c, _)| c)
                .map(|k| rows[i][k].1)
                .unwrap_or(0.0),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `out = M x`.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(out.len(), self.n);
        match &self.storage {
            Storage::Dense(m) => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = m.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
                }
            }
            Storage::Sparse(rows) => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = rows[i].iter().map(|&(j, v)| v * x[j as usize]).sum();
                }
            }
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.matvec(x, &mut out);
        out
    }

    /// Quadratic form `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.apply(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Largest row sum of absolute values; bounds every eigenvalue magnitude.
    pub fn gershgorin_bound(&self) -> f64 {
        (0..self.n)
            .map(|i| match &self.storage {
                Storage::Dense(m) => m.row(i).iter().map(|v| v.abs()).sum(),
                Storage::Sparse(rows) => rows[i].iter().map(|&(_, v)| v.abs()).sum(),
            })
            .fold(0.0, f64::max)
    }

    /// Dense copy regardless of storage. Intended for dimensions within the
    /// dense eigensolver caps; the caller enforces any limit.
    pub fn to_dense(&self) -> DMatrix<f64> {
        match &self.storage {
            Storage::Dense(m) => m.clone(),
            Storage::Sparse(rows) => {
                let mut m = DMatrix::zeros(self.n, self.n);
                for (i, row) in rows.iter().enumerate() {
                    for &(j, v) in row {
                        m[(i, j as usize)] = v;
                    }
                }
                m
            }
        }
    }
}

/// Graph Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.node_count();
    let rows = (0..n)
        .map(|i| {
            let mut row: Vec<(u32, f64)> = Vec::with_capacity(g.degree(i) + 1);
            let mut placed_diag = false;
            let deg = g.degree(i) as f64;
            for &j in g.neighbors(i) {
                if !placed_diag && (j as usize) > i {
                    row.push((i as u32, deg));
                    placed_diag = true;
                }
                row.push((j, -1.0));
            }
            if !placed_diag {
                row.push((i as u32, deg));
            }
            row
        })
        .collect();
    SymmetricMatrix::from_rows(n, rows)
}

/// Signless Laplacian `Q = D + A`.
pub fn signless_laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.node_count();
    let rows = (0..n)
        .map(|i| {
            let mut row: Vec<(u32, f64)> = Vec::with_capacity(g.degree(i) + 1);
            let mut placed_diag = false;
            let deg = g.degree(i) as f64;
            for &j in g.neighbors(i) {
                if !placed_diag && (j as usize) > i {
                    row.push((i as u32, deg));
                    placed_diag = true;
                }
                row.push((j, 1.0));
            }
            if !placed_diag {
                row.push((i as u32, deg));
            }
            row
        })
        .collect();
    SymmetricMatrix::from_rows(n, rows)
}

/// Signless Laplacian bordered by the degree vector:
/// `[[Q, d], [dᵀ, 0]]` with `d = A·1`, dimension `n + 1`.
pub fn augmented_signless(g: &Graph) -> SymmetricMatrix {
    let n = g.node_count();
    let mut rows: Vec<Vec<(u32, f64)>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<(u32, f64)> = Vec::with_capacity(g.degree(i) + 2);
        let mut placed_diag = false;
        let deg = g.degree(i) as f64;
        for &j in g.neighbors(i) {
            if !placed_diag && (j as usize) > i {
                row.push((i as u32, deg));
                placed_diag = true;
            }
            row.push((j, 1.0));
        }
        if !placed_diag {
            row.push((i as u32, deg));
        }
        if deg > 0.0 {
            row.push((n as u32, deg));
        }
        rows.push(row);
    }
    let border: Vec<(u32, f64)> = (0..n)
        .filter(|&i| g.degree(i) > 0)
        .map(|i| (i as u32, g.degree(i) as f64))
        .collect();
    rows.push(border);
    SymmetricMatrix::from_rows(n + 1, rows)
}

/// `(Σᵢ λᵢ(L), 2m)`. The Laplacian is positive semidefinite, so the
/// eigenvalue sum equals the trace; both quantities are exact integers.
pub fn nuclear_norm_identity(g: &Graph) -> (f64, f64) {
    let trace: usize = (0..g.node_count()).map(|i| g.degree(i)).sum();
    (trace as f64, 2.0 * g.edge_count() as f64)
}

/// Signed incidence matrix `B`: one column per edge with `+1` at the
/// smaller-id endpoint and `-1` at the larger, so `B·Bᵀ = L` exactly.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    rows: usize,
    /// Position pairs `(i, j)` with `i < j`; sorted ascending.
    columns: Vec<(u32, u32)>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Signed entry `B[i, e]` in `{-1, 0, 1}`.
    pub fn entry(&self, i: usize, e: usize) -> i8 {
        let (a, b) = self.columns[e];
        if i == a as usize {
            1
        } else if i == b as usize {
            -1
        } else {
            0
        }
    }

    /// Endpoint positions of column `e`, smaller first.
    pub fn column(&self, e: usize) -> (u32, u32) {
        self.columns[e]
    }
}

pub fn incidence(g: &Graph) -> IncidenceMatrix {
    IncidenceMatrix {
        rows: g.node_count(),
        columns: g.edges().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, Graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn single_edge_on_four() -> Graph {
        Graph::new((1..=4).collect(), &[(1, 2)]).unwrap()
    }

    #[test]
    fn laplacian_of_worked_example() {
        let l = laplacian(&single_edge_on_four());
        let expected = [
            [1.0, -1.0, 0.0, 0.0],
            [-1.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l.get(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn signless_laplacian_of_single_edge() {
        let g = parse_edge_list("0 1").unwrap();
        let q = signless_laplacian(&g);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(q.get(i, j), 1.0);
            }
        }
    }

    #[test]
    fn empty_graph_matrices_are_zero() {
        let g = parse_edge_list("# nodes: 3").unwrap();
        let l = laplacian(&g);
        let q = signless_laplacian(&g);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), 0.0);
                assert_eq!(q.get(i, j), 0.0);
            }
        }
    }

    #[test]
    fn augmented_signless_of_single_edge() {
        let g = parse_edge_list("0 1").unwrap();
        let qt = augmented_signless(&g);
        let expected = [[1.0, 1.0, 1.0], [1.0, 1.0, 1.0], [1.0, 1.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(qt.get(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn augmented_signless_of_edgeless_graph_is_zero() {
        let g = parse_edge_list("# nodes: 4").unwrap();
        let qt = augmented_signless(&g);
        assert_eq!(qt.dim(), 5);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(qt.get(i, j), 0.0);
            }
        }
    }

    #[test]
    fn augmented_signless_matches_reconstruction_from_definitions() {
        // G(8, 0.4): rebuild [[Q, d], [dᵀ, 0]] from A and D from scratch.
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let n = 8u32;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < 0.4 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new((0..n).collect(), &edges).unwrap();

        let mut a = vec![vec![0.0f64; 8]; 8];
        for &(u, v) in &edges {
            a[u as usize][v as usize] = 1.0;
            a[v as usize][u as usize] = 1.0;
        }
        let d: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();

        let qt = augmented_signless(&g);
        assert_eq!(qt.dim(), 9);
        for i in 0..9 {
            for j in 0..9 {
                let expected = match (i, j) {
                    (8, 8) => 0.0,
                    (8, j) => d[j],
                    (i, 8) => d[i],
                    (i, j) if i == j => d[i],
                    (i, j) => a[i][j],
                };
                assert_eq!(qt.get(i, j), expected, "mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn nuclear_norm_identity_on_single_edge() {
        let g = parse_edge_list("0 1").unwrap();
        assert_eq!(nuclear_norm_identity(&g), (2.0, 2.0));
    }

    #[test]
    fn nuclear_norm_identity_matches_independent_edge_recount() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let n = 20u32;
        let mut lines = String::new();
        let mut recount = 0usize;
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < 0.3 {
                    lines.push_str(&format!("{u} {v}\n"));
                    recount += 1;
                }
            }
        }
        lines.push_str("# nodes: 20\n");
        let g = parse_edge_list(&lines).unwrap();
        let (trace, twice_m) = nuclear_norm_identity(&g);
        assert_eq!(trace, twice_m);
        assert_eq!(twice_m, 2.0 * recount as f64);
    }

    #[test]
    fn laplacian_row_sums_vanish() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n0 3\n0 2").unwrap();
        let l = laplacian(&g);
        let ones = vec![1.0; g.node_count()];
        assert!(l.apply(&ones).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn incidence_gram_product_is_laplacian() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n0 3\n0 2").unwrap();
        let b = incidence(&g);
        let l = laplacian(&g);
        let n = g.node_count();
        for i in 0..n {
            for j in 0..n {
                let prod: i64 = (0..b.cols())
                    .map(|e| b.entry(i, e) as i64 * b.entry(j, e) as i64)
                    .sum();
                assert_eq!(prod as f64, l.get(i, j));
            }
        }
    }

    #[test]
    fn incidence_signs_at_smaller_id() {
        let g = parse_edge_list("0 1").unwrap();
        let b = incidence(&g);
        assert_eq!(b.cols(), 1);
        assert_eq!(b.entry(0, 0), 1);
        assert_eq!(b.entry(1, 0), -1);
    }

    #[test]
    fn sparse_storage_kicks_in_above_limit() {
        let n = DENSE_LIMIT as u32 + 4;
        let edges: Vec<(u32, u32)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::new((0..n).collect(), &edges).unwrap();
        let l = laplacian(&g);
        assert!(!l.is_dense());
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(1, 1), 2.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(0, 2), 0.0);
        let ones = vec![1.0; n as usize];
        assert!(l.apply(&ones).iter().all(|&v| v == 0.0));
    }
}
