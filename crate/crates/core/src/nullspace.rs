//! Null-space extraction for graph Laplacians and the greedy search that
//! turns an arbitrary orthonormal null basis into the sparsest binary one,
//! whose columns indicate connected components. The matrix one-norm of that
//! basis is the largest component size.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SymmetricMatrix;
use crate::spectral::symmetric_eigen;

/// Dense eigendecompositions above this dimension are refused with
/// `CapacityExceeded` instead of silently switching algorithms.
pub const FAITHFUL_DENSE_CAP: usize = 2048;

/// Scale factor applied to `ε·max|Y|` when deciding which floating-point
/// entries count as zero and which entries count as the same distinct value.
const CLUSTER_EPS_FACTOR: f64 = 1e3;

/// Orthonormal basis of the numerical null space of a Laplacian.
#[derive(Debug, Clone)]
pub struct NullBasis {
    n: usize,
    columns: Vec<Vec<f64>>,
    zero_tolerance: f64,
}

impl NullBasis {
    /// Wrap externally supplied columns. Each must have length `n` and unit
    /// Euclidean norm.
    pub fn from_columns(n: usize, columns: Vec<Vec<f64>>, zero_tolerance: f64) -> Result<NullBasis> {
        for (idx, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::InvalidInput(format!(
                    "column {idx} has length {}, expected {n}",
                    col.len()
                )));
            }
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-6 {
                return Err(Error::InvalidInput(format!(
                    "column {idx} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(NullBasis {
            n,
            columns,
            zero_tolerance,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `k = n - rank(L)`: the number of basis columns.
    pub fn rank_deficiency(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }
}

/// Default null-space threshold for a graph Laplacian:
/// `n · ε · λ₁` with `λ₁` bounded above by twice the maximum degree.
pub fn default_zero_tolerance(g: &Graph) -> f64 {
    let bound = 2.0 * g.max_degree() as f64;
    ((g.node_count() as f64) * f64::EPSILON * bound).max(f64::EPSILON)
}

/// Orthonormal basis of the eigenspace of eigenvalues `≤ tol`.
///
/// Errors with `ToleranceAmbiguity` when some eigenvalue falls in
/// `(tol, 10·tol)`, i.e. the spectrum does not separate cleanly at `tol`.
pub fn null_space_basis(l: &SymmetricMatrix, tol: f64) -> Result<NullBasis> {
    null_space_basis_with_cap(l, tol, FAITHFUL_DENSE_CAP)
}

pub fn null_space_basis_with_cap(
    l: &SymmetricMatrix,
    tol: f64,
    cap: usize,
) -> Result<NullBasis> {
    let n = l.dim();
    if n > cap {
        return Err(Error::CapacityExceeded { dim: n, cap });
    }
    let (values, vectors) = symmetric_eigen(l);
    let mut k = 0;
    for &v in &values {
        if v <= tol {
            k += 1;
        } else if v < 10.0 * tol {
            return Err(Error::ToleranceAmbiguity {
                value: v,
                tol,
                upper: 10.0 * tol,
            });
        } else {
            break;
        }
    }
    NullBasis::from_columns(n, vectors.into_iter().take(k).collect(), tol)
}

/// Binary orthogonal basis: one indicator column per connected component,
/// stored as sorted support positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBasis {
    n: usize,
    columns: Vec<Vec<u32>>,
}

impl ComponentBasis {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Support positions of each indicator column.
    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    /// Supports as a sorted set-of-sets, for order-free comparison.
    pub fn support_sets(&self) -> Vec<Vec<u32>> {
        let mut sets = self.columns.clone();
        sets.sort();
        sets
    }

    /// Dense 0/1 column.
    pub fn dense_column(&self, idx: usize) -> Vec<u8> {
        let mut col = vec![0u8; self.n];
        for &p in &self.columns[idx] {
            col[p as usize] = 1;
        }
        col
    }
}

/// `‖X‖₁ = maxᵢ ‖xᵢ‖₁`: the largest component size.
pub fn matrix_one_norm(x: &ComponentBasis) -> Result<usize> {
    x.columns
        .iter()
        .map(Vec::len)
        .max()
        .ok_or_else(|| Error::InvalidInput("component basis has no columns".into()))
}

/// One candidate binary vector examined by the greedy search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSearchStep {
    /// Index of the source column in the input basis.
    pub source_column: usize,
    /// Candidate support positions, sorted.
    pub candidate: Vec<u32>,
    /// Whether the candidate was support-disjoint from everything kept so far.
    pub kept: bool,
}

/// Record of a greedy search run: per-column sparsity statistics, the order
/// in which columns were decomposed, and every candidate examined.
#[derive(Debug, Clone, Default)]
pub struct BasisSearchTrace {
    pub nonzero_counts: Vec<usize>,
    pub distinct_counts: Vec<usize>,
    pub column_order: Vec<usize>,
    pub steps: Vec<BasisSearchStep>,
}

/// Greedy sparsest-basis search over a Laplacian null basis.
///
/// Repeatedly selects the unprocessed column with the fewest nonzero
/// entries (ties: most distinct nonzero values, then smallest index) and
/// decomposes it by distinct value into binary indicator vectors, keeping
/// each one iff its support is disjoint from everything kept so far, until
/// the basis is complete. Output columns are sorted by descending one-norm,
/// ties by smallest contained position.
pub fn sparsest_binary_basis(y: &NullBasis) -> Result<ComponentBasis> {
    sparsest_binary_basis_traced(y).map(|(basis, _)| basis)
}

pub fn sparsest_binary_basis_traced(y: &NullBasis) -> Result<(ComponentBasis, BasisSearchTrace)> {
    let n = y.dimension();
    let k = y.rank_deficiency();
    let mut trace = BasisSearchTrace::default();
    if k == 0 {
        return Ok((ComponentBasis { n, columns: Vec::new() }, trace));
    }

    let max_abs = y
        .columns()
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let tau = CLUSTER_EPS_FACTOR * f64::EPSILON * max_abs.max(1.0);

    // Cluster each column's nonzero entries into distinct values: sort by
    // value and split where consecutive entries differ by more than tau.
    // Clusters are examined in ascending value order.
    struct ColumnInfo {
        nonzeros: usize,
        clusters: Vec<Vec<u32>>, // supports, ascending by value
    }
    let analyze = |col: &[f64]| -> ColumnInfo {
        let mut entries: Vec<(f64, u32)> = col
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > tau)
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let nonzeros = entries.len();
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut clusters: Vec<Vec<u32>> = Vec::new();
        for (idx, &(v, pos)) in entries.iter().enumerate() {
            if idx == 0 || v - entries[idx - 1].0 > tau {
                clusters.push(vec![pos]);
            } else {
                clusters.last_mut().unwrap().push(pos);
            }
        }
        for c in &mut clusters {
            c.sort_unstable();
        }
        ColumnInfo { nonzeros, clusters }
    };

    let infos: Vec<ColumnInfo> = y.columns().iter().map(|c| analyze(c)).collect();
    trace.nonzero_counts = infos.iter().map(|i| i.nonzeros).collect();
    trace.distinct_counts = infos.iter().map(|i| i.clusters.len()).collect();

    let mut remaining: Vec<usize> = (0..k).collect();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    let mut occupied = vec![false; n];

    while kept.len() < k && !remaining.is_empty() {
        // Fewest nonzeros, then most distinct values, then smallest index.
        let (slot, &col_idx) = remaining
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                infos[a]
                    .nonzeros
                    .cmp(&infos[b].nonzeros)
                    .then(infos[b].clusters.len().cmp(&infos[a].clusters.len()))
                    .then(a.cmp(&b))
            })
            .expect("remaining is nonempty");
        remaining.remove(slot);
        trace.column_order.push(col_idx);

        for cluster in &infos[col_idx].clusters {
            let disjoint = cluster.iter().all(|&p| !occupied[p as usize]);
            trace.steps.push(BasisSearchStep {
                source_column: col_idx,
                candidate: cluster.clone(),
                kept: disjoint,
            });
            if disjoint {
                for &p in cluster {
                    occupied[p as usize] = true;
                }
                kept.push(cluster.clone());
                if kept.len() == k {
                    break;
                }
            }
        }
    }

    if kept.len() < k || occupied.iter().any(|&o| !o) {
        return Err(Error::BasisInconsistency {
            found: kept.len(),
            expected: k,
        });
    }

    kept.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    Ok((ComponentBasis { n, columns: kept }, trace))
}

/// Largest component size of `g` via the full spectral pipeline: null-space
/// basis of the Laplacian, greedy binary search, matrix one-norm. This is
/// the faithful route; breadth-first traversal gives the same number and is
/// the production fast path.
pub fn largest_component_by_basis(g: &Graph, cap: usize) -> Result<usize> {
    if g.node_count() == 0 {
        return Ok(0);
    }
    let l = crate::matrix::laplacian(g);
    let y = null_space_basis_with_cap(&l, default_zero_tolerance(g), cap)?;
    let x = sparsest_binary_basis(&y)?;
    matrix_one_norm(&x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, Graph};
    use crate::matrix::laplacian;

    /// The 4-node single-edge worked example: its null basis as produced by
    /// an SVD, columns [½½½½], [½½-½-½], [0 0 1/√2 -1/√2].
    fn svd_style_basis() -> NullBasis {
        let r = 1.0 / 2.0f64.sqrt();
        NullBasis::from_columns(
            4,
            vec![
                vec![0.5, 0.5, 0.5, 0.5],
                vec![0.5, 0.5, -0.5, -0.5],
                vec![0.0, 0.0, r, -r],
            ],
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn golden_search_recovers_indicators() {
        let (basis, trace) = sparsest_binary_basis_traced(&svd_style_basis()).unwrap();

        assert_eq!(trace.nonzero_counts, vec![4, 4, 2]);
        assert_eq!(trace.distinct_counts, vec![1, 2, 2]);
        // The sparsest column (third) is decomposed first.
        assert_eq!(trace.column_order[0], 2);

        // Its two singleton indicators are both kept.
        let kept_from_y3: Vec<_> = trace
            .steps
            .iter()
            .filter(|s| s.source_column == 2)
            .collect();
        assert_eq!(kept_from_y3.len(), 2);
        assert!(kept_from_y3.iter().all(|s| s.kept));

        // From the second column, [0,0,1,1] is examined, found non-orthogonal
        // and discarded; [1,1,0,0] is kept.
        let from_y2: Vec<_> = trace
            .steps
            .iter()
            .filter(|s| s.source_column == 1)
            .collect();
        assert_eq!(from_y2.len(), 2);
        assert_eq!(from_y2[0].candidate, vec![2, 3]);
        assert!(!from_y2[0].kept);
        assert_eq!(from_y2[1].candidate, vec![0, 1]);
        assert!(from_y2[1].kept);

        // Final basis: {0,1}, {2}, {3}, sorted by descending one-norm.
        assert_eq!(basis.columns()[0], vec![0, 1]);
        assert_eq!(
            basis.support_sets(),
            vec![vec![0, 1], vec![2], vec![3]]
        );
        assert_eq!(matrix_one_norm(&basis).unwrap(), 2);
    }

    #[test]
    fn identity_columns_pass_through() {
        let y = NullBasis::from_columns(
            3,
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            1e-12,
        )
        .unwrap();
        let basis = sparsest_binary_basis(&y).unwrap();
        assert_eq!(
            basis.support_sets(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(matrix_one_norm(&basis).unwrap(), 1);
    }

    #[test]
    fn duplicate_columns_are_inconsistent() {
        let half = vec![0.5, 0.5, 0.5, 0.5];
        let y = NullBasis::from_columns(4, vec![half.clone(), half], 1e-12).unwrap();
        assert!(matches!(
            sparsest_binary_basis(&y),
            Err(Error::BasisInconsistency {
                found: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn null_basis_of_worked_example_has_rank_three() {
        let g = Graph::new((1..=4).collect(), &[(1, 2)]).unwrap();
        let l = laplacian(&g);
        let y = null_space_basis(&l, default_zero_tolerance(&g)).unwrap();
        assert_eq!(y.rank_deficiency(), 3);
        for col in y.columns() {
            let ly = l.apply(col);
            let norm = ly.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm <= y.zero_tolerance() * 10.0);
        }
        // Whatever orthonormal basis came out, the search recovers the
        // component indicators.
        let basis = sparsest_binary_basis(&y).unwrap();
        assert_eq!(basis.support_sets(), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn connected_graph_has_rank_one_null_space() {
        let g = parse_edge_list("0 1\n1 2\n2 3").unwrap();
        let y = null_space_basis(&laplacian(&g), default_zero_tolerance(&g)).unwrap();
        assert_eq!(y.rank_deficiency(), 1);
        let expected = 1.0 / 2.0;
        for &v in &y.columns()[0] {
            assert!((v.abs() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_matrix_null_space_is_everything() {
        let g = parse_edge_list("# nodes: 3").unwrap();
        let y = null_space_basis(&laplacian(&g), default_zero_tolerance(&g)).unwrap();
        assert_eq!(y.rank_deficiency(), 3);
        // Columns are orthonormal.
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = y.columns()[i]
                    .iter()
                    .zip(&y.columns()[j])
                    .map(|(a, b)| a * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((d - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ambiguous_tolerance_is_rejected() {
        // Single edge: spectrum {0, 2}. tol = 0.5 puts 2 inside (0.5, 5).
        let g = parse_edge_list("0 1").unwrap();
        assert!(matches!(
            null_space_basis(&laplacian(&g), 0.5),
            Err(Error::ToleranceAmbiguity { .. })
        ));
    }

    #[test]
    fn capacity_cap_is_enforced() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert!(matches!(
            null_space_basis_with_cap(&laplacian(&g), 1e-12, 2),
            Err(Error::CapacityExceeded { dim: 3, cap: 2 })
        ));
    }

    #[test]
    fn one_norm_of_connected_graph_is_n() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n3 4").unwrap();
        let y = null_space_basis(&laplacian(&g), default_zero_tolerance(&g)).unwrap();
        let x = sparsest_binary_basis(&y).unwrap();
        assert_eq!(matrix_one_norm(&x).unwrap(), 5);
    }

    #[test]
    fn empty_component_basis_has_no_norm() {
        let x = ComponentBasis {
            n: 0,
            columns: Vec::new(),
        };
        assert!(matrix_one_norm(&x).is_err());
    }
}
