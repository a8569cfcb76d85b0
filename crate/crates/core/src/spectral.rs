//! Symmetric eigensolvers for the three spectral quantities the toolkit
//! needs: the Fiedler pair of a connected Laplacian, the largest eigenvalue
//! of the bordered signless Laplacian, and full dense spectra for small
//! matrices.
//!
//! Matrices up to [`DENSE_LIMIT`] go through a dense eigendecomposition.
//! Above that, `lambda_max` runs Lanczos with full reorthogonalization and
//! `fiedler` runs shift-invert Lanczos, applying the pseudoinverse of the
//! Laplacian through conjugate-gradient solves deflated against the all-ones
//! null vector. The contract is on the returned residual, not the method.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{augmented_signless, SymmetricMatrix, DENSE_LIMIT};

/// Eigenpair with the achieved backward error `‖M·v − λ·v‖₂` and the number
/// of operator applications spent (0 for dense solves).
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub eigenvalue: f64,
    pub eigenvector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Default residual tolerance: tight for dense solves, looser for iterative.
pub fn default_tol(dim: usize) -> f64 {
    if dim <= DENSE_LIMIT {
        1e-10
    } else {
        1e-8
    }
}

/// Relative spectral zero threshold used to separate null-space eigenvalues.
pub fn zero_tolerance(m: &SymmetricMatrix) -> f64 {
    (m.dim() as f64) * f64::EPSILON * m.gershgorin_bound().max(1.0)
}

const MAX_LANCZOS_BASIS: usize = 48;
const FIEDLER_SEED: u64 = 0xF1ED_1E52;
const LAMBDA_MAX_SEED: u64 = 0x1A3B_DA9C;

fn iteration_cap(n: usize) -> usize {
    (50.0 * (n as f64).sqrt()).ceil() as usize
}

/// Full symmetric eigendecomposition, eigenvalues ascending with matching
/// eigenvector columns. Densifies sparse input; the caller bounds the size.
pub fn symmetric_eigen(m: &SymmetricMatrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = m.dim();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let eig = m.to_dense().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// Flip the vector so its first nonzero entry (by position) is positive.
pub fn normalize_sign(v: &mut [f64]) {
    let max_abs = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if max_abs == 0.0 {
        return;
    }
    let threshold = 1e-8 * max_abs;
    if let Some(first) = v.iter().find(|x| x.abs() > threshold) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual_norm(m: &SymmetricMatrix, v: &[f64], lambda: f64) -> f64 {
    let mv = m.apply(v);
    mv.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b) * (a - lambda * b))
        .sum::<f64>()
        .sqrt()
}

/// Second-smallest eigenpair of a connected graph Laplacian.
///
/// The eigenvector is unit norm, orthogonal to the all-ones vector, and
/// sign-normalized so the first nonzero entry is positive.
pub fn fiedler(l: &SymmetricMatrix, tol: f64) -> Result<SpectralResult> {
    fiedler_with_cutoff(l, tol, DENSE_LIMIT)
}

/// As [`fiedler`] with an explicit dense/iterative switch point, so tests
/// can force the iterative path on small matrices.
pub fn fiedler_with_cutoff(l: &SymmetricMatrix, tol: f64, cutoff: usize) -> Result<SpectralResult> {
    let n = l.dim();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "Fiedler pair needs at least 2 nodes, got {n}"
        )));
    }
    let ztol = zero_tolerance(l);
    if n <= cutoff {
        let (values, vectors) = symmetric_eigen(l);
        if values[1] <= ztol {
            return Err(Error::NotConnected(values[1]));
        }
        let mut v = vectors[1].clone();
        normalize_sign(&mut v);
        let lambda = values[1];
        let residual = residual_norm(l, &v, lambda);
        if residual > tol {
            return Err(Error::NoConvergence(0));
        }
        Ok(SpectralResult {
            eigenvalue: lambda,
            eigenvector: v,
            residual,
            iterations: 0,
        })
    } else {
        fiedler_iterative(l, tol, ztol)
    }
}

/// Largest algebraic eigenpair of a symmetric matrix.
pub fn lambda_max(m: &SymmetricMatrix, tol: f64) -> Result<SpectralResult> {
    lambda_max_with_cutoff(m, tol, DENSE_LIMIT)
}

pub fn lambda_max_with_cutoff(
    m: &SymmetricMatrix,
    tol: f64,
    cutoff: usize,
) -> Result<SpectralResult> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidInput("matrix is empty".into()));
    }
    if n <= cutoff {
        let (values, vectors) = symmetric_eigen(m);
        let mut v = vectors[n - 1].clone();
        normalize_sign(&mut v);
        let lambda = values[n - 1];
        let residual = residual_norm(m, &v, lambda);
        if residual > tol {
            return Err(Error::NoConvergence(0));
        }
        Ok(SpectralResult {
            eigenvalue: lambda,
            eigenvector: v,
            residual,
            iterations: 0,
        })
    } else {
        let mut rng = ChaCha20Rng::seed_from_u64(LAMBDA_MAX_SEED);
        let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let s = norm(&start);
        start.iter_mut().for_each(|x| *x /= s);
        let mut ops_total = 0usize;
        let cap = iteration_cap(n);
        loop {
            let run = lanczos_extreme(&mut |v| m.apply(v), &start, n, None, cap - ops_total);
            ops_total += run.ops;
            let y = run.vector;
            let lambda = dot(&m.apply(&y), &y);
            let residual = residual_norm(m, &y, lambda);
            if residual <= tol {
                let mut v = y;
                normalize_sign(&mut v);
                return Ok(SpectralResult {
                    eigenvalue: lambda,
                    eigenvector: v,
                    residual,
                    iterations: ops_total,
                });
            }
            if ops_total >= cap {
                return Err(Error::NoConvergence(ops_total));
            }
            start = y;
        }
    }
}

/// Theorem-style edge bound on the largest component of `g`:
/// `(n + 1)/8 · λ₁` of the bordered signless Laplacian, with `n = |V(g)|`.
pub fn edge_upper_bound(g: &Graph) -> Result<f64> {
    let qt = augmented_signless(g);
    let res = lambda_max(&qt, default_tol(qt.dim()))?;
    Ok((g.node_count() as f64 + 1.0) / 8.0 * res.eigenvalue)
}

struct LanczosRun {
    vector: Vec<f64>,
    ops: usize,
}

/// Lanczos with full reorthogonalization; returns the Ritz vector of the
/// largest Ritz value of the operator. `deflate` is an additional unit
/// vector every basis vector is kept orthogonal to.
fn lanczos_extreme(
    op: &mut dyn FnMut(&[f64]) -> Vec<f64>,
    start: &[f64],
    n: usize,
    deflate: Option<&[f64]>,
    ops_budget: usize,
) -> LanczosRun {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let mut v = start.to_vec();
    if let Some(u) = deflate {
        let c = dot(&v, u);
        v.iter_mut().zip(u).for_each(|(x, ui)| *x -= c * ui);
    }
    let s = norm(&v);
    if s == 0.0 {
        return LanczosRun {
            vector: start.to_vec(),
            ops: 0,
        };
    }
    v.iter_mut().for_each(|x| *x /= s);

    let basis_cap = MAX_LANCZOS_BASIS.min(n).min(ops_budget.max(1));
    let mut ops = 0usize;
    let mut scale = 0.0f64;
    for j in 0..basis_cap {
        basis.push(v.clone());
        let mut w = op(&v);
        ops += 1;
        let alpha = dot(&w, &v);
        alphas.push(alpha);
        scale = scale.max(alpha.abs());
        // Two Gram-Schmidt passes against the full basis and the deflation
        // vector keep the tridiagonalization honest at this scale.
        for _ in 0..2 {
            if let Some(u) = deflate {
                let c = dot(&w, u);
                w.iter_mut().zip(u).for_each(|(x, ui)| *x -= c * ui);
            }
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, bi)| *x -= c * bi);
            }
        }
        let beta = norm(&w);
        scale = scale.max(beta);
        if j + 1 == basis_cap || beta <= 1e-14 * scale.max(1.0) {
            break;
        }
        betas.push(beta);
        w.iter_mut().for_each(|x| *x /= beta);
        v = w;
    }

    // Ritz pair of the largest eigenvalue of the tridiagonal matrix.
    let k = alphas.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = t.symmetric_eigen();
    let mut top = 0;
    for i in 1..k {
        if eig.eigenvalues[i] > eig.eigenvalues[top] {
            top = i;
        }
    }
    let z = eig.eigenvectors.column(top);
    let mut y = vec![0.0; n];
    for (zi, b) in z.iter().zip(&basis) {
        for (yi, bi) in y.iter_mut().zip(b) {
            *yi += zi * bi;
        }
    }
    let s = norm(&y);
    if s > 0.0 {
        y.iter_mut().for_each(|x| *x /= s);
    }
    LanczosRun { vector: y, ops }
}

/// Conjugate gradients for `L x = b` restricted to the complement of the
/// all-ones vector, where the Laplacian of a connected graph is positive
/// definite. Iterates are re-projected each step to cancel rounding drift.
fn cg_solve_deflated(l: &SymmetricMatrix, b: &[f64], rel_tol: f64, max_iters: usize) -> Vec<f64> {
    let n = l.dim();
    let project = |v: &mut Vec<f64>| {
        let mean = v.iter().sum::<f64>() / n as f64;
        v.iter_mut().for_each(|x| *x -= mean);
    };
    let mut b = b.to_vec();
    project(&mut b);
    let b_norm = norm(&b);
    if b_norm == 0.0 {
        return vec![0.0; n];
    }
    let mut x = vec![0.0; n];
    let mut r = b.clone();
    let mut p = r.clone();
    let mut rs = dot(&r, &r);
    for _ in 0..max_iters {
        let mut ap = l.apply(&p);
        project(&mut ap);
        let denom = dot(&p, &ap);
        if denom <= 0.0 {
            break; // not positive definite on this subspace; caller detects
        }
        let alpha = rs / denom;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        project(&mut r);
        let rs_new = dot(&r, &r);
        if rs_new.sqrt() <= rel_tol * b_norm {
            break;
        }
        let beta = rs_new / rs;
        rs = rs_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    project(&mut x);
    x
}

fn fiedler_iterative(l: &SymmetricMatrix, tol: f64, ztol: f64) -> Result<SpectralResult> {
    let n = l.dim();
    let u: Vec<f64> = vec![1.0 / (n as f64).sqrt(); n];
    let cg_iters = 10 * n;
    let mut apply_pinv = |v: &[f64]| -> Vec<f64> {
        let mut out = cg_solve_deflated(l, v, 1e-12, cg_iters);
        let c = dot(&out, &u);
        out.iter_mut().zip(&u).for_each(|(x, ui)| *x -= c * ui);
        out
    };

    let mut rng = ChaCha20Rng::seed_from_u64(FIEDLER_SEED);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let cap = iteration_cap(n);
    let mut ops_total = 0usize;
    loop {
        let run = lanczos_extreme(&mut apply_pinv, &start, n, Some(&u), cap - ops_total);
        ops_total += run.ops;
        let y = run.vector;
        let lambda = dot(&l.apply(&y), &y);
        if lambda.abs() <= ztol {
            return Err(Error::NotConnected(lambda));
        }
        let residual = residual_norm(l, &y, lambda);
        if residual <= tol {
            let mut v = y;
            normalize_sign(&mut v);
            return Ok(SpectralResult {
                eigenvalue: lambda,
                eigenvector: v,
                residual,
                iterations: ops_total,
            });
        }
        if ops_total >= cap {
            return Err(Error::NoConvergence(ops_total));
        }
        start = y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, Graph};
    use crate::matrix::laplacian;
    use approx::assert_relative_eq;

    #[test]
    fn fiedler_of_path3() {
        // Path Laplacian spectrum {0, 1, 3}; eigenvector of 1 is [1,0,-1]/√2.
        let g = parse_edge_list("0 1\n1 2").unwrap();
        let res = fiedler(&laplacian(&g), 1e-10).unwrap();
        assert_relative_eq!(res.eigenvalue, 1.0, epsilon = 1e-9);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert_relative_eq!(res.eigenvector[0], inv_sqrt2, epsilon = 1e-8);
        assert_relative_eq!(res.eigenvector[1], 0.0, epsilon = 1e-8);
        assert_relative_eq!(res.eigenvector[2], -inv_sqrt2, epsilon = 1e-8);
    }

    #[test]
    fn fiedler_of_single_edge() {
        let g = parse_edge_list("0 1").unwrap();
        let res = fiedler(&laplacian(&g), 1e-10).unwrap();
        assert_relative_eq!(res.eigenvalue, 2.0, epsilon = 1e-10);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert_relative_eq!(res.eigenvector[0], inv_sqrt2, epsilon = 1e-10);
        assert_relative_eq!(res.eigenvector[1], -inv_sqrt2, epsilon = 1e-10);
    }

    #[test]
    fn fiedler_of_star_is_leaf_supported() {
        // Star with center 0 and leaves 1..=3: spectrum {0, 1, 1, 4}.
        let g = parse_edge_list("0 1\n0 2\n0 3").unwrap();
        let res = fiedler(&laplacian(&g), 1e-10).unwrap();
        assert_relative_eq!(res.eigenvalue, 1.0, epsilon = 1e-9);
        assert!(res.eigenvector[0].abs() < 1e-8, "center entry must vanish");
        let leaf_sum: f64 = res.eigenvector[1..].iter().sum();
        assert!(leaf_sum.abs() < 1e-8, "leaf entries must sum to zero");
    }

    #[test]
    fn fiedler_rejects_disconnected() {
        let g = Graph::new((0..4).collect(), &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            fiedler(&laplacian(&g), 1e-10),
            Err(Error::NotConnected(_))
        ));
    }

    #[test]
    fn fiedler_orthogonal_to_ones() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n3 4\n0 2").unwrap();
        let res = fiedler(&laplacian(&g), 1e-10).unwrap();
        let s: f64 = res.eigenvector.iter().sum();
        assert!(s.abs() <= 10.0 * 1e-10 * (5.0f64).sqrt());
    }

    #[test]
    fn lambda_max_of_augmented_single_edge() {
        // [[1,1,1],[1,1,1],[1,1,0]] has top eigenvalue 1 + √3.
        let g = parse_edge_list("0 1").unwrap();
        let qt = augmented_signless(&g);
        let res = lambda_max(&qt, 1e-10).unwrap();
        assert_relative_eq!(res.eigenvalue, 1.0 + 3.0f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn lambda_max_of_zero_matrix() {
        let g = parse_edge_list("# nodes: 3").unwrap();
        let qt = augmented_signless(&g);
        let res = lambda_max(&qt, 1e-10).unwrap();
        assert_eq!(res.eigenvalue, 0.0);
    }

    #[test]
    fn edge_upper_bound_of_single_edge() {
        let g = parse_edge_list("0 1").unwrap();
        let bound = edge_upper_bound(&g).unwrap();
        assert_relative_eq!(bound, 3.0 / 8.0 * (1.0 + 3.0f64.sqrt()), epsilon = 1e-8);
        assert!(bound >= 1.0);
    }

    #[test]
    fn edge_upper_bound_of_edgeless_graph_is_zero() {
        let g = parse_edge_list("# nodes: 6").unwrap();
        let bound = edge_upper_bound(&g).unwrap();
        assert!(bound.abs() <= 1e-12);
    }

    fn random_connected_graph(n: u32, extra: usize, seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
        let mut edges: Vec<(u32, u32)> = (1..n)
            .map(|v| (rng.random_range(0..v), v))
            .collect();
        let mut tries = 0;
        while edges.len() < (n as usize - 1) + extra && tries < 10 * extra + 10 {
            tries += 1;
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && !edges.contains(&(u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v)));
            }
        }
        Graph::new((0..n).collect(), &edges).unwrap()
    }

    #[test]
    fn iterative_fiedler_matches_dense() {
        for seed in 0..6 {
            let g = random_connected_graph(60, 40, seed);
            let l = laplacian(&g);
            let dense = fiedler_with_cutoff(&l, 1e-10, DENSE_LIMIT).unwrap();
            let iter = fiedler_with_cutoff(&l, 1e-8, 0).unwrap();
            assert_relative_eq!(iter.eigenvalue, dense.eigenvalue, epsilon = 1e-8);
            assert!(iter.residual <= 1e-8);
            let s: f64 = iter.eigenvector.iter().sum();
            assert!(s.abs() <= 1e-7);
        }
    }

    #[test]
    fn iterative_lambda_max_matches_dense() {
        for seed in 10..16 {
            let g = random_connected_graph(60, 60, seed);
            let qt = augmented_signless(&g);
            let dense = lambda_max_with_cutoff(&qt, 1e-10, DENSE_LIMIT).unwrap();
            let iter = lambda_max_with_cutoff(&qt, 1e-8, 0).unwrap();
            assert_relative_eq!(iter.eigenvalue, dense.eigenvalue, epsilon = 1e-8);
            assert!(iter.residual <= 1e-8);
        }
    }

    #[test]
    fn degenerate_fiedler_is_deterministic() {
        // K4 has Fiedler multiplicity 3; two runs must agree bit for bit.
        let g = parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        let l = laplacian(&g);
        let a = fiedler(&l, 1e-10).unwrap();
        let b = fiedler(&l, 1e-10).unwrap();
        assert_eq!(a.eigenvector, b.eigenvector);
        let first_nz = a.eigenvector.iter().find(|x| x.abs() > 1e-9).unwrap();
        assert!(*first_nz > 0.0);
    }
}
