//! Executable cross-checks of the toolkit's structural identities on an
//! arbitrary input graph: matrix identities, the cut-size quadratic form,
//! the basis/traversal equivalence, and the spectral edge bound, each also
//! run on randomized node-removal perturbations of the input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::matrix::{incidence, laplacian, nuclear_norm_identity};
use crate::nullspace::{largest_component_by_basis, FAITHFUL_DENSE_CAP};
use crate::nullspace::{default_zero_tolerance, null_space_basis_with_cap, sparsest_binary_basis};
use crate::spectral::{default_tol, edge_upper_bound, fiedler};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Random node-removal perturbations per randomized check.
    pub trials: usize,
    pub seed: u64,
    /// Random sign vectors for the cut-size identity.
    pub sign_vectors: usize,
    /// Dense cap for the basis pipeline; larger graphs are subsampled.
    pub dense_cap: usize,
    /// Target node count when subsampling an oversized graph.
    pub subsample_target: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 20,
            seed: 0,
            sign_vectors: 10_000,
            dense_cap: FAITHFUL_DENSE_CAP,
            subsample_target: 1024,
        }
    }
}

/// Remove a random subset of up to 10% of the nodes.
fn perturb(g: &Graph, rng: &mut ChaCha20Rng) -> Result<Graph> {
    let n = g.node_count();
    if n < 2 {
        return Ok(g.clone());
    }
    let count = rng.random_range(0..=(n / 10).max(1).min(n - 1));
    let mut pool: Vec<NodeId> = g.ids().to_vec();
    let mut removed = Vec::with_capacity(count);
    for _ in 0..count {
        let pick = rng.random_range(0..pool.len());
        removed.push(pool.swap_remove(pick));
    }
    g.remove_nodes(&removed)
}

/// Breadth-first ball around a random start, capped at `target` nodes, used
/// to bring oversized graphs under the dense eigendecomposition cap.
fn subsample(g: &Graph, target: usize, rng: &mut ChaCha20Rng) -> Result<Graph> {
    let n = g.node_count();
    if n <= target {
        return Ok(g.clone());
    }
    let start = rng.random_range(0..n);
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    let mut keep = Vec::with_capacity(target);
    seen[start] = true;
    queue.push_back(start as u32);
    while let Some(p) = queue.pop_front() {
        keep.push(g.id_at(p as usize));
        if keep.len() >= target {
            break;
        }
        for &q in g.neighbors(p as usize) {
            if !seen[q as usize] {
                seen[q as usize] = true;
                queue.push_back(q);
            }
        }
    }
    g.induced(&keep)
}

pub fn run_verification(g: &Graph, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);

    check_nuclear_norm(g, &mut report);
    check_row_sums(g, &mut report);
    check_incidence(g, &mut report);
    check_cut_identity(g, opts.sign_vectors, &mut rng, &mut report);
    check_basis_equivalence(g, opts, &mut rng, &mut report)?;
    check_edge_bound(g, opts.trials, &mut rng, &mut report)?;
    check_fiedler_residual(g, &mut report)?;

    Ok(report)
}

fn check_nuclear_norm(g: &Graph, report: &mut VerifyReport) {
    let (trace, twice_m) = nuclear_norm_identity(g);
    report.push(
        "nuclear_norm_identity",
        trace == twice_m,
        format!("trace(L) = {trace}, 2|E| = {twice_m}"),
    );
}

fn check_row_sums(g: &Graph, report: &mut VerifyReport) {
    let l = laplacian(g);
    let ones = vec![1.0; g.node_count()];
    let worst = l
        .apply(&ones)
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    report.push(
        "laplacian_row_sums",
        worst == 0.0,
        format!("max |(L·1)_i| = {worst}"),
    );
}

fn check_incidence(g: &Graph, report: &mut VerifyReport) {
    let b = incidence(g);
    let l = laplacian(g);
    let n = g.node_count();

    // Entrywise: diagonal equals degree, off-diagonal -1 exactly on edges.
    let mut diag = vec![0i64; n];
    let mut ok = true;
    for e in 0..b.cols() {
        let (i, j) = b.column(e);
        diag[i as usize] += 1;
        diag[j as usize] += 1;
        if l.get(i as usize, j as usize) != -1.0 {
            ok = false;
        }
    }
    for (i, &d) in diag.iter().enumerate() {
        if l.get(i, i) != d as f64 {
            ok = false;
        }
    }
    // Dense product check at small scale.
    let mut dense_checked = false;
    if n <= 200 {
        dense_checked = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let prod: i64 = (0..b.cols())
                    .map(|e| b.entry(i, e) as i64 * b.entry(j, e) as i64)
                    .sum();
                if prod as f64 != l.get(i, j) {
                    ok = false;
                    break 'outer;
                }
            }
        }
    }
    report.push(
        "incidence_factorization",
        ok,
        format!(
            "B·Bᵀ = L over {} edges{}",
            b.cols(),
            if dense_checked { " (dense product verified)" } else { "" }
        ),
    );
}

fn check_cut_identity(
    g: &Graph,
    vectors: usize,
    rng: &mut ChaCha20Rng,
    report: &mut VerifyReport,
) {
    let l = laplacian(g);
    let n = g.node_count();
    let mut failures = 0usize;
    if n > 0 {
        for _ in 0..vectors {
            let signs: Vec<f64> = (0..n)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            let quad = l.quadratic_form(&signs) / 4.0;
            let counted = g
                .edges()
                .filter(|&(i, j)| signs[i as usize] != signs[j as usize])
                .count();
            if quad != counted as f64 {
                failures += 1;
            }
        }
    }
    report.push(
        "cut_size_identity",
        failures == 0,
        format!("¼·sᵀLs matched the cut count on {vectors} random sign vectors ({failures} failures)"),
    );
}

fn check_basis_equivalence(
    g: &Graph,
    opts: &VerifyOptions,
    rng: &mut ChaCha20Rng,
    report: &mut VerifyReport,
) -> Result<()> {
    let base = subsample(g, opts.subsample_target.min(opts.dense_cap), rng)?;
    let subsampled = base.node_count() != g.node_count();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for trial in 0..=opts.trials {
        let h = if trial == 0 { base.clone() } else { perturb(&base, rng)? };
        let l = laplacian(&h);
        let y = null_space_basis_with_cap(&l, default_zero_tolerance(&h), opts.dense_cap)?;
        let x = sparsest_binary_basis(&y)?;
        let by_basis: Vec<Vec<NodeId>> = {
            let mut sets: Vec<Vec<NodeId>> = x
                .support_sets()
                .iter()
                .map(|col| col.iter().map(|&p| h.id_at(p as usize)).collect())
                .collect();
            sets.sort();
            sets
        };
        let by_bfs = h.components_bfs().node_sets();
        if by_basis != by_bfs {
            failures.push(format!("trial {trial}: component sets differ"));
        }
        let norm = largest_component_by_basis(&h, opts.dense_cap)?;
        let (lcc, _) = h.largest_component_stats();
        if norm != lcc {
            failures.push(format!("trial {trial}: ‖X‖₁ = {norm} but traversal says {lcc}"));
        }
        checked += 1;
    }
    report.push(
        "basis_equals_traversal",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "indicator basis matched traversal on {checked} graphs{}",
                if subsampled {
                    format!(" (subsampled to ≤{} nodes)", base.node_count())
                } else {
                    String::new()
                }
            )
        } else {
            failures.join("; ")
        },
    );
    Ok(())
}

fn check_edge_bound(
    g: &Graph,
    trials: usize,
    rng: &mut ChaCha20Rng,
    report: &mut VerifyReport,
) -> Result<()> {
    let mut worst_slack = f64::INFINITY;
    let mut failures = 0usize;
    for trial in 0..=trials {
        let h = if trial == 0 { g.clone() } else { perturb(g, rng)? };
        let bound = edge_upper_bound(&h)?;
        let (_, lcc_edges) = h.largest_component_stats();
        let slack = bound - lcc_edges as f64;
        worst_slack = worst_slack.min(slack);
        if slack < -1e-9 {
            failures += 1;
        }
    }
    report.push(
        "edge_upper_bound",
        failures == 0,
        format!(
            "bound ≥ |E_LC| on {} graphs, worst slack {:.6e}",
            trials + 1,
            worst_slack
        ),
    );
    Ok(())
}

fn check_fiedler_residual(g: &Graph, report: &mut VerifyReport) -> Result<()> {
    let comps = g.components_bfs();
    let Some(largest) = comps.largest() else {
        report.push("fiedler_residual", true, "graph is empty; skipped".into());
        return Ok(());
    };
    if largest.len() < 2 {
        report.push(
            "fiedler_residual",
            true,
            "largest component is a single node; skipped".into(),
        );
        return Ok(());
    }
    let sub = g.induced(&largest.nodes)?;
    let l = laplacian(&sub);
    let tol = default_tol(l.dim());
    let res = fiedler(&l, tol)?;
    let ones_proj: f64 = res.eigenvector.iter().sum();
    let ortho_ok = ones_proj.abs() <= 10.0 * tol * (sub.node_count() as f64).sqrt();
    report.push(
        "fiedler_residual",
        res.residual <= tol && ortho_ok,
        format!(
            "λ₂ = {:.6e}, residual = {:.3e} (tol {tol:.0e}), ⟨s,1⟩ = {:.3e}",
            res.eigenvalue, res.residual, ones_proj
        ),
    );
    Ok(())
}
