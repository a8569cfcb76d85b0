//! Greedy node-removal strategies: the spectral-cut attack plus recalculated
//! degree, recalculated betweenness, and uniform-random baselines.
//!
//! Every strategy produces an [`AttackTrace`] recording, after each removal,
//! the largest-component node and edge counts and the spectral edge bound on
//! the remaining graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::centrality::{betweenness, degrees, CentralityKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::matrix::{augmented_signless, laplacian};
use crate::nullspace::{largest_component_by_basis, FAITHFUL_DENSE_CAP};
use crate::parallel;
use crate::spectral::{default_tol, fiedler, lambda_max};

/// Two eigenvalue tie-break candidates whose λ₁ differ by no more than this
/// are treated as tied and resolved by node id.
const LAMBDA_TIE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Spectral,
    Degree,
    Betweenness,
    Random,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Spectral => "spectral",
            Strategy::Degree => "degree",
            Strategy::Betweenness => "betweenness",
            Strategy::Random => "random",
        }
    }

    /// The four strategies in canonical reporting order.
    pub fn all() -> [Strategy; 4] {
        [
            Strategy::Spectral,
            Strategy::Degree,
            Strategy::Betweenness,
            Strategy::Random,
        ]
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Strategy::Spectral),
            "degree" => Ok(Strategy::Degree),
            "betweenness" => Ok(Strategy::Betweenness),
            "random" => Ok(Strategy::Random),
            other => Err(Error::InvalidInput(format!("unknown strategy `{other}`"))),
        }
    }
}

/// How candidate removals are scored: breadth-first component sizes (fast)
/// or the null-space basis pipeline (faithful).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Fast,
    Faithful,
}

impl std::fmt::Display for EvalMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvalMode::Fast => "fast",
            EvalMode::Faithful => "faithful",
        })
    }
}

impl std::str::FromStr for EvalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(EvalMode::Fast),
            "faithful" => Ok(EvalMode::Faithful),
            other => Err(Error::InvalidInput(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AttackOptions {
    pub mode: EvalMode,
    /// Eigensolver residual tolerance; `None` picks the per-size default.
    pub tol: Option<f64>,
    /// Dense cap for faithful-mode eigendecompositions.
    pub faithful_cap: usize,
}

impl Default for AttackOptions {
    fn default() -> Self {
        AttackOptions {
            mode: EvalMode::Fast,
            tol: None,
            faithful_cap: FAITHFUL_DENSE_CAP,
        }
    }
}

/// Fiedler sign partition of a connected graph.
#[derive(Debug, Clone)]
pub struct CutPartition {
    /// One sign per node position: +1 or -1. Entries whose Fiedler value is
    /// within the zero threshold take -1.
    pub signs: Vec<i8>,
    /// Edges with oppositely signed endpoints, as original id pairs.
    pub cut_edges: Vec<(NodeId, NodeId)>,
    /// Nodes incident to a cut edge, sorted ascending: the removal pool.
    pub candidates: Vec<NodeId>,
}

impl CutPartition {
    pub fn cut_size(&self) -> usize {
        self.cut_edges.len()
    }
}

/// One removal with the state of the remaining graph after it.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackStep {
    pub index: usize,
    pub removed: NodeId,
    pub lcc_nodes: usize,
    pub lcc_edges: usize,
    pub edge_bound: f64,
    /// Candidate-pool size for the spectral strategy, `None` otherwise.
    pub vcut_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackTrace {
    pub strategy: Strategy,
    pub seed: u64,
    pub steps: Vec<AttackStep>,
}

/// Fiedler-vector sign cut of a connected graph with at least two nodes.
pub fn spectral_cut(g: &Graph) -> Result<CutPartition> {
    spectral_cut_with(g, None)
}

pub fn spectral_cut_with(g: &Graph, tol: Option<f64>) -> Result<CutPartition> {
    let l = laplacian(g);
    let tol = tol.unwrap_or_else(|| default_tol(l.dim()));
    let res = fiedler(&l, tol)?;
    let zero_band = 10.0 * tol;
    let signs: Vec<i8> = res
        .eigenvector
        .iter()
        .map(|&v| if v > zero_band { 1 } else { -1 })
        .collect();
    let mut cut_edges = Vec::new();
    let mut incident = vec![false; g.node_count()];
    for (i, j) in g.edges() {
        if signs[i as usize] != signs[j as usize] {
            cut_edges.push((g.id_at(i as usize), g.id_at(j as usize)));
            incident[i as usize] = true;
            incident[j as usize] = true;
        }
    }
    let candidates: Vec<NodeId> = incident
        .iter()
        .enumerate()
        .filter(|(_, &hit)| hit)
        .map(|(p, _)| g.id_at(p))
        .collect();
    if candidates.is_empty() {
        return Err(Error::InvalidInput(
            "spectral cut produced no candidates; Fiedler sign pattern is uniform".into(),
        ));
    }
    Ok(CutPartition {
        signs,
        cut_edges,
        candidates,
    })
}

fn check_budget(g: &Graph, budget: usize) -> Result<()> {
    if budget > 0 && budget >= g.node_count() {
        return Err(Error::BudgetExceedsNodes {
            budget,
            nodes: g.node_count(),
        });
    }
    Ok(())
}

fn bound_after_step(g: &Graph, tol: Option<f64>) -> Result<f64> {
    let qt = augmented_signless(g);
    let tol = tol.unwrap_or_else(|| default_tol(qt.dim()));
    let res = lambda_max(&qt, tol)?;
    Ok((g.node_count() as f64 + 1.0) / 8.0 * res.eigenvalue)
}

fn record_step(
    g_after: &Graph,
    index: usize,
    removed: NodeId,
    vcut_size: Option<usize>,
    tol: Option<f64>,
) -> Result<AttackStep> {
    let (lcc_nodes, lcc_edges) = g_after.largest_component_stats();
    Ok(AttackStep {
        index,
        removed,
        lcc_nodes,
        lcc_edges,
        edge_bound: bound_after_step(g_after, tol)?,
        vcut_size,
    })
}

fn lcc_size_after_removal(g: &Graph, node: NodeId, opts: &AttackOptions) -> Result<usize> {
    let h = g.remove_nodes(&[node])?;
    match opts.mode {
        EvalMode::Fast => Ok(h.largest_component_stats().0),
        EvalMode::Faithful => largest_component_by_basis(&h, opts.faithful_cap),
    }
}

/// Greedy spectral-cut removal.
///
/// Per step: take the largest component (ties: smallest contained id), cut
/// it by Fiedler signs, score every cut-incident candidate by the largest
/// component size of the whole remaining graph after removing it, and remove
/// the minimizer. Ties are resolved by the smaller largest eigenvalue of the
/// bordered signless Laplacian of the remaining graph, then by smallest id.
/// Stops early when no edges remain.
pub fn greedy_spectral_removal(
    g: &Graph,
    budget: usize,
    opts: &AttackOptions,
) -> Result<AttackTrace> {
    check_budget(g, budget)?;
    let mut current = g.clone();
    let mut steps = Vec::with_capacity(budget);
    for index in 1..=budget {
        if current.edge_count() == 0 {
            break;
        }
        let comps = current.components_bfs();
        let target = comps.largest().expect("graph with edges has a component");
        let sub = current.induced(&target.nodes)?;
        let cut = spectral_cut_with(&sub, opts.tol)?;

        let scores: Vec<Result<usize>> = parallel::install(|| {
            cut.candidates
                .par_iter()
                .map(|&v| lcc_size_after_removal(&current, v, opts))
                .collect()
        });
        let mut best_size = usize::MAX;
        let mut sizes = Vec::with_capacity(scores.len());
        for s in scores {
            let s = s?;
            best_size = best_size.min(s);
            sizes.push(s);
        }
        let finalists: Vec<NodeId> = cut
            .candidates
            .iter()
            .zip(&sizes)
            .filter(|(_, &s)| s == best_size)
            .map(|(&v, _)| v)
            .collect();

        let chosen = if finalists.len() == 1 {
            finalists[0]
        } else {
            let lambdas: Vec<Result<f64>> = parallel::install(|| {
                finalists
                    .par_iter()
                    .map(|&u| {
                        let h = current.remove_nodes(&[u])?;
                        let qt = augmented_signless(&h);
                        let tol = opts.tol.unwrap_or_else(|| default_tol(qt.dim()));
                        Ok(lambda_max(&qt, tol)?.eigenvalue)
                    })
                    .collect()
            });
            let mut best_lambda = f64::INFINITY;
            let mut values = Vec::with_capacity(lambdas.len());
            for l in lambdas {
                let l = l?;
                best_lambda = best_lambda.min(l);
                values.push(l);
            }
            // Finalists are in ascending id order, so the first within the
            // tie band is the smallest id.
            finalists
                .iter()
                .zip(&values)
                .find(|(_, &l)| l <= best_lambda + LAMBDA_TIE_TOL)
                .map(|(&u, _)| u)
                .expect("at least one finalist")
        };

        current = current.remove_nodes(&[chosen])?;
        steps.push(record_step(
            &current,
            index,
            chosen,
            Some(cut.candidates.len()),
            opts.tol,
        )?);
    }
    Ok(AttackTrace {
        strategy: Strategy::Spectral,
        seed: 0,
        steps,
    })
}

/// Recalculated centrality attack: recompute the chosen centrality on the
/// remaining graph each step and remove the arg max (ties: smallest id).
pub fn greedy_centrality_removal(
    g: &Graph,
    budget: usize,
    kind: CentralityKind,
    opts: &AttackOptions,
) -> Result<AttackTrace> {
    check_budget(g, budget)?;
    let mut current = g.clone();
    let mut steps = Vec::with_capacity(budget);
    for index in 1..=budget {
        let scores = match kind {
            CentralityKind::Degree => degrees(&current),
            CentralityKind::Betweenness => betweenness(&current),
        };
        let chosen = scores
            .argmax()
            .ok_or_else(|| Error::InvalidInput("no nodes left to remove".into()))?;
        current = current.remove_nodes(&[chosen])?;
        steps.push(record_step(&current, index, chosen, None, opts.tol)?);
    }
    Ok(AttackTrace {
        strategy: match kind {
            CentralityKind::Degree => Strategy::Degree,
            CentralityKind::Betweenness => Strategy::Betweenness,
        },
        seed: 0,
        steps,
    })
}

/// Remove `budget` distinct uniformly random nodes (control baseline).
pub fn random_removal(g: &Graph, budget: usize, seed: u64) -> Result<AttackTrace> {
    check_budget(g, budget)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut pool: Vec<NodeId> = g.ids().to_vec();
    let mut current = g.clone();
    let mut steps = Vec::with_capacity(budget);
    for index in 1..=budget {
        let pick = rng.random_range(0..pool.len());
        let chosen = pool.swap_remove(pick);
        current = current.remove_nodes(&[chosen])?;
        steps.push(record_step(&current, index, chosen, None, None)?);
    }
    Ok(AttackTrace {
        strategy: Strategy::Random,
        seed,
        steps,
    })
}
