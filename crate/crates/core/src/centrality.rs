//! Baseline node-importance measures: degree and shortest-path betweenness.

use rayon::prelude::*;

use crate::graph::{Graph, NodeId};
use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralityKind {
    Degree,
    Betweenness,
}

/// Per-node scores, indexed by the graph's original ids.
#[derive(Debug, Clone)]
pub struct CentralityScores {
    pub kind: CentralityKind,
    ids: Vec<NodeId>,
    values: Vec<f64>,
}

impl CentralityScores {
    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, id: NodeId) -> Option<f64> {
        self.ids.binary_search(&id).ok().map(|p| self.values[p])
    }

    /// Node with the maximum score; ties go to the smallest id.
    pub fn argmax(&self) -> Option<NodeId> {
        let mut best: Option<(f64, NodeId)> = None;
        for (&id, &v) in self.ids.iter().zip(&self.values) {
            match best {
                Some((bv, _)) if v <= bv => {}
                _ => best = Some((v, id)),
            }
        }
        best.map(|(_, id)| id)
    }
}

/// Degree of every node.
pub fn degrees(g: &Graph) -> CentralityScores {
    CentralityScores {
        kind: CentralityKind::Degree,
        ids: g.ids().to_vec(),
        values: (0..g.node_count()).map(|p| g.degree(p) as f64).collect(),
    }
}

/// Shortest-path betweenness over ordered pairs `(s, t)`, `s ≠ v ≠ t`:
/// `σ(v) = Σ σ_st(v) / σ_st` on unweighted shortest paths, by Brandes'
/// dependency accumulation (one BFS per source). Pairs in different
/// components contribute nothing.
///
/// Sources are processed in fixed-size blocks that are summed in a fixed
/// order, so the result does not depend on the worker count.
pub fn betweenness(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    const BLOCK: usize = 64;
    let blocks: Vec<usize> = (0..n).step_by(BLOCK).collect();

    let partials: Vec<Vec<f64>> = parallel::install(|| {
        blocks
            .par_iter()
            .map(|&start| {
                let mut acc = vec![0.0f64; n];
                for s in start..(start + BLOCK).min(n) {
                    accumulate_from_source(g, s, &mut acc);
                }
                acc
            })
            .collect()
    });

    let mut values = vec![0.0f64; n];
    for part in partials {
        for (v, p) in values.iter_mut().zip(part) {
            *v += p;
        }
    }
    CentralityScores {
        kind: CentralityKind::Betweenness,
        ids: g.ids().to_vec(),
        values,
    }
}

fn accumulate_from_source(g: &Graph, s: usize, acc: &mut [f64]) {
    let n = g.node_count();
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    sigma[s] = 1.0;
    dist[s] = 0;

    let mut queue = std::collections::VecDeque::new();
    queue.push_back(s as u32);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v as usize) {
            if dist[w as usize] < 0 {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
            if dist[w as usize] == dist[v as usize] + 1 {
                sigma[w as usize] += sigma[v as usize];
                preds[w as usize].push(v);
            }
        }
    }

    let mut delta = vec![0.0f64; n];
    for &w in order.iter().rev() {
        for &v in &preds[w as usize] {
            delta[v as usize] +=
                sigma[v as usize] / sigma[w as usize] * (1.0 + delta[w as usize]);
        }
        if w as usize != s {
            acc[w as usize] += delta[w as usize];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn degrees_of_path() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(degrees(&g).values(), &[1.0, 2.0, 1.0]);
    }

    #[test]
    fn degrees_of_edgeless_graph() {
        let g = parse_edge_list("# nodes: 4").unwrap();
        assert!(degrees(&g).values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn betweenness_of_path_counts_ordered_pairs() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        let b = betweenness(&g);
        assert_eq!(b.get(1), Some(2.0));
        assert_eq!(b.get(0), Some(0.0));
        assert_eq!(b.get(2), Some(0.0));
    }

    #[test]
    fn betweenness_of_triangle_is_zero() {
        let g = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert!(betweenness(&g).values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn betweenness_of_star_center() {
        // k leaves: the center carries k(k-1) ordered pairs.
        for k in 2..=6u32 {
            let edges: Vec<(u32, u32)> = (1..=k).map(|leaf| (0, leaf)).collect();
            let g = crate::graph::Graph::new((0..=k).collect(), &edges).unwrap();
            let b = betweenness(&g);
            assert_eq!(b.get(0), Some((k * (k - 1)) as f64));
        }
    }

    #[test]
    fn disconnected_pairs_contribute_nothing() {
        let g = crate::graph::Graph::new((0..5).collect(), &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let b = betweenness(&g);
        assert_eq!(b.get(1), Some(2.0));
        assert_eq!(b.get(3), Some(0.0));
        assert_eq!(b.get(4), Some(0.0));
    }

    #[test]
    fn argmax_ties_go_to_smallest_id() {
        let g = parse_edge_list("0 1\n2 3").unwrap();
        let d = degrees(&g);
        assert_eq!(d.argmax(), Some(0));
    }
}
