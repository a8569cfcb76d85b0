//! Simple undirected graphs with stable original node identifiers.
//!
//! Node removals never renumber: every `Graph` carries the original ids of
//! its surviving nodes, and all matrix constructions index rows/columns by
//! the position of a node in the sorted id list.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Original node identifier as it appears in the input file.
pub type NodeId = u32;

/// Input file formats understood by [`read_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    EdgeList,
    Pajek,
}

impl FileFormat {
    /// Guess the format from a file extension; `.net` and `.paj` are Pajek,
    /// everything else is treated as a plain edge list.
    pub fn from_path(path: &Path) -> FileFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("net") || ext.eq_ignore_ascii_case("paj") => {
                FileFormat::Pajek
            }
            _ => FileFormat::EdgeList,
        }
    }
}

impl std::str::FromStr for FileFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(FileFormat::EdgeList),
            "pajek" => Ok(FileFormat::Pajek),
            other => Err(Error::InvalidInput(format!("unknown format `{other}`"))),
        }
    }
}

/// Simple undirected graph: no self loops, no duplicate edges.
///
/// Immutable after construction. Positions `0..n` correspond to the sorted
/// original ids; adjacency lists store positions and are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<NodeId>,
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// Build a graph from an explicit node set and id pairs.
    ///
    /// Nodes mentioned by edges must be in `nodes`. Rejects self loops and
    /// duplicate edges in either orientation.
    pub fn new(nodes: BTreeSet<NodeId>, edges: &[(NodeId, NodeId)]) -> Result<Graph> {
        let ids: Vec<NodeId> = nodes.into_iter().collect();
        let pos = |id: NodeId| -> Result<u32> {
            ids.binary_search(&id)
                .map(|p| p as u32)
                .map_err(|_| Error::UnknownNode(id))
        };
        let mut adj = vec![Vec::new(); ids.len()];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(u, v));
            }
            let (pu, pv) = (pos(u)?, pos(v)?);
            adj[pu as usize].push(pv);
            adj[pv as usize].push(pu);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let m = seen.len();
        Ok(Graph { ids, adj, m })
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Sorted original node ids.
    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    /// Original id of the node at `pos`.
    pub fn id_at(&self, pos: usize) -> NodeId {
        self.ids[pos]
    }

    /// Position of an original id, if present.
    pub fn position(&self, id: NodeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.position(id).is_some()
    }

    /// Neighbor positions of the node at `pos`, sorted ascending.
    pub fn neighbors(&self, pos: usize) -> &[u32] {
        &self.adj[pos]
    }

    /// Degree of the node at `pos`.
    pub fn degree(&self, pos: usize) -> usize {
        self.adj[pos].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as position pairs `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, list)| {
            let i = i as u32;
            list.iter()
                .copied()
                .filter(move |&j| i < j)
                .map(move |j| (i, j))
        })
    }

    /// Induced subgraph after deleting `removed` (original ids).
    ///
    /// Edges incident to a removed node disappear with it; surviving nodes
    /// keep their original ids.
    pub fn remove_nodes(&self, removed: &[NodeId]) -> Result<Graph> {
        let mut drop = vec![false; self.ids.len()];
        for &id in removed {
            let p = self.position(id).ok_or(Error::UnknownNode(id))?;
            drop[p] = true;
        }
        self.filtered(|p| !drop[p])
    }

    /// Induced subgraph on `keep` (original ids, all must exist).
    pub fn induced(&self, keep: &[NodeId]) -> Result<Graph> {
        let mut take = vec![false; self.ids.len()];
        for &id in keep {
            let p = self.position(id).ok_or(Error::UnknownNode(id))?;
            take[p] = true;
        }
        self.filtered(|p| take[p])
    }

    fn filtered(&self, keep: impl Fn(usize) -> bool) -> Result<Graph> {
        let n = self.ids.len();
        let mut new_pos = vec![u32::MAX; n];
        let mut ids = Vec::new();
        for p in 0..n {
            if keep(p) {
                new_pos[p] = ids.len() as u32;
                ids.push(self.ids[p]);
            }
        }
        let mut adj = vec![Vec::new(); ids.len()];
        let mut m = 0;
        for p in 0..n {
            if new_pos[p] == u32::MAX {
                continue;
            }
            for &q in &self.adj[p] {
                if new_pos[q as usize] != u32::MAX {
                    adj[new_pos[p] as usize].push(new_pos[q as usize]);
                    if p < q as usize {
                        m += 1;
                    }
                }
            }
        }
        // Neighbor order is preserved by the monotone position remap.
        Ok(Graph { ids, adj, m })
    }

    /// Connected components by breadth-first traversal.
    ///
    /// Sorted by size descending, ties broken by the smallest contained id.
    /// Isolated nodes count as size-1 components.
    pub fn components_bfs(&self) -> ComponentList {
        let n = self.ids.len();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start as u32);
            let mut members = Vec::new();
            let mut degree_sum = 0usize;
            while let Some(p) = queue.pop_front() {
                members.push(p);
                degree_sum += self.adj[p as usize].len();
                for &q in &self.adj[p as usize] {
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        queue.push_back(q);
                    }
                }
            }
            members.sort_unstable();
            let nodes = members.iter().map(|&p| self.ids[p as usize]).collect();
            components.push(Component {
                nodes,
                edge_count: degree_sum / 2,
            });
        }
        components.sort_by(|a, b| {
            b.nodes
                .len()
                .cmp(&a.nodes.len())
                .then(a.nodes[0].cmp(&b.nodes[0]))
        });
        ComponentList { components }
    }

    /// Node and edge counts of the largest component; `(0, 0)` for the
    /// empty graph.
    pub fn largest_component_stats(&self) -> (usize, usize) {
        match self.components_bfs().largest() {
            Some(c) => (c.nodes.len(), c.edge_count),
            None => (0, 0),
        }
    }
}

/// One connected component: sorted original ids plus internal edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub nodes: Vec<NodeId>,
    pub edge_count: usize,
}

impl Component {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// All components of a graph, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentList {
    components: Vec<Component>,
}

impl ComponentList {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn largest(&self) -> Option<&Component> {
        self.components.first()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Component> {
        self.components.iter()
    }

    /// Node sets as a sorted list of sorted id lists, for set comparison.
    pub fn node_sets(&self) -> Vec<Vec<NodeId>> {
        let mut sets: Vec<Vec<NodeId>> = self.components.iter().map(|c| c.nodes.clone()).collect();
        sets.sort();
        sets
    }
}

impl fmt::Display for ComponentList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.components.iter().map(|c| c.len().to_string()).collect();
        write!(f, "[{}]", sizes.join(", "))
    }
}

/// Parse the plain edge-list format.
///
/// Each data line holds two whitespace-separated integer ids. Lines starting
/// with `#` are comments; a header comment `# nodes: N` additionally declares
/// ids `0..N-1` so trailing isolated nodes survive parsing. Blank lines are
/// skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(decl) = comment.trim().strip_prefix("nodes:") {
                let n: u32 = decl.trim().parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad node-count header `{line}`"),
                })?;
                nodes.extend(0..n);
            }
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => {
                let parse = |tok: &str| {
                    tok.parse::<u32>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("expected integer id, got `{tok}`"),
                    })
                };
                (parse(a)?, parse(b)?)
            }
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected `u v`, got `{line}`"),
                })
            }
        };
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        nodes.insert(u);
        nodes.insert(v);
        edges.push((u, v));
    }
    Graph::new(nodes, &edges)
}

/// Parse the Pajek subset used by the public network distributions:
/// `*Vertices N`, then `*Edges` (or `*Arcs`) sections of 1-based id pairs,
/// mapped to 0-based ids. Vertex label lines and `%` comments are skipped;
/// trailing tokens on edge lines (weights) are ignored.
pub fn parse_pajek(text: &str) -> Result<Graph> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Vertices,
        Edges,
    }
    let mut section = Section::Preamble;
    let mut n: u32 = 0;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let lineno = idx + 1;
        if let Some(rest) = line.strip_prefix('*') {
            let mut it = rest.split_whitespace();
            let keyword = it.next().unwrap_or("").to_ascii_lowercase();
            match keyword.as_str() {
                "vertices" => {
                    let count = it.next().ok_or(Error::Parse {
                        line: lineno,
                        msg: "*Vertices requires a count".into(),
                    })?;
                    n = count.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad vertex count `{count}`"),
                    })?;
                    section = Section::Vertices;
                }
                "edges" | "arcs" => {
                    if section == Section::Preamble {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "*Edges before *Vertices".into(),
                        });
                    }
                    section = Section::Edges;
                }
                other => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("unsupported section `*{other}`"),
                    })
                }
            }
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "data before *Vertices".into(),
                })
            }
            Section::Vertices => {} // vertex label line, ignored
            Section::Edges => {
                let mut it = line.split_whitespace();
                let mut next_id = || -> Result<u32> {
                    let tok = it.next().ok_or(Error::Parse {
                        line: lineno,
                        msg: format!("expected `u v`, got `{line}`"),
                    })?;
                    let id: u32 = tok.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("expected integer id, got `{tok}`"),
                    })?;
                    if id < 1 || id > n {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("vertex id {id} outside 1..={n}"),
                        });
                    }
                    Ok(id - 1)
                };
                let u = next_id()?;
                let v = next_id()?;
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                edges.push((u, v));
            }
        }
    }
    Graph::new((0..n).collect(), &edges)
}

/// Read a graph file, guessing the format from the extension unless one is
/// given explicitly.
pub fn read_graph(path: &Path, format: Option<FileFormat>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    match format.unwrap_or_else(|| FileFormat::from_path(path)) {
        FileFormat::EdgeList => parse_edge_list(&text),
        FileFormat::Pajek => parse_pajek(&text),
    }
}
