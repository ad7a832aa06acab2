//! Immutable CSR graphs, edge-list ingestion, plain BFS and connected components.

use std::collections::{HashMap, VecDeque};
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};

/// Dense vertex identifier in `0..n`.
pub type VertexId = u32;

/// Marker for an unreached vertex in distance arrays.
pub const UNREACHED: u32 = u32::MAX;

/// Compressed sparse row adjacency over dense vertex ids.
///
/// Self-loops and parallel arcs never survive construction. Undirected graphs
/// store every edge once in each direction, so `arc_count` is twice the
/// number of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    directed: bool,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `"0".."n-1"`.
    pub fn from_edges<I>(n: usize, edges: I, directed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::from_labelled_edges(labels, edges, directed)
    }

    /// Builds a graph whose vertex `i` carries `labels[i]`.
    pub fn from_labelled_edges<I>(labels: Vec<String>, edges: I, directed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len();
        if n > VertexId::MAX as usize {
            return Err(Error::TooManyVertices(n));
        }
        let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, w) in edges {
            if u as usize >= n || w as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(w) as usize,
                    n,
                });
            }
            if u == w {
                continue;
            }
            arcs.push((u, w));
            if !directed {
                arcs.push((w, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.into_iter().map(|(_, w)| w).collect();
        Ok(Graph {
            offsets,
            targets,
            directed,
            labels,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of stored arcs (`2 * edges` for undirected graphs).
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    /// Number of input edges: arcs when directed, unordered pairs otherwise.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.targets.len()
        } else {
            self.targets.len() / 2
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Out-degree for directed graphs, degree for undirected ones.
    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.node_count() as VertexId
    }

    /// Iterates over the stored arcs; undirected edges appear in both directions.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().map(move |&w| (u, w)))
    }

    /// Iterates over input edges: every arc when directed, `u < w` pairs otherwise.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let directed = self.directed;
        self.arcs().filter(move |&(u, w)| directed || u < w)
    }

    /// Writes the canonical edge list: a `#` header, then one `u v` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(
            out,
            "# nodes: {} arcs: {} directed: {}",
            self.node_count(),
            self.arc_count(),
            self.directed
        )?;
        for (u, w) in self.edges() {
            writeln!(out, "{} {}", self.label(u), self.label(w))?;
        }
        Ok(())
    }
}

/// Parses a SNAP-style edge list.
///
/// Lines starting with `#` and blank lines are skipped. Every other line must
/// hold exactly two whitespace-separated tokens. Tokens get dense ids in order
/// of first appearance.
pub fn load_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();

    let mut intern = |token: &str| -> VertexId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len() as VertexId;
        labels.push(token.to_owned());
        ids.insert(token.to_owned(), id);
        id
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => {
                let u = intern(a);
                let w = intern(b);
                edges.push((u, w));
            }
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two vertex tokens, found {:?}", trimmed),
                })
            }
        }
    }
    Graph::from_labelled_edges(labels, edges, directed)
}

/// Outcome of a full breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsResult {
    /// `distances[w]` is the hop distance, or [`UNREACHED`].
    pub distances: Vec<u32>,
    /// r(source), the source included.
    pub visited: usize,
    /// Sum of out-degrees over visited vertices.
    pub arcs_traversed: u64,
    /// Sum of distances to the visited vertices.
    pub farness: u64,
}

impl BfsResult {
    pub fn distance(&self, w: VertexId) -> Option<u32> {
        match self.distances[w as usize] {
            UNREACHED => None,
            d => Some(d),
        }
    }
}

pub fn bfs(g: &Graph, source: VertexId) -> BfsResult {
    assert!((source as usize) < g.node_count(), "source out of range");
    let mut distances = vec![UNREACHED; g.node_count()];
    let mut queue = VecDeque::new();
    distances[source as usize] = 0;
    queue.push_back(source);
    let mut visited = 0usize;
    let mut arcs_traversed = 0u64;
    let mut farness = 0u64;
    while let Some(u) = queue.pop_front() {
        let du = distances[u as usize];
        visited += 1;
        farness += du as u64;
        arcs_traversed += g.out_degree(u) as u64;
        for &w in g.neighbors(u) {
            if distances[w as usize] == UNREACHED {
                distances[w as usize] = du + 1;
                queue.push_back(w);
            }
        }
    }
    BfsResult {
        distances,
        visited,
        arcs_traversed,
        farness,
    }
}

/// Connected components of an undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    component: Vec<u32>,
    sizes: Vec<usize>,
}

impl ComponentMap {
    pub fn component_of(&self, v: VertexId) -> u32 {
        self.component[v as usize]
    }

    pub fn component_ids(&self) -> &[u32] {
        &self.component
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// r(v): the size of v's component.
    pub fn reachable_count(&self, v: VertexId) -> usize {
        self.sizes[self.component[v as usize] as usize]
    }
}

pub fn connected_components(g: &Graph) -> Result<ComponentMap> {
    if g.is_directed() {
        return Err(Error::Usage(
            "connected components require an undirected graph; use the SCC decomposition",
        ));
    }
    let n = g.node_count();
    let mut component = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in g.vertices() {
        if component[s as usize] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        component[s as usize] = id;
        stack.push(s);
        let mut size = 0usize;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.neighbors(u) {
                if component[w as usize] == u32::MAX {
                    component[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    Ok(ComponentMap { component, sizes })
}
