//! Seeded graph generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Erdős–Rényi: each ordered (directed) or unordered pair independently with probability `p`.
    Gnp { n: usize, p: f64 },
    /// Barabási–Albert: each new vertex attaches to `degree` distinct existing
    /// vertices picked proportionally to degree. Directed graphs point new → old.
    PreferentialAttachment { n: usize, degree: usize },
    Path { n: usize },
    /// Vertex 0 joined to every other vertex.
    Star { n: usize },
    Cycle { n: usize },
}

impl Model {
    pub fn node_count(&self) -> usize {
        match *self {
            Model::Gnp { n, .. }
            | Model::PreferentialAttachment { n, .. }
            | Model::Path { n }
            | Model::Star { n }
            | Model::Cycle { n } => n,
        }
    }
}

pub fn generate(model: Model, directed: bool, seed: u64) -> Result<Graph> {
    let n = model.node_count();
    if n > VertexId::MAX as usize {
        return Err(Error::TooManyVertices(n));
    }
    let nv = n as VertexId;
    let edges: Vec<(VertexId, VertexId)> = match model {
        Model::Gnp { p, .. } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..nv {
                let start = if directed { 0 } else { u + 1 };
                for w in start..nv {
                    if u != w && rng.random::<f64>() < p {
                        edges.push((u, w));
                    }
                }
            }
            edges
        }
        Model::PreferentialAttachment { degree, .. } => {
            if degree == 0 {
                return Err(Error::InvalidParameter("attachment degree must be at least 1".into()));
            }
            preferential_attachment(n, degree, seed)
        }
        Model::Path { .. } => (1..nv).map(|i| (i - 1, i)).collect(),
        Model::Star { .. } => (1..nv).map(|i| (0, i)).collect(),
        Model::Cycle { .. } => (0..nv).map(|i| (i, (i + 1) % nv)).collect(),
    };
    Graph::from_edges(n, edges, directed)
}

fn preferential_attachment(n: usize, degree: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = (degree + 1).min(n);
    let mut edges = Vec::with_capacity(n * degree);
    // Every edge contributes both endpoints, so uniform picks are degree-proportional.
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * degree);
    for u in 0..core as VertexId {
        for w in 0..u {
            edges.push((u, w));
            endpoints.extend([u, w]);
        }
    }
    let mut picked: Vec<VertexId> = Vec::with_capacity(degree);
    for v in core as VertexId..n as VertexId {
        picked.clear();
        while picked.len() < degree {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !picked.contains(&t) {
                picked.push(t);
            }
        }
        for &t in &picked {
            edges.push((v, t));
            endpoints.extend([v, t]);
        }
    }
    edges
}

/// Places `b` after `a`; labels are renumbered `"0".."n-1"`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
    if a.is_directed() != b.is_directed() {
        return Err(Error::Usage("cannot join directed and undirected graphs"));
    }
    let shift = a.node_count() as VertexId;
    let edges = a.arcs().chain(b.arcs().map(|(u, w)| (u + shift, w + shift)));
    Graph::from_edges(a.node_count() + b.node_count(), edges, a.is_directed())
}
