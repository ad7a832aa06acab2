//! Strongly connected components, the weighted condensation DAG, and the
//! per-vertex bounds on reachable-set sizes derived from it.

use crate::error::{Error, Result};
use crate::graph::{bfs, connected_components, Graph, VertexId};

/// Condensation of a directed graph.
///
/// SCC ids are topological indices: every DAG arc `(c, d)` has `c < d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDag {
    scc_of: Vec<u32>,
    weights: Vec<u64>,
    /// Smallest member vertex per SCC.
    representatives: Vec<VertexId>,
    offsets: Vec<usize>,
    successors: Vec<u32>,
}

impl SccDag {
    pub fn scc_count(&self) -> usize {
        self.weights.len()
    }

    pub fn scc_of(&self, v: VertexId) -> u32 {
        self.scc_of[v as usize]
    }

    pub fn scc_ids(&self) -> &[u32] {
        &self.scc_of
    }

    /// w(C): number of member vertices.
    pub fn weight(&self, c: u32) -> u64 {
        self.weights[c as usize]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn representative(&self, c: u32) -> VertexId {
        self.representatives[c as usize]
    }

    pub fn successors(&self, c: u32) -> &[u32] {
        let c = c as usize;
        &self.successors[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn dag_arc_count(&self) -> usize {
        self.successors.len()
    }

    /// Position of `c` in the topological order. Ids are assigned in that order.
    pub fn topo_index(&self, c: u32) -> usize {
        c as usize
    }

    /// Builds a DAG directly from SCC weights and arcs between SCC ids.
    ///
    /// Arcs must respect `c < d`; self-arcs and duplicates are dropped.
    /// Members are not tracked, so representatives are meaningless here.
    pub fn from_weighted_dag(weights: Vec<u64>, arcs: &[(u32, u32)]) -> Result<Self> {
        let count = weights.len();
        let mut arcs: Vec<(u32, u32)> = arcs.iter().copied().filter(|(c, d)| c != d).collect();
        for &(c, d) in &arcs {
            if c as usize >= count || d as usize >= count {
                return Err(Error::VertexOutOfRange {
                    vertex: c.max(d) as usize,
                    n: count,
                });
            }
            if c > d {
                return Err(Error::InvalidParameter(format!(
                    "arc ({c}, {d}) violates the topological order"
                )));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let (offsets, successors) = to_csr(count, &arcs);
        Ok(SccDag {
            scc_of: Vec::new(),
            weights,
            representatives: vec![0; count],
            offsets,
            successors,
        })
    }
}

fn to_csr(count: usize, sorted_arcs: &[(u32, u32)]) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; count + 1];
    for &(c, _) in sorted_arcs {
        offsets[c as usize + 1] += 1;
    }
    for i in 0..count {
        offsets[i + 1] += offsets[i];
    }
    (offsets, sorted_arcs.iter().map(|&(_, d)| d).collect())
}

/// Tarjan's algorithm with an explicit call stack.
///
/// Returns SCC ids in order of completion, i.e. sinks first.
fn tarjan(g: &Graph) -> (Vec<u32>, usize) {
    const UNVISITED: u32 = u32::MAX;
    let n = g.node_count();
    let offsets = g.offsets();
    let targets = g.targets();

    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut calls: Vec<(VertexId, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut count = 0usize;

    for root in g.vertices() {
        if index[root as usize] != UNVISITED {
            continue;
        }
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        calls.push((root, offsets[root as usize]));

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let vi = v as usize;
            if *pos < offsets[vi + 1] {
                let w = targets[*pos];
                *pos += 1;
                let wi = w as usize;
                if index[wi] == UNVISITED {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    calls.push((w, offsets[wi]));
                } else if on_stack[wi] {
                    low[vi] = low[vi].min(index[wi]);
                }
                continue;
            }
            calls.pop();
            if low[vi] == index[vi] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w as usize] = false;
                    comp[w as usize] = count as u32;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
            if let Some(&(parent, _)) = calls.last() {
                let pi = parent as usize;
                low[pi] = low[pi].min(low[vi]);
            }
        }
    }
    (comp, count)
}

pub fn compute_scc_dag(g: &Graph) -> Result<SccDag> {
    if !g.is_directed() {
        return Err(Error::Usage(
            "SCC decomposition requires a directed graph; use connected components",
        ));
    }
    let (finish_order, count) = tarjan(g);
    // Tarjan completes sinks first; reversing gives a topological order.
    let scc_of: Vec<u32> = finish_order
        .iter()
        .map(|&c| (count - 1) as u32 - c)
        .collect();

    let mut weights = vec![0u64; count];
    let mut representatives = vec![VertexId::MAX; count];
    for v in g.vertices() {
        let c = scc_of[v as usize] as usize;
        weights[c] += 1;
        representatives[c] = representatives[c].min(v);
    }

    let mut arcs: Vec<(u32, u32)> = g
        .arcs()
        .filter_map(|(u, w)| {
            let (cu, cw) = (scc_of[u as usize], scc_of[w as usize]);
            (cu != cw).then_some((cu, cw))
        })
        .collect();
    arcs.sort_unstable();
    arcs.dedup();
    let (offsets, successors) = to_csr(count, &arcs);

    Ok(SccDag {
        scc_of,
        weights,
        representatives,
        offsets,
        successors,
    })
}

/// Per-SCC lower and upper bounds on the reachable-set size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccBounds {
    pub alpha: Vec<u64>,
    pub omega: Vec<u64>,
}

/// The plain dynamic program over the DAG in reverse topological order:
/// α(C) = w(C) + max α(D), ω(C) = w(C) + Σ ω(D), with ω capped at `cap`.
pub fn plain_alpha_omega(dag: &SccDag, cap: u64) -> SccBounds {
    let count = dag.scc_count();
    let mut alpha = vec![0u64; count];
    let mut omega = vec![0u64; count];
    for c in (0..count as u32).rev() {
        let mut best = 0u64;
        let mut sum = 0u64;
        for &d in dag.successors(c) {
            best = best.max(alpha[d as usize]);
            sum = sum.saturating_add(omega[d as usize]);
        }
        alpha[c as usize] = dag.weight(c) + best;
        omega[c as usize] = (dag.weight(c).saturating_add(sum)).min(cap);
    }
    SccBounds { alpha, omega }
}

/// Index of the heaviest SCC; ties go to the one holding the smallest vertex.
pub fn largest_scc(dag: &SccDag) -> Option<u32> {
    (0..dag.scc_count() as u32).min_by_key(|&c| (std::cmp::Reverse(dag.weight(c)), dag.representative(c)))
}

/// Bounds after the exact BFS from the largest SCC.
///
/// The largest SCC `big` gets its exact reachable count `r_big`. Every SCC that
/// reaches it gets ω recomputed on the DAG minus everything `big` reaches, plus
/// `r_big`, and α recomputed with α(big) pinned to `r_big`.
pub fn alpha_omega_with_exact(dag: &SccDag, cap: u64, big: u32, r_big: u64, below_big: &[bool]) -> SccBounds {
    let count = dag.scc_count();
    let plain = plain_alpha_omega(dag, cap);
    let mut alpha = vec![0u64; count];
    let mut omega = plain.omega.clone();
    let mut reaches_big = vec![false; count];
    let mut restricted = vec![0u64; count];

    for c in (0..count as u32).rev() {
        let ci = c as usize;
        if c == big {
            alpha[ci] = r_big;
            omega[ci] = r_big;
            reaches_big[ci] = true;
            continue;
        }
        let mut best = 0u64;
        let mut reaches = false;
        let mut sum_outside = 0u64;
        for &d in dag.successors(c) {
            let di = d as usize;
            best = best.max(alpha[di]);
            reaches |= reaches_big[di];
            if !below_big[di] {
                sum_outside = sum_outside.saturating_add(restricted[di]);
            }
        }
        alpha[ci] = dag.weight(c) + best;
        reaches_big[ci] = reaches;
        if !below_big[ci] {
            restricted[ci] = (dag.weight(c).saturating_add(sum_outside)).min(cap);
        }
        if reaches {
            let improved = restricted[ci].saturating_add(r_big).min(cap);
            omega[ci] = omega[ci].min(improved);
        }
    }
    SccBounds { alpha, omega }
}

/// α/ω for every SCC, including the exact treatment of the largest SCC.
pub fn compute_alpha_omega_scc(dag: &SccDag, g: &Graph) -> SccBounds {
    let cap = g.node_count() as u64;
    let Some(big) = largest_scc(dag) else {
        return SccBounds {
            alpha: Vec::new(),
            omega: Vec::new(),
        };
    };
    let res = bfs(g, dag.representative(big));
    let mut below_big = vec![false; dag.scc_count()];
    for v in g.vertices() {
        if res.distance(v).is_some() {
            below_big[dag.scc_of(v) as usize] = true;
        }
    }
    alpha_omega_with_exact(dag, cap, big, res.visited as u64, &below_big)
}

/// Per-vertex bounds α(v) ≤ r(v) ≤ ω(v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityBounds {
    alpha: Vec<u64>,
    omega: Vec<u64>,
}

impl ReachabilityBounds {
    /// Exact counts for every vertex.
    pub fn exact(r: Vec<u64>) -> Self {
        ReachabilityBounds {
            alpha: r.clone(),
            omega: r,
        }
    }

    pub fn from_scc(dag: &SccDag, bounds: &SccBounds) -> Self {
        let alpha = dag.scc_ids().iter().map(|&c| bounds.alpha[c as usize]).collect();
        let omega = dag.scc_ids().iter().map(|&c| bounds.omega[c as usize]).collect();
        ReachabilityBounds { alpha, omega }
    }

    pub fn alpha(&self, v: VertexId) -> u64 {
        self.alpha[v as usize]
    }

    pub fn omega(&self, v: VertexId) -> u64 {
        self.omega[v as usize]
    }

    pub fn is_exact(&self, v: VertexId) -> bool {
        self.alpha[v as usize] == self.omega[v as usize]
    }

    /// r(v) when the bounds coincide.
    pub fn reachable(&self, v: VertexId) -> Option<u64> {
        self.is_exact(v).then(|| self.alpha[v as usize])
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// True when every vertex has an exact count.
    pub fn all_exact(&self) -> bool {
        self.alpha == self.omega
    }
}

pub fn compute_alpha_omega(dag: &SccDag, g: &Graph) -> ReachabilityBounds {
    ReachabilityBounds::from_scc(dag, &compute_alpha_omega_scc(dag, g))
}

/// Chooses the cheapest exact-or-bounded reachability source for `g`.
pub fn reachability_for(g: &Graph) -> ReachabilityBounds {
    let n = g.node_count();
    if !g.is_directed() {
        let cc = connected_components(g).expect("undirected graph");
        return ReachabilityBounds::exact(g.vertices().map(|v| cc.reachable_count(v) as u64).collect());
    }
    let dag = compute_scc_dag(g).expect("directed graph");
    if dag.scc_count() <= 1 {
        return ReachabilityBounds::exact(vec![n as u64; n]);
    }
    compute_alpha_omega(&dag, g)
}
