//! Textbook closeness: one full BFS per vertex. Used as the baseline and as the
//! reference the pruned engine is checked against.

use crate::bounds::closeness;
use crate::engine::TopKResult;
use crate::graph::{bfs, connected_components, Graph};
use crate::threshold::Scored;

#[derive(Debug, Clone, PartialEq)]
pub struct ClosenessTable {
    pub closeness: Vec<f64>,
    pub farness: Vec<u64>,
    pub reachable: Vec<u64>,
}

impl ClosenessTable {
    pub fn scored(&self) -> Vec<Scored> {
        (0..self.closeness.len())
            .map(|v| Scored {
                vertex: v as u32,
                closeness: self.closeness[v],
                farness: self.farness[v],
                reachable: self.reachable[v],
            })
            .collect()
    }
}

/// Closeness of every vertex plus `m_tot`, the number of arcs all the BFSs scanned.
pub fn exact_closeness_all(g: &Graph) -> (ClosenessTable, u64) {
    let n = g.node_count();
    let mut table = ClosenessTable {
        closeness: Vec::with_capacity(n),
        farness: Vec::with_capacity(n),
        reachable: Vec::with_capacity(n),
    };
    let mut total_arcs = 0u64;
    for v in g.vertices() {
        let res = bfs(g, v);
        total_arcs += res.arcs_traversed;
        table.farness.push(res.farness);
        table.reachable.push(res.visited as u64);
        table.closeness.push(closeness(res.farness, res.visited as u64, n as u64));
    }
    (table, total_arcs)
}

pub fn top_k_textbook(g: &Graph, k: usize) -> TopKResult {
    assert!(k >= 1, "k must be at least 1");
    let (table, _) = exact_closeness_all(g);
    TopKResult::from_scored(g, k, table.scored())
}

/// `m_tot` computed from structure alone, when that is possible.
///
/// Undirected graphs sum `size * arcs` over components; strongly connected
/// digraphs give `m * n`. Other digraphs return `None`.
pub fn structural_textbook_arc_count(g: &Graph) -> Option<u64> {
    if !g.is_directed() {
        let cc = connected_components(g).expect("undirected graph");
        let mut arcs = vec![0u64; cc.component_count()];
        for v in g.vertices() {
            arcs[cc.component_of(v) as usize] += g.out_degree(v) as u64;
        }
        return Some(
            cc.sizes()
                .iter()
                .zip(&arcs)
                .map(|(&size, &a)| size as u64 * a)
                .sum(),
        );
    }
    let dag = crate::scc::compute_scc_dag(g).expect("directed graph");
    (dag.scc_count() <= 1).then(|| g.arc_count() as u64 * g.node_count() as u64)
}

/// `m_tot`, falling back to one BFS per vertex when structure does not give it.
pub fn textbook_arc_count(g: &Graph) -> u64 {
    structural_textbook_arc_count(g).unwrap_or_else(|| g.vertices().map(|v| bfs(g, v).arcs_traversed).sum())
}

/// Improvement factor `m_vis / m_tot` and performance ratio `m_vis / (m n)`.
/// `None` marks an undefined ratio (zero denominator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub improvement_factor: Option<f64>,
    pub performance_ratio: Option<f64>,
}

pub fn metrics(visited_arcs: u64, textbook_arcs: u64, arcs: u64, n: u64) -> Metrics {
    let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
    Metrics {
        improvement_factor: ratio(visited_arcs, textbook_arcs),
        performance_ratio: ratio(visited_arcs, arcs.saturating_mul(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;

    #[test]
    fn cycle_total_is_m_times_n() {
        let g = load_edge_list("0 1\n1 2\n2 0\n".as_bytes(), true).unwrap();
        let (_, m_tot) = exact_closeness_all(&g);
        assert_eq!(m_tot, 9);
        assert_eq!(textbook_arc_count(&g), 9);
    }

    #[test]
    fn directed_path_total() {
        let g = load_edge_list("0 1\n1 2\n".as_bytes(), true).unwrap();
        let (table, m_tot) = exact_closeness_all(&g);
        assert_eq!(m_tot, 3);
        assert!(m_tot < (g.arc_count() * g.node_count()) as u64);
        assert_eq!(textbook_arc_count(&g), 3);
        // r = 3, f = 3: 4 / (2 * 3)
        assert!((table.closeness[0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(table.closeness[2], 0.0);
    }

    #[test]
    fn path_closeness_values() {
        let g = load_edge_list("0 1\n1 2\n".as_bytes(), false).unwrap();
        let (table, _) = exact_closeness_all(&g);
        let want = [2.0 / 3.0, 1.0, 2.0 / 3.0];
        for (got, want) in table.closeness.iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
        let top = top_k_textbook(&g, 1);
        assert_eq!(top.entries[0].vertex, 1);
        assert_eq!(top.entries[0].closeness, 1.0);
        assert_eq!(top_k_textbook(&g, 7).entries.len(), 3);
    }

    #[test]
    fn metrics_edge_cases() {
        let m = metrics(10, 10, 5, 4);
        assert_eq!(m.improvement_factor, Some(1.0));
        assert_eq!(m.performance_ratio, Some(0.5));
        let m = metrics(0, 0, 0, 0);
        assert_eq!(m.improvement_factor, None);
        assert_eq!(m.performance_ratio, None);
    }
}
