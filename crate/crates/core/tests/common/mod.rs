#![allow(clippy::needless_range_loop)]

#![allow(dead_code)]

use topk_closeness::{disjoint_union, generate, Graph, Model};

pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// Seeded random instances plus structured specials.
///
/// 4 sizes x 3 densities x 2 orientations x 9 seeds = 216 gnp graphs.
pub fn random_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for &directed in &[true, false] {
        for &n in &[20usize, 50, 100, 200] {
            for &p in &[0.01, 0.05, 0.2] {
                for seed in 0..9u64 {
                    let graph = generate(Model::Gnp { n, p }, directed, 1000 * n as u64 + seed).unwrap();
                    out.push(Instance {
                        name: format!("gnp(n={n},p={p},dir={directed},seed={seed})"),
                        graph,
                    });
                }
            }
        }
    }
    out
}

pub fn special_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for &directed in &[true, false] {
        for (name, model) in [
            ("path", Model::Path { n: 30 }),
            ("star", Model::Star { n: 40 }),
            ("cycle", Model::Cycle { n: 25 }),
        ] {
            out.push(Instance {
                name: format!("{name}(dir={directed})"),
                graph: generate(model, directed, 0).unwrap(),
            });
        }
        let a = generate(Model::Cycle { n: 12 }, directed, 0).unwrap();
        let b = generate(Model::Gnp { n: 40, p: 0.08 }, directed, 5).unwrap();
        let c = generate(Model::Star { n: 9 }, directed, 0).unwrap();
        let ab = disjoint_union(&a, &b).unwrap();
        out.push(Instance {
            name: format!("union(dir={directed})"),
            graph: disjoint_union(&ab, &c).unwrap(),
        });
    }
    out
}

pub fn full_suite() -> Vec<Instance> {
    let mut s = random_suite();
    s.extend(special_suite());
    s
}

/// Sorted descending.
pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn multisets_match(a: &[f64], b: &[f64], rel: f64) -> bool {
    let (a, b) = (sorted_desc(a.to_vec()), sorted_desc(b.to_vec()));
    a.len() == b.len()
        && a.iter().zip(&b).all(|(x, y)| {
            let scale = x.abs().max(y.abs());
            (x - y).abs() <= rel * scale || x == y
        })
}

/// Boolean reachability closure by repeated squaring of (I + A).
pub fn reachability_closure(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for v in 0..n {
        m[v][v] = true;
    }
    for (u, w) in g.arcs() {
        m[u as usize][w as usize] = true;
    }
    let mut span = 1usize;
    while span < n {
        let mut next = m.clone();
        for i in 0..n {
            for k in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        m = next;
        span *= 2;
    }
    m
}
