//! Pruned BFS visits and the degree-ordered top-k driver.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::bounds::{closeness, closeness_upper_bound, farness_lower_bound, inverse_closeness_lower_bound};
use crate::graph::{Graph, VertexId, UNREACHED};
use crate::scc::{reachability_for, ReachabilityBounds};
use crate::threshold::{Scored, SharedThreshold, ThresholdSource, TopKHeap};

/// Reusable per-worker scratch for [`bfs_cut`].
#[derive(Debug, Clone)]
pub struct VisitState {
    dist: Vec<u32>,
    queue: Vec<VertexId>,
}

impl VisitState {
    pub fn new(n: usize) -> Self {
        VisitState {
            dist: vec![UNREACHED; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn reset(&mut self) {
        for &u in &self.queue {
            self.dist[u as usize] = UNREACHED;
        }
        self.queue.clear();
    }
}

/// Snapshot taken each time a visit finishes a level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRecord {
    pub vertex: VertexId,
    /// The level `d` just completed.
    pub level: u32,
    pub farness: u64,
    pub ball: u64,
    pub gamma_next: u64,
    /// Threshold read at this boundary.
    pub threshold: f64,
    /// Closeness upper bound when r(v) is exact, otherwise the lower bound on 1/c(v).
    pub bound: f64,
    pub exact_reach: bool,
    pub cut: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Visit {
    Completed(Scored),
    /// The bound reached the threshold after finishing `level`.
    Cut { level: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisitOutcome {
    pub visit: Visit,
    pub arcs: u64,
}

/// BFS from `v` that gives up as soon as its closeness bound falls to the threshold.
///
/// The threshold is re-read at every level boundary. Vertices with an exact
/// reachable count use the closeness upper bound; the rest use the interval
/// bound on `1/c(v)` and only cut once the threshold is positive.
pub fn bfs_cut<T: ThresholdSource + ?Sized>(
    g: &Graph,
    v: VertexId,
    threshold: &T,
    bounds: &ReachabilityBounds,
    state: &mut VisitState,
    mut trace: Option<&mut Vec<BoundaryRecord>>,
) -> VisitOutcome {
    let n = g.node_count() as u64;
    let undirected = !g.is_directed();
    let exact_r = bounds.reachable(v);
    let (alpha, omega) = (bounds.alpha(v), bounds.omega(v));

    state.dist[v as usize] = 0;
    state.queue.push(v);

    let mut head = 0usize;
    let mut level = 0u32;
    let mut farness = 0u64;
    let mut ball = 0u64;
    let mut gamma_next = 0u64;
    let mut arcs = 0u64;

    while head < state.queue.len() {
        let u = state.queue[head];
        head += 1;
        let du = state.dist[u as usize];

        if du > level {
            let x = threshold.current();
            let (bound, cut) = match exact_r {
                Some(r) => {
                    let lambda = farness_lower_bound(level, farness, ball, gamma_next, r);
                    let c_hat = closeness_upper_bound(lambda, r, n);
                    (c_hat, c_hat <= x)
                }
                None => {
                    let inv = inverse_closeness_lower_bound(level, farness, ball, gamma_next, alpha, omega, n);
                    (inv, x > 0.0 && inv > 0.0 && inv >= 1.0 / x)
                }
            };
            if let Some(t) = trace.as_deref_mut() {
                t.push(BoundaryRecord {
                    vertex: v,
                    level,
                    farness,
                    ball,
                    gamma_next,
                    threshold: x,
                    bound,
                    exact_reach: exact_r.is_some(),
                    cut,
                });
            }
            if cut {
                state.reset();
                return VisitOutcome {
                    visit: Visit::Cut { level },
                    arcs,
                };
            }
            level = du;
            gamma_next = 0;
        }

        farness += du as u64;
        ball += 1;
        let deg = g.out_degree(u) as u64;
        // Undirected: one edge of every non-source vertex leads back a level.
        gamma_next += if undirected && du >= 1 { deg.saturating_sub(1) } else { deg };
        arcs += deg;
        for &w in g.neighbors(u) {
            let slot = &mut state.dist[w as usize];
            if *slot == UNREACHED {
                *slot = du + 1;
                state.queue.push(w);
            }
        }
    }

    let reachable = state.queue.len() as u64;
    state.reset();
    VisitOutcome {
        visit: Visit::Completed(Scored {
            vertex: v,
            closeness: closeness(farness, reachable, n),
            farness,
            reachable,
        }),
        arcs,
    }
}

/// Processing order: decreasing out-degree, ties by ascending id.
pub fn degree_order(g: &Graph) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.out_degree(v)), v));
    order
}

/// How the engine dealt with one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOutcome {
    /// Closeness 0 assigned without a visit (`r(v) = 1` or `n <= 1`).
    Skipped,
    Completed,
    Cut { level: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedVertex {
    pub rank: usize,
    pub vertex: VertexId,
    pub label: String,
    pub closeness: f64,
    pub farness: u64,
    pub reachable: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopKResult {
    pub k: usize,
    pub entries: Vec<RankedVertex>,
}

impl TopKResult {
    /// Ranks `scored` (any order) and keeps the best `k`.
    pub fn from_scored(g: &Graph, k: usize, mut scored: Vec<Scored>) -> Self {
        scored.sort_by(Scored::rank_cmp);
        scored.truncate(k);
        let entries = scored
            .into_iter()
            .enumerate()
            .map(|(i, s)| RankedVertex {
                rank: i + 1,
                vertex: s.vertex,
                label: g.label(s.vertex).to_owned(),
                closeness: s.closeness,
                farness: s.farness,
                reachable: s.reachable,
            })
            .collect();
        TopKResult { k, entries }
    }

    pub fn closeness_values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.closeness).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    /// Arcs scanned by the pruned visits (`m_vis`).
    pub visited_arcs: u64,
    /// Arcs a full BFS from every vertex would scan (`m_tot`), when computed.
    pub textbook_arcs: Option<u64>,
    pub outcomes: Vec<VertexOutcome>,
    pub preprocessing: Duration,
    pub total: Duration,
    pub workers: usize,
}

impl RunStats {
    pub fn cut_count(&self) -> usize {
        self.outcomes.iter().filter(|o| matches!(o, VertexOutcome::Cut { .. })).count()
    }

    pub fn completed_count(&self) -> usize {
        self.outcomes.iter().filter(|o| matches!(o, VertexOutcome::Completed)).count()
    }
}

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    pub workers: usize,
    /// Record every boundary evaluation and threshold change.
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopKRun {
    pub result: TopKResult,
    pub stats: RunStats,
    pub final_threshold: f64,
    /// Present only when tracing.
    pub boundaries: Vec<BoundaryRecord>,
    /// Values `x_k` took, in update order. Present only when tracing.
    pub threshold_history: Vec<f64>,
}

pub fn top_k(g: &Graph, k: usize, workers: usize) -> TopKRun {
    top_k_with(
        g,
        k,
        &EngineOptions {
            workers,
            trace: false,
        },
    )
}

struct Shared {
    heap: TopKHeap,
    history: Vec<f64>,
}

#[derive(Default)]
struct WorkerOutput {
    arcs: u64,
    outcomes: Vec<(VertexId, VertexOutcome)>,
    boundaries: Vec<BoundaryRecord>,
}

pub fn top_k_with(g: &Graph, k: usize, opts: &EngineOptions) -> TopKRun {
    assert!(k >= 1, "k must be at least 1");
    let start = Instant::now();
    let n = g.node_count();
    let bounds = reachability_for(g);
    let preprocessing = start.elapsed();

    let order = degree_order(g);
    let cursor = AtomicUsize::new(0);
    let threshold = SharedThreshold::new();
    let shared = Mutex::new(Shared {
        heap: TopKHeap::new(k),
        history: Vec::new(),
    });
    let workers = opts.workers.max(1);

    let publish = |s: Scored| {
        let mut guard = shared.lock().expect("threshold lock poisoned");
        if guard.heap.push(s) {
            let next = guard.heap.threshold();
            let prev = threshold.raise(next);
            assert!(next >= prev, "x_k decreased from {prev} to {next}");
            if opts.trace && next != prev {
                guard.history.push(next);
            }
        }
    };

    let work = || {
        let mut out = WorkerOutput::default();
        let mut state = VisitState::new(n);
        loop {
            let i = cursor.fetch_add(1, Ordering::Relaxed);
            let Some(&v) = order.get(i) else { break };
            if n <= 1 || bounds.alpha(v) <= 1 {
                publish(Scored {
                    vertex: v,
                    closeness: 0.0,
                    farness: 0,
                    reachable: 1,
                });
                out.outcomes.push((v, VertexOutcome::Skipped));
                continue;
            }
            let trace = opts.trace.then_some(&mut out.boundaries);
            let res = bfs_cut(g, v, &threshold, &bounds, &mut state, trace);
            out.arcs += res.arcs;
            match res.visit {
                Visit::Completed(s) => {
                    publish(s);
                    out.outcomes.push((v, VertexOutcome::Completed));
                }
                Visit::Cut { level } => out.outcomes.push((v, VertexOutcome::Cut { level })),
            }
        }
        out
    };

    let outputs: Vec<WorkerOutput> = if workers == 1 {
        vec![work()]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|_| s.spawn(work)).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    let mut outcomes = vec![VertexOutcome::Skipped; n];
    let mut visited_arcs = 0u64;
    let mut boundaries = Vec::new();
    for out in outputs {
        visited_arcs += out.arcs;
        for (v, o) in out.outcomes {
            outcomes[v as usize] = o;
        }
        boundaries.extend(out.boundaries);
    }

    let shared = shared.into_inner().expect("threshold lock poisoned");
    let final_threshold = shared.heap.threshold();
    let result = TopKResult::from_scored(g, k, shared.heap.into_sorted());
    TopKRun {
        result,
        stats: RunStats {
            visited_arcs,
            textbook_arcs: None,
            outcomes,
            preprocessing,
            total: start.elapsed(),
            workers,
        },
        final_threshold,
        boundaries,
        threshold_history: shared.history,
    }
}
