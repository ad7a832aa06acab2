//! The running k-th best closeness and the bounded heap that produces it.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::graph::VertexId;

/// A finished vertex: exact closeness plus the raw counters behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scored {
    pub vertex: VertexId,
    pub closeness: f64,
    pub farness: u64,
    pub reachable: u64,
}

impl Scored {
    /// Result ordering: higher closeness first, then smaller id.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        other
            .closeness
            .total_cmp(&self.closeness)
            .then(self.vertex.cmp(&other.vertex))
    }
}

// `Ord` means "better than" so the heap can hold `Reverse<Better>` as a min-heap.
#[derive(Debug, Clone, Copy)]
struct Better(Scored);

impl PartialEq for Better {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Better {}
impl PartialOrd for Better {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Better {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.rank_cmp(&self.0)
    }
}

/// Keeps the `k` best scored vertices; its worst member is `x_k`.
#[derive(Debug, Clone)]
pub struct TopKHeap {
    k: usize,
    heap: BinaryHeap<Reverse<Better>>,
}

impl TopKHeap {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "k must be at least 1");
        TopKHeap {
            k,
            heap: BinaryHeap::with_capacity(k + 1),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Offers a candidate. Returns whether it was kept.
    pub fn push(&mut self, s: Scored) -> bool {
        let cand = Better(s);
        if self.heap.len() < self.k {
            self.heap.push(Reverse(cand));
            return true;
        }
        let worst = &self.heap.peek().expect("non-empty").0;
        if cand > *worst {
            self.heap.pop();
            self.heap.push(Reverse(cand));
            true
        } else {
            false
        }
    }

    /// `x_k`: the k-th best closeness, or 0 while fewer than k values are held.
    pub fn threshold(&self) -> f64 {
        if self.heap.len() < self.k {
            0.0
        } else {
            self.heap.peek().map_or(0.0, |w| w.0 .0.closeness)
        }
    }

    /// Best first.
    pub fn into_sorted(self) -> Vec<Scored> {
        let mut v: Vec<Scored> = self.heap.into_iter().map(|r| r.0 .0).collect();
        v.sort_by(Scored::rank_cmp);
        v
    }
}

/// Anything a visit can poll for the current cut threshold.
pub trait ThresholdSource {
    fn current(&self) -> f64;
}

impl ThresholdSource for f64 {
    fn current(&self) -> f64 {
        *self
    }
}

/// Lock-free readable `x_k`, shared by all workers.
///
/// Non-negative `f64`s order the same way as their bit patterns, so the
/// stored value can only rise through `fetch_max`.
#[derive(Debug, Default)]
pub struct SharedThreshold(AtomicU64);

impl SharedThreshold {
    pub fn new() -> Self {
        SharedThreshold(AtomicU64::new(0f64.to_bits()))
    }

    /// Raises the threshold to `value` and returns the previous value.
    pub fn raise(&self, value: f64) -> f64 {
        debug_assert!(value >= 0.0);
        f64::from_bits(self.0.fetch_max(value.to_bits(), AtomicOrdering::AcqRel))
    }
}

impl ThresholdSource for SharedThreshold {
    fn current(&self) -> f64 {
        f64::from_bits(self.0.load(AtomicOrdering::Acquire))
    }
}
