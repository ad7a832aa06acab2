//! JSON and TSV run reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use topk_closeness::{Graph, TopKResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub nodes: usize,
    /// Stored arcs; the `m` of the performance ratio.
    pub arcs: usize,
    pub edges: usize,
    pub directed: bool,
}

impl InputInfo {
    pub fn new(path: &str, g: &Graph) -> Self {
        InputInfo {
            path: path.to_owned(),
            nodes: g.node_count(),
            arcs: g.arc_count(),
            edges: g.edge_count(),
            directed: g.is_directed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub rank: usize,
    pub vertex: u32,
    pub label: String,
    pub closeness: f64,
    pub farness: u64,
    pub reachable: u64,
}

pub fn entries(result: &TopKResult) -> Vec<ReportEntry> {
    result
        .entries
        .iter()
        .map(|e| ReportEntry {
            rank: e.rank,
            vertex: e.vertex,
            label: e.label.clone(),
            closeness: e.closeness,
            farness: e.farness,
            reachable: e.reachable,
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    /// m_vis
    pub visited_arcs: Option<u64>,
    /// m_tot
    pub textbook_arcs: Option<u64>,
    pub improvement_factor: Option<f64>,
    pub performance_ratio: Option<f64>,
    pub cut_vertices: Option<usize>,
    pub completed_vertices: Option<usize>,
    pub preprocessing_ms: Option<f64>,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Engine,
    Oracle,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: Mode,
    pub input: InputInfo,
    pub k: usize,
    pub workers: usize,
    pub results: Vec<ReportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_results: Option<Vec<ReportEntry>>,
    pub stats: ReportStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Rows `rank label closeness farness reachable`, tab separated, then
    /// `#`-prefixed statistics.
    pub fn to_tsv(&self, with_stats: bool) -> String {
        let mut out = String::new();
        for e in &self.results {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                e.rank,
                e.label,
                format_closeness(e.closeness),
                e.farness,
                e.reachable
            )
            .unwrap();
        }
        if let Some(v) = self.verdict {
            writeln!(out, "# verdict\t{}", if v == Verdict::Match { "match" } else { "mismatch" }).unwrap();
        }
        if with_stats || self.mode == Mode::Compare {
            let s = &self.stats;
            let mut line = |key: &str, value: Option<String>| {
                if let Some(v) = value {
                    writeln!(out, "# {key}\t{v}").unwrap();
                }
            };
            line("visited_arcs", s.visited_arcs.map(|v| v.to_string()));
            line("textbook_arcs", s.textbook_arcs.map(|v| v.to_string()));
            line("improvement_factor", s.improvement_factor.map(|v| v.to_string()));
            line("performance_ratio", s.performance_ratio.map(|v| v.to_string()));
            line("total_ms", Some(format!("{:.3}", s.total_ms)));
        }
        out
    }
}

/// 12 significant digits, trailing zeros dropped, at least one decimal.
pub fn format_closeness(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.1}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(1) as usize;
    let mut s = format!("{x:.decimals$}");
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s
}
