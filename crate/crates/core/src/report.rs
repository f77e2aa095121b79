//! Summaries of pipeline runs.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddedGraph;
use crate::genus::GenusLayout;
use crate::layout::{min_queues_for_order, verify_layout};
use crate::planar::PlanarLayout;
use crate::QueueLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Planar,
    Genus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    /// The Δ used for the bound (maximum degree, at least 2, unless fixed).
    pub delta: usize,
    pub genus: usize,
    pub pipeline: Pipeline,
    pub queues: usize,
    pub bound: usize,
    /// Largest rainbow under the produced order.
    pub rainbow: usize,
    /// Result of re-running the verifier on the produced layout.
    pub verified: bool,
    pub elapsed_ms: f64,
}

impl RunReport {
    fn new(
        emb: &EmbeddedGraph,
        pipeline: Pipeline,
        layout: &QueueLayout,
        delta: usize,
        genus: usize,
        bound: usize,
        elapsed: Duration,
    ) -> Self {
        let g = emb.graph();
        RunReport {
            n: g.vertex_count(),
            m: g.edge_count(),
            delta,
            genus,
            pipeline,
            queues: layout.queue_count(),
            bound,
            rainbow: min_queues_for_order(g, layout.order()).size,
            verified: verify_layout(g, layout).is_ok(),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        }
    }

    pub fn planar(emb: &EmbeddedGraph, result: &PlanarLayout, elapsed: Duration) -> Self {
        Self::new(emb, Pipeline::Planar, &result.layout, result.delta, 0, result.bound(), elapsed)
    }

    pub fn genus(emb: &EmbeddedGraph, result: &GenusLayout, elapsed: Duration) -> Self {
        Self::new(emb, Pipeline::Genus, &result.layout, result.delta, result.genus, result.bound(), elapsed)
    }

    pub fn within_bound(&self) -> bool {
        self.verified && self.queues <= self.bound
    }
}

impl std::fmt::Display for RunReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} n={} m={} delta={} genus={} queues={} bound={} rainbow={} verified={} time={:.1}ms",
            self.pipeline,
            self.n,
            self.m,
            self.delta,
            self.genus,
            self.queues,
            self.bound,
            self.rainbow,
            self.verified,
            self.elapsed_ms
        )
    }
}
