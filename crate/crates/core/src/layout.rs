//! Queue layouts: representation, verification, the fixed-order optimum
//! (maximum rainbow) and an exhaustive exact oracle for small graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Default vertex cap for [`exact_queue_number`].
pub const DEFAULT_ORACLE_LIMIT: usize = 9;

/// Environment variable overriding the oracle's vertex cap.
pub const ORACLE_LIMIT_ENV: &str = "QUEUELAY_ORACLE_LIMIT";

/// A vertex order plus an assignment of every edge to a queue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LayoutFile", into = "LayoutFile")]
pub struct QueueLayout {
    order: Vec<VertexId>,
    position: Vec<usize>,
    queue_of: Vec<usize>,
    queue_count: usize,
}

impl QueueLayout {
    /// `order` lists the vertices from first to last.
    pub fn new(order: Vec<VertexId>, queue_of: Vec<usize>, queue_count: usize) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::InvalidLayout("order is not a permutation of the vertices".into()));
            }
            position[v] = i;
        }
        if let Some(e) = queue_of.iter().position(|&q| q >= queue_count) {
            return Err(Error::InvalidLayout(format!(
                "edge {e} assigned to queue {} but k = {queue_count}",
                queue_of[e]
            )));
        }
        Ok(QueueLayout { order, position, queue_of, queue_count })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn queue_of(&self, e: EdgeId) -> usize {
        self.queue_of[e]
    }

    pub fn queues(&self) -> &[usize] {
        &self.queue_of
    }

    pub fn queue_count(&self) -> usize {
        self.queue_count
    }

    /// Renumbers queues so that only used ones remain, keeping their order.
    pub fn compacted(mut self) -> Self {
        let mut used = vec![false; self.queue_count];
        for &q in &self.queue_of {
            used[q] = true;
        }
        let mut remap = vec![0; self.queue_count];
        let mut next = 0;
        for q in 0..self.queue_count {
            if used[q] {
                remap[q] = next;
                next += 1;
            }
        }
        for q in &mut self.queue_of {
            *q = remap[*q];
        }
        self.queue_count = next;
        self
    }
}

/// On-disk layout format: `{"order": [...], "queues": [...], "k": k}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutFile {
    pub order: Vec<VertexId>,
    pub queues: Vec<usize>,
    pub k: usize,
}

impl TryFrom<LayoutFile> for QueueLayout {
    type Error = Error;

    fn try_from(f: LayoutFile) -> Result<Self> {
        QueueLayout::new(f.order, f.queues, f.k)
    }
}

impl From<QueueLayout> for LayoutFile {
    fn from(l: QueueLayout) -> Self {
        LayoutFile { order: l.order, queues: l.queue_of, k: l.queue_count }
    }
}

/// Positions of an edge's endpoints, smaller first.
fn span(position: &[usize], (u, v): (VertexId, VertexId)) -> (usize, usize) {
    let (a, b) = (position[u], position[v]);
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// True iff one edge strictly encloses the other under `position`.
/// Edges sharing an endpoint never nest.
pub fn nested(position: &[usize], e1: (VertexId, VertexId), e2: (VertexId, VertexId)) -> bool {
    let (a, b) = span(position, e1);
    let (c, d) = span(position, e2);
    (a < c && d < b) || (c < a && b < d)
}

/// Two edges of the same queue that nest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub queue: usize,
    pub first: EdgeId,
    pub second: EdgeId,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edges {} and {} nest in queue {}", self.first, self.second, self.queue)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    Malformed(String),
    Nested(Violation),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Malformed(s) => write!(f, "malformed layout: {s}"),
            VerifyError::Nested(v) => v.fmt(f),
        }
    }
}

impl From<VerifyError> for Error {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Malformed(s) => Error::InvalidLayout(s),
            VerifyError::Nested(v) => Error::InvalidLayout(v.to_string()),
        }
    }
}

/// Checks that no two edges of one queue nest. Reports the lexicographically
/// first violating edge pair.
pub fn verify_layout(g: &Graph, layout: &QueueLayout) -> Result<(), VerifyError> {
    if layout.order.len() != g.vertex_count() {
        return Err(VerifyError::Malformed(format!(
            "order has {} vertices, graph has {}",
            layout.order.len(),
            g.vertex_count()
        )));
    }
    if layout.queue_of.len() != g.edge_count() {
        return Err(VerifyError::Malformed(format!(
            "{} queue entries for {} edges",
            layout.queue_of.len(),
            g.edge_count()
        )));
    }
    let mut by_queue = vec![Vec::new(); layout.queue_count];
    for (e, &q) in layout.queue_of.iter().enumerate() {
        by_queue[q].push(e);
    }
    let mut first: Option<Violation> = None;
    for (q, edges) in by_queue.iter().enumerate() {
        'outer: for (i, &e1) in edges.iter().enumerate() {
            if first.is_some_and(|v| v.first < e1) {
                break;
            }
            for &e2 in &edges[i + 1..] {
                if nested(&layout.position, g.endpoints(e1), g.endpoints(e2)) {
                    let v = Violation { queue: q, first: e1, second: e2 };
                    if first.is_none_or(|f| (e1, e2) < (f.first, f.second)) {
                        first = Some(v);
                    }
                    break 'outer;
                }
            }
        }
    }
    match first {
        Some(v) => Err(VerifyError::Nested(v)),
        None => Ok(()),
    }
}

/// Result of [`min_queues_for_order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rainbow {
    /// Size of the largest set of pairwise nested edges.
    pub size: usize,
    /// One largest rainbow, outermost edge first.
    pub witness: Vec<EdgeId>,
    /// Length of the longest nesting chain ending at each edge (1-based).
    pub depth: Vec<usize>,
}

/// Minimum number of queues for a fixed vertex order, which equals the size
/// of the largest rainbow. `order` lists vertices first to last.
pub fn min_queues_for_order(g: &Graph, order: &[VertexId]) -> Rainbow {
    let mut position = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    rainbow_by_position(g, &position, None)
}

/// Largest rainbow among the edges selected by `filter` (all when `None`).
pub fn rainbow_by_position(g: &Graph, position: &[usize], filter: Option<&[bool]>) -> Rainbow {
    let m = g.edge_count();
    let spans: Vec<(usize, usize)> = (0..m).map(|e| span(position, g.endpoints(e))).collect();
    let mut idx: Vec<EdgeId> = (0..m).filter(|&e| filter.is_none_or(|f| f[e])).collect();
    // Outer edges first: left ascending, right descending.
    idx.sort_by_key(|&e| (spans[e].0, std::cmp::Reverse(spans[e].1), e));
    let mut depth = vec![0; m];
    let mut pred = vec![None; m];
    for (i, &e) in idx.iter().enumerate() {
        let (l, r) = spans[e];
        let mut best = (0, None);
        for &o in &idx[..i] {
            let (ol, or) = spans[o];
            if ol < l && r < or && (depth[o] > best.0 || (depth[o] == best.0 && best.1.is_some_and(|b| o < b))) {
                best = (depth[o], Some(o));
            }
        }
        depth[e] = best.0 + 1;
        pred[e] = best.1;
    }
    let inner = idx.iter().copied().max_by_key(|&e| (depth[e], std::cmp::Reverse(e)));
    let mut witness = Vec::new();
    let mut cur = inner;
    while let Some(e) = cur {
        witness.push(e);
        cur = pred[e];
    }
    witness.reverse();
    Rainbow { size: witness.len(), witness, depth }
}

/// Layout on a fixed order that puts each edge in the queue given by its
/// rainbow depth; uses exactly the optimum number of queues for that order.
pub fn rainbow_depth_layout(g: &Graph, order: &[VertexId]) -> Result<QueueLayout> {
    let rb = min_queues_for_order(g, order);
    let queues = rb.depth.iter().map(|&d| d.saturating_sub(1)).collect();
    let layout = QueueLayout::new(order.to_vec(), queues, rb.size)?;
    verify_layout(g, &layout).map_err(|v| Error::InvariantBreach(format!("rainbow-depth layout: {v}")))?;
    Ok(layout)
}

/// Reads the oracle cap from the environment, falling back to the default.
pub fn oracle_limit_from_env() -> usize {
    std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

/// Exact queue-number by search over all vertex orders.
///
/// Orders are explored lexicographically; a prefix is abandoned once the
/// edges it already fixes force a rainbow as large as the best found. The
/// returned layout is on the lexicographically smallest optimal order.
pub fn exact_queue_number(g: &Graph, limit: usize) -> Result<(usize, QueueLayout)> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let identity: Vec<VertexId> = (0..n).collect();
    let mut best = min_queues_for_order(g, &identity).size;
    let mut best_order = identity;
    let floor = usize::from(g.edge_count() > 0);
    if best > floor {
        let mut search = OrderSearch::new(g);
        search.run(&mut best, &mut best_order, floor);
    }
    let layout = rainbow_depth_layout(g, &best_order)?;
    debug_assert_eq!(layout.queue_count(), best);
    Ok((best, layout))
}

struct OrderSearch<'g> {
    g: &'g Graph,
    position: Vec<Option<usize>>,
    prefix: Vec<VertexId>,
    /// Completed edges as (left, right, height) where height is the longest
    /// chain of completed edges with this edge outermost.
    done: Vec<(usize, usize, usize)>,
    done_max: Vec<usize>,
}

impl<'g> OrderSearch<'g> {
    fn new(g: &'g Graph) -> Self {
        OrderSearch {
            g,
            position: vec![None; g.vertex_count()],
            prefix: Vec::with_capacity(g.vertex_count()),
            done: Vec::with_capacity(g.edge_count()),
            done_max: vec![0],
        }
    }

    fn lower_bound(&self) -> usize {
        let mut lb = *self.done_max.last().unwrap();
        // An edge with one placed endpoint will enclose every completed edge
        // that starts to its right.
        for &v in &self.prefix {
            let l = self.position[v].unwrap();
            if self.g.neighbors(v).any(|w| self.position[w].is_none()) {
                let inside = self.done.iter().filter(|&&(dl, _, _)| dl > l).map(|&(_, _, h)| h).max();
                lb = lb.max(1 + inside.unwrap_or(0));
            }
        }
        lb
    }

    fn run(&mut self, best: &mut usize, best_order: &mut Vec<VertexId>, floor: usize) -> bool {
        let n = self.g.vertex_count();
        if self.prefix.len() == n {
            let k = *self.done_max.last().unwrap();
            if k < *best {
                *best = k;
                best_order.clone_from(&self.prefix);
                return k <= floor;
            }
            return false;
        }
        for v in 0..n {
            if self.position[v].is_some() {
                continue;
            }
            let p = self.prefix.len();
            self.position[v] = Some(p);
            self.prefix.push(v);
            let before = self.done.len();
            let mut top = *self.done_max.last().unwrap();
            let lefts: Vec<usize> = self.g.neighbors(v).filter_map(|w| self.position[w]).filter(|&q| q != p).collect();
            for l in lefts {
                let inside = self.done[..before]
                    .iter()
                    .filter(|&&(dl, dr, _)| l < dl && dr < p)
                    .map(|&(_, _, h)| h)
                    .max()
                    .unwrap_or(0);
                self.done.push((l, p, inside + 1));
                top = top.max(inside + 1);
            }
            self.done_max.push(top);
            let finished = top < *best && self.lower_bound() < *best && self.run(best, best_order, floor);
            self.done_max.pop();
            self.done.truncate(before);
            self.prefix.pop();
            self.position[v] = None;
            if finished {
                return true;
            }
        }
        false
    }
}
