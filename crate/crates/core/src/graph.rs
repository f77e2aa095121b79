//! Simple undirected graphs with stable edge identifiers.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A simple graph. Edge identifiers are positions in the edge list and never
/// change once the graph is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range
    /// endpoints.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} = ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {id} is a loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} = ({u}, {v}) is parallel to an earlier edge"
                )));
            }
            incident[u].push(id);
            incident[v].push(id);
        }
        Ok(Graph { n, edges, incident })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    /// Edges incident to `v`, in ascending id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident[v].iter().map(move |&e| self.other(e, v))
    }

    /// Looks up the edge joining `u` and `v`.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (small, other) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.incident[small]
            .iter()
            .copied()
            .find(|&e| self.other(e, small) == other)
    }

    /// Connected components, each sorted ascending, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Induced subgraph on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[VertexId]) -> InducedSubgraph {
        let mut local = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = Some(i);
        }
        let mut edges = Vec::new();
        let mut edge_to_parent = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (local[u], local[v]) {
                edges.push((a, b));
                edge_to_parent.push(e);
            }
        }
        let graph = Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph");
        InducedSubgraph {
            graph,
            vertex_to_parent: vertices.to_vec(),
            vertex_to_local: local,
            edge_to_parent,
        }
    }
}

/// A subgraph with the maps back to its parent graph.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertex_to_parent: Vec<VertexId>,
    pub vertex_to_local: Vec<Option<VertexId>>,
    pub edge_to_parent: Vec<EdgeId>,
}
