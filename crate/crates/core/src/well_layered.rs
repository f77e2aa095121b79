//! Layer-group partitions of well-layered planar graphs.
//!
//! A plane graph is well-layered for a BFS tree when every non-tree edge is a
//! level edge joining two tree leaves of degree two. Each non-tree edge at
//! height `ℓ` is given weight `Δ^ℓ`; the non-tree edges' duals form a
//! spanning tree of the dual graph, and weighted distances in that tree from
//! the outer face drive the group index `g(v) = ⌊m(v) / Δ^ℓ(v)⌋`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bfs::{BfsStructure, EdgeClass, LayerOrder};
use crate::embedding::{EmbeddedGraph, FaceTrace};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::layout::{verify_layout, QueueLayout};

/// Why a graph is not well-layered for a given tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotWellLayered {
    NonTreeNotLevel { edge: EdgeId },
    EndpointNotLeaf { edge: EdgeId, vertex: VertexId },
    EndpointDegree { edge: EdgeId, vertex: VertexId, degree: usize },
    TooManyChildren { vertex: VertexId, children: usize, delta: usize },
}

impl fmt::Display for NotWellLayered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NotWellLayered::NonTreeNotLevel { edge } => write!(f, "non-tree edge {edge} is not a level edge"),
            NotWellLayered::EndpointNotLeaf { edge, vertex } => {
                write!(f, "non-tree edge {edge}: endpoint {vertex} is not a tree leaf")
            }
            NotWellLayered::EndpointDegree { edge, vertex, degree } => {
                write!(f, "non-tree edge {edge}: endpoint {vertex} has degree {degree}, expected 2")
            }
            NotWellLayered::TooManyChildren { vertex, children, delta } => {
                write!(f, "vertex {vertex} has {children} tree children, more than {delta}")
            }
        }
    }
}

/// Checks the well-layered conditions and the child bound `delta`.
pub fn check_well_layered(g: &Graph, bfs: &BfsStructure, delta: usize) -> Result<(), NotWellLayered> {
    for e in 0..g.edge_count() {
        if bfs.tree_edge[e] {
            continue;
        }
        if bfs.classify(g, e) != EdgeClass::Level {
            return Err(NotWellLayered::NonTreeNotLevel { edge: e });
        }
        let (u, v) = g.endpoints(e);
        for x in [u, v] {
            if !bfs.is_leaf(x) {
                return Err(NotWellLayered::EndpointNotLeaf { edge: e, vertex: x });
            }
            if g.degree(x) != 2 {
                return Err(NotWellLayered::EndpointDegree { edge: e, vertex: x, degree: g.degree(x) });
            }
        }
    }
    for v in 0..g.vertex_count() {
        let children = bfs.children[v].len();
        if children > delta {
            return Err(NotWellLayered::TooManyChildren { vertex: v, children, delta });
        }
    }
    Ok(())
}

/// Dual edge of a non-tree edge, weighted by its multiplicity `Δ^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotreeEdge {
    pub edge: EdgeId,
    pub faces: (usize, usize),
    pub weight: BigUint,
}

#[derive(Debug, Clone)]
pub struct WeightedCotree {
    pub faces: FaceTrace,
    pub root_face: usize,
    pub edges: Vec<CotreeEdge>,
    /// Weighted distance of every face from the outer face.
    pub distance: Vec<BigUint>,
    /// `Δ^0 ..= Δ^t`.
    pub powers: Vec<BigUint>,
}

/// Outer face of an orientable embedding: the face entered by the root's
/// first child edge.
pub fn outer_face(emb: &EmbeddedGraph, faces: &FaceTrace, bfs: &BfsStructure) -> usize {
    match bfs.root_start {
        Some(e) => faces.face_of_dart(emb.dart(e, bfs.root)),
        None => 0,
    }
}

fn require_plane(emb: &EmbeddedGraph) -> Result<FaceTrace> {
    if !emb.is_all_positive() {
        return Err(Error::InvalidEmbedding("orientable rotation system (all signatures +1) required".into()));
    }
    let faces = emb.face_trace()?;
    if faces.genus != 0 {
        return Err(Error::NotPlanar { genus: faces.genus });
    }
    Ok(faces)
}

pub fn powers_of(delta: usize, t: usize) -> Vec<BigUint> {
    let base = BigUint::from(delta);
    let mut out = Vec::with_capacity(t + 1);
    out.push(BigUint::from(1u32));
    for i in 0..t {
        let next = &out[i] * &base;
        out.push(next);
    }
    out
}

/// Weighted co-tree of a well-layered plane graph, rooted at the outer face.
pub fn build_cotree(emb: &EmbeddedGraph, bfs: &BfsStructure, delta: usize) -> Result<WeightedCotree> {
    let g = emb.graph();
    let faces = require_plane(emb)?;
    let powers = powers_of(delta, bfs.depth());
    let root_face = outer_face(emb, &faces, bfs);
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); faces.face_count()];
    for e in (0..g.edge_count()).filter(|&e| !bfs.tree_edge[e]) {
        let (f1, f2) = faces.faces_of_edge(e);
        if f1 == f2 {
            return Err(Error::InvariantBreach(format!("non-tree edge {e} has the same face on both sides")));
        }
        let (u, _) = g.endpoints(e);
        let weight = powers[bfs.ell(u)].clone();
        adjacency[f1].push((f2, edges.len()));
        adjacency[f2].push((f1, edges.len()));
        edges.push(CotreeEdge { edge: e, faces: (f1, f2), weight });
    }
    if edges.len() + 1 != faces.face_count() {
        return Err(Error::InvariantBreach(format!(
            "co-tree has {} edges for {} faces",
            edges.len(),
            faces.face_count()
        )));
    }
    let mut distance: Vec<Option<BigUint>> = vec![None; faces.face_count()];
    distance[root_face] = Some(BigUint::zero());
    let mut queue = VecDeque::from([root_face]);
    while let Some(f) = queue.pop_front() {
        let here = distance[f].clone().unwrap();
        for &(h, ce) in &adjacency[f] {
            if distance[h].is_none() {
                distance[h] = Some(&here + &edges[ce].weight);
                queue.push_back(h);
            }
        }
    }
    let distance = distance
        .into_iter()
        .enumerate()
        .map(|(f, d)| d.ok_or_else(|| Error::InvariantBreach(format!("co-tree does not reach face {f}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedCotree { faces, root_face, edges, distance, powers })
}

/// One group `V_{i,a}` in layer order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub index: BigUint,
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct LayerGroupPartition {
    pub m_of: Vec<BigUint>,
    pub group_of: Vec<BigUint>,
    /// Per layer, groups by ascending index.
    pub groups: Vec<Vec<Group>>,
    /// Rank of each vertex in its layer's order (groups ascending, each
    /// group in layer order).
    pub rank: Vec<usize>,
}

impl LayerGroupPartition {
    /// Vertex order `V_0, V_1, ...` with each layer's groups ascending.
    pub fn vertex_order(&self) -> Vec<VertexId> {
        self.groups.iter().flatten().flat_map(|grp| grp.vertices.iter().copied()).collect()
    }
}

/// Computes `m(v)`, `g(v)` and the groups `V_{i,a}`.
pub fn layer_groups(
    emb: &EmbeddedGraph,
    cotree: &WeightedCotree,
    bfs: &BfsStructure,
    order: &LayerOrder,
    delta: usize,
) -> Result<LayerGroupPartition> {
    let n = emb.graph().vertex_count();
    let _ = delta;
    let vertex_faces = cotree.faces.vertex_faces(n);
    let mut m_of: Vec<BigUint> = vec![BigUint::zero(); n];
    for &v in bfs.preorder().iter().rev() {
        m_of[v] = if bfs.is_leaf(v) {
            vertex_faces[v]
                .iter()
                .map(|&f| &cotree.distance[f])
                .min()
                .cloned()
                .ok_or_else(|| Error::InvariantBreach(format!("vertex {v} lies on no face")))?
        } else {
            bfs.children[v].iter().map(|&c| &m_of[c]).min().cloned().unwrap()
        };
    }
    for v in 0..n {
        if let Some(p) = bfs.parent[v] {
            if m_of[p] > m_of[v] {
                return Err(Error::InvariantBreach(format!("m({p}) exceeds m of its child {v}")));
            }
        }
    }
    let group_of: Vec<BigUint> = (0..n).map(|v| &m_of[v] / &cotree.powers[bfs.ell(v)]).collect();
    let mut groups = Vec::with_capacity(order.layers.len());
    let mut rank = vec![0; n];
    for layer in &order.layers {
        let mut by_index: BTreeMap<&BigUint, Vec<VertexId>> = BTreeMap::new();
        for &v in layer {
            by_index.entry(&group_of[v]).or_default().push(v);
        }
        let list: Vec<Group> =
            by_index.into_iter().map(|(index, vertices)| Group { index: index.clone(), vertices }).collect();
        for (r, &v) in list.iter().flat_map(|grp| grp.vertices.iter()).enumerate() {
            rank[v] = r;
        }
        groups.push(list);
    }
    Ok(LayerGroupPartition { m_of, group_of, groups, rank })
}

/// A violated clause of the layer-group properties, with witness edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma6Violation {
    pub clause: char,
    pub edges: Vec<EdgeId>,
    pub detail: String,
}

impl fmt::Display for Lemma6Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause ({}) violated by edges {:?}: {}", self.clause, self.edges, self.detail)
    }
}

/// `b - Δa` for groups `a` (upper layer) and `b` (lower layer).
pub fn offset(a: &BigUint, b: &BigUint, delta: usize) -> BigInt {
    BigInt::from(b.clone()) - BigInt::from(a.clone()) * BigInt::from(delta)
}

/// Whether two edges, given as position pairs, cross or nest. Edges sharing
/// an endpoint do neither.
pub(crate) fn cross_or_nest(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return false;
    }
    let a_has = |x: usize| a0 < x && x < a1;
    a_has(b0) || a_has(b1) || (b0 < a0 && a1 < b1)
}

/// Whether two edges nest, given as position pairs.
pub(crate) fn nest(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    (a0 < b0 && b1 < a1) || (b0 < a0 && a1 < b1)
}

/// Checks all four clauses of the layer-group properties.
pub fn verify_lemma6(
    g: &Graph,
    bfs: &BfsStructure,
    part: &LayerGroupPartition,
    delta: usize,
) -> Result<(), Lemma6Violation> {
    // (a)
    for e in (0..g.edge_count()).filter(|&e| !bfs.tree_edge[e]) {
        let (u, v) = g.endpoints(e);
        if part.group_of[u] != part.group_of[v] || bfs.layer_of[u] != bfs.layer_of[v] {
            return Err(Lemma6Violation {
                clause: 'a',
                edges: vec![e],
                detail: format!("endpoints {u} and {v} lie in different groups"),
            });
        }
    }
    // (b)
    let hi = BigInt::from(2 * delta);
    for e in (0..g.edge_count()).filter(|&e| bfs.tree_edge[e]) {
        let (p, c) = upper_lower(g, bfs, e);
        let off = offset(&part.group_of[p], &part.group_of[c], delta);
        if off < BigInt::zero() || off >= hi {
            return Err(Lemma6Violation {
                clause: 'b',
                edges: vec![e],
                detail: format!("tree edge offset b - Δa = {off} outside 0..{}", 2 * delta - 1),
            });
        }
    }
    // (c): edges inside one group
    let mut inside: BTreeMap<(usize, &BigUint), Vec<EdgeId>> = BTreeMap::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        if bfs.layer_of[u] == bfs.layer_of[v] && part.group_of[u] == part.group_of[v] {
            inside.entry((bfs.layer_of[u], &part.group_of[u])).or_default().push(e);
        }
    }
    for edges in inside.values() {
        let pos = |e: EdgeId| {
            let (u, v) = g.endpoints(e);
            (part.rank[u], part.rank[v])
        };
        if let Some((e1, e2)) = first_pair(edges, |a, b| cross_or_nest(pos(a), pos(b))) {
            return Err(Lemma6Violation {
                clause: 'c',
                edges: vec![e1, e2],
                detail: "edges inside one group cross or nest".into(),
            });
        }
    }
    // (d): binding edges between a group and a group on the next layer
    let mut cells: BTreeMap<(usize, &BigUint, &BigUint), Vec<EdgeId>> = BTreeMap::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        if bfs.layer_of[u] != bfs.layer_of[v] {
            let (p, c) = upper_lower(g, bfs, e);
            cells.entry((bfs.layer_of[p], &part.group_of[p], &part.group_of[c])).or_default().push(e);
        }
    }
    for edges in cells.values() {
        let pos = |e: EdgeId| {
            let (p, c) = upper_lower(g, bfs, e);
            (part.rank[p], g.vertex_count() + part.rank[c])
        };
        if let Some((e1, e2)) = first_pair(edges, |a, b| nest(pos(a), pos(b))) {
            return Err(Lemma6Violation {
                clause: 'd',
                edges: vec![e1, e2],
                detail: "binding edges between two groups nest".into(),
            });
        }
    }
    Ok(())
}

/// Endpoints of a binding edge as (upper-layer, lower-layer).
pub(crate) fn upper_lower(g: &Graph, bfs: &BfsStructure, e: EdgeId) -> (VertexId, VertexId) {
    let (u, v) = g.endpoints(e);
    if bfs.layer_of[u] < bfs.layer_of[v] {
        (u, v)
    } else {
        (v, u)
    }
}

pub(crate) fn first_pair(edges: &[EdgeId], mut bad: impl FnMut(EdgeId, EdgeId) -> bool) -> Option<(EdgeId, EdgeId)> {
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            if bad(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// The `2Δ + 1`-queue layout of a well-layered graph: level edges share one
/// queue, a tree edge from group `a` to group `b` goes to queue `b - Δa`.
pub fn well_layered_layout(
    g: &Graph,
    bfs: &BfsStructure,
    part: &LayerGroupPartition,
    delta: usize,
) -> Result<QueueLayout> {
    let order = part.vertex_order();
    let mut queues = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let q = match bfs.classify(g, e) {
            EdgeClass::Level => 0,
            EdgeClass::BindingTree => {
                let (p, c) = upper_lower(g, bfs, e);
                let off = offset(&part.group_of[p], &part.group_of[c], delta);
                let off = off
                    .to_usize()
                    .filter(|&o| o < 2 * delta)
                    .ok_or_else(|| Error::InvariantBreach(format!("tree edge {e} offset {off} out of range")))?;
                1 + off
            }
            EdgeClass::BindingNonTree => {
                return Err(Error::InvalidParameter(format!("edge {e} is a non-tree binding edge")))
            }
        };
        queues.push(q);
    }
    let layout = QueueLayout::new(order, queues, 2 * delta + 1)?.compacted();
    verify_layout(g, &layout).map_err(|v| Error::InvariantBreach(format!("well-layered layout: {v}")))?;
    Ok(layout)
}

/// Per-vertex dump used by `--explain`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VertexExplain {
    pub layer: usize,
    pub ell: usize,
    pub m: String,
    pub g: serde_json::Value,
}

/// Integers above 2^53 are written as decimal strings.
pub fn json_integer(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) if v <= (1u64 << 53) => serde_json::Value::from(v),
        _ => serde_json::Value::from(x.to_string()),
    }
}

pub fn explain(bfs: &BfsStructure, part: &LayerGroupPartition) -> Vec<VertexExplain> {
    (0..part.m_of.len())
        .map(|v| VertexExplain {
            layer: bfs.layer_of[v],
            ell: bfs.ell(v),
            m: part.m_of[v].to_string(),
            g: json_integer(&part.group_of[v]),
        })
        .collect()
}

/// Runs the full well-layered computation on `(emb, bfs)`.
pub fn partition(emb: &EmbeddedGraph, bfs: &BfsStructure, delta: usize) -> Result<LayerGroupPartition> {
    check_well_layered(emb.graph(), bfs, delta).map_err(|w| Error::InvalidParameter(w.to_string()))?;
    let cotree = build_cotree(emb, bfs, delta)?;
    let order = crate::bfs::layer_order_unchecked(bfs);
    layer_groups(emb, &cotree, bfs, &order, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs::bfs_structure;

    fn tree() -> EmbeddedGraph {
        let edges = vec![(0, 1), (0, 2), (1, 3), (1, 4)];
        let g = Graph::new(5, edges).unwrap();
        EmbeddedGraph::new(g, vec![vec![0, 1], vec![0, 2, 3], vec![1], vec![2], vec![3]]).unwrap()
    }

    /// Path 0-1, 0-2 plus level edge 1-2 (a triangle rooted at 0).
    fn triangle() -> EmbeddedGraph {
        let g = Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        EmbeddedGraph::new(g, vec![vec![0, 1], vec![2, 0], vec![1, 2]]).unwrap()
    }

    #[test]
    fn tree_is_well_layered_with_one_group_per_layer() {
        let emb = tree();
        let bfs = bfs_structure(&emb, 0).unwrap();
        check_well_layered(emb.graph(), &bfs, 2).unwrap();
        let cotree = build_cotree(&emb, &bfs, 2).unwrap();
        assert!(cotree.edges.is_empty());
        assert_eq!(cotree.distance, vec![BigUint::zero()]);
        let part = partition(&emb, &bfs, 2).unwrap();
        assert!(part.group_of.iter().all(Zero::is_zero));
        assert!(part.groups.iter().all(|layer| layer.len() == 1));
        verify_lemma6(emb.graph(), &bfs, &part, 2).unwrap();
        let layout = well_layered_layout(emb.graph(), &bfs, &part, 2).unwrap();
        assert!(layout.queue_count() <= 5);
    }

    #[test]
    fn single_level_edge_has_unit_weight() {
        let emb = triangle();
        let bfs = bfs_structure(&emb, 0).unwrap();
        check_well_layered(emb.graph(), &bfs, 2).unwrap();
        let cotree = build_cotree(&emb, &bfs, 2).unwrap();
        assert_eq!(cotree.edges.len(), 1);
        assert_eq!(cotree.edges[0].weight, BigUint::from(1u32));
        let part = partition(&emb, &bfs, 2).unwrap();
        verify_lemma6(emb.graph(), &bfs, &part, 2).unwrap();
        let layout = well_layered_layout(emb.graph(), &bfs, &part, 2).unwrap();
        let level_q = layout.queue_of(2);
        assert!(layout.queues().iter().enumerate().all(|(e, &q)| e == 2 || q != level_q));
    }

    #[test]
    fn c4_is_not_well_layered() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let emb = EmbeddedGraph::new(g, vec![vec![3, 0], vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let bfs = bfs_structure(&emb, 0).unwrap();
        // the non-tree edge (2,3) is binding
        assert_eq!(check_well_layered(emb.graph(), &bfs, 2), Err(NotWellLayered::NonTreeNotLevel { edge: 2 }));
    }

    #[test]
    fn too_many_children_reported() {
        let emb = tree();
        let bfs = bfs_structure(&emb, 0).unwrap();
        assert!(matches!(
            check_well_layered(emb.graph(), &bfs, 1),
            Err(NotWellLayered::TooManyChildren { vertex: 0, children: 2, delta: 1 })
        ));
    }

    #[test]
    fn cross_and_nest_helpers() {
        assert!(cross_or_nest((0, 2), (1, 3)));
        assert!(cross_or_nest((0, 3), (1, 2)));
        assert!(!cross_or_nest((0, 1), (2, 3)));
        assert!(!cross_or_nest((0, 2), (2, 3)));
        assert!(nest((0, 3), (1, 2)));
        assert!(!nest((0, 2), (1, 3)));
    }

    #[test]
    fn huge_values_become_strings() {
        assert_eq!(json_integer(&BigUint::from(7u32)), serde_json::json!(7));
        let big = BigUint::from(1u64 << 60);
        assert_eq!(json_integer(&big), serde_json::json!("1152921504606846976"));
    }
}
