//! Queue layouts of planar graphs with `12Δ² + 16Δ + 3` queues.
//!
//! The input's BFS layering is refined by subdividing every level edge and
//! every non-tree binding edge so the result `G'` is well-layered. The layer
//! groups of `G'` restricted to the original vertices give the vertex
//! order; queue indices come from the groups of the subdivision vertices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::bfs::{bfs_structure, BfsStructure, EdgeClass};
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::layout::{nested, rainbow_by_position, verify_layout, QueueLayout};
use crate::well_layered::{self, first_pair, offset, Group, LayerGroupPartition, VertexExplain};

/// The replacement of one edge of `G` in `G'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdividedEdge {
    pub class: EdgeClass,
    /// `[v, w]` for tree edges, `[v, x, y, w]` for level edges and
    /// `[v, x, y, z, w]` (upper endpoint first) for non-tree binding edges.
    pub vertices: Vec<VertexId>,
    /// Edges of `G'` along the path.
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone)]
pub struct SubdivisionRecord {
    /// `G'`; original vertices keep their ids, new ones follow.
    pub embedding: EmbeddedGraph,
    /// Layering `V'` and tree `T'` of `G'`.
    pub bfs: BfsStructure,
    pub original_vertex_count: usize,
    pub paths: Vec<SubdividedEdge>,
}

/// Subdivides `G` into the well-layered graph `G'`.
pub fn subdivide(emb: &EmbeddedGraph, bfs: &BfsStructure) -> Result<SubdivisionRecord> {
    let g = emb.graph();
    let n = g.vertex_count();
    let mut next_vertex = n;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut parent_edge: Vec<Option<EdgeId>> = Vec::with_capacity(n);
    for v in 0..n {
        parent_edge.push(bfs.parent_edge[v]);
    }
    let mut paths = Vec::with_capacity(g.edge_count());
    let mut image = vec![(0, 0); g.edge_count()];
    for e in 0..g.edge_count() {
        let class = bfs.classify(g, e);
        let (a, b) = g.endpoints(e);
        let vertices = match class {
            EdgeClass::BindingTree => vec![a, b],
            EdgeClass::Level => {
                let (x, y) = (next_vertex, next_vertex + 1);
                next_vertex += 2;
                vec![a, x, y, b]
            }
            EdgeClass::BindingNonTree => {
                let (v, w) = if bfs.layer_of[a] < bfs.layer_of[b] { (a, b) } else { (b, a) };
                let (x, y, z) = (next_vertex, next_vertex + 1, next_vertex + 2);
                next_vertex += 3;
                vec![v, x, y, z, w]
            }
        };
        let first = edges.len();
        for pair in vertices.windows(2) {
            edges.push((pair[0], pair[1]));
        }
        let path_edges: Vec<EdgeId> = (first..edges.len()).collect();
        parent_edge.resize(next_vertex, None);
        match class {
            EdgeClass::BindingTree => {
                let child = if bfs.parent_edge[b] == Some(e) { b } else { a };
                parent_edge[child] = Some(first);
            }
            EdgeClass::Level => {
                parent_edge[vertices[1]] = Some(first);
                parent_edge[vertices[2]] = Some(first + 2);
            }
            EdgeClass::BindingNonTree => {
                parent_edge[vertices[1]] = Some(first);
                parent_edge[vertices[2]] = Some(first + 1);
                parent_edge[vertices[3]] = Some(first + 3);
            }
        }
        image[e] = (first, edges.len() - 1);
        paths.push(SubdividedEdge { class, vertices, edges: path_edges });
    }
    let mut rotation: Vec<Vec<EdgeId>> = (0..n)
        .map(|v| {
            emb.rotation(v)
                .iter()
                .map(|&e| if paths[e].vertices[0] == v { image[e].0 } else { image[e].1 })
                .collect()
        })
        .collect();
    rotation.resize(next_vertex, Vec::new());
    for path in &paths {
        for k in 1..path.vertices.len() - 1 {
            rotation[path.vertices[k]] = vec![path.edges[k - 1], path.edges[k]];
        }
    }
    let g2 = Graph::new(next_vertex, edges)?;
    let emb2 = EmbeddedGraph::new(g2, rotation)?;
    let root_start = bfs.root_start.map(|e| image[e].0);
    let bfs2 = BfsStructure::from_tree(&emb2, bfs.root, parent_edge, root_start)?;
    for v in 0..n {
        if bfs2.layer_of[v] != bfs.layer_of[v] {
            return Err(Error::InvariantBreach(format!("subdivision moved vertex {v} to another layer")));
        }
    }
    Ok(SubdivisionRecord { embedding: emb2, bfs: bfs2, original_vertex_count: n, paths })
}

/// How an edge of `G` obtains its queue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSlot {
    /// Level edge inside one group; `offset = c - Δa` for the group `c` of
    /// its subdivision vertices.
    LevelInGroup { offset: usize },
    /// Level edge between groups `a` and `a + 1` of one layer.
    LevelAdjacent,
    /// Tree edge; `alpha = b - Δa`.
    Direct { alpha: i64 },
    /// Non-tree binding edge; `eta = c - b`, `gamma = d - Δb`.
    Hooked { alpha: i64, eta: i64, gamma: usize },
}

impl EdgeSlot {
    /// Index in the full key space of size `12Δ² + 16Δ + 3`: the `2Δ + 1`
    /// level queues first, then `(α, j)` lexicographically.
    pub fn key(&self, delta: usize) -> usize {
        let level = 2 * delta + 1;
        let per_alpha = 6 * delta + 1;
        match *self {
            EdgeSlot::LevelInGroup { offset } => offset,
            EdgeSlot::LevelAdjacent => 2 * delta,
            EdgeSlot::Direct { alpha } => level + (alpha + 1) as usize * per_alpha,
            EdgeSlot::Hooked { alpha, eta, gamma } => {
                level + (alpha + 1) as usize * per_alpha + 1 + (eta + 1) as usize * 2 * delta + gamma
            }
        }
    }
}

/// Groups of the original vertices, inherited from `G'`, and the queue slot
/// of every original edge.
#[derive(Debug, Clone)]
pub struct PlanarPartition {
    pub delta: usize,
    pub layer_of: Vec<usize>,
    pub group_of: Vec<BigUint>,
    /// Per layer, groups ascending; each group in inherited order.
    pub groups: Vec<Vec<Group>>,
    pub slots: Vec<EdgeSlot>,
}

impl PlanarPartition {
    pub fn vertex_order(&self) -> Vec<VertexId> {
        self.groups.iter().flatten().flat_map(|grp| grp.vertices.iter().copied()).collect()
    }
}

fn narrow(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::InvariantBreach(format!("{what} = {x} does not fit a machine word")))
}

/// Restricts the groups of `G'` to `G` and computes every edge's slot,
/// asserting the range properties of level, tree and non-tree binding edges.
pub fn pullback_partition(
    g: &Graph,
    bfs: &BfsStructure,
    sub: &SubdivisionRecord,
    part: &LayerGroupPartition,
    delta: usize,
) -> Result<PlanarPartition> {
    let n = sub.original_vertex_count;
    let d = delta as i64;
    let groups: Vec<Vec<Group>> = part
        .groups
        .iter()
        .map(|layer| {
            layer
                .iter()
                .filter_map(|grp| {
                    let vertices: Vec<VertexId> = grp.vertices.iter().copied().filter(|&v| v < n).collect();
                    (!vertices.is_empty()).then(|| Group { index: grp.index.clone(), vertices })
                })
                .collect()
        })
        .collect();
    let group = |v: VertexId| &part.group_of[v];
    let mut slots = Vec::with_capacity(g.edge_count());
    for (e, path) in sub.paths.iter().enumerate() {
        let slot = match path.class {
            EdgeClass::Level => {
                let (v, x, w) = (path.vertices[0], path.vertices[1], path.vertices[3]);
                let diff = narrow(&(BigInt::from(group(v).clone()) - BigInt::from(group(w).clone())), "a - b")?;
                match diff {
                    0 => {
                        let off = narrow(&offset(group(v), group(x), delta), "c - Δa")?;
                        if !(0..2 * d).contains(&off) {
                            return Err(Error::InvariantBreach(format!("level edge {e}: c - Δa = {off}")));
                        }
                        EdgeSlot::LevelInGroup { offset: off as usize }
                    }
                    -1 | 1 => EdgeSlot::LevelAdjacent,
                    _ => return Err(Error::InvariantBreach(format!("level edge {e}: group gap |a - b| = {}", diff.abs()))),
                }
            }
            EdgeClass::BindingTree => {
                let (v, w) = well_layered::upper_lower(g, bfs, e);
                let alpha = narrow(&offset(group(v), group(w), delta), "b - Δa")?;
                if !(0..2 * d).contains(&alpha) {
                    return Err(Error::InvariantBreach(format!("tree edge {e}: b - Δa = {alpha}")));
                }
                EdgeSlot::Direct { alpha }
            }
            EdgeClass::BindingNonTree => {
                let (v, x, y, w) = (path.vertices[0], path.vertices[1], path.vertices[2], path.vertices[4]);
                let alpha = narrow(&offset(group(v), group(w), delta), "b - Δa")?;
                if !(-1..=2 * d).contains(&alpha) {
                    return Err(Error::InvariantBreach(format!("non-tree binding edge {e}: b - Δa = {alpha}")));
                }
                let eta = narrow(&(BigInt::from(group(x).clone()) - BigInt::from(group(w).clone())), "c - b")?;
                let gamma = narrow(&offset(group(w), group(y), delta), "d - Δb")?;
                if !(-1..=1).contains(&eta) || !(0..2 * d).contains(&gamma) {
                    return Err(Error::InvariantBreach(format!(
                        "non-tree binding edge {e}: c - b = {eta}, d - Δb = {gamma}"
                    )));
                }
                EdgeSlot::Hooked { alpha, eta, gamma: gamma as usize }
            }
        };
        slots.push(slot);
    }
    Ok(PlanarPartition {
        delta,
        layer_of: bfs.layer_of.clone(),
        group_of: part.group_of[..n].to_vec(),
        groups,
        slots,
    })
}

/// A violated property of the original-graph partition, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma7Violation {
    pub clause: char,
    pub edges: (EdgeId, EdgeId),
}

impl fmt::Display for Lemma7Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause ({}) violated: edges {} and {} nest", self.clause, self.edges.0, self.edges.1)
    }
}

/// Direct checks of the adjacent-group (d), inter-layer (e) and in-group
/// (f) queue properties under the partition's concatenated orders.
pub fn check_lemma7(g: &Graph, part: &PlanarPartition) -> Result<(), Lemma7Violation> {
    let order = part.vertex_order();
    let mut position = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adjacent: BTreeMap<(usize, &BigUint), Vec<EdgeId>> = BTreeMap::new();
    let mut inter: BTreeMap<(usize, &BigUint, &BigUint, EdgeSlot), Vec<EdgeId>> = BTreeMap::new();
    let mut inside: BTreeMap<(usize, &BigUint, usize), Vec<EdgeId>> = BTreeMap::new();
    for (e, &slot) in part.slots.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        let (lu, lv) = (part.layer_of[u], part.layer_of[v]);
        match slot {
            EdgeSlot::LevelAdjacent => {
                let a = part.group_of[u].clone().min(part.group_of[v].clone());
                let key = if part.group_of[u] == a { &part.group_of[u] } else { &part.group_of[v] };
                adjacent.entry((lu, key)).or_default().push(e);
            }
            EdgeSlot::LevelInGroup { offset } => inside.entry((lu, &part.group_of[u], offset)).or_default().push(e),
            EdgeSlot::Direct { .. } | EdgeSlot::Hooked { .. } => {
                let (p, c) = if lu < lv { (u, v) } else { (v, u) };
                let cell_slot = match slot {
                    EdgeSlot::Direct { .. } => EdgeSlot::Direct { alpha: 0 },
                    EdgeSlot::Hooked { eta, gamma, .. } => EdgeSlot::Hooked { alpha: 0, eta, gamma },
                    _ => unreachable!(),
                };
                inter.entry((lu.min(lv), &part.group_of[p], &part.group_of[c], cell_slot)).or_default().push(e);
            }
        }
    }
    let nests = |a: EdgeId, b: EdgeId| nested(&position, g.endpoints(a), g.endpoints(b));
    for edges in adjacent.values() {
        if let Some(p) = first_pair(edges, nests) {
            return Err(Lemma7Violation { clause: 'd', edges: p });
        }
    }
    for edges in inter.values() {
        if let Some(p) = first_pair(edges, nests) {
            return Err(Lemma7Violation { clause: 'e', edges: p });
        }
    }
    for edges in inside.values() {
        if let Some(p) = first_pair(edges, nests) {
            return Err(Lemma7Violation { clause: 'f', edges: p });
        }
    }
    Ok(())
}

/// Maximum number of queues the construction may use.
pub fn planar_bound(delta: usize) -> usize {
    12 * delta * delta + 16 * delta + 3
}

/// The degree parameter `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delta {
    /// `max(2, maximum degree)`.
    #[default]
    Auto,
    /// An explicit value; every vertex of `G'` must have at most this many
    /// tree children.
    Fixed(usize),
}

impl Delta {
    pub fn resolve(self, g: &Graph) -> Result<usize> {
        match self {
            Delta::Auto => Ok(g.max_degree().max(2)),
            Delta::Fixed(d) if d >= 2 => Ok(d),
            Delta::Fixed(d) => Err(Error::InvalidParameter(format!("delta must be at least 2, got {d}"))),
        }
    }
}

impl std::str::FromStr for Delta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Delta::Auto);
        }
        s.parse().map(Delta::Fixed).map_err(|_| Error::InvalidParameter(format!("delta must be an integer or \"auto\", got {s:?}")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct PlanarOptions {
    pub delta: Delta,
    /// Root of the BFS layering (connected inputs only; components otherwise
    /// use their smallest vertex).
    pub root: Option<VertexId>,
    /// Run the partition and queue-property verifiers on every component.
    pub check: bool,
}

/// The construction on one connected component, in component-local ids.
#[derive(Debug, Clone)]
pub struct ComponentRun {
    /// Vertex ids of the component in the input graph.
    pub vertices: Vec<VertexId>,
    /// Edge ids of the component in the input graph.
    pub edges: Vec<EdgeId>,
    pub bfs: BfsStructure,
    pub subdivision: SubdivisionRecord,
    pub subdivided_partition: LayerGroupPartition,
    pub partition: PlanarPartition,
}

impl ComponentRun {
    /// Per-vertex values of `G'` (layer, `ℓ`, `m`, `g`).
    pub fn explain(&self) -> Vec<VertexExplain> {
        well_layered::explain(&self.subdivision.bfs, &self.subdivided_partition)
    }
}

#[derive(Debug, Clone)]
pub struct PlanarLayout {
    pub layout: QueueLayout,
    pub delta: usize,
    pub components: Vec<ComponentRun>,
}

impl PlanarLayout {
    pub fn bound(&self) -> usize {
        planar_bound(self.delta)
    }
}

/// Runs the planar construction on a connected orientable plane embedding.
pub fn planar_component(emb: &EmbeddedGraph, root: VertexId, delta: usize, check: bool) -> Result<(ComponentRun, Vec<usize>)> {
    let g = emb.graph();
    let faces = emb.face_trace()?;
    if faces.genus != 0 {
        return Err(Error::NotPlanar { genus: faces.genus });
    }
    let bfs = bfs_structure(emb, root)?;
    let sub = subdivide(emb, &bfs)?;
    well_layered::check_well_layered(sub.embedding.graph(), &sub.bfs, delta).map_err(|w| match w {
        well_layered::NotWellLayered::TooManyChildren { .. } => Error::InvalidParameter(format!("delta {delta} too small: {w}")),
        other => Error::InvariantBreach(format!("subdivision is not well-layered: {other}")),
    })?;
    let sub_part = well_layered::partition(&sub.embedding, &sub.bfs, delta)?;
    if check {
        bfs.check(g)?;
        sub.bfs.check(sub.embedding.graph())?;
        well_layered::verify_lemma6(sub.embedding.graph(), &sub.bfs, &sub_part, delta)
            .map_err(|v| Error::InvariantBreach(format!("well-layered partition of the subdivision: {v}")))?;
    }
    let part = pullback_partition(g, &bfs, &sub, &sub_part, delta)?;
    if check {
        check_lemma7(g, &part).map_err(|v| Error::InvariantBreach(format!("planar partition: {v}")))?;
    }
    let keys = part.slots.iter().map(|s| s.key(delta)).collect();
    let run = ComponentRun {
        vertices: (0..g.vertex_count()).collect(),
        edges: (0..g.edge_count()).collect(),
        bfs,
        subdivision: sub,
        subdivided_partition: sub_part,
        partition: part,
    };
    Ok((run, keys))
}

/// Queue layout of a planar embedded graph. Non-orientable signatures are
/// normalised first; disconnected inputs are handled per component and the
/// component orders concatenated.
pub fn layout_planar(emb: &EmbeddedGraph, opts: &PlanarOptions) -> Result<PlanarLayout> {
    let emb = emb.to_orientable().map_err(|_| Error::NotPlanar { genus: emb.face_trace().map(|f| f.genus).unwrap_or(1) })?;
    let g = emb.graph();
    let delta = opts.delta.resolve(g)?;
    let components = g.components();
    if opts.root.is_some_and(|r| r >= g.vertex_count()) {
        return Err(Error::InvalidParameter("root out of range".into()));
    }
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut keys = vec![0; g.edge_count()];
    let mut runs = Vec::with_capacity(components.len());
    for comp in &components {
        let (sub_emb, induced) = emb.induced(comp);
        let root = match opts.root {
            Some(r) if components.len() == 1 => r,
            _ => 0,
        };
        let (mut run, local_keys) = planar_component(&sub_emb, root, delta, opts.check)?;
        order.extend(run.partition.vertex_order().iter().map(|&v| induced.vertex_to_parent[v]));
        for (local, &e) in induced.edge_to_parent.iter().enumerate() {
            keys[e] = local_keys[local];
        }
        run.vertices = induced.vertex_to_parent.clone();
        run.edges = induced.edge_to_parent.clone();
        runs.push(run);
    }
    let layout = QueueLayout::new(order, keys, planar_bound(delta))?.compacted();
    verify_layout(g, &layout).map_err(|v| Error::InvariantBreach(format!("planar layout: {v}")))?;
    if layout.queue_count() > planar_bound(delta) {
        return Err(Error::InvariantBreach("planar layout exceeds its queue bound".into()));
    }
    Ok(PlanarLayout { layout, delta, components: runs })
}

/// The lower-bound instance laid out by the planar construction, with a
/// rainbow of matching edges.
#[derive(Debug, Clone)]
pub struct TightnessWitness {
    pub example: crate::generators::TightExample,
    pub result: PlanarLayout,
    /// Matching edges forming a rainbow, outermost first.
    pub rainbow: Vec<EdgeId>,
}

pub fn tightness_witness(delta: usize) -> Result<TightnessWitness> {
    let example = crate::generators::tight_example(delta)?;
    let opts = PlanarOptions { delta: Delta::Fixed(delta), root: Some(0), check: true };
    let result = layout_planar(&example.embedding, &opts)?;
    let g = example.embedding.graph();
    let mut filter = vec![false; g.edge_count()];
    for &e in example.matching.iter().flatten() {
        filter[e] = true;
    }
    let rainbow = rainbow_by_position(g, result.layout.positions(), Some(&filter)).witness;
    Ok(TightnessWitness { example, result, rainbow })
}
