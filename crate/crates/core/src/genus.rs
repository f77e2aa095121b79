//! Queue layouts of graphs embedded on surfaces of Euler genus `g`.
//!
//! A BFS tree plus `g` leftover dual edges yields a vertex set `Z` with at
//! most `2g` vertices per layer whose removal leaves a planar graph. Any
//! planar layout of `G - Z` is reordered to follow the layering and the
//! edges at `Z` get `4g` extra queues, for `3k + 4g` in total.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bfs::{bfs_structure, select_outer_face, BfsStructure};
use crate::embedding::{EmbeddedGraph, FaceTrace};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::layout::{verify_layout, QueueLayout};
use crate::planar::{self, Delta, PlanarOptions};

/// A non-tree edge of `G` whose dual edge is left out of the dual spanning
/// tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeftoverEdge {
    pub edge: EdgeId,
    pub faces: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarizingSet {
    pub genus: usize,
    /// Ascending.
    pub z_vertices: Vec<VertexId>,
    /// Ascending: the tree paths to the root plus the leftover edges.
    pub z_edges: Vec<EdgeId>,
    /// `Z ∩ V_j`, each ascending.
    pub per_layer: Vec<Vec<VertexId>>,
    pub leftover: Vec<LeftoverEdge>,
    pub in_z: Vec<bool>,
    pub face_count: usize,
}

/// On-disk form: `{"Z_vertices": [...], "Q": [[f1, f2], ...], "per_layer_counts": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSetFile {
    #[serde(rename = "Z_vertices")]
    pub z_vertices: Vec<VertexId>,
    #[serde(rename = "Q")]
    pub q: Vec<[usize; 2]>,
    pub per_layer_counts: Vec<usize>,
}

impl From<&PlanarizingSet> for ZSetFile {
    fn from(z: &PlanarizingSet) -> Self {
        ZSetFile {
            z_vertices: z.z_vertices.clone(),
            q: z.leftover.iter().map(|l| [l.faces.0, l.faces.1]).collect(),
            per_layer_counts: z.per_layer.iter().map(Vec::len).collect(),
        }
    }
}

/// Builds `Z` from the faces of `emb` and the BFS tree `bfs`.
pub fn planarizing_set(emb: &EmbeddedGraph, bfs: &BfsStructure) -> Result<PlanarizingSet> {
    let faces = emb.face_trace()?;
    planarizing_set_with(emb, bfs, &faces)
}

fn planarizing_set_with(emb: &EmbeddedGraph, bfs: &BfsStructure, faces: &FaceTrace) -> Result<PlanarizingSet> {
    let g = emb.graph();
    let genus = faces.genus as usize;
    let f = faces.face_count();
    let mut adjacency: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); f];
    let dual: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !bfs.tree_edge[e]).collect();
    for &e in &dual {
        let (f1, f2) = faces.faces_of_edge(e);
        adjacency[f1].push((f2, e));
        if f1 != f2 {
            adjacency[f2].push((f1, e));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let (root_face, _) = select_outer_face(emb, faces, bfs.root);
    let mut seen = vec![false; f];
    let mut in_tree = vec![false; g.edge_count()];
    seen[root_face] = true;
    let mut queue = VecDeque::from([root_face]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                in_tree[e] = true;
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvariantBreach("face graph of the non-tree edges is disconnected".into()));
    }
    let leftover: Vec<LeftoverEdge> = dual
        .iter()
        .filter(|&&e| !in_tree[e])
        .map(|&e| LeftoverEdge { edge: e, faces: faces.faces_of_edge(e) })
        .collect();
    if leftover.len() != genus {
        return Err(Error::InvariantBreach(format!(
            "{} leftover dual edges for Euler genus {genus}",
            leftover.len()
        )));
    }
    let mut in_z = vec![false; g.vertex_count()];
    let mut z_edge = vec![false; g.edge_count()];
    for l in &leftover {
        z_edge[l.edge] = true;
        let (a, b) = g.endpoints(l.edge);
        for mut v in [a, b] {
            in_z[v] = true;
            while let (Some(p), Some(pe)) = (bfs.parent[v], bfs.parent_edge[v]) {
                z_edge[pe] = true;
                if in_z[p] {
                    break;
                }
                in_z[p] = true;
                v = p;
            }
        }
    }
    let z_vertices: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| in_z[v]).collect();
    let z_edges: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| z_edge[e]).collect();
    let mut per_layer = vec![Vec::new(); bfs.layers.len()];
    for &v in &z_vertices {
        per_layer[bfs.layer_of[v]].push(v);
    }
    if let Some((j, layer)) = per_layer.iter().enumerate().find(|(_, l)| l.len() > 2 * genus) {
        return Err(Error::InvariantBreach(format!("layer {j} holds {} vertices of Z, more than 2g", layer.len())));
    }
    if z_edges.len() + 1 != z_vertices.len() + genus && genus > 0 {
        return Err(Error::InvariantBreach("Z is not a tree plus g edges".into()));
    }
    Ok(PlanarizingSet { genus, z_vertices, z_edges, per_layer, leftover, in_z, face_count: f })
}

/// The graph obtained by cutting the surface along the edges of `Z`.
#[derive(Debug, Clone)]
pub struct CutGraph {
    /// Orientable plane embedding. Vertices `0..n` keep their ids (the first
    /// copy of a `Z` vertex keeps the original id); edges `0..m` keep theirs
    /// (the second copy of a `Z` edge gets a new id).
    pub embedding: EmbeddedGraph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
    pub faces_before: usize,
    pub faces_after: usize,
}

/// Cuts `emb` along the edges of `z`.
///
/// Each `Z` edge is doubled, one copy per side; a vertex with `d` incident
/// `Z` edges becomes `d` vertices, one per wedge between consecutive `Z`
/// edges. Signatures decide which wedge at the far end borders the same
/// side, and the result is switched to an orientable rotation system.
pub fn cut_graph(emb: &EmbeddedGraph, z: &PlanarizingSet) -> Result<CutGraph> {
    let g = emb.graph();
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut is_z = vec![false; m];
    for &e in &z.z_edges {
        is_z[e] = true;
    }
    let mut copy_b = vec![usize::MAX; m];
    let mut next_edge = m;
    for &e in &z.z_edges {
        copy_b[e] = next_edge;
        next_edge += 1;
    }
    // copy of a Z edge lying after (true) / before (false) it at vertex v
    let copy_at = |e: EdgeId, v: VertexId, after: bool| -> EdgeId {
        let first = g.endpoints(e).0 == v;
        let a_is_after = !first && emb.signature(e) == 1;
        if after == a_is_after {
            e
        } else {
            copy_b[e]
        }
    };
    let mut vertex_origin: Vec<VertexId> = (0..n).collect();
    let mut rotation: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let mut ends: Vec<Vec<VertexId>> = vec![Vec::with_capacity(2); next_edge];
    for v in 0..n {
        let rot = emb.rotation(v);
        let zpos: Vec<usize> = (0..rot.len()).filter(|&i| is_z[rot[i]]).collect();
        if zpos.is_empty() {
            rotation[v] = rot.to_vec();
            for &e in rot {
                ends[e].push(v);
            }
            continue;
        }
        let d = zpos.len();
        for t in 0..d {
            let copy = if t == 0 {
                v
            } else {
                vertex_origin.push(v);
                rotation.push(Vec::new());
                vertex_origin.len() - 1
            };
            let (start, end) = (zpos[t], zpos[(t + 1) % d]);
            let mut list = vec![copy_at(rot[start], v, true)];
            let mut k = (start + 1) % rot.len();
            while k != end {
                list.push(rot[k]);
                k = (k + 1) % rot.len();
            }
            list.push(copy_at(rot[end], v, false));
            for &e in &list {
                ends[e].push(copy);
            }
            rotation[copy] = list;
        }
    }
    let mut edges = Vec::with_capacity(next_edge);
    let mut edge_origin: Vec<EdgeId> = (0..m).collect();
    edge_origin.resize(next_edge, 0);
    let mut signature = Vec::with_capacity(next_edge);
    for e in 0..next_edge {
        if ends[e].len() != 2 {
            return Err(Error::InvariantBreach(format!("cut edge {e} has {} ends", ends[e].len())));
        }
        edges.push((ends[e][0], ends[e][1]));
    }
    for e in 0..m {
        if is_z[e] {
            edge_origin[copy_b[e]] = e;
        }
    }
    for &orig in &edge_origin {
        signature.push(emb.signature(orig));
    }
    // keep each edge's endpoint order aligned with its origin so signatures
    // keep their meaning
    for (e, pair) in edges.iter_mut().enumerate() {
        let (u, _) = g.endpoints(edge_origin[e]);
        if vertex_origin[pair.0] != u {
            *pair = (pair.1, pair.0);
        }
    }
    let graph = Graph::new(vertex_origin.len(), edges)
        .map_err(|err| Error::InvariantBreach(format!("cut graph is not simple: {err}")))?;
    let cut = EmbeddedGraph::with_signature(graph, rotation, signature)
        .and_then(|c| c.to_orientable())
        .map_err(|err| Error::InvariantBreach(format!("cut graph embedding: {err}")))?;
    let faces = cut
        .face_trace()
        .map_err(|err| Error::InvariantBreach(format!("cut graph face tracing: {err}")))?;
    let expected = z.face_count + usize::from(z.genus > 0);
    if faces.genus != 0 || faces.face_count() != expected {
        return Err(Error::InvariantBreach(format!(
            "cut graph has genus {} and {} faces, expected genus 0 and {expected}",
            faces.genus,
            faces.face_count()
        )));
    }
    Ok(CutGraph {
        embedding: cut,
        vertex_origin,
        edge_origin,
        faces_before: z.face_count,
        faces_after: faces.face_count(),
    })
}

/// Reorders a layout of `g` to follow a layering (layers in sequence, each
/// in the old order) and splits every queue into level edges, binding edges
/// whose upper end came first, and binding edges whose lower end came first.
pub fn reorder_to_layering(g: &Graph, layout: &QueueLayout, layer_of: &[usize]) -> Result<QueueLayout> {
    if layer_of.len() != g.vertex_count() {
        return Err(Error::InvalidLayering("layer list length differs from vertex count".into()));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if layer_of[u].abs_diff(layer_of[v]) > 1 {
            return Err(Error::InvalidLayering(format!("edge {e} spans more than one layer")));
        }
    }
    let mut order = layout.order().to_vec();
    order.sort_by_key(|&v| (layer_of[v], layout.position(v)));
    let queues = (0..g.edge_count())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            let class = if layer_of[u] == layer_of[v] {
                0
            } else {
                let (upper, lower) = if layer_of[u] < layer_of[v] { (u, v) } else { (v, u) };
                if layout.position(upper) < layout.position(lower) {
                    1
                } else {
                    2
                }
            };
            3 * layout.queue_of(e) + class
        })
        .collect();
    let out = QueueLayout::new(order, queues, 3 * layout.queue_count())?.compacted();
    verify_layout(g, &out).map_err(|v| Error::InvariantBreach(format!("reordered layout: {v}")))?;
    Ok(out)
}

pub fn genus_bound(delta: usize, genus: usize) -> usize {
    4 * genus + 36 * delta * delta + 48 * delta + 9
}

/// One connected component of a genus layout.
#[derive(Debug, Clone)]
pub struct GenusComponent {
    pub vertices: Vec<VertexId>,
    pub bfs: BfsStructure,
    pub z: PlanarizingSet,
    pub cut: CutGraph,
    /// Queues used by the inner layout of `G - Z` and after reordering.
    pub inner_queues: usize,
    pub reordered_queues: usize,
}

#[derive(Debug, Clone)]
pub struct GenusLayout {
    pub layout: QueueLayout,
    pub genus: usize,
    pub delta: usize,
    pub components: Vec<GenusComponent>,
}

impl GenusLayout {
    pub fn bound(&self) -> usize {
        genus_bound(self.delta, self.genus)
    }
}

/// The default inner procedure: the planar construction with automatic `Δ`.
pub fn planar_inner(emb: &EmbeddedGraph) -> Result<QueueLayout> {
    planar::layout_planar(emb, &PlanarOptions { delta: Delta::Auto, root: None, check: true }).map(|p| p.layout)
}

/// Queue layout of an embedded graph of any Euler genus. `inner` lays out
/// planar embedded graphs.
pub fn layout_genus<F>(emb: &EmbeddedGraph, inner: F) -> Result<GenusLayout>
where
    F: Fn(&EmbeddedGraph) -> Result<QueueLayout>,
{
    let g = emb.graph();
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut queues = vec![0; g.edge_count()];
    let mut components = Vec::new();
    let mut genus = 0;
    let mut width = 0;
    let mut keyed: Vec<(usize, Vec<(EdgeId, Key)>)> = Vec::new();
    for comp in g.components() {
        let (sub, induced) = emb.induced(&comp);
        let (run, local_order, local_keys) = genus_component(&sub, &inner)?;
        genus += run.z.genus;
        width = width.max(run.reordered_queues);
        order.extend(local_order.iter().map(|&v| induced.vertex_to_parent[v]));
        keyed.push((
            run.z.genus,
            local_keys.into_iter().enumerate().map(|(e, k)| (induced.edge_to_parent[e], k)).collect(),
        ));
        components.push(GenusComponent { vertices: induced.vertex_to_parent.clone(), ..run });
    }
    let max_z = keyed.iter().map(|(g, _)| 2 * g).max().unwrap_or(0);
    for (_, list) in keyed {
        for (e, key) in list {
            queues[e] = match key {
                Key::Inner(q) => q,
                Key::S(i) => width + i,
                Key::T(i) => width + max_z + i,
            };
        }
    }
    let layout = QueueLayout::new(order, queues, width + 2 * max_z)?.compacted();
    verify_layout(g, &layout).map_err(|v| Error::InvariantBreach(format!("genus layout: {v}")))?;
    let delta = g.max_degree().max(2);
    for c in &components {
        if c.reordered_queues > 3 * c.inner_queues {
            return Err(Error::InvariantBreach("reordering used more than 3k queues".into()));
        }
    }
    let inner_max = components.iter().map(|c| c.inner_queues).max().unwrap_or(0);
    if layout.queue_count() > 3 * inner_max + 4 * genus {
        return Err(Error::InvariantBreach("genus layout exceeds 3k + 4g queues".into()));
    }
    Ok(GenusLayout { layout, genus, delta, components })
}

#[derive(Debug, Clone, Copy)]
enum Key {
    Inner(usize),
    S(usize),
    T(usize),
}

fn genus_component<F>(emb: &EmbeddedGraph, inner: &F) -> Result<(GenusComponent, Vec<VertexId>, Vec<Key>)>
where
    F: Fn(&EmbeddedGraph) -> Result<QueueLayout>,
{
    let g = emb.graph();
    let faces = emb.face_trace()?;
    let bfs = bfs_structure(emb, 0)?;
    let z = planarizing_set_with(emb, &bfs, &faces)?;
    let cut = cut_graph(emb, &z)?;
    let rest: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !z.in_z[v]).collect();
    let (h_emb, h) = cut.embedding.induced(&rest);
    let h_layout = inner(&h_emb)?;
    verify_layout(&h.graph, &h_layout).map_err(|v| Error::InvariantBreach(format!("inner layout of G - Z: {v}")))?;
    let h_layers: Vec<usize> = rest.iter().map(|&v| bfs.layer_of[v]).collect();
    let reordered = reorder_to_layering(&h.graph, &h_layout, &h_layers)?;

    let mut order = Vec::with_capacity(g.vertex_count());
    let mut rank_in_z = vec![usize::MAX; g.vertex_count()];
    let mut h_by_layer: Vec<Vec<VertexId>> = vec![Vec::new(); bfs.layers.len()];
    for &local in reordered.order() {
        h_by_layer[h_layers[local]].push(rest[local]);
    }
    for (j, zs) in z.per_layer.iter().enumerate() {
        for (i, &v) in zs.iter().enumerate() {
            rank_in_z[v] = i;
            order.push(v);
        }
        order.extend(&h_by_layer[j]);
    }
    let mut keys = vec![Key::Inner(0); g.edge_count()];
    for (local, &e) in h.edge_to_parent.iter().enumerate() {
        // edges of G - Z are never cut, so their ids are unchanged
        keys[cut.edge_origin[e]] = Key::Inner(reordered.queue_of(local));
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        if !z.in_z[u] && !z.in_z[v] {
            continue;
        }
        let pick = |odd: bool| {
            [u, v]
                .into_iter()
                .filter(|&x| z.in_z[x] && (bfs.layer_of[x] % 2 == 1) == odd)
                .map(|x| rank_in_z[x])
                .min()
        };
        keys[e] = match (pick(true), pick(false)) {
            (Some(i), _) => Key::S(i),
            (None, Some(i)) => Key::T(i),
            (None, None) => unreachable!("edge touches Z"),
        };
    }
    let run = GenusComponent {
        vertices: (0..g.vertex_count()).collect(),
        bfs,
        z,
        cut,
        inner_queues: h_layout.queue_count(),
        reordered_queues: reordered.queue_count(),
    };
    Ok((run, order, keys))
}
