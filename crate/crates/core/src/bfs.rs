//! BFS layerings, BFS spanning trees and embedding-respecting layer orders.

use std::collections::VecDeque;

use crate::embedding::{EmbeddedGraph, FaceTrace};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Classification of an edge relative to a BFS layering and tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Level,
    BindingTree,
    BindingNonTree,
}

/// A rooted BFS layering with its spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsStructure {
    pub root: VertexId,
    pub layer_of: Vec<usize>,
    pub layers: Vec<Vec<VertexId>>,
    pub parent: Vec<Option<VertexId>>,
    pub parent_edge: Vec<Option<EdgeId>>,
    /// Children in rotation order, starting right after the parent edge
    /// (at the root: starting at `root_start`).
    pub children: Vec<Vec<VertexId>>,
    pub tree_edge: Vec<bool>,
    /// First edge of the root's child rotation; it leaves the root into the
    /// outer face. `None` only for a single vertex.
    pub root_start: Option<EdgeId>,
}

impl BfsStructure {
    /// Depth `t` of the layering.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// `t - dist(r, v)`: zero on the deepest layer, `t` at the root.
    pub fn ell(&self, v: VertexId) -> usize {
        self.depth() - self.layer_of[v]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v].is_empty()
    }

    pub fn classify(&self, graph: &Graph, e: EdgeId) -> EdgeClass {
        let (u, v) = graph.endpoints(e);
        if self.layer_of[u] == self.layer_of[v] {
            EdgeClass::Level
        } else if self.tree_edge[e] {
            EdgeClass::BindingTree
        } else {
            EdgeClass::BindingNonTree
        }
    }

    /// Builds the structure from explicit tree parent edges. The layering is
    /// the tree depth; it must be a valid layering in which every parent sits
    /// one layer up, which makes it the BFS layering of the graph.
    pub fn from_tree(
        emb: &EmbeddedGraph,
        root: VertexId,
        parent_edge: Vec<Option<EdgeId>>,
        root_start: Option<EdgeId>,
    ) -> Result<Self> {
        let g = emb.graph();
        let n = g.vertex_count();
        if root >= n || parent_edge.len() != n || parent_edge[root].is_some() {
            return Err(Error::InvalidLayering("malformed parent assignment".into()));
        }
        let mut parent = vec![None; n];
        let mut kids: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut tree_edge = vec![false; g.edge_count()];
        for v in 0..n {
            if let Some(e) = parent_edge[v] {
                let p = g.other(e, v);
                parent[v] = Some(p);
                kids[p].push(v);
                tree_edge[e] = true;
            } else if v != root {
                return Err(Error::InvalidLayering(format!("vertex {v} has no parent")));
            }
        }
        let mut layer_of = vec![usize::MAX; n];
        layer_of[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &c in &kids[v] {
                layer_of[c] = layer_of[v] + 1;
                reached += 1;
                queue.push_back(c);
            }
        }
        if reached != n {
            return Err(Error::InvalidLayering("parent edges do not form a spanning tree".into()));
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if layer_of[u].abs_diff(layer_of[v]) > 1 {
                return Err(Error::InvalidLayering(format!("edge {e} spans more than one layer")));
            }
        }
        let t = layer_of.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); t + 1];
        for v in 0..n {
            layers[layer_of[v]].push(v);
        }
        if g.edge_count() > 0 && root_start.is_none() && g.degree(root) > 0 {
            return Err(Error::InvalidLayering("root start edge missing".into()));
        }
        if let Some(e) = root_start {
            let (a, b) = g.endpoints(e);
            if a != root && b != root {
                return Err(Error::InvalidLayering("root start edge is not incident to the root".into()));
            }
        }
        let mut bfs = BfsStructure {
            root,
            layer_of,
            layers,
            parent,
            parent_edge,
            children: vec![Vec::new(); n],
            tree_edge,
            root_start,
        };
        bfs.order_children(emb);
        Ok(bfs)
    }

    fn order_children(&mut self, emb: &EmbeddedGraph) {
        let g = emb.graph();
        for v in 0..g.vertex_count() {
            let rot = emb.rotation(v);
            if rot.is_empty() {
                continue;
            }
            let (start, skip) = match (self.parent_edge[v], self.root_start) {
                (Some(pe), _) => (emb.position(pe, v), 1),
                (None, Some(rs)) => (emb.position(rs, v), 0),
                (None, None) => (0, 0),
            };
            let mut kids = Vec::new();
            for k in skip..rot.len() + skip {
                let e = rot[(start + k) % rot.len()];
                let w = g.other(e, v);
                if self.parent_edge[w] == Some(e) {
                    kids.push(w);
                }
            }
            self.children[v] = kids;
        }
    }

    /// Vertices of the tree in embedding-respecting preorder.
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.layer_of.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Asserts the layering invariants; used by tests and `--check`.
    pub fn check(&self, graph: &Graph) -> Result<()> {
        if self.layer_of[self.root] != 0 {
            return Err(Error::InvariantBreach("root not on layer 0".into()));
        }
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if self.layer_of[u].abs_diff(self.layer_of[v]) > 1 {
                return Err(Error::InvariantBreach(format!("edge {e} spans two layers")));
            }
        }
        for v in 0..graph.vertex_count() {
            if let (Some(p), Some(e)) = (self.parent[v], self.parent_edge[v]) {
                if self.layer_of[p] + 1 != self.layer_of[v] || graph.other(e, v) != p {
                    return Err(Error::InvariantBreach(format!("bad parent of {v}")));
                }
            }
        }
        Ok(())
    }
}

/// Outer face anchored at `root`: among faces through the root, the one
/// containing the lowest dart. Returns the face and the first edge along
/// which its walk leaves the root.
pub fn select_outer_face(emb: &EmbeddedGraph, faces: &FaceTrace, root: VertexId) -> (usize, Option<EdgeId>) {
    if emb.graph().degree(root) == 0 {
        return (0, None);
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for f in faces.faces_at(root) {
        let walk = &faces.faces[f].steps;
        let (idx, min_dart) = walk
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.dart))
            .min_by_key(|&(_, d)| d)
            .expect("face through a vertex with edges is non-empty");
        if best.is_none_or(|(_, d, _)| min_dart < d) {
            best = Some((f, min_dart, idx));
        }
    }
    let (face, _, idx) = best.expect("root lies on some face");
    let walk = &faces.faces[face].steps;
    let leave = (0..walk.len())
        .map(|k| walk[(idx + k) % walk.len()])
        .find(|s| emb.dart_tail(s.dart) == root)
        .expect("face walk passes through the root");
    (face, Some(leave.dart / 2))
}

/// BFS layering and tree rooted at `root`.
///
/// The parent of `v` is the previous-layer neighbour whose edge comes first in
/// the rotation at `v`, scanning from the lowest incident edge id.
pub fn bfs_structure(emb: &EmbeddedGraph, root: VertexId) -> Result<BfsStructure> {
    let g = emb.graph();
    let n = g.vertex_count();
    if root >= n {
        return Err(Error::InvalidParameter(format!("root {root} out of range")));
    }
    let faces = emb.face_trace()?;
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut parent_edge = vec![None; n];
    for v in 0..n {
        if v == root {
            continue;
        }
        let rot = emb.rotation(v);
        let start = rot
            .iter()
            .enumerate()
            .min_by_key(|&(_, &e)| e)
            .map(|(i, _)| i)
            .expect("connected non-root vertex has an edge");
        parent_edge[v] = (0..rot.len())
            .map(|k| rot[(start + k) % rot.len()])
            .find(|&e| dist[g.other(e, v)] + 1 == dist[v]);
    }
    let (_, root_start) = select_outer_face(emb, &faces, root);
    BfsStructure::from_tree(emb, root, parent_edge, root_start)
}

/// Per-layer vertex orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerOrder {
    pub layers: Vec<Vec<VertexId>>,
    /// Index of each vertex within its layer.
    pub rank: Vec<usize>,
}

/// Layer orders of a planar embedding: each layer in the order of the BFS
/// tree's preorder, which starts at the outer-face corner of the root.
pub fn layer_order(emb: &EmbeddedGraph, bfs: &BfsStructure) -> Result<LayerOrder> {
    let genus = emb.face_trace()?.genus;
    if genus != 0 {
        return Err(Error::NotPlanar { genus });
    }
    Ok(layer_order_unchecked(bfs))
}

pub(crate) fn layer_order_unchecked(bfs: &BfsStructure) -> LayerOrder {
    let mut layers = vec![Vec::new(); bfs.layers.len()];
    let mut rank = vec![0; bfs.layer_of.len()];
    for v in bfs.preorder() {
        let layer = &mut layers[bfs.layer_of[v]];
        rank[v] = layer.len();
        layer.push(v);
    }
    LayerOrder { layers, rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> EmbeddedGraph {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        EmbeddedGraph::new(g, vec![vec![0], vec![0, 1], vec![1]]).unwrap()
    }

    fn cycle(n: usize) -> EmbeddedGraph {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::new(n, edges).unwrap();
        let rot = (0..n).map(|i| vec![(i + n - 1) % n, i]).collect();
        EmbeddedGraph::new(g, rot).unwrap()
    }

    #[test]
    fn path_layers() {
        let bfs = bfs_structure(&path3(), 0).unwrap();
        assert_eq!(bfs.layers, vec![vec![0], vec![1], vec![2]]);
        let order = layer_order(&path3(), &bfs).unwrap();
        assert_eq!(order.layers, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn c5_layer_sizes_and_level_edge() {
        let emb = cycle(5);
        let bfs = bfs_structure(&emb, 0).unwrap();
        let sizes: Vec<usize> = bfs.layers.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 2]);
        // vertices 2 and 3 are both at distance 2: edge (2,3) has id 2
        assert_eq!(bfs.classify(emb.graph(), 2), EdgeClass::Level);
        assert_eq!(bfs.classify(emb.graph(), 0), EdgeClass::BindingTree);
    }

    #[test]
    fn c4_exactly_one_far_edge_is_tree() {
        // a-b-c-d-a = 0-1-2-3-0, rooted at 0; vertex 2 is the far vertex
        let emb = cycle(4);
        let bfs = bfs_structure(&emb, 0).unwrap();
        let g = emb.graph();
        let bc = g.edge_between(1, 2).unwrap();
        let dc = g.edge_between(3, 2).unwrap();
        let classes = [bfs.classify(g, bc), bfs.classify(g, dc)];
        // rotation at 2 is [1, 2]; lowest id edge 1 = (1,2) comes first
        assert_eq!(classes, [EdgeClass::BindingTree, EdgeClass::BindingNonTree]);
    }

    #[test]
    fn star_children_follow_rotation() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let emb = EmbeddedGraph::new(g, vec![vec![0, 1, 2], vec![0], vec![1], vec![2]]).unwrap();
        let bfs = bfs_structure(&emb, 0).unwrap();
        let order = layer_order(&emb, &bfs).unwrap();
        assert_eq!(order.layers[1], vec![1, 2, 3]);
    }

    #[test]
    fn binary_tree_leaves_left_to_right() {
        // 0 -> (1, 2); 1 -> (3, 4); 2 -> (5, 6)
        let edges = vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)];
        let g = Graph::new(7, edges).unwrap();
        let rot = vec![vec![0, 1], vec![0, 2, 3], vec![1, 4, 5], vec![2], vec![3], vec![4], vec![5]];
        let emb = EmbeddedGraph::new(g, rot).unwrap();
        let bfs = bfs_structure(&emb, 0).unwrap();
        assert_eq!(layer_order(&emb, &bfs).unwrap().layers[2], vec![3, 4, 5, 6]);
    }

    #[test]
    fn grid_layer_sizes() {
        let emb = crate::generators::grid(3, 3);
        let bfs = bfs_structure(&emb, 0).unwrap();
        let sizes: Vec<usize> = bfs.layers.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3, 2, 1]);
        bfs.check(emb.graph()).unwrap();
    }

    #[test]
    fn layer_order_rejects_nonplanar() {
        let emb = crate::generators::toroidal_grid(3, 3).unwrap();
        let bfs = bfs_structure(&emb, 0).unwrap();
        assert!(matches!(layer_order(&emb, &bfs), Err(Error::NotPlanar { genus: 2 })));
    }
}
