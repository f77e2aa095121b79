//! Exhaustive small plane maps and isomorphism codes.
//!
//! Every connected simple plane graph on `n ≥ 3` vertices is a spanning
//! subgraph of a plane triangulation on the same vertex set, with the
//! restricted rotation system. The triangulations on `n` vertices are
//! connected under edge flips, so a flip search from one of them reaches
//! them all.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;

use crate::embedding::EmbeddedGraph;
use crate::graph::{Graph, VertexId};

/// Flips the edge `(f[i], f[i+1])` of face `k`. Refuses (returning false)
/// when the new diagonal already exists.
pub fn try_flip(faces: &mut [[VertexId; 3]], k: usize, i: usize) -> bool {
    let f = faces[k];
    let (u, v, a) = (f[i], f[(i + 1) % 3], f[(i + 2) % 3]);
    let Some((k2, j)) = faces
        .iter()
        .enumerate()
        .find_map(|(k2, g)| (0..3).find(|&j| g[j] == v && g[(j + 1) % 3] == u).map(|j| (k2, j)))
    else {
        return false;
    };
    let b = faces[k2][(j + 2) % 3];
    if a == b || has_edge(faces, a, b) {
        return false;
    }
    faces[k] = [a, u, b];
    faces[k2] = [b, v, a];
    true
}

fn has_edge(faces: &[[VertexId; 3]], a: VertexId, b: VertexId) -> bool {
    faces.iter().any(|f| (0..3).any(|i| f[i] == a && f[(i + 1) % 3] == b))
}

fn embed(n: usize, faces: &[[VertexId; 3]]) -> EmbeddedGraph {
    let faces: Vec<Vec<VertexId>> = faces.iter().map(|f| f.to_vec()).collect();
    super::from_oriented_faces(n, &faces).expect("flip search keeps triangulations valid")
}

/// Canonical code of a connected rooted-free orientable map: the smallest
/// breadth-first relabelling over all starting darts. Two embeddings have
/// equal codes iff they are related by an orientation-preserving
/// isomorphism.
pub fn map_code(emb: &EmbeddedGraph) -> Vec<usize> {
    let g = emb.graph();
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        return vec![n];
    }
    let mut best: Option<Vec<usize>> = None;
    let mut label = vec![usize::MAX; n];
    for d in 0..2 * g.edge_count() {
        label.iter_mut().for_each(|l| *l = usize::MAX);
        let mut code = Vec::with_capacity(2 * g.edge_count() + n);
        let root = emb.dart_tail(d);
        label[root] = 0;
        let mut next = 1;
        let mut queue = VecDeque::from([(root, d / 2)]);
        while let Some((v, entry)) = queue.pop_front() {
            let rot = emb.rotation(v);
            let start = emb.position(entry, v);
            for k in 0..rot.len() {
                let e = rot[(start + k) % rot.len()];
                let w = g.other(e, v);
                if label[w] == usize::MAX {
                    label[w] = next;
                    next += 1;
                    queue.push_back((w, e));
                }
                code.push(label[w]);
            }
            code.push(usize::MAX);
            if best.as_ref().is_some_and(|b| code.as_slice() > &b[..code.len().min(b.len())]) {
                break;
            }
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap()
}

/// All plane triangulations on `n ≥ 3` vertices up to orientation-preserving
/// isomorphism.
pub fn triangulations(n: usize) -> Vec<EmbeddedGraph> {
    assert!(n >= 3, "triangulations need at least 3 vertices");
    let mut start = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let [a, b, c] = start.swap_remove(0);
        start.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let mut seen = BTreeMap::new();
    seen.insert(map_code(&embed(n, &start)), start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(faces) = queue.pop_front() {
        for k in 0..faces.len() {
            for i in 0..3 {
                let mut next = faces.clone();
                if try_flip(&mut next, k, i) {
                    let code = map_code(&embed(n, &next));
                    if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(code) {
                        e.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen.values().map(|faces| embed(n, faces)).collect()
}

/// Restriction of `emb` to the edges selected by `mask` (bit `e` keeps edge
/// `e`); kept edges are renumbered in ascending order.
pub fn edge_subset(emb: &EmbeddedGraph, mask: u64) -> EmbeddedGraph {
    let g = emb.graph();
    let mut local = vec![usize::MAX; g.edge_count()];
    let mut edges = Vec::new();
    for e in 0..g.edge_count() {
        if mask >> e & 1 == 1 {
            local[e] = edges.len();
            edges.push(g.endpoints(e));
        }
    }
    let rotation = (0..g.vertex_count())
        .map(|v| emb.rotation(v).iter().filter(|&&e| local[e] != usize::MAX).map(|&e| local[e]).collect())
        .collect();
    EmbeddedGraph::new(Graph::new(g.vertex_count(), edges).unwrap(), rotation).unwrap()
}

fn spans_connected(n: usize, edges: &[(VertexId, VertexId)], mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for (e, &(u, v)) in edges.iter().enumerate() {
        if mask >> e & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
    }
    parts == 1
}

/// Every connected simple plane map on exactly `n` vertices, up to
/// orientation-preserving isomorphism, in canonical-code order.
pub fn connected_plane_maps(n: usize) -> Vec<EmbeddedGraph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![EmbeddedGraph::new(Graph::new(1, vec![]).unwrap(), vec![vec![]]).unwrap()],
        2 => return vec![EmbeddedGraph::new(Graph::new(2, vec![(0, 1)]).unwrap(), vec![vec![0], vec![0]]).unwrap()],
        _ => {}
    }
    let mut found = BTreeMap::new();
    for tri in triangulations(n) {
        let edges = tri.graph().edges().to_vec();
        for mask in 0..1u64 << edges.len() {
            if (mask.count_ones() as usize) < n - 1 || !spans_connected(n, &edges, mask) {
                continue;
            }
            let sub = edge_subset(&tri, mask);
            found.entry(map_code(&sub)).or_insert(sub);
        }
    }
    found.into_values().collect()
}

/// Canonical form of an abstract graph (isomorphism invariant and complete):
/// colour refinement, then the smallest adjacency code over the orderings
/// that respect the refined colour classes.
pub fn graph_canonical_form(g: &Graph) -> (usize, Vec<bool>) {
    let n = g.vertex_count();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| (colour[v], g.neighbors(v).map(|w| colour[w]).sorted().collect()))
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> =
            signatures.iter().collect::<BTreeSet<_>>().into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let refined: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        let done = classes(&refined) == classes(&colour);
        colour = refined;
        if done {
            break;
        }
    }
    let mut cells: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..n {
        cells.entry(colour[v]).or_default().push(v);
    }
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut best: Option<Vec<bool>> = None;
    for choice in cells.values().map(|cell| cell.iter().copied().permutations(cell.len())).multi_cartesian_product() {
        let order: Vec<VertexId> = choice.into_iter().flatten().collect();
        let code: Vec<bool> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| adj[order[i]][order[j]]).collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    (n, best.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_counts() {
        // octahedron is the only 4-connected one at n = 6; counts of
        // unlabelled triangulations: 1, 1, 1, 2, 5 (mirror pairs may split)
        assert_eq!(triangulations(3).len(), 1);
        assert_eq!(triangulations(4).len(), 1);
        assert_eq!(triangulations(5).len(), 1);
        assert_eq!(triangulations(6).len(), 2);
        assert!(triangulations(7).len() >= 5);
        for t in triangulations(6) {
            assert_eq!(t.face_trace().unwrap().genus, 0);
            assert_eq!(t.graph().edge_count(), 12);
        }
    }

    #[test]
    fn small_map_counts() {
        assert_eq!(connected_plane_maps(1).len(), 1);
        assert_eq!(connected_plane_maps(2).len(), 1);
        // path and triangle
        assert_eq!(connected_plane_maps(3).len(), 2);
        for m in connected_plane_maps(5) {
            assert!(m.graph().is_connected());
            assert_eq!(m.face_trace().unwrap().genus, 0);
        }
    }

    #[test]
    fn abstract_classes_match_connected_planar_graph_counts() {
        // unlabelled connected planar graphs on 1..=6 vertices
        for (n, expected) in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 20), (6, 99)] {
            let classes: BTreeSet<_> = connected_plane_maps(n).iter().map(|m| graph_canonical_form(m.graph())).collect();
            assert_eq!(classes.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn map_code_distinguishes_star_rotations_only_up_to_rotation() {
        // two rotations of K_{1,3} are the same map; code is rotation invariant
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let a = EmbeddedGraph::new(g.clone(), vec![vec![0, 1, 2], vec![0], vec![1], vec![2]]).unwrap();
        let b = EmbeddedGraph::new(g, vec![vec![2, 1, 0], vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(map_code(&a), map_code(&b));
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let c5 = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let relabelled = Graph::new(5, vec![(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(graph_canonical_form(&c5), graph_canonical_form(&relabelled));
        let p5 = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_ne!(graph_canonical_form(&c5), graph_canonical_form(&p5));
    }
}
