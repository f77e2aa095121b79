//! Rotation systems, face tracing and Euler genus.
//!
//! An edge `e = (u, v)` has two darts: `2e` leaves `u`, `2e + 1` leaves `v`.
//! A face walk arrives at a vertex along one edge and leaves along the next
//! edge of the rotation (or the previous one while the local orientation is
//! flipped by an odd number of `-1` signatures).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

pub type Dart = usize;

/// A graph together with a rotation system and edge signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: Vec<Vec<EdgeId>>,
    signature: Vec<i8>,
    /// Index of `dart_edge(d)` in the rotation at `dart_tail(d)`.
    position: Vec<usize>,
}

impl EmbeddedGraph {
    /// Orientable embedding (all signatures `+1`).
    pub fn new(graph: Graph, rotation: Vec<Vec<EdgeId>>) -> Result<Self> {
        let m = graph.edge_count();
        Self::with_signature(graph, rotation, vec![1; m])
    }

    pub fn with_signature(graph: Graph, rotation: Vec<Vec<EdgeId>>, signature: Vec<i8>) -> Result<Self> {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        if rotation.len() != n {
            return Err(Error::InvalidEmbedding(format!(
                "rotation lists {} vertices, graph has {n}",
                rotation.len()
            )));
        }
        if signature.len() != m {
            return Err(Error::InvalidEmbedding(format!(
                "signature lists {} edges, graph has {m}",
                signature.len()
            )));
        }
        if let Some(e) = signature.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidEmbedding(format!("signature of edge {e} is not +1/-1")));
        }
        let mut position = vec![usize::MAX; 2 * m];
        for (v, rot) in rotation.iter().enumerate() {
            if rot.len() != graph.degree(v) {
                return Err(Error::InvalidEmbedding(format!(
                    "rotation at {v} has {} entries, degree is {}",
                    rot.len(),
                    graph.degree(v)
                )));
            }
            for (i, &e) in rot.iter().enumerate() {
                if e >= m {
                    return Err(Error::InvalidEmbedding(format!("rotation at {v} names unknown edge {e}")));
                }
                let (a, b) = graph.endpoints(e);
                let d = if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidEmbedding(format!(
                        "rotation at {v} names edge {e} which is not incident"
                    )));
                };
                if position[d] != usize::MAX {
                    return Err(Error::InvalidEmbedding(format!("edge {e} repeated in rotation at {v}")));
                }
                position[d] = i;
            }
        }
        Ok(EmbeddedGraph { graph, rotation, signature, position })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotation
    }

    pub fn signature(&self, e: EdgeId) -> i8 {
        self.signature[e]
    }

    pub fn signatures(&self) -> &[i8] {
        &self.signature
    }

    pub fn is_all_positive(&self) -> bool {
        self.signature.iter().all(|&s| s == 1)
    }

    /// Dart of `e` leaving `v`.
    pub fn dart(&self, e: EdgeId, v: VertexId) -> Dart {
        if self.graph.endpoints(e).0 == v {
            2 * e
        } else {
            2 * e + 1
        }
    }

    pub fn dart_tail(&self, d: Dart) -> VertexId {
        let (a, b) = self.graph.endpoints(d / 2);
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn dart_head(&self, d: Dart) -> VertexId {
        self.dart_tail(d ^ 1)
    }

    /// Position of `e` in the rotation at `v`.
    pub fn position(&self, e: EdgeId, v: VertexId) -> usize {
        self.position[self.dart(e, v)]
    }

    /// The edge following `e` in the rotation at `v`.
    pub fn succ(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = &self.rotation[v];
        rot[(self.position(e, v) + 1) % rot.len()]
    }

    pub fn pred(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = &self.rotation[v];
        rot[(self.position(e, v) + rot.len() - 1) % rot.len()]
    }

    /// Sub-embedding induced by `vertices`, rotations restricted.
    pub fn induced(&self, vertices: &[VertexId]) -> (EmbeddedGraph, crate::graph::InducedSubgraph) {
        let sub = self.graph.induced(vertices);
        let mut parent_to_local = vec![usize::MAX; self.graph.edge_count()];
        for (local, &e) in sub.edge_to_parent.iter().enumerate() {
            parent_to_local[e] = local;
        }
        let rotation = sub
            .vertex_to_parent
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter_map(|&e| (parent_to_local[e] != usize::MAX).then_some(parent_to_local[e]))
                    .collect()
            })
            .collect();
        let signature = sub.edge_to_parent.iter().map(|&e| self.signature[e]).collect();
        let emb = EmbeddedGraph::with_signature(sub.graph.clone(), rotation, signature)
            .expect("restriction of a valid embedding");
        (emb, sub)
    }

    /// Equivalent embedding with every signature `+1`, obtained by flipping
    /// local orientations at vertices. Fails if the embedding is
    /// non-orientable.
    pub fn to_orientable(&self) -> Result<EmbeddedGraph> {
        if self.is_all_positive() {
            return Ok(self.clone());
        }
        let n = self.graph.vertex_count();
        let mut flip: Vec<Option<i8>> = vec![None; n];
        for s in 0..n {
            if flip[s].is_some() {
                continue;
            }
            flip[s] = Some(1);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in self.graph.incident(v) {
                    let w = self.graph.other(e, v);
                    let want = flip[v].unwrap() * self.signature[e];
                    match flip[w] {
                        None => {
                            flip[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(f) if f != want => {
                            return Err(Error::InvalidEmbedding(format!(
                                "embedding is non-orientable (edge {e})"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, rot)| {
                if flip[v] == Some(-1) {
                    rot.iter().rev().copied().collect()
                } else {
                    rot.clone()
                }
            })
            .collect();
        EmbeddedGraph::new(self.graph.clone(), rotation)
    }

    /// Traces the faces of a connected embedding.
    pub fn face_trace(&self) -> Result<FaceTrace> {
        let n = self.graph.vertex_count();
        let m = self.graph.edge_count();
        if n == 0 {
            return Err(Error::InvalidGraph("empty graph".into()));
        }
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if m == 0 {
            return Ok(FaceTrace {
                faces: vec![FaceWalk { steps: Vec::new(), vertices: vec![0] }],
                genus: 0,
                edge_sides: Vec::new(),
                face_of_state: Vec::new(),
            });
        }
        let states = 4 * m;
        let mut face_of_state = vec![usize::MAX; states];
        let mut faces = Vec::new();
        for start in 0..states {
            if face_of_state[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut steps = Vec::new();
            let mut s = start;
            loop {
                if face_of_state[s] != usize::MAX {
                    if s == start {
                        break;
                    }
                    return Err(Error::InvalidEmbedding("face tracing did not close".into()));
                }
                face_of_state[s] = id;
                steps.push(Step::from_state(s));
                s = self.next_state(s);
            }
            for step in &steps {
                let r = self.reverse_state(step.state());
                if face_of_state[r] != usize::MAX && face_of_state[r] != id {
                    return Err(Error::InvalidEmbedding("reverse walk shared between faces".into()));
                }
                face_of_state[r] = id;
            }
            let mut vertices: Vec<VertexId> = steps.iter().map(|st| self.dart_tail(st.dart)).collect();
            vertices.sort_unstable();
            vertices.dedup();
            faces.push(FaceWalk { steps, vertices });
        }
        let mut edge_sides = vec![Vec::with_capacity(2); m];
        for (f, face) in faces.iter().enumerate() {
            for (i, st) in face.steps.iter().enumerate() {
                edge_sides[st.dart / 2].push(EdgeSide { face: f, index: i });
            }
        }
        let edge_sides: Vec<[EdgeSide; 2]> = edge_sides
            .into_iter()
            .enumerate()
            .map(|(e, sides)| {
                <[EdgeSide; 2]>::try_from(sides)
                    .map_err(|_| Error::InvalidEmbedding(format!("edge {e} does not have exactly two sides")))
            })
            .collect::<Result<_>>()?;
        let genus = 2 - n as i64 + m as i64 - faces.len() as i64;
        if genus < 0 {
            return Err(Error::InvalidEmbedding(format!("negative Euler genus {genus}")));
        }
        Ok(FaceTrace { faces, genus, edge_sides, face_of_state })
    }

    fn next_state(&self, s: usize) -> usize {
        let (d, eps) = (s / 2, if s.is_multiple_of(2) { 1 } else { -1 });
        let e = d / 2;
        let w = self.dart_head(d);
        let eps2 = eps * self.signature[e];
        let rot = &self.rotation[w];
        let pos = self.position[d ^ 1];
        let next = if eps2 == 1 { (pos + 1) % rot.len() } else { (pos + rot.len() - 1) % rot.len() };
        let d2 = self.dart(rot[next], w);
        2 * d2 + usize::from(eps2 == -1)
    }

    fn reverse_state(&self, s: usize) -> usize {
        let (d, eps) = (s / 2, if s.is_multiple_of(2) { 1 } else { -1 });
        let eps2 = -eps * self.signature[d / 2];
        2 * (d ^ 1) + usize::from(eps2 == -1)
    }
}

/// One step of a face walk: leave `dart_tail(dart)` along `dart`, with the
/// local orientation `orientation` (`+1` or `-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub dart: Dart,
    pub orientation: i8,
}

impl Step {
    fn from_state(s: usize) -> Self {
        Step { dart: s / 2, orientation: if s.is_multiple_of(2) { 1 } else { -1 } }
    }

    fn state(&self) -> usize {
        2 * self.dart + usize::from(self.orientation == -1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub steps: Vec<Step>,
    /// Distinct vertices on the boundary walk, ascending.
    pub vertices: Vec<VertexId>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Occurrence of an edge on a face walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSide {
    pub face: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTrace {
    pub faces: Vec<FaceWalk>,
    pub genus: i64,
    /// The two face-walk occurrences of each edge.
    pub edge_sides: Vec<[EdgeSide; 2]>,
    face_of_state: Vec<usize>,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face whose walk leaves along `d` with positive local orientation.
    /// For orientable embeddings every dart lies on exactly one face.
    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.face_of_state[2 * d]
    }

    /// Faces whose boundary walk passes through `v`, ascending.
    pub fn faces_at(&self, v: VertexId) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].contains_vertex(v)).collect()
    }

    /// For each vertex, the faces through it, ascending.
    pub fn vertex_faces(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for (f, face) in self.faces.iter().enumerate() {
            for &v in &face.vertices {
                out[v].push(f);
            }
        }
        out
    }

    /// The two faces on either side of `e` (possibly equal).
    pub fn faces_of_edge(&self, e: EdgeId) -> (usize, usize) {
        let [a, b] = self.edge_sides[e];
        (a.face, b.face)
    }
}
