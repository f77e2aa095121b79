//! Deterministic instance families.
//!
//! Random families draw from SplitMix64 (`rand_xoshiro::SplitMix64`, the
//! standard constants `0x9E3779B97F4A7C15`, `0xBF58476D1CE4E5B9`,
//! `0x94D049BB133111EB`), so a seed yields the same instance everywhere.

pub mod maps;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Planar `rows × cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> EmbeddedGraph {
    grid_like(rows, cols, false).expect("grid dimensions are valid")
}

/// `C_rows × C_cols` on the torus (Euler genus 2). Needs `rows, cols ≥ 3`.
pub fn toroidal_grid(rows: usize, cols: usize) -> Result<EmbeddedGraph> {
    if rows < 3 || cols < 3 {
        return Err(Error::InvalidParameter(format!("toroidal grid needs rows, cols >= 3, got {rows}x{cols}")));
    }
    grid_like(rows, cols, true)
}

fn grid_like(rows: usize, cols: usize, wrap: bool) -> Result<EmbeddedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("grid dimensions must be positive".into()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    // east, north, west, south slots
    let mut slots = vec![[None::<EdgeId>; 4]; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols || wrap {
                let (a, b) = (id(r, c), id(r, (c + 1) % cols));
                slots[a][0] = Some(edges.len());
                slots[b][2] = Some(edges.len());
                edges.push((a, b));
            }
            if r + 1 < rows || wrap {
                let (a, b) = (id(r, c), id((r + 1) % rows, c));
                slots[a][3] = Some(edges.len());
                slots[b][1] = Some(edges.len());
                edges.push((a, b));
            }
        }
    }
    let g = Graph::new(rows * cols, edges)?;
    let rotation = slots.iter().map(|s| s.iter().flatten().copied().collect()).collect();
    EmbeddedGraph::new(g, rotation)
}

/// `K_5` on the torus: the rotation at `i` is `i+1, i+2, i+4, i+3` (mod 5),
/// which has 5 faces.
pub fn toroidal_k5() -> EmbeddedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            edges.push((i, j));
        }
    }
    let g = Graph::new(5, edges).expect("K5 is simple");
    let rotation = (0..5)
        .map(|i| [1, 2, 4, 3].iter().map(|k| g.edge_between(i, (i + k) % 5).unwrap()).collect())
        .collect();
    EmbeddedGraph::new(g, rotation).expect("K5 rotation is well formed")
}

/// The lower-bound instance: a binary tree whose `2Δ²` leaves are
/// `v[0][0], ..., v[Δ-1][Δ-1], w[Δ-1][Δ-1], ..., w[0][0]` from left to right,
/// with each `v`-leaf edge subdivided and the matching `v[i][j] w[i][j]`.
#[derive(Debug, Clone)]
pub struct TightExample {
    pub delta: usize,
    pub embedding: EmbeddedGraph,
    pub v: Vec<Vec<VertexId>>,
    pub w: Vec<Vec<VertexId>>,
    /// Subdivision vertex above each `v` leaf.
    pub s: Vec<Vec<VertexId>>,
    pub matching: Vec<Vec<EdgeId>>,
}

pub fn tight_example(delta: usize) -> Result<TightExample> {
    if delta < 2 {
        return Err(Error::InvalidParameter(format!("tight example needs delta >= 2, got {delta}")));
    }
    let leaves = 2 * delta * delta;
    let depth = leaves.next_power_of_two().trailing_zeros() as usize;
    let mut b = TreeBuilder::default();
    let mut labels = Vec::with_capacity(leaves);
    for i in 0..delta {
        for j in 0..delta {
            labels.push(Leaf::V(i, j));
        }
    }
    for i in (0..delta).rev() {
        for j in (0..delta).rev() {
            labels.push(Leaf::W(i, j));
        }
    }
    let root = b.vertex();
    let mut ex = TightExample {
        delta,
        embedding: EmbeddedGraph::new(Graph::new(0, vec![])?, vec![])?,
        v: vec![vec![0; delta]; delta],
        w: vec![vec![0; delta]; delta],
        s: vec![vec![0; delta]; delta],
        matching: vec![vec![0; delta]; delta],
    };
    b.subtree(root, 0, depth, &labels, &mut ex);
    for i in 0..delta {
        for j in 0..delta {
            ex.matching[i][j] = b.edge(ex.v[i][j], ex.w[i][j]);
        }
    }
    let g = Graph::new(b.n, b.edges)?;
    ex.embedding = EmbeddedGraph::new(g, b.rotation)?;
    Ok(ex)
}

#[derive(Clone, Copy)]
enum Leaf {
    V(usize, usize),
    W(usize, usize),
}

#[derive(Default)]
struct TreeBuilder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    rotation: Vec<Vec<EdgeId>>,
}

impl TreeBuilder {
    fn vertex(&mut self) -> VertexId {
        self.rotation.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        let e = self.edges.len();
        self.edges.push((a, b));
        self.rotation[a].push(e);
        self.rotation[b].push(e);
        e
    }

    fn child(&mut self, parent: VertexId) -> VertexId {
        let c = self.vertex();
        self.edge(parent, c);
        c
    }

    /// `node` sits at `level`; its subtree receives `labels` as leaves at
    /// depth `depth`.
    fn subtree(&mut self, node: VertexId, level: usize, depth: usize, labels: &[Leaf], ex: &mut TightExample) {
        if level == depth {
            debug_assert_eq!(labels.len(), 1);
            match labels[0] {
                Leaf::V(i, j) => {
                    ex.s[i][j] = node;
                    ex.v[i][j] = self.child(node);
                }
                Leaf::W(i, j) => ex.w[i][j] = node,
            }
            return;
        }
        let split = labels.len().div_ceil(2);
        let left = self.child(node);
        self.subtree(left, level + 1, depth, &labels[..split], ex);
        if split < labels.len() {
            let right = self.child(node);
            self.subtree(right, level + 1, depth, &labels[split..], ex);
        }
    }
}

/// Random well-layered graph: a random plane tree on `n` vertices with at
/// most `delta` children per vertex, plus a random non-crossing matching
/// between equal-depth leaves.
pub fn well_layered(n: usize, delta: usize, seed: u64) -> Result<EmbeddedGraph> {
    if n < 2 || delta < 1 {
        return Err(Error::InvalidParameter("well-layered generator needs n >= 2 and delta >= 1".into()));
    }
    let mut rng = rng(seed);
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut depth = vec![0; n];
    let mut edges = Vec::with_capacity(2 * n);
    let mut rotation: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    let mut open: Vec<VertexId> = vec![0];
    for v in 1..n {
        let k = rng.random_range(0..open.len());
        let p = open[k];
        children[p].push(v);
        if children[p].len() == delta {
            open.swap_remove(k);
        }
        depth[v] = depth[p] + 1;
        rotation[p].push(edges.len());
        rotation[v].push(edges.len());
        edges.push((p, v));
        open.push(v);
    }
    let mut stack: Vec<VertexId> = Vec::new();
    let mut dfs = vec![0];
    while let Some(v) = dfs.pop() {
        dfs.extend(children[v].iter().rev());
        if !children[v].is_empty() {
            continue;
        }
        loop {
            match stack.last() {
                Some(&top) if depth[top] == depth[v] && rng.random_bool(0.7) => {
                    stack.pop();
                    rotation[top].push(edges.len());
                    rotation[v].push(edges.len());
                    edges.push((top, v));
                    break;
                }
                Some(&top) if depth[top] != depth[v] && rng.random_bool(0.3) => {
                    stack.pop();
                }
                _ => {
                    if rng.random_bool(0.6) {
                        stack.push(v);
                    }
                    break;
                }
            }
        }
    }
    EmbeddedGraph::new(Graph::new(n, edges)?, rotation)
}

/// Embedding from oriented triangular (or any) faces: a face `(a, b, c)`
/// means the walk arrives at `b` from `a` and leaves towards `c`. Edge ids
/// follow ascending `(min, max)` order.
pub fn from_oriented_faces(n: usize, faces: &[Vec<VertexId>]) -> Result<EmbeddedGraph> {
    let mut pairs: Vec<(VertexId, VertexId)> = faces
        .iter()
        .flat_map(|f| (0..f.len()).map(move |i| (f[i].min(f[(i + 1) % f.len()]), f[i].max(f[(i + 1) % f.len()]))))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let g = Graph::new(n, pairs)?;
    let mut succ = vec![Vec::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (a, b, c) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[b].push((a, c));
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let deg = g.degree(v);
        if deg == 0 {
            rotation.push(Vec::new());
            continue;
        }
        let start = g.neighbors(v).min().unwrap();
        let mut rot = Vec::with_capacity(deg);
        let mut cur = start;
        loop {
            rot.push(g.edge_between(v, cur).unwrap());
            let next = succ[v]
                .iter()
                .find(|&&(a, _)| a == cur)
                .map(|&(_, c)| c)
                .ok_or_else(|| Error::InvalidEmbedding(format!("faces do not close around vertex {v}")))?;
            cur = next;
            if cur == start {
                break;
            }
            if rot.len() > deg {
                return Err(Error::InvalidEmbedding(format!("faces wind around vertex {v} more than once")));
            }
        }
        if rot.len() != deg {
            return Err(Error::InvalidEmbedding(format!("faces around vertex {v} do not form one cycle")));
        }
        rotation.push(rot);
    }
    EmbeddedGraph::new(g, rotation)
}

/// Random plane triangulation on `n ≥ 3` vertices: repeated face
/// insertions followed by random edge flips.
pub fn random_triangulation(n: usize, seed: u64) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter("triangulation needs n >= 3".into()));
    }
    let mut rng = rng(seed);
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let k = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(k);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    for _ in 0..4 * n {
        let k = rng.random_range(0..faces.len());
        let i = rng.random_range(0..3);
        maps::try_flip(&mut faces, k, i);
    }
    let faces: Vec<Vec<VertexId>> = faces.iter().map(|f| f.to_vec()).collect();
    from_oriented_faces(n, &faces)
}
