//! Layouts of a graph from layouts of one of its subdivisions.
//!
//! Each edge of `G` is read along its path in `G'` from its earlier
//! endpoint. Edges whose paths have the same length, the same sequence of
//! directions and the same sequence of queues cannot nest, so the key
//! `(ℓ, directions, queues)` is a valid queue for `G`.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::layout::{verify_layout, QueueLayout};

/// A `(≤ c)`-subdivision `G'` of `G`. Vertices of `G` keep their ids in
/// `G'`; subdivision vertices have ids `n..n'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub original: Graph,
    pub subdivided: Graph,
    /// For each edge `vw` of `G`, the path `v, x_1, ..., x_ℓ, w` in `G'`.
    pub paths: Vec<Vec<VertexId>>,
    pub c: usize,
}

/// On-disk form: `{"n": n', "c": c, "paths": [[v, x1, ..., w], ...]}`.
/// The edges of `G'` are numbered path by path, in path order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionFile {
    pub n: usize,
    pub c: usize,
    pub paths: Vec<Vec<VertexId>>,
}

impl SubdivisionMap {
    /// Builds `G'` from the paths (edges numbered path by path) and checks
    /// that it is a `(≤ c)`-subdivision of `original`.
    pub fn from_paths(original: &Graph, n_sub: usize, paths: Vec<Vec<VertexId>>, c: usize) -> Result<Self> {
        let edges = paths.iter().flat_map(|p| p.windows(2).map(|w| (w[0], w[1]))).collect();
        let subdivided =
            Graph::new(n_sub, edges).map_err(|e| Error::InvalidSubdivision(format!("subdivided graph: {e}")))?;
        Self::new(original.clone(), subdivided, paths, c)
    }

    pub fn new(original: Graph, subdivided: Graph, paths: Vec<Vec<VertexId>>, c: usize) -> Result<Self> {
        let n = original.vertex_count();
        let bad = |msg: String| Err(Error::InvalidSubdivision(msg));
        if paths.len() != original.edge_count() {
            return bad(format!("{} paths for {} edges", paths.len(), original.edge_count()));
        }
        if subdivided.vertex_count() < n {
            return bad("subdivision has fewer vertices than the graph".into());
        }
        let mut used = HashSet::new();
        let mut covered = 0;
        for (e, path) in paths.iter().enumerate() {
            let (a, b) = original.endpoints(e);
            let (Some(&s), Some(&t)) = (path.first(), path.last()) else {
                return bad(format!("path of edge {e} is empty"));
            };
            if !((s, t) == (a, b) || (s, t) == (b, a)) {
                return bad(format!("path of edge {e} does not join {a} and {b}"));
            }
            if path.len() - 2 > c {
                return bad(format!("edge {e} is subdivided {} times, more than c = {c}", path.len() - 2));
            }
            for &x in &path[1..path.len() - 1] {
                if x < n || x >= subdivided.vertex_count() {
                    return bad(format!("internal vertex {x} of edge {e} is not a subdivision vertex"));
                }
                if !used.insert(x) {
                    return bad(format!("subdivision vertex {x} lies on two paths"));
                }
                if subdivided.degree(x) != 2 {
                    return bad(format!("subdivision vertex {x} has degree {}", subdivided.degree(x)));
                }
            }
            for w in path.windows(2) {
                if subdivided.edge_between(w[0], w[1]).is_none() {
                    return bad(format!("path of edge {e} uses the non-edge {}-{}", w[0], w[1]));
                }
            }
            covered += path.len() - 1;
        }
        if covered != subdivided.edge_count() || used.len() + n != subdivided.vertex_count() {
            return bad("paths do not cover the subdivided graph exactly".into());
        }
        Ok(SubdivisionMap { original, subdivided, paths, c })
    }

    pub fn from_file(original: &Graph, file: SubdivisionFile) -> Result<Self> {
        Self::from_paths(original, file.n, file.paths, file.c)
    }

    pub fn to_file(&self) -> SubdivisionFile {
        SubdivisionFile { n: self.subdivided.vertex_count(), c: self.c, paths: self.paths.clone() }
    }

    /// Subdivides each edge a uniformly random number of times in `0..=c`,
    /// never exceeding `max_vertices` vertices in total.
    pub fn random(original: &Graph, c: usize, max_vertices: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut next = original.vertex_count();
        let mut paths = Vec::with_capacity(original.edge_count());
        for &(u, v) in original.edges() {
            let budget = max_vertices.saturating_sub(next).min(c);
            let s = rng.random_range(0..=budget);
            let mut path = vec![u];
            path.extend(next..next + s);
            path.push(v);
            next += s;
            paths.push(path);
        }
        Self::from_paths(original, next, paths, c)
    }
}

/// Maximum queue count: `Σ_{ℓ=0}^{c} (2k)^{ℓ+1}`, saturating.
pub fn unsubdivide_bound(k: usize, c: usize) -> u128 {
    let base = 2 * k as u128;
    let mut term = 1u128;
    let mut total = 0u128;
    for _ in 0..=c {
        term = term.saturating_mul(base);
        total = total.saturating_add(term);
    }
    total
}

/// The queue key of one edge of `G`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey {
    pub subdivisions: usize,
    pub directions: Vec<i8>,
    pub queues: Vec<usize>,
}

/// Layout of `G` using `layout`'s order restricted to `V(G)`.
pub fn unsubdivide_layout(map: &SubdivisionMap, layout: &QueueLayout) -> Result<QueueLayout> {
    let (out, _) = unsubdivide_with_keys(map, layout)?;
    Ok(out)
}

pub fn unsubdivide_with_keys(map: &SubdivisionMap, layout: &QueueLayout) -> Result<(QueueLayout, Vec<PathKey>)> {
    let sub = &map.subdivided;
    if layout.order().len() != sub.vertex_count() || layout.queues().len() != sub.edge_count() {
        return Err(Error::InvalidLayout("layout does not match the subdivided graph".into()));
    }
    verify_layout(sub, layout).map_err(|v| Error::InvalidLayout(format!("layout of the subdivision: {v}")))?;
    let n = map.original.vertex_count();
    let order: Vec<VertexId> = layout.order().iter().copied().filter(|&v| v < n).collect();
    let pos = |v: VertexId| layout.position(v);
    let keys: Vec<PathKey> = map
        .paths
        .iter()
        .map(|path| {
            let mut path: Vec<VertexId> = path.clone();
            if pos(path[0]) > pos(path[path.len() - 1]) {
                path.reverse();
            }
            let directions = path.windows(2).map(|w| if pos(w[0]) < pos(w[1]) { 1 } else { -1 }).collect();
            let queues = path
                .windows(2)
                .map(|w| layout.queue_of(sub.edge_between(w[0], w[1]).expect("validated path")))
                .collect();
            PathKey { subdivisions: path.len() - 2, directions, queues }
        })
        .collect();
    let index: BTreeMap<&PathKey, usize> =
        keys.iter().collect::<std::collections::BTreeSet<_>>().into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let queues: Vec<usize> = keys.iter().map(|k| index[k]).collect::<Vec<EdgeId>>();
    let out = QueueLayout::new(order, queues, index.len())?;
    verify_layout(&map.original, &out).map_err(|v| Error::InvariantBreach(format!("unsubdivided layout: {v}")))?;
    if out.queue_count() as u128 > unsubdivide_bound(layout.queue_count(), map.c) {
        return Err(Error::InvariantBreach("unsubdivided layout exceeds its queue bound".into()));
    }
    Ok((out, keys))
}
