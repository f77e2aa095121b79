#![allow(dead_code)]

use proptest::prelude::*;
use queuelay::{Graph, VertexId};

/// Simple graph on `n` vertices from a bit per vertex pair.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.zip(bits).filter(|(_, &b)| b).map(|(p, _)| p).collect();
    Graph::new(n, edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn arb_graph_with_order(max_n: usize) -> impl Strategy<Value = (Graph, Vec<VertexId>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let order: Vec<VertexId> = (0..g.vertex_count()).collect();
        (Just(g), Just(order).prop_shuffle())
    })
}

/// BFS distances from the smallest vertex of each component, shifted by
/// `offset[c]` for the `c`-th component: a valid layering.
pub fn bfs_layering(g: &Graph, root_choice: usize, offsets: &[usize]) -> Vec<usize> {
    let mut layer = vec![usize::MAX; g.vertex_count()];
    for (c, comp) in g.components().into_iter().enumerate() {
        let root = comp[root_choice % comp.len()];
        let shift = offsets.get(c).copied().unwrap_or(0);
        layer[root] = shift;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if layer[w] == usize::MAX {
                    layer[w] = layer[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    layer
}

/// Minimum number of queues for a fixed order by exhaustive assignment of
/// edges to queues, independent of any rainbow argument.
pub fn exhaustive_partition_queues(g: &Graph, order: &[VertexId]) -> usize {
    let mut pos = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let spans: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    let nest = |a: (usize, usize), b: (usize, usize)| (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1);
    fn assign(
        i: usize,
        k: usize,
        spans: &[(usize, usize)],
        queue: &mut Vec<usize>,
        nest: &dyn Fn((usize, usize), (usize, usize)) -> bool,
    ) -> bool {
        if i == spans.len() {
            return true;
        }
        let used = queue.iter().copied().max().map_or(0, |q| q + 1);
        for q in 0..k.min(used + 1) {
            if (0..i).all(|j| queue[j] != q || !nest(spans[i], spans[j])) {
                queue.push(q);
                if assign(i + 1, k, spans, queue, nest) {
                    return true;
                }
                queue.pop();
            }
        }
        false
    }
    (0..=spans.len())
        .find(|&k| assign(0, k, &spans, &mut Vec::new(), &nest))
        .expect("one queue per edge always suffices")
}
