//! Recovers a layout of a graph from an optimal layout of a random
//! subdivision of it.
//!
//! `cargo run --example unsubdivide -- 2`

use queuelay::generators;
use queuelay::layout::exact_queue_number;
use queuelay::unsubdivide::{unsubdivide_bound, unsubdivide_layout, SubdivisionMap};
use queuelay::Graph;

fn main() -> queuelay::Result<()> {
    let c: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    // the triangular prism
    let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])?;
    let mut rng = generators::rng(11);
    let map = SubdivisionMap::random(&g, c, 9, &mut rng)?;
    let (k, layout) = exact_queue_number(&map.subdivided, 9)?;
    let out = unsubdivide_layout(&map, &layout)?;
    println!("subdivision: n'={} m'={} c={} qn={k}", map.subdivided.vertex_count(), map.subdivided.edge_count(), c);
    println!("order of G': {:?}", layout.order());
    println!("order of G:  {:?}", out.order());
    println!("queues for G: {} (bound {})", out.queue_count(), unsubdivide_bound(k, c));
    Ok(())
}
