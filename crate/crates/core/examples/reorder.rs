//! Re-orders an optimal layout so that it respects a given layering, at the
//! cost of at most three times the queues.
//!
//! `cargo run --example reorder`

use queuelay::genus::reorder_to_layering;
use queuelay::layout::exact_queue_number;
use queuelay::Graph;

fn main() -> queuelay::Result<()> {
    // the 3-dimensional cube, layered by distance from vertex 0
    let edges = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    let g = Graph::new(8, edges)?;
    let layer_of: Vec<usize> = (0..8u32).map(|v| v.count_ones() as usize).collect();
    let (k, layout) = exact_queue_number(&g, 9)?;
    let out = reorder_to_layering(&g, &layout, &layer_of)?;
    println!("optimal order  {:?}  ({k} queues)", layout.order());
    println!("layered order  {:?}  ({} queues, limit {})", out.order(), out.queue_count(), 3 * k);
    Ok(())
}
