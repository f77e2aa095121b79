//! Lays out planar grids and prints queue counts against the bound.
//!
//! `cargo run --example planar_layout -- 6 8`

use queuelay::generators;
use queuelay::layout::verify_layout;
use queuelay::planar::{layout_planar, PlanarOptions};

fn main() -> queuelay::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let sizes = match args[..] {
        [r, c] => vec![(r, c)],
        _ => (3..=8).map(|k| (k, k)).collect(),
    };
    println!("{:>7} {:>5} {:>5} {:>6} {:>6}", "grid", "n", "m", "queues", "bound");
    for (rows, cols) in sizes {
        let emb = generators::grid(rows, cols);
        let result = layout_planar(&emb, &PlanarOptions { check: true, ..Default::default() })?;
        assert!(verify_layout(emb.graph(), &result.layout).is_ok());
        println!(
            "{:>7} {:>5} {:>5} {:>6} {:>6}",
            format!("{rows}x{cols}"),
            emb.graph().vertex_count(),
            emb.graph().edge_count(),
            result.layout.queue_count(),
            result.bound()
        );
    }
    Ok(())
}
