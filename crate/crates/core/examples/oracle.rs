//! Exact queue-numbers of small graphs compared with the planar pipeline.
//!
//! `cargo run --release --example oracle -- 6`

use queuelay::generators::maps::connected_plane_maps;
use queuelay::layout::exact_queue_number;
use queuelay::planar::{layout_planar, PlanarOptions};

fn main() -> queuelay::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let maps = connected_plane_maps(n);
    let mut histogram = std::collections::BTreeMap::new();
    let mut worst = (0, 0);
    for emb in &maps {
        let (qn, _) = exact_queue_number(emb.graph(), n)?;
        let pipeline = layout_planar(emb, &PlanarOptions::default())?.layout.queue_count();
        assert!(qn <= pipeline);
        *histogram.entry(qn).or_insert(0) += 1;
        worst = worst.max((pipeline, qn));
    }
    println!("{} connected plane maps on {n} vertices", maps.len());
    for (qn, count) in histogram {
        println!("  qn = {qn}: {count}");
    }
    println!("largest pipeline count {} (on a map with qn = {})", worst.0, worst.1);
    Ok(())
}
