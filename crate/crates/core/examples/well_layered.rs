//! Layer groups of a random well-layered graph and the offsets they induce.
//!
//! `cargo run --example well_layered -- 40 3 7`

use queuelay::bfs::bfs_structure;
use queuelay::generators;
use queuelay::well_layered::{explain, partition, verify_lemma6, well_layered_layout};

fn main() -> queuelay::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, delta, seed) = match args[..] {
        [n, d, s] => (n as usize, d as usize, s),
        _ => (30, 3, 7),
    };
    let emb = generators::well_layered(n, delta, seed)?;
    let bfs = bfs_structure(&emb, 0)?;
    let part = partition(&emb, &bfs, delta)?;
    verify_lemma6(emb.graph(), &bfs, &part, delta).map_err(|v| queuelay::Error::InvariantBreach(v.to_string()))?;
    let layout = well_layered_layout(emb.graph(), &bfs, &part, delta)?;
    println!("n={} m={} layers={} queues={}", n, emb.graph().edge_count(), bfs.layers.len(), layout.queue_count());
    for (layer, groups) in part.groups.iter().enumerate() {
        let text: Vec<String> = groups.iter().map(|g| format!("{}:{:?}", g.index, g.vertices)).collect();
        println!("V{layer}: {}", text.join("  "));
    }
    let dump = explain(&bfs, &part);
    println!("vertex 0: {}", serde_json::to_string(&dump[0]).unwrap());
    Ok(())
}
