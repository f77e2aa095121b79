//! The lower-bound instance: under the pipeline's vertex order its matching
//! edges form a rainbow of size Δ².
//!
//! `cargo run --example tight_example -- 4`

use queuelay::planar::tightness_witness;

fn main() -> queuelay::Result<()> {
    let deltas: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let deltas = if deltas.is_empty() { vec![2, 3, 4] } else { deltas };
    for delta in deltas {
        let w = tightness_witness(delta)?;
        let g = w.example.embedding.graph();
        println!(
            "delta={delta} n={} m={} queues={} bound={} rainbow={} (delta^2 = {})",
            g.vertex_count(),
            g.edge_count(),
            w.result.layout.queue_count(),
            w.result.bound(),
            w.rainbow.len(),
            delta * delta
        );
        for i in 0..delta {
            let groups: Vec<String> =
                (0..delta).map(|j| w.result.components[0].partition.group_of[w.example.v[i][j]].to_string()).collect();
            println!("  g(v[{i}][*]) = {}", groups.join(" "));
        }
    }
    Ok(())
}
