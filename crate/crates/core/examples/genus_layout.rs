//! Bounded-genus pipeline on toroidal grids and K5 on the torus.
//!
//! `cargo run --example genus_layout`

use queuelay::generators;
use queuelay::genus::{layout_genus, planar_inner};
use queuelay::EmbeddedGraph;

fn main() -> queuelay::Result<()> {
    let mut corpus: Vec<(String, EmbeddedGraph)> = Vec::new();
    for r in 3..=5 {
        for c in 3..=5 {
            corpus.push((format!("C{r}xC{c}"), generators::toroidal_grid(r, c)?));
        }
    }
    corpus.push(("K5".into(), generators::toroidal_k5()));
    println!("{:>7} {:>5} {:>3} {:>4} {:>6} {:>6} {:>6}", "graph", "genus", "|Z|", "f'", "inner", "queues", "bound");
    for (name, emb) in corpus {
        let result = layout_genus(&emb, planar_inner)?;
        let comp = &result.components[0];
        println!(
            "{:>7} {:>5} {:>3} {:>4} {:>6} {:>6} {:>6}",
            name,
            result.genus,
            comp.z.z_vertices.len(),
            comp.cut.faces_after,
            comp.inner_queues,
            result.layout.queue_count(),
            result.bound()
        );
    }
    Ok(())
}
