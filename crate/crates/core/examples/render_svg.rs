//! Writes concentric-circle drawings of a grid and the Δ = 2 tight example.
//!
//! `cargo run --example render_svg -- out_dir`

use std::path::PathBuf;

use queuelay::planar::{layout_planar, PlanarOptions};
use queuelay::{generators, svg};

fn main() -> queuelay::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    let grid = generators::grid(5, 5);
    let layout = layout_planar(&grid, &PlanarOptions::default())?.layout;
    std::fs::write(dir.join("grid5x5.svg"), svg::render(&grid, 0, Some(&layout))?)?;
    let tight = generators::tight_example(2)?.embedding;
    std::fs::write(dir.join("tight2.svg"), svg::render(&tight, 0, None)?)?;
    println!("wrote {} and {}", dir.join("grid5x5.svg").display(), dir.join("tight2.svg").display());
    Ok(())
}
