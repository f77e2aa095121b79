//! Concentric-circle drawings of BFS layerings.
//!
//! Layer `i` sits on a circle of radius `i + 1`; within a layer, vertices are
//! evenly spaced by their rank in the layer order, clockwise from the top.
//! Tree edges are straight, level edges and non-tree binding edges are
//! quadratic arcs bulging outwards.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::bfs::{bfs_structure, layer_order, BfsStructure, EdgeClass};
use crate::embedding::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::layout::QueueLayout;

const UNIT: f64 = 60.0;
const MARGIN: f64 = 30.0;
const TREE_COLOUR: &str = "#1f77b4";
const LEVEL_COLOUR: &str = "#8c564b";
const BINDING_COLOUR: &str = "#2ca02c";

/// Renders a connected planar embedding from `root`.
pub fn render(emb: &EmbeddedGraph, root: usize, layout: Option<&QueueLayout>) -> Result<String> {
    if !emb.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let bfs = bfs_structure(emb, root)?;
    render_svg(emb, &bfs, layout)
}

/// When a layout is given, vertices are labelled by their position in it
/// and every edge carries its queue in a `data-queue` attribute.
pub fn render_svg(emb: &EmbeddedGraph, bfs: &BfsStructure, layout: Option<&QueueLayout>) -> Result<String> {
    let order = layer_order(emb, bfs)?;
    let g = emb.graph();
    let n = g.vertex_count();
    let outer = order.layers.len() as f64;
    let centre = MARGIN + (outer + 1.0) * UNIT;
    let size = 2.0 * centre;

    let angle = |v: usize| {
        let len = order.layers[bfs.layer_of[v]].len() as f64;
        2.0 * PI * order.rank[v] as f64 / len - PI / 2.0
    };
    let radius = |v: usize| (bfs.layer_of[v] + 1) as f64;
    let point = |r: f64, a: f64| (centre + UNIT * r * a.cos(), centre + UNIT * r * a.sin());

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.3}" height="{size:.3}" viewBox="0 0 {size:.3} {size:.3}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r##"<g class="layers" fill="none" stroke="#dddddd" stroke-dasharray="4 4">"##);
    for i in 0..order.layers.len() {
        let _ = writeln!(out, r#"<circle cx="{centre:.3}" cy="{centre:.3}" r="{:.3}"/>"#, UNIT * (i + 1) as f64);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g class="edges" fill="none" stroke-width="2">"#);
    for e in 0..g.edge_count() {
        let (mut u, mut v) = g.endpoints(e);
        if (bfs.layer_of[u], order.rank[u]) > (bfs.layer_of[v], order.rank[v]) {
            std::mem::swap(&mut u, &mut v);
        }
        let (x1, y1) = point(radius(u), angle(u));
        let (x2, y2) = point(radius(v), angle(v));
        let queue = layout.map(|l| format!(r#" data-queue="{}""#, l.queue_of(e))).unwrap_or_default();
        match bfs.classify(g, e) {
            EdgeClass::BindingTree => {
                let _ = writeln!(
                    out,
                    r#"<line class="tree" data-edge="{e}"{queue} x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{TREE_COLOUR}"/>"#
                );
            }
            class => {
                let (colour, name) = match class {
                    EdgeClass::Level => (LEVEL_COLOUR, "level"),
                    _ => (BINDING_COLOUR, "binding"),
                };
                let mid = (angle(u) + angle(v)) / 2.0;
                let (cx, cy) = point(radius(u).max(radius(v)) + 0.5, mid);
                let _ = writeln!(
                    out,
                    r#"<path class="{name}" data-edge="{e}"{queue} d="M {x1:.3} {y1:.3} Q {cx:.3} {cy:.3} {x2:.3} {y2:.3}" stroke="{colour}"/>"#
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g class="vertices" font-family="sans-serif" font-size="10" text-anchor="middle">"#);
    for v in 0..n {
        let (x, y) = point(radius(v), angle(v));
        let label = layout.map_or(v, |l| l.position(v));
        let _ = writeln!(out, r#"<circle class="vertex" data-vertex="{v}" cx="{x:.3}" cy="{y:.3}" r="5" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{x:.3}" y="{:.3}">{label}</text>"#, y - 8.0);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::Graph;

    #[test]
    fn single_vertex() {
        let emb = EmbeddedGraph::new(Graph::new(1, vec![]).unwrap(), vec![vec![]]).unwrap();
        let svg = render(&emb, 0, None).unwrap();
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 1);
    }

    #[test]
    fn path_has_three_circles_and_two_radial_edges() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let emb = EmbeddedGraph::new(g, vec![vec![0], vec![0, 1], vec![1]]).unwrap();
        let svg = render(&emb, 0, None).unwrap();
        assert_eq!(svg.matches("<circle cx=").count(), 3);
        assert_eq!(svg.matches(r#"class="tree""#).count(), 2);
    }

    #[test]
    fn torus_rejected() {
        let emb = generators::toroidal_grid(3, 3).unwrap();
        assert!(matches!(render(&emb, 0, None), Err(Error::NotPlanar { .. })));
    }

    #[test]
    fn grid_has_no_nan() {
        let svg = render(&generators::grid(4, 4), 0, None).unwrap();
        assert!(!svg.contains("NaN"));
        assert_eq!(svg, render(&generators::grid(4, 4), 0, None).unwrap());
    }
}
