//! Queue layouts of planar and bounded-genus graphs.
//!
//! The crate builds vertex orders and queue assignments for embedded graphs
//! and certifies every result with [`layout::verify_layout`]:
//!
//! - [`planar`]: BFS layering, subdivision into a well-layered graph and the
//!   `12Δ² + 16Δ + 3` queue assignment for connected plane graphs.
//! - [`genus`]: planarizing sets, cutting along them, and the `3k + 4g`
//!   composition for graphs embedded on other surfaces.
//! - [`unsubdivide`]: layouts of a graph from layouts of its subdivisions.
//! - [`layout`]: nesting, verification, fixed-order optimum and the exact
//!   brute-force queue number.
//! - [`generators`]: grids, toroidal grids, the lower-bound instance, random
//!   well-layered graphs and exhaustive small plane maps.
//! - [`io`], [`svg`], [`report`]: JSON formats, concentric-circle drawings
//!   and run summaries used by the `queuelay` binary.

#![allow(clippy::needless_range_loop)]

pub mod bfs;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod genus;
pub mod graph;
pub mod io;
pub mod layout;
pub mod planar;
pub mod report;
pub mod svg;
pub mod unsubdivide;
pub mod well_layered;

pub use embedding::EmbeddedGraph;
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
pub use layout::QueueLayout;
