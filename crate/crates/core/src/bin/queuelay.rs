use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use queuelay::bfs::bfs_structure;
use queuelay::generators;
use queuelay::genus::{cut_graph, layout_genus, planar_inner, planarizing_set, ZSetFile};
use queuelay::io::{read_embedding, read_graph, read_json, to_json, write_output, GraphFile};
use queuelay::layout::{exact_queue_number, min_queues_for_order, oracle_limit_from_env, verify_layout};
use queuelay::planar::{layout_planar, Delta, PlanarOptions};
use queuelay::report::RunReport;
use queuelay::svg;
use queuelay::unsubdivide::{unsubdivide_bound, unsubdivide_layout, SubdivisionFile, SubdivisionMap};
use queuelay::{EmbeddedGraph, Error, QueueLayout, Result};

/// Queue layouts of planar and bounded-genus graphs.
#[derive(Parser)]
#[command(name = "queuelay", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a certified queue layout.
    #[command(subcommand)]
    Layout(LayoutCommand),
    /// Check a layout against a graph.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        layout: PathBuf,
    },
    /// Exact queue-number by exhaustive search (QUEUELAY_ORACLE_LIMIT caps n).
    Oracle {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest rainbow of a layout's vertex order.
    Rainbow {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        layout: PathBuf,
    },
    /// Layout of a graph from a layout of one of its subdivisions.
    Unsubdivide {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        subdivision: PathBuf,
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planarizing vertex set of a connected embedded graph.
    Cut {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Draw a connected planar embedding on concentric circles.
    Render {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a pipeline and print its report as JSON.
    Report {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = PipelineChoice::Auto)]
        pipeline: PipelineChoice,
        #[arg(long, default_value = "auto")]
        delta: Delta,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Graph JSON file.
    #[arg(long = "input", visible_alias = "graph")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum LayoutCommand {
    /// Planar pipeline, at most 12Δ² + 16Δ + 3 queues.
    Planar {
        #[command(flatten)]
        graph: GraphArg,
        /// Integer ≥ 2 or "auto" (maximum degree, at least 2).
        #[arg(long, default_value = "auto")]
        delta: Delta,
        #[arg(long)]
        root: Option<usize>,
        /// Run every structural verifier along the way.
        #[arg(long)]
        check: bool,
        /// Dump per-vertex layer, ℓ, m and g (to the given file, or stderr).
        #[arg(long, num_args = 0..=1)]
        explain: Option<Option<PathBuf>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded-genus pipeline, at most 4g + 36Δ² + 48Δ + 9 queues.
    Genus {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Lower-bound instance needing Δ² queues under the pipeline's order.
    Tight {
        #[arg(long)]
        delta: usize,
    },
    /// Planar rows × cols grid.
    Grid { rows: usize, cols: usize },
    /// Toroidal grid C_rows × C_cols.
    Torus { rows: usize, cols: usize },
    /// K5 embedded on the torus.
    K5,
    /// Random well-layered graph.
    WellLayered {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random plane triangulation.
    Triangulation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineChoice {
    Auto,
    Planar,
    Genus,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant_breach() { 2 } else { 1 })
        }
    }
}

fn write_json<T: serde::Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    write_output(out, &to_json(value)?)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Layout(LayoutCommand::Planar { graph, delta, root, check, explain, out }) => {
            let emb = read_embedding(&graph.input)?;
            let start = Instant::now();
            let result = layout_planar(&emb, &PlanarOptions { delta, root, check })?;
            let report = RunReport::planar(&emb, &result, start.elapsed());
            finish_layout(&result.layout, &report, out.as_deref())?;
            if let Some(target) = explain {
                let dump: Vec<_> = result.components.iter().map(|c| c.explain()).collect();
                match target {
                    Some(path) => std::fs::write(path, to_json(&dump)?)?,
                    None => eprint!("{}", to_json(&dump)?),
                }
            }
            Ok(())
        }
        Command::Layout(LayoutCommand::Genus { graph, check: _, out }) => {
            // every stage of the genus pipeline is verified unconditionally
            let emb = read_embedding(&graph.input)?;
            let start = Instant::now();
            let result = layout_genus(&emb, planar_inner)?;
            let report = RunReport::genus(&emb, &result, start.elapsed());
            finish_layout(&result.layout, &report, out.as_deref())
        }
        Command::Verify { graph, layout } => {
            let g = read_graph(&graph.input)?;
            let layout: QueueLayout = read_json(&layout)?;
            check_shape(&g, &layout)?;
            verify_layout(&g, &layout).map_err(|v| Error::InvalidLayout(v.to_string()))?;
            println!("ok: {} queues", layout.queue_count());
            Ok(())
        }
        Command::Oracle { graph, out } => {
            let g = read_graph(&graph.input)?;
            let (qn, layout) = exact_queue_number(&g, oracle_limit_from_env())?;
            println!("qn={qn}");
            match out {
                Some(path) => write_json(Some(&path), &layout),
                None => Ok(()),
            }
        }
        Command::Rainbow { graph, layout } => {
            let g = read_graph(&graph.input)?;
            let layout: QueueLayout = read_json(&layout)?;
            check_shape(&g, &layout)?;
            let rainbow = min_queues_for_order(&g, layout.order());
            println!("rainbow={}", rainbow.size);
            let edges: Vec<String> = rainbow
                .witness
                .iter()
                .map(|&e| {
                    let (u, v) = g.endpoints(e);
                    format!("{e}:{u}-{v}")
                })
                .collect();
            println!("witness={}", edges.join(","));
            Ok(())
        }
        Command::Unsubdivide { graph, subdivision, layout, out } => {
            let g = read_graph(&graph.input)?;
            let map = SubdivisionMap::from_file(&g, read_json::<SubdivisionFile>(&subdivision)?)?;
            let layout: QueueLayout = read_json(&layout)?;
            let result = unsubdivide_layout(&map, &layout)?;
            eprintln!(
                "queues={} bound={} (k={}, c={})",
                result.queue_count(),
                unsubdivide_bound(layout.queue_count(), map.c),
                layout.queue_count(),
                map.c
            );
            write_json(out.as_deref(), &result)
        }
        Command::Cut { graph, out } => {
            let emb = read_embedding(&graph.input)?;
            if !emb.graph().is_connected() {
                return Err(Error::Disconnected);
            }
            let bfs = bfs_structure(&emb, 0)?;
            let z = planarizing_set(&emb, &bfs)?;
            let cut = cut_graph(&emb, &z)?;
            eprintln!(
                "genus={} |Z|={} faces {} -> {}",
                z.genus,
                z.z_vertices.len(),
                cut.faces_before,
                cut.faces_after
            );
            write_json(out.as_deref(), &ZSetFile::from(&z))
        }
        Command::Gen { family, out } => {
            let emb = generate(family)?;
            write_json(out.as_deref(), &GraphFile::from_embedding(&emb))
        }
        Command::Render { graph, layout, root, out } => {
            let emb = read_embedding(&graph.input)?;
            let layout: Option<QueueLayout> = layout.map(|p| read_json(&p)).transpose()?;
            if let Some(l) = &layout {
                check_shape(emb.graph(), l)?;
            }
            write_output(out.as_deref(), &svg::render(&emb, root, layout.as_ref())?)
        }
        Command::Report { graph, pipeline, delta, out } => {
            let emb = read_embedding(&graph.input)?;
            let planar = match pipeline {
                PipelineChoice::Planar => true,
                PipelineChoice::Genus => false,
                PipelineChoice::Auto => emb.face_trace()?.genus == 0,
            };
            let start = Instant::now();
            let report = if planar {
                let result = layout_planar(&emb, &PlanarOptions { delta, root: None, check: true })?;
                RunReport::planar(&emb, &result, start.elapsed())
            } else {
                let result = layout_genus(&emb, planar_inner)?;
                RunReport::genus(&emb, &result, start.elapsed())
            };
            write_json(out.as_deref(), &report)
        }
    }
}

fn finish_layout(layout: &QueueLayout, report: &RunReport, out: Option<&Path>) -> Result<()> {
    if !report.within_bound() {
        return Err(Error::InvariantBreach(format!("layout failed its final check: {report}")));
    }
    eprintln!("{report}");
    write_json(out, layout)
}

fn check_shape(g: &queuelay::Graph, layout: &QueueLayout) -> Result<()> {
    if layout.order().len() != g.vertex_count() || layout.queues().len() != g.edge_count() {
        return Err(Error::InvalidLayout(format!(
            "layout covers {} vertices and {} edges, graph has {} and {}",
            layout.order().len(),
            layout.queues().len(),
            g.vertex_count(),
            g.edge_count()
        )));
    }
    Ok(())
}

fn generate(family: Family) -> Result<EmbeddedGraph> {
    Ok(match family {
        Family::Tight { delta } => generators::tight_example(delta)?.embedding,
        Family::Grid { rows, cols } => generators::grid(rows, cols),
        Family::Torus { rows, cols } => generators::toroidal_grid(rows, cols)?,
        Family::K5 => generators::toroidal_k5(),
        Family::WellLayered { n, delta, seed } => generators::well_layered(n, delta, seed)?,
        Family::Triangulation { n, seed } => generators::random_triangulation(n, seed)?,
    })
}
