//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact; the only numeric limits are the runtime caps below.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use common::{bfs_layering, exhaustive_partition_queues, graph_from_bits};
use queuelay::bfs::bfs_structure;
use queuelay::generators::{self, maps};
use queuelay::genus::{cut_graph, layout_genus, planar_inner, planarizing_set, reorder_to_layering, ZSetFile};
use queuelay::io::{to_json, GraphFile};
use queuelay::layout::{exact_queue_number, min_queues_for_order, verify_layout};
use queuelay::planar::{check_lemma7, layout_planar, tightness_witness, PlanarLayout, PlanarOptions};
use queuelay::unsubdivide::{unsubdivide_bound, unsubdivide_layout, SubdivisionMap};
use queuelay::well_layered::{partition, verify_lemma6};
use queuelay::{svg, EmbeddedGraph, Graph};

const PLANAR_CORPUS_LIMIT: Duration = Duration::from_secs(300);
const ORACLE_N7_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_N9_LIMIT: Duration = Duration::from_secs(60);

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct Instance {
    name: String,
    emb: EmbeddedGraph,
    result: PlanarLayout,
}

fn planar_corpus() -> Vec<(String, EmbeddedGraph)> {
    let mut corpus = Vec::new();
    for r in 3..=8 {
        for c in 3..=8 {
            corpus.push((format!("grid {r}x{c}"), generators::grid(r, c)));
        }
    }
    for seed in 0..200u64 {
        let n = 10 + (seed as usize * 7) % 90;
        let delta = 2 + seed as usize % 3;
        corpus.push((format!("well-layered n={n} delta={delta} seed={seed}"), generators::well_layered(n, delta, seed).unwrap()));
    }
    for delta in 2..=4 {
        corpus.push((format!("tight delta={delta}"), generators::tight_example(delta).unwrap().embedding));
    }
    for n in 1..=7 {
        for (i, m) in maps::connected_plane_maps(n).into_iter().enumerate() {
            corpus.push((format!("map n={n} #{i}"), m));
        }
    }
    corpus
}

fn planar_queue_bound(delta: usize) -> usize {
    12 * delta * delta + 16 * delta + 3
}

fn criterion_1(instances: &[Instance], elapsed: Duration) -> Outcome {
    let mut worst: Option<(f64, &str, usize, usize)> = None;
    for inst in instances {
        let g = inst.emb.graph();
        let delta = g.max_degree().max(2);
        let q = inst.result.layout.queue_count();
        if verify_layout(g, &inst.result.layout).is_err() || q > planar_queue_bound(delta) || inst.result.delta != delta {
            return outcome(false, format!("{}: {q} queues, bound {}", inst.name, planar_queue_bound(delta)));
        }
        let ratio = q as f64 / planar_queue_bound(delta) as f64;
        if worst.is_none_or(|w| ratio > w.0) {
            worst = Some((ratio, &inst.name, q, planar_queue_bound(delta)));
        }
    }
    let (_, name, q, b) = worst.unwrap();
    let pass = elapsed < PLANAR_CORPUS_LIMIT;
    outcome(pass, format!("{} graphs verified, tightest {name} {q}/{b}, corpus time {elapsed:.1?}", instances.len()))
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for delta in 2..=4 {
        let w = tightness_witness(delta).unwrap();
        let positions = w.result.layout.positions();
        let g = w.example.embedding.graph();
        let nested = w.rainbow.iter().enumerate().all(|(i, &a)| {
            w.rainbow[i + 1..].iter().all(|&b| queuelay::layout::nested(positions, g.endpoints(a), g.endpoints(b)))
        });
        if w.rainbow.len() != delta * delta || !nested {
            return outcome(false, format!("delta={delta}: rainbow {} of matching edges", w.rainbow.len()));
        }
        parts.push(format!("delta={delta}: {}", w.rainbow.len()));
    }
    outcome(true, parts.join(", "))
}

fn criterion_3() -> Outcome {
    for seed in 0..1000u64 {
        let n = 2 + (seed as usize * 13) % 120;
        let delta = 2 + seed as usize % 4;
        let emb = generators::well_layered(n, delta, seed).unwrap();
        let bfs = bfs_structure(&emb, 0).unwrap();
        let part = partition(&emb, &bfs, delta).unwrap();
        if let Err(v) = verify_lemma6(emb.graph(), &bfs, &part, delta) {
            return outcome(false, format!("seed {seed}: {v}"));
        }
    }
    outcome(true, "1000 instances, all four clauses hold")
}

fn criterion_4(instances: &[Instance]) -> Outcome {
    let mut edges = [0usize; 3];
    for inst in instances {
        for run in &inst.result.components {
            let (local, _) = inst.emb.induced(&run.vertices);
            let g = local.graph();
            if let Err(v) = check_lemma7(g, &run.partition) {
                return outcome(false, format!("{}: {v}", inst.name));
            }
            let delta = BigInt::from(run.partition.delta);
            let group = |v: usize| BigInt::from(run.partition.group_of[v].clone());
            for (e, &(x, y)) in g.edges().iter().enumerate() {
                let (lx, ly) = (run.partition.layer_of[x], run.partition.layer_of[y]);
                let (upper, lower) = if lx <= ly { (x, y) } else { (y, x) };
                let (a, b) = (group(upper), group(lower));
                let (ok, class) = if lx == ly {
                    ((&a - &b).magnitude() <= &num_bigint::BigUint::from(1u32), 0)
                } else {
                    let off = &b - &delta * &a;
                    if run.bfs.tree_edge[e] {
                        (off >= 0.into() && off < BigInt::from(2) * &delta, 1)
                    } else {
                        (off >= (-1).into() && off <= BigInt::from(2) * &delta, 2)
                    }
                };
                if !ok {
                    return outcome(false, format!("{}: edge {e} class {class} with groups {a}, {b}", inst.name));
                }
                edges[class] += 1;
            }
        }
    }
    outcome(true, format!("level {}, tree {}, non-tree binding {} edges in range", edges[0], edges[1], edges[2]))
}

fn toroidal_corpus() -> Vec<(String, EmbeddedGraph)> {
    let mut corpus = Vec::new();
    for r in 3..=5 {
        for c in 3..=5 {
            corpus.push((format!("C{r}xC{c}"), generators::toroidal_grid(r, c).unwrap()));
        }
    }
    corpus.push(("K5".into(), generators::toroidal_k5()));
    corpus
}

fn criterion_5() -> Outcome {
    let mut max_layer = 0;
    for (name, emb) in toroidal_corpus() {
        let faces = emb.face_trace().unwrap();
        let bfs = bfs_structure(&emb, 0).unwrap();
        let z = planarizing_set(&emb, &bfs).unwrap();
        let g = faces.genus as usize;
        let worst = z.per_layer.iter().map(Vec::len).max().unwrap_or(0);
        max_layer = max_layer.max(worst);
        let cut = cut_graph(&emb, &z).unwrap();
        let cut_genus = cut.embedding.face_trace().unwrap().genus;
        let faces_after = cut.embedding.face_trace().unwrap().face_count();
        if g != 2 || worst > 2 * g || cut_genus != 0 || faces_after != faces.face_count() + 1 || cut.faces_after != faces_after {
            return outcome(false, format!("{name}: genus {g}, |Z ∩ V_j| ≤ {worst}, cut genus {cut_genus}, faces {} -> {faces_after}", faces.face_count()));
        }
    }
    outcome(true, format!("10 embeddings, max |Z ∩ V_j| = {max_layer} ≤ 4, cuts planar with one extra face"))
}

fn criterion_6() -> Outcome {
    let mut rng = generators::rng(6);
    let mut worst = (0, 0);
    for trial in 0..500 {
        let n = rng.random_range(1..=8);
        let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.random_bool(0.4)).collect();
        let g = graph_from_bits(n, &bits);
        let shifts: Vec<usize> = (0..n).map(|_| rng.random_range(0..3)).collect();
        let layer_of = bfs_layering(&g, rng.random_range(0..n), &shifts);
        let (k, layout) = exact_queue_number(&g, 9).unwrap();
        let out = match reorder_to_layering(&g, &layout, &layer_of) {
            Ok(out) => out,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let monotone = out.order().windows(2).all(|w| layer_of[w[0]] <= layer_of[w[1]]);
        if verify_layout(&g, &out).is_err() || out.queue_count() > 3 * k || !monotone {
            return outcome(false, format!("trial {trial}: {} queues from k = {k}", out.queue_count()));
        }
        worst = worst.max((out.queue_count(), k));
    }
    outcome(true, format!("500 triples, largest result {} queues (k = {})", worst.0, worst.1))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for (name, emb) in toroidal_corpus() {
        let g = emb.face_trace().unwrap().genus as usize;
        let delta = emb.graph().max_degree().max(2);
        let bound = 4 * g + 36 * delta * delta + 48 * delta + 9;
        let result = layout_genus(&emb, planar_inner).unwrap();
        let q = result.layout.queue_count();
        if verify_layout(emb.graph(), &result.layout).is_err() || q > bound || result.bound() != bound {
            return outcome(false, format!("{name}: {q} queues, bound {bound}"));
        }
        parts.push(format!("{name} {q}/{bound}"));
    }
    outcome(true, parts.join(", "))
}

/// `2k((2k)^{c+1} - 1) / (2k - 1)`.
fn geometric_bound(k: u128, c: u32) -> u128 {
    2 * k * ((2 * k).pow(c + 1) - 1) / (2 * k - 1)
}

fn criterion_8() -> Outcome {
    if geometric_bound(1, 1) != 6 || unsubdivide_bound(1, 1) != 6 {
        return outcome(false, "k=1, c=1 bound is not 6");
    }
    let mut rng = generators::rng(8);
    let mut spot = 0;
    for trial in 0..500 {
        let n = rng.random_range(2..=7);
        let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.random_bool(0.35)).collect();
        let g = graph_from_bits(n, &bits);
        let c = rng.random_range(0..=3);
        let map = SubdivisionMap::random(&g, c, 9, &mut rng).unwrap();
        let (k, layout) = exact_queue_number(&map.subdivided, 9).unwrap();
        let k = k.max(1);
        let out = match unsubdivide_layout(&map, &layout) {
            Ok(out) => out,
            Err(e) => return outcome(false, format!("trial {trial}: {e}")),
        };
        let bound = geometric_bound(k as u128, c as u32);
        if verify_layout(&g, &out).is_err() || out.queue_count() as u128 > bound || unsubdivide_bound(k, c) != bound {
            return outcome(false, format!("trial {trial}: {} queues, bound {bound}", out.queue_count()));
        }
        if k == 1 && c == 1 {
            spot += 1;
        }
    }
    outcome(true, format!("500 triples within bound; {spot} with k=1, c=1 used ≤ 6"))
}

fn criterion_9(instances: &[Instance]) -> Outcome {
    let mut by_class: BTreeMap<(usize, Vec<bool>), usize> = BTreeMap::new();
    let mut slowest = Duration::ZERO;
    let mut maps_checked = 0;
    for inst in instances.iter().filter(|i| i.name.starts_with("map ")) {
        let g = inst.emb.graph();
        let key = maps::graph_canonical_form(g);
        let qn = match by_class.get(&key) {
            Some(&qn) => qn,
            None => {
                let start = Instant::now();
                let (qn, _) = exact_queue_number(g, 9).unwrap();
                slowest = slowest.max(start.elapsed());
                by_class.insert(key, qn);
                qn
            }
        };
        if qn > inst.result.layout.queue_count() {
            return outcome(false, format!("{}: qn {qn} above pipeline {}", inst.name, inst.result.layout.queue_count()));
        }
        let is_tree = g.vertex_count() >= 2 && g.edge_count() + 1 == g.vertex_count();
        if is_tree && qn != 1 {
            return outcome(false, format!("{}: tree with qn {qn}", inst.name));
        }
        maps_checked += 1;
    }
    if slowest > ORACLE_N7_LIMIT {
        return outcome(false, format!("oracle took {slowest:?} on n ≤ 7"));
    }
    let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    if exact_queue_number(&k4, 9).unwrap().0 != 2 {
        return outcome(false, "qn(K4) != 2");
    }
    let tri9 = generators::random_triangulation(9, 0).unwrap();
    let start = Instant::now();
    let (qn_tri9, _) = exact_queue_number(tri9.graph(), 9).unwrap();
    let n9 = start.elapsed();
    if n9 > ORACLE_N9_LIMIT {
        return outcome(false, format!("oracle took {n9:?} at n = 9"));
    }
    let mut rng = generators::rng(9);
    let mut samples = 0;
    while samples < 500 {
        let n = rng.random_range(1..=6);
        let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.random_bool(0.5)).collect();
        let g = graph_from_bits(n, &bits);
        if g.edge_count() > 10 {
            continue;
        }
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        if min_queues_for_order(&g, &order).size != exhaustive_partition_queues(&g, &order) {
            return outcome(false, format!("fixed-order optimum disagrees on {:?} with order {order:?}", g.edges()));
        }
        samples += 1;
    }
    outcome(
        true,
        format!(
            "{maps_checked} maps ({} graph classes) qn ≤ pipeline, trees 1, K4 2, slowest n≤7 oracle {slowest:.1?}, 9-vertex triangulation qn {qn_tri9} in {n9:.1?}, 500 partition checks agree",
            by_class.len()
        ),
    )
}

fn pipeline_outputs() -> Vec<String> {
    let mut out = Vec::new();
    for emb in [generators::grid(5, 6), generators::tight_example(3).unwrap().embedding, generators::well_layered(60, 3, 42).unwrap()] {
        out.push(to_json(&GraphFile::from_embedding(&emb)).unwrap());
        let result = layout_planar(&emb, &PlanarOptions { check: true, ..Default::default() }).unwrap();
        out.push(to_json(&result.layout).unwrap());
        let explain: Vec<_> = result.components.iter().map(|c| c.explain()).collect();
        out.push(to_json(&explain).unwrap());
        out.push(svg::render(&emb, 0, Some(&result.layout)).unwrap());
    }
    for (_, emb) in toroidal_corpus() {
        out.push(to_json(&layout_genus(&emb, planar_inner).unwrap().layout).unwrap());
        let bfs = bfs_structure(&emb, 0).unwrap();
        out.push(to_json(&ZSetFile::from(&planarizing_set(&emb, &bfs).unwrap())).unwrap());
    }
    let g = generators::grid(2, 3);
    let map = SubdivisionMap::random(g.graph(), 2, 9, &mut generators::rng(10)).unwrap();
    let (_, layout) = exact_queue_number(&map.subdivided, 9).unwrap();
    out.push(to_json(&unsubdivide_layout(&map, &layout).unwrap()).unwrap());
    out
}

fn criterion_10() -> Outcome {
    let (a, b) = (pipeline_outputs(), pipeline_outputs());
    let same = a == b;
    let bytes: usize = a.iter().map(String::len).sum();
    outcome(same, format!("{} artifacts ({bytes} bytes) identical across two runs", a.len()))
}

fn main() -> ExitCode {
    let corpus = planar_corpus();
    let start = Instant::now();
    let instances: Vec<Instance> = corpus
        .into_iter()
        .map(|(name, emb)| {
            let result = layout_planar(&emb, &PlanarOptions { check: true, ..Default::default() })
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            Instance { name, emb, result }
        })
        .collect();
    let elapsed = start.elapsed();

    let criteria: Vec<(&str, Check)> = vec![
        ("planar queue bound on the corpus", Box::new(|| criterion_1(&instances, elapsed))),
        ("tight example rainbow of Δ²", Box::new(criterion_2)),
        ("layer-group clauses on 1000 well-layered graphs", Box::new(criterion_3)),
        ("group offset ranges on the planar corpus", Box::new(|| criterion_4(&instances))),
        ("planarizing sets of toroidal embeddings", Box::new(criterion_5)),
        ("reordering to a layering within 3k", Box::new(criterion_6)),
        ("genus queue bound on the toroidal corpus", Box::new(criterion_7)),
        ("unsubdivision bound", Box::new(criterion_8)),
        ("oracle consistency", Box::new(|| criterion_9(&instances))),
        ("determinism", Box::new(criterion_10)),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failures += usize::from(!o.pass);
        println!("criterion {:>2} {tag}: {title}: {} [{:.1?}]", i + 1, o.detail, t.elapsed());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
