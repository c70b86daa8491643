//! GreedyML for k-dominating set, reading an edge list or generating a
//! random graph, with the per-node accounting of the run.
//!
//! cargo run --release --example dominating_set_tree -- [edges.txt] [machines] [branching] [k]

use std::path::Path;

use greedyml::ingest::{self, Dataset, Format};
use greedyml::objectives::{Graph, KDom};
use greedyml::{run_greedyml, ObjectiveKind, RunConfig, TreeShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, edges: usize) -> greedyml::Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let list: Vec<(usize, usize)> = (0..edges).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    Graph::from_edges(n, &list)
}

fn main() -> greedyml::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let graph = match args.first().filter(|a| a.parse::<usize>().is_err()) {
        Some(path) => match ingest::load(Path::new(path), Format::Edges, false)?.0 {
            Dataset::Graph(g) => g,
            _ => unreachable!(),
        },
        None => random_graph(20_000, 60_000)?,
    };
    let nums: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
    let (m, b, k) = (*nums.first().unwrap_or(&16), *nums.get(1).unwrap_or(&2), *nums.get(2).unwrap_or(&100));

    let f = KDom::new(graph);
    let cfg = RunConfig::new(ObjectiveKind::KDom, k, m, TreeShape::Branching(b))?.seed(1);
    let rep = run_greedyml(&cfg, &f)?;

    println!(
        "{} vertices, {} edges; tree m={m} b={b} L={}",
        f.graph().n_vertices(),
        f.graph().n_edges(),
        rep.tree.levels()
    );
    println!("dominated vertices: {}", rep.solution.value);
    println!("{:>8} {:>7} {:>9} {:>9} {:>9}", "node", "input", "calls", "received", "payload");
    for t in &rep.nodes {
        println!(
            "{:>8} {:>7} {:>9} {:>9} {:>9}",
            t.label.to_string(),
            t.input_elements,
            t.function_calls,
            t.elements_received,
            t.payload_units_received
        );
    }
    println!(
        "total calls {}, critical path {}, communicated {} elements / {} payload units",
        rep.total_function_calls,
        rep.critical_path_calls,
        rep.total_communication_elements,
        rep.total_communication_payload_units
    );
    Ok(())
}
