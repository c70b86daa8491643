//! Prints the accumulation tree for m machines and branching factor b.
//!
//! cargo run --example tree_shapes -- [m] [b]

use greedyml::AccumulationTree;

fn main() -> greedyml::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let m = args.next().unwrap_or(8);
    let b = args.next().unwrap_or(3);
    let tree = AccumulationTree::new(m, b)?;
    println!("m = {m}, b = {b}, L = {}", tree.levels());
    for level in (1..=tree.levels()).rev() {
        let nodes: Vec<String> = tree
            .nodes_at(level)
            .into_iter()
            .map(|id| format!("{id}<-{:?}", tree.children(level, id).unwrap()))
            .collect();
        println!("level {level}: {}", nodes.join("  "));
    }
    for id in 0..m {
        let top = tree.node_level(id)?;
        println!("machine {id}: active up to level {top}, holds leaves {:?}", tree.accessible_leaves(top, id)?);
    }
    Ok(())
}
