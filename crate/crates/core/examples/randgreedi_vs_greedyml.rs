//! Single-level RandGreedi against deeper GreedyML trees on one instance:
//! solution quality, critical-path calls and communication.
//!
//! cargo run --release --example randgreedi_vs_greedyml

use greedyml::objectives::{KCover, SetFamily};
use greedyml::{run_greedyml, run_randgreedi, ObjectiveKind, RunConfig, TreeShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> greedyml::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (n, universe, k, m) = (20_000, 50_000, 200, 32);
    let subsets = (0..n)
        .map(|_| (0..rng.gen_range(5..60)).map(|_| rng.gen_range(0..universe)).collect())
        .collect();
    let f = KCover::new(SetFamily::new(universe, subsets)?);

    println!("{:<14} {:>3} {:>9} {:>12} {:>10} {:>10}", "algorithm", "L", "value", "critical", "total", "comm");
    let cfg = RunConfig::new(ObjectiveKind::KCover, k, m, TreeShape::Levels(1))?.seed(9);
    let rep = run_randgreedi(&cfg, &f)?;
    row("randgreedi", &rep);
    for b in [8, 4, 2] {
        let cfg = RunConfig::new(ObjectiveKind::KCover, k, m, TreeShape::Branching(b))?.seed(9);
        row(&format!("greedyml b={b}"), &run_greedyml(&cfg, &f)?);
    }
    Ok(())
}

fn row(name: &str, rep: &greedyml::RunReport) {
    println!(
        "{:<14} {:>3} {:>9} {:>12} {:>10} {:>10}",
        name,
        rep.tree.levels(),
        rep.solution.value,
        rep.critical_path_calls,
        rep.total_function_calls,
        rep.total_communication_elements
    );
}
