//! The same run in simulated and threaded mode: identical outcome, different
//! wall-clock profile.
//!
//! cargo run --release --example concurrent_engine

use greedyml::objectives::{KCover, SetFamily};
use greedyml::{run_greedyml, Mode, ObjectiveKind, RunConfig, TreeShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> greedyml::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (n, universe) = (40_000, 100_000);
    let subsets = (0..n)
        .map(|_| (0..rng.gen_range(10..80)).map(|_| rng.gen_range(0..universe)).collect())
        .collect();
    let f = KCover::new(SetFamily::new(universe, subsets)?);
    let cfg = RunConfig::new(ObjectiveKind::KCover, 300, 16, TreeShape::Branching(4))?.seed(2);

    let sim = run_greedyml(&cfg.clone().mode(Mode::Simulate), &f)?;
    let conc = run_greedyml(&cfg.mode(Mode::Concurrent), &f)?;
    for rep in [&sim, &conc] {
        let levels: Vec<String> = rep.timings.per_level_s.iter().map(|s| format!("{:.3}s", s)).collect();
        println!("{:?}: value {}, solve {:.3}s, per level {}", rep.mode, rep.solution.value, rep.timings.solve_s, levels.join(" "));
    }
    println!("same outcome: {}", sim.same_outcome(&conc));
    Ok(())
}
