//! k-medoid with node-local evaluation: each tree node scores candidates
//! only on the points it holds, optionally topped up with random extras.
//! The final exemplars are re-scored on the full data set.
//!
//! cargo run --release --example kmedoid_local

use greedyml::objectives::{KMedoid, PointSet};
use greedyml::{lazy_greedy, run_greedyml, CardinalityConstraint, ObjectiveKind, RunConfig, TreeShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn clustered_points(n: usize, dim: usize, clusters: usize) -> greedyml::Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let centres: Vec<Vec<f64>> = (0..clusters)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let c = &centres[rng.gen_range(0..clusters)];
            c.iter().map(|x| x + rng.gen_range(-0.15..0.15)).collect()
        })
        .collect();
    let mut p = PointSet::from_rows(&rows)?;
    p.preprocess();
    Ok(p)
}

fn main() -> greedyml::Result<()> {
    let (n, k, m) = (3000, 20, 16);
    let f = KMedoid::new(clustered_points(n, 16, 12)?);

    let (central, _) = lazy_greedy(&f, &CardinalityConstraint::new(k)?, &(0..n).collect::<Vec<_>>());
    println!("sequential on all data: value {:.5}", central.value);

    for b in [2, 4, 16] {
        for extra in [0, 100] {
            let cfg = RunConfig::new(ObjectiveKind::KMedoid, k, m, TreeShape::Branching(b))?
                .seed(5)
                .kmedoid_extra(extra);
            let rep = run_greedyml(&cfg, &f)?;
            println!(
                "b={b:>2} L={} extra={extra:>3}: local value {:.5}, global value {:.5}, interior calls {}",
                rep.tree.levels(),
                rep.solution.value,
                rep.global_value.unwrap_or(f64::NAN),
                rep.nodes.iter().filter(|t| t.label.level > 0).map(|t| t.function_calls).sum::<u64>()
            );
        }
    }
    Ok(())
}
