//! Brute-force optimum on small instances, used to measure how far the
//! greedy and tree solutions fall from optimal.
//!
//! cargo run --release --example exact_oracle

use greedyml::bruteforce::{binomial, exact_opt};
use greedyml::objectives::{Graph, KDom};
use greedyml::{lazy_greedy, run_greedyml, CardinalityConstraint, ObjectiveKind, RunConfig, TreeShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> greedyml::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (n, k) = (18, 4);
    let all: Vec<usize> = (0..n).collect();
    let mut worst_greedy = f64::INFINITY;
    let mut worst_tree = f64::INFINITY;
    for _ in 0..50 {
        let edges: Vec<(usize, usize)> = (0..30).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let f = KDom::new(Graph::from_edges(n, &edges)?);
        let opt = exact_opt(&f, &all, k)?;
        let (g, _) = lazy_greedy(&f, &CardinalityConstraint::new(k)?, &all);
        let cfg = RunConfig::new(ObjectiveKind::KDom, k, 8, TreeShape::Branching(2))?.seed(rng.gen());
        let t = run_greedyml(&cfg, &f)?;
        worst_greedy = worst_greedy.min(g.value / opt.opt_value);
        worst_tree = worst_tree.min(t.solution.value / opt.opt_value);
    }
    println!("50 random graphs, n = {n}, k = {k}, {} subsets each", binomial(n, k));
    println!("worst greedy / OPT:          {worst_greedy:.3}");
    println!("worst GreedyML(8, b=2) / OPT: {worst_tree:.3}");
    println!("greedy guarantee 1 - 1/e:    {:.3}", 1.0 - (-1.0f64).exp());
    Ok(())
}
