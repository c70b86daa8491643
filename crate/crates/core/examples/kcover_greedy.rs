//! Eager and lazy greedy on a random max-coverage instance.
//!
//! cargo run --example kcover_greedy -- [n] [k]

use greedyml::objectives::{KCover, SetFamily};
use greedyml::{greedy, lazy_greedy, CardinalityConstraint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> greedyml::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(2000);
    let k = args.next().unwrap_or(25);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let universe = 5 * n;
    let subsets = (0..n)
        .map(|_| (0..rng.gen_range(1..40)).map(|_| rng.gen_range(0..universe)).collect())
        .collect();
    let f = KCover::new(SetFamily::new(universe, subsets)?);
    let c = CardinalityConstraint::new(k)?;
    let all: Vec<usize> = (0..n).collect();

    let (eager, es) = greedy(&f, &c, &all);
    let (lazy, ls) = lazy_greedy(&f, &c, &all);
    assert_eq!(eager.members, lazy.members);

    println!("n = {n}, universe = {universe}, k = {k}");
    println!("covered items: {}", lazy.value);
    println!("first picks:   {:?}", &lazy.members[..lazy.len().min(8)]);
    println!("gain evaluations: eager {}, lazy {}", es.function_calls, ls.function_calls);
    Ok(())
}
