//! Property tests against brute-force reference implementations written
//! here from the definitions.

mod common;

use std::collections::BTreeSet;

use common::{assert_accounting, rng};
use greedyml::bruteforce::{exact_opt, exact_opt_fixed_size};
use greedyml::objectives::{
    kcover_value, kdom_value, Graph, KCover, KDom, KMedoid, Neighborhood, PointSet, SetFamily,
};
use greedyml::partition::{partition, RandomTape};
use greedyml::{
    greedy, lazy_greedy, marginal_gain, run_greedyml, CardinalityConstraint, GroundSet, ObjectiveKind,
    RunConfig, SubmodularOracle, TreeShape,
};
use proptest::prelude::*;
use rand::Rng;

fn cover_ref(subsets: &[Vec<usize>], set: &[usize]) -> f64 {
    set.iter()
        .flat_map(|&e| subsets[e].iter().copied())
        .collect::<BTreeSet<_>>()
        .len() as f64
}

fn dom_ref(n: usize, edges: &[(usize, usize)], set: &[usize], closed: bool) -> f64 {
    let chosen: BTreeSet<usize> = set.iter().copied().collect();
    (0..n)
        .filter(|&v| {
            (closed && chosen.contains(&v))
                || edges
                    .iter()
                    .any(|&(a, b)| a != b && ((a == v && chosen.contains(&b)) || (b == v && chosen.contains(&a))))
        })
        .count() as f64
}

fn medoid_ref(rows: &[Vec<f64>], set: &[usize]) -> f64 {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let zero = vec![0.0; rows[0].len()];
    let loss = |s: &[usize]| {
        rows.iter()
            .map(|x| s.iter().map(|&j| dist(x, &rows[j])).fold(dist(x, &zero), f64::min))
            .sum::<f64>()
            / rows.len() as f64
    };
    loss(&[]) - loss(set)
}

struct Raw {
    subsets: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    rows: Vec<Vec<f64>>,
}

fn raw(r: &mut impl Rng, n: usize) -> Raw {
    Raw {
        subsets: (0..n)
            .map(|_| (0..r.gen_range(0..8)).map(|_| r.gen_range(0..40)).collect())
            .collect(),
        edges: (0..2 * n).map(|_| (r.gen_range(0..n), r.gen_range(0..n))).collect(),
        rows: (0..n).map(|_| (0..3).map(|_| r.gen_range(-1.0..1.0)).collect()).collect(),
    }
}

fn subset(r: &mut impl Rng, n: usize, p: f64) -> Vec<usize> {
    common::random_subset(r, n, p)
}

#[test]
fn oracles_match_reference_values() {
    let mut r = rng(11);
    for _ in 0..200 {
        let n = r.gen_range(1..=30);
        let d = raw(&mut r, n);
        let family = SetFamily::new(40, d.subsets.clone()).unwrap();
        let graph = Graph::from_edges(n, &d.edges).unwrap();
        let cover = KCover::new(family.clone());
        let open = KDom::new(graph.clone());
        let closed = KDom::new(graph.clone()).with_neighborhood(Neighborhood::Closed);
        let med = KMedoid::new(PointSet::from_rows(&d.rows).unwrap());
        let s = subset(&mut r, n, 0.3);
        assert_eq!(cover.value(&s), cover_ref(&d.subsets, &s));
        assert_eq!(kcover_value(&family, &s) as f64, cover_ref(&d.subsets, &s));
        assert_eq!(open.value(&s), dom_ref(n, &d.edges, &s, false));
        assert_eq!(kdom_value(&graph, &s) as f64, dom_ref(n, &d.edges, &s, false));
        assert_eq!(closed.value(&s), dom_ref(n, &d.edges, &s, true));
        assert!((med.value(&s) - medoid_ref(&d.rows, &s)).abs() <= 1e-9 * medoid_ref(&d.rows, &s).max(1.0));
        assert!(kdom_value(&graph, &s) <= n);
        assert!(kcover_value(&family, &s) <= 40);
    }
}

#[test]
fn empty_set_is_zero() {
    let mut r = rng(12);
    let d = raw(&mut r, 10);
    assert_eq!(KCover::new(SetFamily::new(40, d.subsets).unwrap()).value(&[]), 0.0);
    assert_eq!(KDom::new(Graph::from_edges(10, &d.edges).unwrap()).value(&[]), 0.0);
    assert_eq!(KMedoid::new(PointSet::from_rows(&d.rows).unwrap()).value(&[]), 0.0);
}

/// Draws `A ⊆ B` and `e ∉ B` and checks monotonicity and diminishing gains.
fn check_submodular<O: SubmodularOracle>(f: &O, r: &mut impl Rng, n: usize, tol: f64) {
    let a = subset(r, n, 0.2);
    let mut b = a.clone();
    b.extend((0..n).filter(|x| !a.contains(x) && r.gen_bool(0.3)));
    b.sort_unstable();
    let outside: Vec<usize> = (0..n).filter(|x| !b.contains(x)).collect();
    assert!(f.value(&a) <= f.value(&b) + tol, "monotone");
    if let Some(&e) = outside.get(r.gen_range(0..outside.len().max(1))) {
        let ga = marginal_gain(f, &a, e).unwrap();
        let gb = marginal_gain(f, &b, e).unwrap();
        assert!(ga + tol >= gb, "gain {ga} on A below gain {gb} on B");
        assert!(gb >= -tol);
    }
}

#[test]
fn submodularity_and_monotonicity() {
    let mut r = rng(13);
    for _ in 0..1000 {
        let n = r.gen_range(2..=50);
        let d = raw(&mut r, n);
        check_submodular(&KCover::new(SetFamily::new(40, d.subsets).unwrap()), &mut r, n, 0.0);
        let g = Graph::from_edges(n, &d.edges).unwrap();
        check_submodular(&KDom::new(g.clone()), &mut r, n, 0.0);
        check_submodular(&KDom::new(g).with_neighborhood(Neighborhood::Closed), &mut r, n, 0.0);
        check_submodular(&KMedoid::new(PointSet::from_rows(&d.rows).unwrap()), &mut r, n, 1e-12);
    }
}

#[test]
fn greedy_guarantee_and_call_bounds() {
    let alpha = 1.0 - (-1.0f64).exp();
    let mut r = rng(14);
    for i in 0..300 {
        let n = r.gen_range(1..=12);
        let k = r.gen_range(1..=4);
        let c = CardinalityConstraint::new(k).unwrap();
        let elements: Vec<usize> = (0..n).collect();
        let d = raw(&mut r, n);
        let f = KCover::new(SetFamily::new(40, d.subsets.clone()).unwrap());
        let g = KDom::new(Graph::from_edges(n, &d.edges).unwrap());
        let (s, stats) = if i % 2 == 0 { greedy(&f, &c, &elements) } else { lazy_greedy(&f, &c, &elements) };
        let opt = exact_opt(&f, &elements, k).unwrap();
        assert!(s.value >= alpha * opt.opt_value);
        assert!(opt.opt_value >= s.value);
        assert_eq!(opt.opt_value, cover_ref(&d.subsets, &opt.opt_members));
        assert_eq!(exact_opt_fixed_size(&f, &elements, k).unwrap().opt_value, opt.opt_value);
        assert!(stats.function_calls <= (n * k + n) as u64);
        assert_eq!(s.value, cover_ref(&d.subsets, &s.members));

        let (s, _) = lazy_greedy(&g, &c, &elements);
        assert_eq!(s.value, dom_ref(n, &d.edges, &s.members, false));
        assert!(exact_opt(&g, &elements, k).unwrap().opt_value >= s.value);
    }
}

#[test]
fn selection_gains_do_not_increase() {
    let mut r = rng(15);
    for _ in 0..200 {
        let n = r.gen_range(1..=40);
        let f = common::random_kmedoid(&mut r, n, 4);
        let (s, _) = lazy_greedy(&f, &CardinalityConstraint::new(8).unwrap(), &(0..n).collect::<Vec<_>>());
        let mut prev = f64::INFINITY;
        for i in 0..s.members.len() {
            let g = marginal_gain(&f, &s.members[..i], s.members[i]).unwrap();
            assert!(g <= prev + 1e-12);
            prev = g;
        }
        assert!((f.value(&s.members) - s.value).abs() <= 1e-9 * s.value.abs().max(1.0));
    }
}

#[test]
fn partition_covers_ground_set() {
    let mut r = rng(16);
    for _ in 0..200 {
        let n = r.gen_range(0..500);
        let m = r.gen_range(1..=20);
        let tape = RandomTape::new(r.gen(), m);
        let parts = partition(&GroundSet::new(n), &tape);
        assert_eq!(parts.len(), m);
        let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..n).collect::<Vec<_>>());
        for (j, p) in parts.iter().enumerate() {
            assert!(p.windows(2).all(|w| w[0] < w[1]));
            assert!(p.iter().all(|&e| tape.assign(e) == j));
        }
    }
}

#[test]
fn tree_root_value_bounded_by_opt() {
    let mut r = rng(17);
    for _ in 0..100 {
        let n = r.gen_range(2..=14);
        let k = r.gen_range(1..=3);
        let f = common::random_kcover(&mut r, n, 30, 6);
        let opt = exact_opt(&f, &(0..n).collect::<Vec<_>>(), k).unwrap().opt_value;
        let cfg = RunConfig::new(ObjectiveKind::KCover, k, r.gen_range(1..=8), TreeShape::Branching(r.gen_range(2..=4)))
            .unwrap()
            .seed(r.gen());
        let rep = run_greedyml(&cfg, &f).unwrap();
        assert_accounting(&rep);
        assert!(rep.solution.value <= opt);
        assert_eq!(rep.solution.value, f.value(&rep.solution.members));
        rep.solution.check_feasible(&cfg.constraint, f.ground()).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lazy_equals_eager(
        subsets in prop::collection::vec(prop::collection::vec(0usize..25, 0..6), 1..30),
        k in 1usize..6,
    ) {
        let n = subsets.len();
        let f = KCover::new(SetFamily::new(25, subsets).unwrap());
        let c = CardinalityConstraint::new(k).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let (a, sa) = greedy(&f, &c, &all);
        let (b, sb) = lazy_greedy(&f, &c, &all);
        prop_assert_eq!(a.members, b.members);
        prop_assert!(sb.function_calls <= sa.function_calls);
    }

    #[test]
    fn dominating_value_matches_reference(
        n in 1usize..25,
        raw_edges in prop::collection::vec((0usize..25, 0usize..25), 0..60),
        closed in any::<bool>(),
        mask in prop::collection::vec(any::<bool>(), 25),
    ) {
        let edges: Vec<(usize, usize)> = raw_edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let nb = if closed { Neighborhood::Closed } else { Neighborhood::Open };
        let f = KDom::new(Graph::from_edges(n, &edges).unwrap()).with_neighborhood(nb);
        let set: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        prop_assert_eq!(f.value(&set), dom_ref(n, &edges, &set, closed));
    }

    #[test]
    fn kmedoid_monotone_on_nested_sets(
        rows in prop::collection::vec(prop::collection::vec(-2.0f64..2.0, 3), 2..20),
        cut in 0usize..20,
    ) {
        let n = rows.len();
        let f = KMedoid::new(PointSet::from_rows(&rows).unwrap());
        let all: Vec<usize> = (0..n).collect();
        let small = &all[..cut.min(n)];
        prop_assert!(f.value(small) <= f.value(&all) + 1e-12);
        prop_assert!((f.value(&all) - medoid_ref(&rows, &all)).abs() <= 1e-9);
    }
}
