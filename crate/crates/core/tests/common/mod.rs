//! Random instance generators shared by the integration tests.

#![allow(dead_code)]

use greedyml::objectives::{Graph, KCover, KDom, KMedoid, PointSet, SetFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` subsets of a universe of `universe` items, each of size 0..=max_size.
pub fn random_kcover(rng: &mut impl Rng, n: usize, universe: usize, max_size: usize) -> KCover {
    let subsets = (0..n)
        .map(|_| {
            let size = rng.gen_range(0..=max_size);
            (0..size).map(|_| rng.gen_range(0..universe)).collect()
        })
        .collect();
    KCover::new(SetFamily::new(universe, subsets).unwrap())
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_kdom(rng: &mut impl Rng, n: usize, p: f64) -> KDom {
    KDom::new(random_graph(rng, n, p))
}

/// Preferential-attachment graph: each new vertex links to `per_vertex`
/// earlier vertices chosen proportionally to degree.
pub fn preferential_attachment(rng: &mut impl Rng, n: usize, per_vertex: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * per_vertex);
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n * per_vertex);
    let core = per_vertex + 1;
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    for u in core..n {
        for _ in 0..per_vertex {
            let v = endpoints[rng.gen_range(0..endpoints.len())];
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Points drawn around `clusters` Gaussian centres, then mean-centred and
/// normalized per row.
pub fn gaussian_clusters(rng: &mut impl Rng, n: usize, dim: usize, clusters: usize, spread: f64) -> PointSet {
    let unit = Normal::new(0.0, 1.0).unwrap();
    let centres: Vec<Vec<f64>> = (0..clusters)
        .map(|_| (0..dim).map(|_| unit.sample(rng)).collect())
        .collect();
    let noise = Normal::new(0.0, spread).unwrap();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let c = &centres[rng.gen_range(0..clusters)];
            c.iter().map(|x| x + noise.sample(rng)).collect()
        })
        .collect();
    let mut p = PointSet::from_rows(&rows).unwrap();
    p.preprocess();
    p
}

pub fn random_kmedoid(rng: &mut impl Rng, n: usize, dim: usize) -> KMedoid {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    KMedoid::new(PointSet::from_rows(&rows).unwrap())
}

/// Random sorted subset of `0..n`.
pub fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Graph with `edges` endpoint pairs drawn uniformly (self-loops and repeats
/// are dropped by the graph builder).
pub fn sparse_random_graph(rng: &mut impl Rng, n: usize, edges: usize) -> Graph {
    let list: Vec<(usize, usize)> = (0..edges)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Graph::from_edges(n, &list).unwrap()
}

/// Accounting invariants every engine run must satisfy.
pub fn assert_accounting(report: &greedyml::RunReport) {
    let k = report.k;
    let mut total = 0;
    let mut critical = 0;
    let mut comm = 0;
    let mut payload = 0;
    for t in &report.nodes {
        assert!(t.solution_size <= k, "{:?} exceeds k", t.label);
        if t.label.level == 0 {
            assert!(
                t.function_calls <= ((t.input_elements + 1) * k) as u64,
                "leaf {:?}: {} calls for {} elements",
                t.label,
                t.function_calls,
                t.input_elements
            );
            assert_eq!(t.elements_received, 0);
        } else {
            assert!(
                t.elements_received <= t.arity * k,
                "{:?} received {} from {} children",
                t.label,
                t.elements_received,
                t.arity
            );
            assert!(t.function_calls <= ((t.arity * k + 1) * k) as u64);
        }
        total += t.function_calls;
        if t.label.id == 0 {
            critical += t.function_calls;
        }
        comm += t.elements_received;
        payload += t.payload_units_received;
    }
    assert_eq!(report.total_function_calls, total);
    assert_eq!(report.critical_path_calls, critical);
    assert!(report.critical_path_calls <= report.total_function_calls);
    assert_eq!(report.total_communication_elements, comm);
    assert_eq!(report.total_communication_payload_units, payload);
    assert!(report.solution.len() <= k);
}
