use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::{GroundSet, SubmodularOracle};

/// Undirected simple graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds the graph from an edge list. Self-loops are dropped and
    /// parallel edges collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.adjacency.len() {
            return Err(Error::domain("label map length differs from vertex count"));
        }
        GroundSet::with_labels(labels.clone())?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }
}

/// Whether a selected vertex dominates itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Neighborhood {
    /// `δ(u)` is the set of vertices adjacent to `u`.
    #[default]
    Open,
    /// `δ(u)` additionally contains `u`.
    Closed,
}

/// `|∪_{u ∈ S} δ(u)|` with the open neighborhood.
pub fn kdom_value(g: &Graph, set: &[usize]) -> usize {
    let mut hit = vec![false; g.n_vertices()];
    let mut count = 0;
    for &u in set {
        for &v in g.neighbors(u) {
            if !hit[v] {
                hit[v] = true;
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug)]
pub struct KDom {
    graph: Arc<Graph>,
    neighborhood: Neighborhood,
    ground: GroundSet,
}

#[derive(Clone, Debug)]
pub struct DomState {
    dominated: Vec<bool>,
    count: usize,
}

impl KDom {
    pub fn new(graph: Graph) -> Self {
        Self::from_shared(Arc::new(graph), Neighborhood::Open)
    }

    pub fn from_shared(graph: Arc<Graph>, neighborhood: Neighborhood) -> Self {
        let ground = match graph.labels() {
            Some(l) => GroundSet::with_labels(l.to_vec()).expect("labels checked at construction"),
            None => GroundSet::new(graph.n_vertices()),
        };
        KDom {
            graph,
            neighborhood,
            ground,
        }
    }

    pub fn with_neighborhood(mut self, neighborhood: Neighborhood) -> Self {
        self.neighborhood = neighborhood;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn self_term(&self, u: usize) -> Option<usize> {
        match self.neighborhood {
            Neighborhood::Open => None,
            Neighborhood::Closed => Some(u),
        }
    }
}

impl SubmodularOracle for KDom {
    type State = DomState;

    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn payload_size(&self, e: usize) -> usize {
        self.graph.degree(e)
    }

    fn is_integral(&self) -> bool {
        true
    }

    fn empty_state(&self) -> DomState {
        DomState {
            dominated: vec![false; self.graph.n_vertices()],
            count: 0,
        }
    }

    fn gain(&self, state: &DomState, u: usize) -> f64 {
        self.graph
            .neighbors(u)
            .iter()
            .copied()
            .chain(self.self_term(u))
            .filter(|&v| !state.dominated[v])
            .count() as f64
    }

    fn insert(&self, state: &mut DomState, u: usize) {
        let own = self.self_term(u);
        for v in self.graph.neighbors(u).iter().copied().chain(own) {
            if !state.dominated[v] {
                state.dominated[v] = true;
                state.count += 1;
            }
        }
    }

    fn state_value(&self, state: &DomState) -> f64 {
        state.count as f64
    }
}
