use std::sync::Arc;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::{GroundSet, SubmodularOracle};
use crate::partition::splitmix64;
use crate::tree::NodeLabel;

use super::Localize;

/// Dense real vectors plus the auxiliary reference vector `e0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    data: Vec<f64>,
    e0: Vec<f64>,
}

impl PointSet {
    /// `data` is row-major with `dim` columns; `e0` defaults to the origin.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("points need at least one feature"));
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::domain(format!(
                "{} values do not form rows of length {dim}",
                data.len()
            )));
        }
        Ok(PointSet {
            dim,
            data,
            e0: vec![0.0; dim],
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::domain("ragged rows"));
        }
        PointSet::new(dim, rows.concat())
    }

    pub fn with_e0(mut self, e0: Vec<f64>) -> Result<Self> {
        if e0.len() != self.dim {
            return Err(Error::domain("e0 length differs from point dimension"));
        }
        self.e0 = e0;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn e0(&self) -> &[f64] {
        &self.e0
    }

    /// Subtracts each row's mean, then scales it to unit Euclidean norm.
    /// Rows that become all zeros are left at zero and their indices
    /// returned. `e0` is reset to the origin.
    pub fn preprocess(&mut self) -> Vec<usize> {
        let dim = self.dim;
        let mut degenerate = Vec::new();
        for (i, row) in self.data.chunks_mut(dim).enumerate() {
            let mean = row.iter().sum::<f64>() / dim as f64;
            row.iter_mut().for_each(|x| *x -= mean);
            let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                row.iter_mut().for_each(|x| *x /= norm);
            } else {
                row.iter_mut().for_each(|x| *x = 0.0);
                degenerate.push(i);
            }
        }
        self.e0 = vec![0.0; dim];
        degenerate
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(self.row(i), self.row(j))
    }

    fn distance_to_e0(&self, i: usize) -> f64 {
        euclidean(self.row(i), &self.e0)
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Mean over all points of the distance to the nearest exemplar in `set`,
/// with `e0` as an extra exemplar when `with_e0` is set.
pub fn kmedoid_loss(p: &PointSet, set: &[usize], with_e0: bool) -> Result<f64> {
    if set.is_empty() && !with_e0 {
        return Err(Error::domain("loss of an empty exemplar set is undefined"));
    }
    if let Some(&bad) = set.iter().find(|&&e| e >= p.len()) {
        return Err(Error::domain(format!("point {bad} out of range")));
    }
    let n = p.len();
    let total: f64 = (0..n)
        .map(|u| {
            let nearest = set
                .iter()
                .map(|&v| p.distance(u, v))
                .fold(f64::INFINITY, f64::min);
            if with_e0 {
                nearest.min(p.distance_to_e0(u))
            } else {
                nearest
            }
        })
        .sum();
    Ok(total / n as f64)
}

/// `L({e0}) - L(S ∪ {e0})`.
pub fn kmedoid_value(p: &PointSet, set: &[usize]) -> Result<f64> {
    Ok(kmedoid_loss(p, &[], true)? - kmedoid_loss(p, set, true)?)
}

/// Uniform sample without replacement of `count` point indices (all of them
/// if `count >= n`), seeded by the run seed and the node label. Sorted.
pub fn sample_extras(n: usize, count: usize, seed: u64, label: NodeLabel) -> Vec<usize> {
    let node_key = ((label.level as u64) << 48) ^ label.id as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(node_key)));
    let mut picked = index::sample(&mut rng, n, count.min(n)).into_vec();
    picked.sort_unstable();
    picked
}

/// Exemplar-clustering objective. The loss is averaged over the
/// evaluation points: the whole point set, or the subset a tree node holds
/// after [`Localize::localize`].
#[derive(Clone, Debug)]
pub struct KMedoid {
    points: Arc<PointSet>,
    eval: Option<Arc<Vec<usize>>>,
    to_e0: Arc<Vec<f64>>,
    base_loss: f64,
    ground: GroundSet,
}

impl KMedoid {
    pub fn new(points: PointSet) -> Self {
        Self::from_shared(Arc::new(points))
    }

    pub fn from_shared(points: Arc<PointSet>) -> Self {
        let to_e0: Vec<f64> = (0..points.len()).map(|u| points.distance_to_e0(u)).collect();
        let ground = GroundSet::new(points.len());
        let mut oracle = KMedoid {
            points,
            eval: None,
            to_e0: Arc::new(to_e0),
            base_loss: 0.0,
            ground,
        };
        oracle.base_loss = oracle.mean(oracle.to_e0_iter());
        oracle
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Number of points the loss is averaged over.
    pub fn eval_len(&self) -> usize {
        self.eval.as_ref().map_or(self.points.len(), |e| e.len())
    }

    pub fn eval_points(&self) -> Vec<usize> {
        match &self.eval {
            Some(e) => e.to_vec(),
            None => (0..self.points.len()).collect(),
        }
    }

    fn eval_index(&self, i: usize) -> usize {
        self.eval.as_ref().map_or(i, |e| e[i])
    }

    fn to_e0_iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.eval_len()).map(move |i| self.to_e0[self.eval_index(i)])
    }

    fn mean(&self, values: impl Iterator<Item = f64>) -> f64 {
        let n = self.eval_len();
        if n == 0 {
            0.0
        } else {
            values.sum::<f64>() / n as f64
        }
    }
}

/// Distance from each evaluation point to its nearest exemplar (or `e0`).
#[derive(Clone, Debug)]
pub struct MedoidState {
    nearest: Vec<f64>,
}

impl SubmodularOracle for KMedoid {
    type State = MedoidState;

    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn payload_size(&self, _e: usize) -> usize {
        self.points.dim()
    }

    fn is_integral(&self) -> bool {
        false
    }

    fn empty_state(&self) -> MedoidState {
        MedoidState {
            nearest: self.to_e0_iter().collect(),
        }
    }

    // Summing the non-negative per-point reductions (rather than differencing
    // two losses) keeps the computed gains exactly non-increasing as the
    // state improves, so lazy and eager greedy agree bit for bit.
    fn gain(&self, state: &MedoidState, e: usize) -> f64 {
        let cand = self.points.row(e);
        let total: f64 = state
            .nearest
            .iter()
            .enumerate()
            .map(|(i, &cur)| {
                let d = euclidean(self.points.row(self.eval_index(i)), cand);
                if d < cur {
                    cur - d
                } else {
                    0.0
                }
            })
            .sum();
        self.mean(std::iter::once(total))
    }

    fn insert(&self, state: &mut MedoidState, e: usize) {
        let cand = self.points.row(e);
        for (i, cur) in state.nearest.iter_mut().enumerate() {
            let d = euclidean(self.points.row(self.eval_index(i)), cand);
            if d < *cur {
                *cur = d;
            }
        }
    }

    fn state_value(&self, state: &MedoidState) -> f64 {
        self.base_loss - self.mean(state.nearest.iter().copied())
    }
}

impl Localize for KMedoid {
    fn uses_local_data(&self) -> bool {
        true
    }

    fn localize(&self, subset: &[usize], extra: &[usize]) -> Result<Self> {
        let n = self.points.len();
        let mut local: Vec<usize> = subset.iter().chain(extra).copied().collect();
        local.sort_unstable();
        local.dedup();
        if local.is_empty() {
            return Err(Error::domain("localized k-medoid needs at least one point"));
        }
        if let Some(&bad) = local.iter().find(|&&e| e >= n) {
            return Err(Error::domain(format!("point {bad} out of range")));
        }
        let mut oracle = KMedoid {
            points: Arc::clone(&self.points),
            eval: Some(Arc::new(local)),
            to_e0: Arc::clone(&self.to_e0),
            base_loss: 0.0,
            ground: self.ground.clone(),
        };
        oracle.base_loss = oracle.mean(oracle.to_e0_iter());
        Ok(oracle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_points() -> PointSet {
        PointSet::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn loss_examples() {
        let p = two_points();
        assert_eq!(kmedoid_loss(&p, &[], true).unwrap(), 1.0);
        assert_eq!(kmedoid_loss(&p, &[0], true).unwrap(), 0.5);
        assert_eq!(kmedoid_loss(&p, &[0, 1], false).unwrap(), 0.0);
        assert!(kmedoid_loss(&p, &[], false).is_err());
    }

    #[test]
    fn value_examples() {
        let p = two_points();
        assert_eq!(kmedoid_value(&p, &[0]).unwrap(), 0.5);
        assert_eq!(kmedoid_value(&p, &[]).unwrap(), 0.0);
        assert_eq!(kmedoid_value(&p, &[0, 1]).unwrap(), 1.0);
        let f = KMedoid::new(p);
        assert_eq!(f.value(&[0]), 0.5);
        assert_eq!(f.value(&[]), 0.0);
        assert_eq!(f.value(&[0, 1]), 1.0);
    }

    #[test]
    fn localize_to_single_point() {
        let f = KMedoid::new(two_points());
        let local = f.localize(&[0], &[]).unwrap();
        assert_eq!(local.value(&[0]), 1.0);
        assert!(f.localize(&[], &[]).is_err());
    }

    #[test]
    fn full_localization_is_identity() {
        let rows: Vec<Vec<f64>> = (0..6)
            .map(|i| vec![i as f64, (i * i) as f64 * 0.1, 1.0 - i as f64])
            .collect();
        let f = KMedoid::new(PointSet::from_rows(&rows).unwrap());
        let all: Vec<usize> = (0..6).collect();
        let g = f.localize(&all, &[]).unwrap();
        for set in [vec![], vec![2], vec![0, 5], vec![1, 3, 4]] {
            assert_eq!(f.value(&set), g.value(&set));
        }
    }

    #[test]
    fn extras_are_reproducible() {
        let label = NodeLabel { level: 1, id: 4 };
        let a = sample_extras(1000, 25, 7, label);
        let b = sample_extras(1000, 25, 7, label);
        assert_eq!(a, b);
        assert_eq!(a.len(), 25);
        assert_ne!(a, sample_extras(1000, 25, 8, label));
        assert_ne!(a, sample_extras(1000, 25, 7, NodeLabel { level: 2, id: 4 }));
        assert_eq!(sample_extras(5, 25, 7, label), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn preprocess_normalizes_rows() {
        let mut p = PointSet::from_rows(&[vec![1.0, 2.0, 6.0], vec![2.0, 2.0, 2.0]]).unwrap();
        let flagged = p.preprocess();
        assert_eq!(flagged, vec![1]);
        let r = p.row(0);
        assert!((r.iter().sum::<f64>() / 3.0).abs() <= 1e-12);
        assert!((r.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() <= 1e-12);
        assert_eq!(p.row(1), &[0.0, 0.0, 0.0]);
    }
}
