use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::{GroundSet, SubmodularOracle};

/// A family of subsets of a base universe `0..universe`; each subset is one
/// ground-set element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    subsets: Vec<Vec<usize>>,
}

impl SetFamily {
    /// Items inside each subset are sorted and deduplicated.
    pub fn new(universe: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut subsets = subsets;
        for (i, s) in subsets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&max) = s.last() {
                if max >= universe {
                    return Err(Error::domain(format!(
                        "subset {i} holds item {max} outside universe of size {universe}"
                    )));
                }
            }
        }
        Ok(SetFamily { universe, subsets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

/// `|∪_{i ∈ S} subset_i|`.
pub fn kcover_value(family: &SetFamily, set: &[usize]) -> usize {
    let mut covered = vec![false; family.universe];
    let mut count = 0;
    for &i in set {
        for &item in family.subset(i) {
            if !covered[item] {
                covered[item] = true;
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug)]
pub struct KCover {
    family: Arc<SetFamily>,
    ground: GroundSet,
}

#[derive(Clone, Debug)]
pub struct CoverState {
    covered: Vec<bool>,
    count: usize,
}

impl KCover {
    pub fn new(family: SetFamily) -> Self {
        Self::from_shared(Arc::new(family), None)
    }

    /// `labels[i]` is the external id of subset `i`.
    pub fn from_shared(family: Arc<SetFamily>, labels: Option<Vec<u64>>) -> Self {
        let ground = match labels {
            Some(l) => GroundSet::with_labels(l).expect("subset labels must be distinct"),
            None => GroundSet::new(family.len()),
        };
        KCover { family, ground }
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }
}

impl SubmodularOracle for KCover {
    type State = CoverState;

    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn payload_size(&self, e: usize) -> usize {
        self.family.subset(e).len()
    }

    fn is_integral(&self) -> bool {
        true
    }

    fn empty_state(&self) -> CoverState {
        CoverState {
            covered: vec![false; self.family.universe],
            count: 0,
        }
    }

    fn gain(&self, state: &CoverState, e: usize) -> f64 {
        self.family
            .subset(e)
            .iter()
            .filter(|&&item| !state.covered[item])
            .count() as f64
    }

    fn insert(&self, state: &mut CoverState, e: usize) {
        for &item in self.family.subset(e) {
            if !state.covered[item] {
                state.covered[item] = true;
                state.count += 1;
            }
        }
    }

    fn state_value(&self, state: &CoverState) -> f64 {
        state.count as f64
    }
}
