//! Ground sets, the cardinality constraint, and the oracle contract every
//! objective implements.
//!
//! Oracles are evaluated incrementally. A [`SubmodularOracle::State`] holds
//! whatever summary of the current set `S` an objective needs (a coverage
//! bitmap, per-point nearest distances) so that `f(S ∪ {e}) - f(S)` costs one
//! evaluation. Each such evaluation is one *function call* in the accounting
//! used throughout the crate.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::NodeLabel;

/// Dense 0-based element index space, optionally carrying the external ids
/// the elements were read with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    len: usize,
    labels: Option<Vec<u64>>,
}

impl GroundSet {
    pub fn new(len: usize) -> Self {
        GroundSet { len, labels: None }
    }

    /// Builds a ground set whose element `i` was known externally as
    /// `labels[i]`. Labels must be distinct.
    pub fn with_labels(labels: Vec<u64>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for &l in &labels {
            if !seen.insert(l) {
                return Err(Error::domain(format!("duplicate external id {l}")));
            }
        }
        Ok(GroundSet {
            len: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.len
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// External id of `e`, or `e` itself when no label map is present.
    pub fn original_id(&self, e: usize) -> u64 {
        match &self.labels {
            Some(l) => l[e],
            None => e as u64,
        }
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.len
    }

    pub(crate) fn check(&self, e: usize) -> Result<()> {
        if e < self.len {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "element {e} outside ground set of size {}",
                self.len
            )))
        }
    }
}

/// `|S| <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalityConstraint {
    k: usize,
}

impl CardinalityConstraint {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::config("k must be at least 1"));
        }
        Ok(CardinalityConstraint { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn admits(&self, size: usize) -> bool {
        size <= self.k
    }
}

/// Whether `e` can be appended to `set` without breaking the constraint.
pub fn is_feasible(c: &CardinalityConstraint, set: &[usize], e: usize) -> bool {
    set.len() < c.k() && !set.contains(&e)
}

/// Where a solution was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    Sequential,
    Node(NodeLabel),
}

/// A feasible set in greedy pick order, together with its objective value
/// under the oracle that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub members: Vec<usize>,
    pub value: f64,
    pub origin: Origin,
}

impl Solution {
    pub fn empty(origin: Origin) -> Self {
        Solution {
            members: Vec::new(),
            value: 0.0,
            origin,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks size, range and uniqueness of the members.
    pub fn check_feasible(&self, c: &CardinalityConstraint, ground: &GroundSet) -> Result<()> {
        if !c.admits(self.members.len()) {
            return Err(Error::Integrity(format!(
                "solution of size {} exceeds k = {}",
                self.members.len(),
                c.k()
            )));
        }
        let mut seen = HashSet::with_capacity(self.members.len());
        for &e in &self.members {
            if !ground.contains(e) {
                return Err(Error::Integrity(format!("member {e} outside ground set")));
            }
            if !seen.insert(e) {
                return Err(Error::Integrity(format!("member {e} repeated")));
            }
        }
        Ok(())
    }
}

/// A monotone submodular set function `f: 2^V -> R+` with `f(∅) = 0`.
pub trait SubmodularOracle: Send + Sync {
    /// Incremental summary of a selected set.
    type State: Clone + Send;

    fn ground(&self) -> &GroundSet;

    /// Size of the data shipped with element `e` when it is communicated:
    /// subset length, vertex degree, or feature count.
    fn payload_size(&self, e: usize) -> usize;

    /// True when every value is an exact integer, so a zero gain is exactly
    /// zero.
    fn is_integral(&self) -> bool;

    /// State for the empty set.
    fn empty_state(&self) -> Self::State;

    /// `f(S ∪ {e}) - f(S)` for the set summarized by `state`. One function
    /// call.
    fn gain(&self, state: &Self::State, e: usize) -> f64;

    fn insert(&self, state: &mut Self::State, e: usize);

    fn state_value(&self, state: &Self::State) -> f64;

    fn state_of(&self, set: &[usize]) -> Self::State {
        let mut st = self.empty_state();
        for &e in set {
            self.insert(&mut st, e);
        }
        st
    }

    /// `f(set)`, evaluated from scratch.
    fn value(&self, set: &[usize]) -> f64 {
        self.state_value(&self.state_of(set))
    }
}

/// `f(S ∪ {e}) - f(S)`, range-checked.
pub fn marginal_gain<O: SubmodularOracle + ?Sized>(oracle: &O, set: &[usize], e: usize) -> Result<f64> {
    let ground = oracle.ground();
    ground.check(e)?;
    for &s in set {
        ground.check(s)?;
    }
    if set.contains(&e) {
        return Ok(0.0);
    }
    Ok(oracle.gain(&oracle.state_of(set), e))
}
