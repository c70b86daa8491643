//! Sequential greedy maximization under a cardinality constraint.
//!
//! [`greedy`] evaluates every remaining candidate on each round. [`lazy_greedy`]
//! keeps the gains from earlier rounds as upper bounds in a max-heap and only
//! refreshes the top, which is valid because gains never grow as the
//! selection grows. Both pick the maximum-gain candidate with ties going to
//! the lowest element index, so they return identical selections.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::oracle::{CardinalityConstraint, Origin, Solution, SubmodularOracle};

/// Gains at or below this are treated as zero for real-valued objectives.
pub const REAL_ZERO_GAIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStats {
    pub function_calls: u64,
    pub selections: usize,
}

fn is_zero_gain<O: SubmodularOracle + ?Sized>(oracle: &O, gain: f64) -> bool {
    if oracle.is_integral() {
        gain == 0.0
    } else {
        gain <= REAL_ZERO_GAIN
    }
}

fn sorted_unique(candidates: &[usize]) -> Vec<usize> {
    let mut c = candidates.to_vec();
    c.sort_unstable();
    c.dedup();
    c
}

fn finish<O: SubmodularOracle + ?Sized>(
    oracle: &O,
    members: Vec<usize>,
    state: &O::State,
    function_calls: u64,
) -> (Solution, GreedyStats) {
    let stats = GreedyStats {
        function_calls,
        selections: members.len(),
    };
    let value = oracle.state_value(state);
    (
        Solution {
            members,
            value,
            origin: Origin::Sequential,
        },
        stats,
    )
}

/// Plain greedy: every round evaluates all remaining candidates.
pub fn greedy<O: SubmodularOracle + ?Sized>(
    oracle: &O,
    c: &CardinalityConstraint,
    candidates: &[usize],
) -> (Solution, GreedyStats) {
    let mut remaining = sorted_unique(candidates);
    debug_assert!(remaining.iter().all(|&e| oracle.ground().contains(e)));
    let mut state = oracle.empty_state();
    let mut members = Vec::new();
    let mut calls = 0u64;

    while members.len() < c.k() && !remaining.is_empty() {
        let mut best: Option<(usize, f64)> = None;
        for (pos, &e) in remaining.iter().enumerate() {
            let g = oracle.gain(&state, e);
            calls += 1;
            // strict comparison keeps the lowest index on ties
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((pos, g));
            }
        }
        let (pos, g) = best.expect("remaining is non-empty");
        if is_zero_gain(oracle, g) {
            break;
        }
        let e = remaining.remove(pos);
        oracle.insert(&mut state, e);
        members.push(e);
    }
    finish(oracle, members, &state, calls)
}

#[derive(Debug)]
struct Entry {
    gain: f64,
    element: usize,
    round: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Max-heap order: larger gain first, then smaller element index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.element.cmp(&self.element))
    }
}

/// Lazy greedy. Same selection as [`greedy`], never more function calls.
pub fn lazy_greedy<O: SubmodularOracle + ?Sized>(
    oracle: &O,
    c: &CardinalityConstraint,
    candidates: &[usize],
) -> (Solution, GreedyStats) {
    let candidates = sorted_unique(candidates);
    debug_assert!(candidates.iter().all(|&e| oracle.ground().contains(e)));
    let mut state = oracle.empty_state();
    let mut members = Vec::new();
    let mut calls = 0u64;

    if c.k() == 0 || candidates.is_empty() {
        return finish(oracle, members, &state, calls);
    }

    let mut heap: BinaryHeap<Entry> = candidates
        .iter()
        .map(|&e| {
            calls += 1;
            Entry {
                gain: oracle.gain(&state, e),
                element: e,
                round: 0,
            }
        })
        .collect();

    let mut round = 0;
    while members.len() < c.k() {
        let Some(top) = heap.pop() else { break };
        if top.round == round {
            // Every other key bounds its true gain from above and orders
            // below this entry, so `top` is the eager choice.
            if is_zero_gain(oracle, top.gain) {
                break;
            }
            oracle.insert(&mut state, top.element);
            members.push(top.element);
            round += 1;
        } else {
            calls += 1;
            heap.push(Entry {
                gain: oracle.gain(&state, top.element),
                element: top.element,
                round,
            });
        }
    }
    finish(oracle, members, &state, calls)
}
