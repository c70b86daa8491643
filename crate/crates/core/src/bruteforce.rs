//! Exact optimum by exhaustive enumeration, for checking approximation
//! ratios on small instances.

use crate::error::{Error, Result};
use crate::oracle::SubmodularOracle;

/// Largest `C(n, k)` the enumerator accepts.
pub const MAX_SUBSETS: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    /// Ascending.
    pub opt_members: Vec<usize>,
    pub opt_value: f64,
    pub subsets_enumerated: u64,
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Best set of size at most `k` over `elements`. Ties go to the
/// lexicographically smallest member list.
pub fn exact_opt<O: SubmodularOracle + ?Sized>(oracle: &O, elements: &[usize], k: usize) -> Result<ExactResult> {
    enumerate(oracle, elements, k, false)
}

/// Same search restricted to sets of exactly `min(k, n)` elements.
pub fn exact_opt_fixed_size<O: SubmodularOracle + ?Sized>(
    oracle: &O,
    elements: &[usize],
    k: usize,
) -> Result<ExactResult> {
    enumerate(oracle, elements, k, true)
}

fn enumerate<O: SubmodularOracle + ?Sized>(
    oracle: &O,
    elements: &[usize],
    k: usize,
    exact_size: bool,
) -> Result<ExactResult> {
    let mut elems = elements.to_vec();
    elems.sort_unstable();
    elems.dedup();
    for &e in &elems {
        oracle.ground().check(e)?;
    }
    let k = k.min(elems.len());
    let count = binomial(elems.len(), k);
    if count > MAX_SUBSETS {
        return Err(Error::GuardRail(format!(
            "C({}, {k}) = {count} subsets exceeds the limit of {MAX_SUBSETS}",
            elems.len()
        )));
    }

    let mut search = Search {
        oracle,
        elems: &elems,
        k,
        exact_size,
        chosen: Vec::with_capacity(k),
        best: None,
        enumerated: 0,
    };
    let empty = oracle.empty_state();
    search.visit(&empty);
    search.descend(0, &empty);

    let (opt_members, opt_value) = search.best.expect("the empty set or a size-k set is always visited");
    Ok(ExactResult {
        opt_members,
        opt_value,
        subsets_enumerated: search.enumerated,
    })
}

struct Search<'a, O: SubmodularOracle + ?Sized> {
    oracle: &'a O,
    elems: &'a [usize],
    k: usize,
    exact_size: bool,
    chosen: Vec<usize>,
    best: Option<(Vec<usize>, f64)>,
    enumerated: u64,
}

impl<O: SubmodularOracle + ?Sized> Search<'_, O> {
    fn visit(&mut self, state: &O::State) {
        if self.exact_size && self.chosen.len() != self.k {
            return;
        }
        self.enumerated += 1;
        let v = self.oracle.state_value(state);
        // preorder over sorted elements is lexicographic order, so a strict
        // improvement test keeps the smallest list among ties
        if self.best.as_ref().is_none_or(|(_, bv)| v > *bv) {
            self.best = Some((self.chosen.clone(), v));
        }
    }

    fn descend(&mut self, from: usize, state: &O::State) {
        if self.chosen.len() == self.k {
            return;
        }
        let needed = self.k - self.chosen.len();
        for i in from..self.elems.len() {
            if self.exact_size && self.elems.len() - i < needed {
                break;
            }
            let e = self.elems[i];
            let mut next = state.clone();
            self.oracle.insert(&mut next, e);
            self.chosen.push(e);
            self.visit(&next);
            self.descend(i + 1, &next);
            self.chosen.pop();
        }
    }
}
