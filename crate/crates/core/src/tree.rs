//! Accumulation-tree arithmetic.
//!
//! A tree `T(m, L, b)` has `m` leaves (machines `0..m`) and `L = ⌈log_b m⌉`
//! accumulation levels. Node `(ℓ, id)` exists when `id < m` and `b^ℓ`
//! divides `id`; it is run by machine `id`, which is also its own first
//! child one level down. Everything here is computed from `(m, b)` on
//! demand; no node table is stored.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeLabel {
    pub level: usize,
    pub id: usize,
}

impl NodeLabel {
    pub fn new(level: usize, id: usize) -> Self {
        NodeLabel { level, id }
    }
}

impl std::fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.level, self.id)
    }
}

/// `b^i · ⌊id / b^i⌋`, or `None` on overflow.
pub fn parent_id(id: usize, i: usize, b: usize) -> Option<usize> {
    let step = b.checked_pow(i as u32)?;
    Some(step * (id / step))
}

/// Smallest `L` with `b^L >= m`.
pub fn levels_for(m: usize, b: usize) -> usize {
    let mut levels = 0;
    let mut span: usize = 1;
    while span < m {
        span = span.saturating_mul(b);
        levels += 1;
    }
    levels
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccumulationTree {
    machines: usize,
    branching: usize,
    levels: usize,
}

impl AccumulationTree {
    pub fn new(machines: usize, branching: usize) -> Result<Self> {
        if machines == 0 {
            return Err(Error::config("at least one machine is required"));
        }
        if branching < 2 {
            return Err(Error::config(format!(
                "branching factor must be at least 2, got {branching}"
            )));
        }
        Ok(AccumulationTree {
            machines,
            branching,
            levels: levels_for(machines, branching),
        })
    }

    /// Tree with at most `levels` levels, using the smallest branching factor
    /// that fits `machines` leaves under that height.
    pub fn with_levels(machines: usize, levels: usize) -> Result<Self> {
        if machines == 0 {
            return Err(Error::config("at least one machine is required"));
        }
        if machines == 1 {
            return AccumulationTree::new(1, 2);
        }
        if levels == 0 {
            return Err(Error::config(format!(
                "{machines} machines cannot be arranged in 0 levels"
            )));
        }
        let mut b = 2;
        while levels_for(machines, b) > levels {
            b += 1;
        }
        AccumulationTree::new(machines, b)
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn branching(&self) -> usize {
        self.branching
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn root(&self) -> NodeLabel {
        NodeLabel::new(self.levels, 0)
    }

    fn span(&self, level: usize) -> usize {
        // b^level <= b^L fits: b^(L-1) < m
        self.branching.pow(level as u32)
    }

    pub fn node_exists(&self, level: usize, id: usize) -> bool {
        level <= self.levels && id < self.machines && id.is_multiple_of(self.span(level))
    }

    fn check_node(&self, level: usize, id: usize) -> Result<()> {
        if self.node_exists(level, id) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "no node ({level}, {id}) in T(m={}, L={}, b={})",
                self.machines, self.levels, self.branching
            )))
        }
    }

    /// Machine that machine `id` reports to at level `i`.
    pub fn parent(&self, id: usize, i: usize) -> Result<usize> {
        if id >= self.machines {
            return Err(Error::domain(format!("machine {id} out of range")));
        }
        if i == 0 || i > self.levels {
            return Err(Error::domain(format!(
                "level {i} outside 1..={}",
                self.levels
            )));
        }
        parent_id(id, i, self.branching).ok_or_else(|| Error::domain("b^i overflows"))
    }

    /// Parent node of `label`, `None` for the root.
    pub fn parent_of(&self, label: NodeLabel) -> Option<NodeLabel> {
        if label.level >= self.levels {
            return None;
        }
        let level = label.level + 1;
        Some(NodeLabel::new(level, parent_id(label.id, level, self.branching)?))
    }

    /// Machine ids of the children of `(level, id)` in ascending order; the
    /// first is `id` itself. Leaves have none.
    pub fn children(&self, level: usize, id: usize) -> Result<Vec<usize>> {
        self.check_node(level, id)?;
        if level == 0 {
            return Ok(Vec::new());
        }
        let step = self.span(level - 1);
        Ok((0..self.branching)
            .map(|j| id + j * step)
            .take_while(|&c| c < self.machines)
            .collect())
    }

    /// Highest level machine `id` is active at. Machine 0 runs the root.
    pub fn node_level(&self, id: usize) -> Result<usize> {
        if id >= self.machines {
            return Err(Error::domain(format!("machine {id} out of range")));
        }
        if id == 0 {
            return Ok(self.levels);
        }
        let mut level = 0;
        let mut rest = id;
        while rest.is_multiple_of(self.branching) {
            rest /= self.branching;
            level += 1;
        }
        Ok(level)
    }

    /// Leaves below `(level, id)`: `id ..= min(id + b^level - 1, m - 1)`.
    pub fn accessible_leaves(&self, level: usize, id: usize) -> Result<Range<usize>> {
        self.check_node(level, id)?;
        let end = id.saturating_add(self.span(level)).min(self.machines);
        Ok(id..end)
    }

    /// Machine ids of the nodes at `level`, ascending.
    pub fn nodes_at(&self, level: usize) -> Vec<usize> {
        if level > self.levels {
            return Vec::new();
        }
        (0..self.machines).step_by(self.span(level)).collect()
    }

    /// All nodes in level order, ascending ids within a level.
    pub fn nodes(&self) -> Vec<NodeLabel> {
        (0..=self.levels)
            .flat_map(|l| self.nodes_at(l).into_iter().map(move |id| NodeLabel::new(l, id)))
            .collect()
    }
}
