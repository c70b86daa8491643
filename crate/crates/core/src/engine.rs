//! Distributed execution of the multilevel scheme and of its single-level
//! special case.
//!
//! Every machine first runs lazy greedy on the part of the ground set the
//! random tape gives it. Level by level, a machine either sends its current
//! solution to its parent and stops, or receives its children's solutions,
//! runs greedy on their union (together with its own solution), and keeps
//! the better of the fresh result and its own previous-level solution.
//!
//! Two executors share the node logic: [`Mode::Simulate`] walks the tree in
//! level order on one thread, [`Mode::Concurrent`] runs one thread per
//! machine with a barrier after every level and channels for the solutions.
//! Received solutions are always consumed in ascending child id, so both
//! produce the same report apart from timings.

use std::sync::{mpsc, Barrier};
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::lazy_greedy;
use crate::objectives::{sample_extras, Localize};
use crate::oracle::{CardinalityConstraint, Origin, Solution, SubmodularOracle};
use crate::partition::RandomTape;
use crate::tree::{AccumulationTree, NodeLabel};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Simulate,
    Concurrent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveKind {
    KCover,
    KDom,
    KMedoid,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    RandGreedi,
    #[default]
    GreedyMl,
}

/// How the accumulation tree is specified; the other parameter is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Branching(usize),
    Levels(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub objective: ObjectiveKind,
    pub constraint: CardinalityConstraint,
    pub tree: AccumulationTree,
    pub seed: u64,
    pub mode: Mode,
    /// Points added to the evaluation set of every accumulation step when
    /// the objective works on local data.
    pub kmedoid_extra: usize,
}

impl RunConfig {
    pub fn new(objective: ObjectiveKind, k: usize, machines: usize, shape: TreeShape) -> Result<Self> {
        let constraint = CardinalityConstraint::new(k)?;
        let tree = match shape {
            TreeShape::Branching(b) => AccumulationTree::new(machines, b)?,
            TreeShape::Levels(l) => AccumulationTree::with_levels(machines, l)?,
        };
        Ok(RunConfig {
            objective,
            constraint,
            tree,
            seed: 0,
            mode: Mode::Simulate,
            kmedoid_extra: 0,
        })
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn kmedoid_extra(mut self, extra: usize) -> Self {
        self.kmedoid_extra = extra;
        self
    }

    pub fn k(&self) -> usize {
        self.constraint.k()
    }

    pub fn machines(&self) -> usize {
        self.tree.machines()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeTrace {
    pub label: NodeLabel,
    /// Candidates greedy ran over: the machine's part at a leaf, the union of
    /// received and own solutions at an interior node.
    pub input_elements: usize,
    pub function_calls: u64,
    pub solution_size: usize,
    /// Solution members received from other machines.
    pub elements_received: usize,
    pub payload_units_received: usize,
    /// Number of children, counting the node's own lower-level self. Zero
    /// at leaves.
    pub arity: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub solve_s: f64,
    pub per_level_s: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub objective: ObjectiveKind,
    pub k: usize,
    pub tree: AccumulationTree,
    pub seed: u64,
    pub mode: Mode,
    pub kmedoid_extra: usize,
    pub solution: Solution,
    /// Value of the final members over the full dataset, for objectives
    /// evaluated on local data.
    pub global_value: Option<f64>,
    /// Sorted by level, then machine id.
    pub nodes: Vec<NodeTrace>,
    pub total_function_calls: u64,
    /// Calls made by machine 0 over all levels.
    pub critical_path_calls: u64,
    pub total_communication_elements: usize,
    pub total_communication_payload_units: usize,
    pub timings: Timings,
}

impl RunReport {
    pub fn node(&self, label: NodeLabel) -> Option<&NodeTrace> {
        self.nodes.iter().find(|t| t.label == label)
    }

    /// Equality ignoring wall-clock timings.
    pub fn same_outcome(&self, other: &RunReport) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.timings = Timings::default();
        b.timings = Timings::default();
        a.mode = Mode::Simulate;
        b.mode = Mode::Simulate;
        a == b
    }
}

/// Picks the final solution at the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FinalRule {
    /// Fresh aggregate against the node's own previous solution.
    PreviousLevel,
    /// Fresh aggregate against every received solution as well.
    AllLocal,
}

/// Greedy over the union of the received solutions and `prev`, then the
/// better of that and `prev`. `received` must be in ascending child order;
/// the returned value is under `oracle`. Ties go to the fresh solution.
pub fn aggregate_node<O: SubmodularOracle + ?Sized>(
    label: NodeLabel,
    received: &[Solution],
    prev: &Solution,
    oracle: &O,
    c: &CardinalityConstraint,
) -> Result<(Solution, NodeTrace)> {
    aggregate(label, received, prev, oracle, c, FinalRule::PreviousLevel)
}

fn aggregate<O: SubmodularOracle + ?Sized>(
    label: NodeLabel,
    received: &[Solution],
    prev: &Solution,
    oracle: &O,
    c: &CardinalityConstraint,
    rule: FinalRule,
) -> Result<(Solution, NodeTrace)> {
    let ground = oracle.ground();
    prev.check_feasible(c, ground)?;
    for s in received {
        s.check_feasible(c, ground)?;
    }
    let pool = union_members(prev, received);

    let (fresh, stats) = lazy_greedy(oracle, c, &pool);
    let mut best = Solution {
        origin: Origin::Node(label),
        ..fresh
    };

    let mut rivals = vec![prev];
    if rule == FinalRule::AllLocal {
        rivals.extend(received);
    }
    for rival in rivals {
        let v = oracle.value(&rival.members);
        if v > best.value {
            best = Solution {
                members: rival.members.clone(),
                value: v,
                origin: Origin::Node(label),
            };
        }
    }

    let trace = NodeTrace {
        label,
        input_elements: pool.len(),
        function_calls: stats.function_calls,
        solution_size: best.len(),
        elements_received: received.iter().map(Solution::len).sum(),
        payload_units_received: received
            .iter()
            .flat_map(|s| &s.members)
            .map(|&e| oracle.payload_size(e))
            .sum(),
        arity: received.len() + 1,
    };
    Ok((best, trace))
}

fn union_members(prev: &Solution, received: &[Solution]) -> Vec<usize> {
    let mut pool: Vec<usize> = prev
        .members
        .iter()
        .chain(received.iter().flat_map(|s| &s.members))
        .copied()
        .collect();
    pool.sort_unstable();
    pool.dedup();
    pool
}

/// Everything a node step needs besides its inputs.
struct Ctx<'a, O> {
    oracle: &'a O,
    cfg: &'a RunConfig,
    rule: FinalRule,
}

impl<O: Localize> Ctx<'_, O> {
    fn leaf(&self, id: usize, part: &[usize]) -> Result<(Solution, NodeTrace)> {
        let label = NodeLabel::new(0, id);
        let c = &self.cfg.constraint;
        let (sol, stats) = if part.is_empty() {
            (Solution::empty(Origin::Node(label)), Default::default())
        } else if self.oracle.uses_local_data() {
            lazy_greedy(&self.oracle.localize(part, &[])?, c, part)
        } else {
            lazy_greedy(self.oracle, c, part)
        };
        let trace = NodeTrace {
            label,
            input_elements: part.len(),
            function_calls: stats.function_calls,
            solution_size: sol.len(),
            elements_received: 0,
            payload_units_received: 0,
            arity: 0,
        };
        Ok((
            Solution {
                origin: Origin::Node(label),
                ..sol
            },
            trace,
        ))
    }

    fn interior(
        &self,
        label: NodeLabel,
        received: &[Solution],
        prev: &Solution,
    ) -> Result<(Solution, NodeTrace)> {
        let rule = if label == self.cfg.tree.root() {
            self.rule
        } else {
            FinalRule::PreviousLevel
        };
        let c = &self.cfg.constraint;
        if !self.oracle.uses_local_data() {
            return aggregate(label, received, prev, self.oracle, c, rule);
        }
        let held = union_members(prev, received);
        let extra = if self.cfg.kmedoid_extra > 0 {
            let n = self.oracle.ground().len();
            sample_extras(n, self.cfg.kmedoid_extra, self.cfg.seed, label)
        } else {
            Vec::new()
        };
        if held.is_empty() && extra.is_empty() {
            return aggregate(label, received, prev, self.oracle, c, rule);
        }
        let local = self.oracle.localize(&held, &extra)?;
        aggregate(label, received, prev, &local, c, rule)
    }
}

/// Multilevel run over the whole ground set.
pub fn run_greedyml<O: Localize>(cfg: &RunConfig, oracle: &O) -> Result<RunReport> {
    let all: Vec<usize> = oracle.ground().indices().collect();
    run_greedyml_on(cfg, oracle, &all)
}

/// Multilevel run restricted to `elements`; the tape places each element
/// exactly where it would go in a run over the whole ground set.
pub fn run_greedyml_on<O: Localize>(cfg: &RunConfig, oracle: &O, elements: &[usize]) -> Result<RunReport> {
    execute(cfg, cfg.tree, oracle, elements, FinalRule::PreviousLevel, Algorithm::GreedyMl)
}

/// Single accumulation step: the tree's branching factor is ignored and
/// replaced by `m`. The result is the best of the global solution and every
/// local one, ties going to the global solution and then to the lowest
/// machine id.
pub fn run_randgreedi<O: Localize>(cfg: &RunConfig, oracle: &O) -> Result<RunReport> {
    let all: Vec<usize> = oracle.ground().indices().collect();
    run_randgreedi_on(cfg, oracle, &all)
}

pub fn run_randgreedi_on<O: Localize>(cfg: &RunConfig, oracle: &O, elements: &[usize]) -> Result<RunReport> {
    let m = cfg.machines();
    let tree = AccumulationTree::new(m, m.max(2))?;
    execute(cfg, tree, oracle, elements, FinalRule::AllLocal, Algorithm::RandGreedi)
}

/// Sequential lazy greedy on one machine, reported in the same format.
pub fn run_sequential<O: Localize>(cfg: &RunConfig, oracle: &O) -> Result<RunReport> {
    let tree = AccumulationTree::new(1, cfg.tree.branching())?;
    let all: Vec<usize> = oracle.ground().indices().collect();
    let mut cfg = cfg.clone();
    cfg.mode = Mode::Simulate;
    execute(&cfg, tree, oracle, &all, FinalRule::PreviousLevel, Algorithm::Greedy)
}

fn execute<O: Localize>(
    cfg: &RunConfig,
    tree: AccumulationTree,
    oracle: &O,
    elements: &[usize],
    rule: FinalRule,
    algorithm: Algorithm,
) -> Result<RunReport> {
    if elements.is_empty() {
        return Err(Error::config("nothing to select from: the ground set is empty"));
    }
    for &e in elements {
        oracle.ground().check(e)?;
    }
    let cfg = RunConfig {
        tree,
        ..cfg.clone()
    };
    let tape = RandomTape::new(cfg.seed, tree.machines());
    let parts = tape.split(elements);
    let ctx = Ctx {
        oracle,
        cfg: &cfg,
        rule,
    };

    let start = Instant::now();
    let (solution, mut nodes, per_level_s) = match cfg.mode {
        Mode::Simulate => simulate(&ctx, &parts)?,
        Mode::Concurrent => concurrent(&ctx, parts)?,
    };
    let solve_s = start.elapsed().as_secs_f64();
    nodes.sort_by_key(|t| t.label);

    let global_value = oracle
        .uses_local_data()
        .then(|| oracle.value(&solution.members));

    Ok(RunReport {
        algorithm,
        objective: cfg.objective,
        k: cfg.k(),
        tree,
        seed: cfg.seed,
        mode: cfg.mode,
        kmedoid_extra: cfg.kmedoid_extra,
        solution,
        global_value,
        total_function_calls: nodes.iter().map(|t| t.function_calls).sum(),
        critical_path_calls: nodes
            .iter()
            .filter(|t| t.label.id == 0)
            .map(|t| t.function_calls)
            .sum(),
        total_communication_elements: nodes.iter().map(|t| t.elements_received).sum(),
        total_communication_payload_units: nodes.iter().map(|t| t.payload_units_received).sum(),
        nodes,
        timings: Timings {
            solve_s,
            per_level_s,
        },
    })
}

type Outcome = (Solution, Vec<NodeTrace>, Vec<f64>);

fn simulate<O: Localize>(ctx: &Ctx<'_, O>, parts: &[Vec<usize>]) -> Result<Outcome> {
    let tree = ctx.cfg.tree;
    let mut traces = Vec::new();
    let mut per_level = Vec::with_capacity(tree.levels() + 1);

    let t0 = Instant::now();
    let mut current: Vec<Option<Solution>> = Vec::with_capacity(parts.len());
    for (id, part) in parts.iter().enumerate() {
        let (sol, trace) = ctx.leaf(id, part)?;
        current.push(Some(sol));
        traces.push(trace);
    }
    per_level.push(t0.elapsed().as_secs_f64());

    for level in 1..=tree.levels() {
        let t = Instant::now();
        for id in tree.nodes_at(level) {
            let children = tree.children(level, id)?;
            let received = children[1..]
                .iter()
                .map(|&c| current[c].take().ok_or_else(|| missing(level, c)))
                .collect::<Result<Vec<_>>>()?;
            let prev = current[id].take().ok_or_else(|| missing(level, id))?;
            let (sol, trace) = ctx.interior(NodeLabel::new(level, id), &received, &prev)?;
            current[id] = Some(sol);
            traces.push(trace);
        }
        per_level.push(t.elapsed().as_secs_f64());
    }
    let root = current[0].take().ok_or_else(|| missing(tree.levels(), 0))?;
    Ok((root, traces, per_level))
}

fn missing(level: usize, id: usize) -> Error {
    Error::Integrity(format!("no solution from machine {id} entering level {level}"))
}

/// What a machine sends its parent. `None` signals that the sender failed.
type Message = (usize, Option<Solution>);

struct MachineResult {
    traces: Vec<(NodeTrace, f64)>,
    error: Option<Error>,
    solution: Option<Solution>,
}

fn concurrent<O: Localize>(ctx: &Ctx<'_, O>, parts: Vec<Vec<usize>>) -> Result<Outcome> {
    let tree = ctx.cfg.tree;
    let m = tree.machines();
    let levels = tree.levels();
    let barrier = Barrier::new(m);
    let (senders, receivers): (Vec<_>, Vec<_>) = (0..m).map(|_| mpsc::channel::<Message>()).unzip();

    let results: Vec<MachineResult> = thread::scope(|scope| {
        let handles: Vec<_> = parts
            .into_iter()
            .zip(receivers)
            .enumerate()
            .map(|(id, (part, inbox))| {
                let senders = senders.clone();
                let barrier = &barrier;
                scope.spawn(move || machine(ctx, id, &part, &inbox, &senders, barrier, levels))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("machine thread panicked"))
            .collect()
    });

    let mut traces = Vec::new();
    let mut per_level = vec![0.0f64; levels + 1];
    let mut root = None;
    let mut first_error = None;
    for r in results {
        for (trace, secs) in r.traces {
            let slot = &mut per_level[trace.label.level];
            *slot = slot.max(secs);
            traces.push(trace);
        }
        if first_error.is_none() {
            first_error = r.error;
        }
        if r.solution.is_some() {
            root = r.solution;
        }
    }
    if let Some(e) = first_error {
        return Err(e);
    }
    let root = root.ok_or_else(|| missing(levels, 0))?;
    Ok((root, traces, per_level))
}

fn machine<O: Localize>(
    ctx: &Ctx<'_, O>,
    id: usize,
    part: &[usize],
    inbox: &mpsc::Receiver<Message>,
    outboxes: &[mpsc::Sender<Message>],
    barrier: &Barrier,
    levels: usize,
) -> MachineResult {
    let tree = ctx.cfg.tree;
    let mut out = MachineResult {
        traces: Vec::new(),
        error: None,
        solution: None,
    };

    let t = Instant::now();
    let mut current = match ctx.leaf(id, part) {
        Ok((sol, trace)) => {
            out.traces.push((trace, t.elapsed().as_secs_f64()));
            Some(sol)
        }
        Err(e) => {
            out.error = Some(e);
            None
        }
    };
    let mut active = true;
    barrier.wait();

    for level in 1..=levels {
        if active {
            let parent = tree.parent(id, level).expect("level within tree height");
            if parent != id {
                // the parent is blocked on this message, never drop it
                let _ = outboxes[parent].send((id, current.take()));
                active = false;
            } else {
                let t = Instant::now();
                let expected = tree.children(level, id).map_or(0, |c| c.len() - 1);
                let mut inbound: Vec<Message> = (0..expected)
                    .map(|_| inbox.recv().expect("sibling machines outlive the level"))
                    .collect();
                inbound.sort_by_key(|(child, _)| *child);
                let received: Option<Vec<Solution>> = inbound.into_iter().map(|(_, s)| s).collect();
                current = match (received, current.take()) {
                    (Some(received), Some(prev)) => {
                        match ctx.interior(NodeLabel::new(level, id), &received, &prev) {
                            Ok((sol, trace)) => {
                                out.traces.push((trace, t.elapsed().as_secs_f64()));
                                Some(sol)
                            }
                            Err(e) => {
                                out.error.get_or_insert(e);
                                None
                            }
                        }
                    }
                    _ => None,
                };
            }
        }
        barrier.wait();
    }

    if id == 0 {
        out.solution = current;
    }
    out
}
