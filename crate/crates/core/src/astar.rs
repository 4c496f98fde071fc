//! Best-first search over lattice states with joint-action successors.
//!
//! The open list is ordered by `f = g + h`, ties broken by larger `g` and then
//! by insertion order, so identical inputs always produce identical plans.
//! Because the estimate is not guaranteed admissible, a closed state that is
//! reached again with a strictly lower `g` is reopened unless disabled.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::time::Duration;

use hashbrown::HashMap;

use crate::costs::{step_cost, HeuristicKind};
use crate::grid::{GridState, StateKey};
use crate::joint::{enumerate_joint_actions, JointAction};
use crate::scenario::{Scenario, ScenarioError};
use crate::validator::validate_plan;

pub const DEFAULT_MAX_EXPANDED: u64 = 5_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(120);

/// Elapsed-time source. The core has no clock of its own.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; time limits never trigger.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

impl<F: Fn() -> Duration> Clock for F {
    fn elapsed(&self) -> Duration {
        self()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub heuristic: HeuristicKind,
    pub max_expanded: u64,
    /// Overrides the scenario's own cap when set.
    pub max_parallel: Option<usize>,
    pub time_limit: Option<Duration>,
    pub reopen: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            heuristic: HeuristicKind::Paper,
            max_expanded: DEFAULT_MAX_EXPANDED,
            max_parallel: None,
            time_limit: Some(DEFAULT_TIME_LIMIT),
            reopen: true,
        }
    }
}

impl SearchOptions {
    pub fn zero() -> Self {
        SearchOptions { heuristic: HeuristicKind::Zero, ..Default::default() }
    }

    pub(crate) fn parallel_cap(&self, scenario: &Scenario) -> Option<usize> {
        self.max_parallel.or(scenario.options.max_parallel)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub expanded: u64,
    pub generated: u64,
    pub reopened: u64,
    pub peak_open: u64,
    pub duration: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<JointAction>,
    pub total_cost: u64,
    pub stats: SearchStats,
}

impl Plan {
    /// Equality ignoring search statistics.
    pub fn same_steps(&self, other: &Plan) -> bool {
        self.total_cost == other.total_cost && self.steps == other.steps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Expansions,
    Time,
    WorldSize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Plan),
    /// The reachable state space holds no goal state.
    NoPlan(SearchStats),
    ResourceExhausted { limit: Limit, stats: SearchStats },
}

impl SearchOutcome {
    pub fn plan(&self) -> Option<&Plan> {
        match self {
            SearchOutcome::Found(p) => Some(p),
            _ => None,
        }
    }

    pub fn into_plan(self) -> Option<Plan> {
        match self {
            SearchOutcome::Found(p) => Some(p),
            _ => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Found(p) => &p.stats,
            SearchOutcome::NoPlan(s) | SearchOutcome::ResourceExhausted { stats: s, .. } => s,
        }
    }
}

struct Node {
    state: GridState,
    g: u64,
    h: u64,
    parent: Option<usize>,
    action: Option<JointAction>,
    closed: bool,
}

#[derive(PartialEq, Eq)]
struct OpenEntry {
    f: u64,
    g: u64,
    seq: u64,
    node: usize,
}

impl Ord for OpenEntry {
    // BinaryHeap pops the greatest: smallest f, then largest g, then oldest.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .cmp(&self.f)
            .then(self.g.cmp(&other.g))
            .then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// [`plan_with_clock`] without a time source.
pub fn plan(scenario: &Scenario, options: &SearchOptions) -> Result<SearchOutcome, ScenarioError> {
    plan_with_clock(scenario, options, &NoClock)
}

/// Runs the search. The returned plan has already passed the validator.
pub fn plan_with_clock(
    scenario: &Scenario,
    options: &SearchOptions,
    clock: &dyn Clock,
) -> Result<SearchOutcome, ScenarioError> {
    scenario.check_plannable()?;
    let goal = scenario.goal();
    let rules = scenario.rules();
    let cap = options.parallel_cap(scenario);

    let mut stats = SearchStats::default();
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<StateKey, usize> = HashMap::new();
    let mut open = BinaryHeap::new();
    let mut seq = 0u64;

    let start = scenario.start().clone();
    let h0 = options.heuristic.evaluate(&start, goal);
    index.insert(start.canonical_key(), 0);
    nodes.push(Node { state: start, g: 0, h: h0, parent: None, action: None, closed: false });
    open.push(OpenEntry { f: h0, g: 0, seq, node: 0 });
    stats.peak_open = 1;

    while let Some(entry) = open.pop() {
        let id = entry.node;
        if nodes[id].closed || nodes[id].g != entry.g {
            continue;
        }
        if nodes[id].state.satisfies(goal) {
            stats.duration = clock.elapsed();
            let steps = reconstruct(&nodes, id);
            let plan = Plan { steps, total_cost: nodes[id].g, stats };
            let report = validate_plan(scenario, &plan);
            assert!(report.ok, "search produced an invalid plan: {report:?}");
            return Ok(SearchOutcome::Found(plan));
        }
        if stats.expanded >= options.max_expanded {
            stats.duration = clock.elapsed();
            return Ok(SearchOutcome::ResourceExhausted { limit: Limit::Expansions, stats });
        }
        if let Some(limit) = options.time_limit {
            if stats.expanded % 256 == 0 && clock.elapsed() > limit {
                stats.duration = clock.elapsed();
                return Ok(SearchOutcome::ResourceExhausted { limit: Limit::Time, stats });
            }
        }
        nodes[id].closed = true;
        stats.expanded += 1;

        let g = nodes[id].g;
        for action in enumerate_joint_actions(&nodes[id].state, rules, cap) {
            let succ = action.apply(&nodes[id].state, rules);
            stats.generated += 1;
            let g2 = g + step_cost(&action);
            let key = succ.canonical_key();
            let target = match index.get(&key) {
                Some(&known) => {
                    let node = &mut nodes[known];
                    if g2 >= node.g {
                        continue;
                    }
                    if node.closed {
                        if !options.reopen {
                            continue;
                        }
                        node.closed = false;
                        stats.reopened += 1;
                    }
                    node.g = g2;
                    node.parent = Some(id);
                    node.action = Some(action);
                    known
                }
                None => {
                    let h = options.heuristic.evaluate(&succ, goal);
                    let known = nodes.len();
                    index.insert(key, known);
                    nodes.push(Node { state: succ, g: g2, h, parent: Some(id), action: Some(action), closed: false });
                    known
                }
            };
            seq += 1;
            open.push(OpenEntry { f: g2 + nodes[target].h, g: g2, seq, node: target });
        }
        stats.peak_open = stats.peak_open.max(open.len() as u64);
    }
    stats.duration = clock.elapsed();
    Ok(SearchOutcome::NoPlan(stats))
}

/// Walks parent links back from `goal` and returns the actions in order.
fn reconstruct(nodes: &[Node], goal: usize) -> Vec<JointAction> {
    let mut steps = Vec::new();
    let mut cur = goal;
    while let Some(parent) = nodes[cur].parent {
        steps.push(nodes[cur].action.clone().expect("non-root node has an action"));
        cur = parent;
    }
    steps.reverse();
    steps
}
