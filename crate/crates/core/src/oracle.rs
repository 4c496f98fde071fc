//! Uniform-cost search used as ground truth on small instances, and the
//! admissibility audit built on it.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;

use crate::astar::{self, Limit, Plan, SearchOptions, SearchOutcome, SearchStats};
use crate::costs::{heuristic_paper, step_cost, CostError, HeuristicKind};
use crate::grid::StateKey;
use crate::joint::{enumerate_joint_actions, JointAction};
use crate::scenario::{Scenario, ScenarioError};
use crate::validator::validate_plan;

/// Largest world side the oracle accepts.
pub const ORACLE_MAX_SIDE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_expanded: u64,
    pub max_parallel: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_expanded: 2_000_000, max_parallel: None }
    }
}

/// Dijkstra over joint-action steps. Step costs are at least 1, so the first
/// time a goal state is popped its cost is optimal.
pub fn ucs_plan(scenario: &Scenario, options: &OracleOptions) -> Result<SearchOutcome, ScenarioError> {
    scenario.check_plannable()?;
    let mut stats = SearchStats::default();
    if scenario.width() > ORACLE_MAX_SIDE || scenario.height() > ORACLE_MAX_SIDE {
        return Ok(SearchOutcome::ResourceExhausted { limit: Limit::WorldSize, stats });
    }
    let rules = scenario.rules();
    let cap = options.max_parallel.or(scenario.options.max_parallel);
    let goal = scenario.goal();

    // Per state: best known cost, predecessor key and incoming action.
    let mut best: Best = HashMap::new();
    let mut states = Vec::new();
    let mut queue = BinaryHeap::new();
    let start = scenario.start().clone();
    best.insert(start.canonical_key(), (0, None));
    states.push(start);
    queue.push(Reverse((0u64, 0usize)));

    let mut done: hashbrown::HashSet<StateKey> = hashbrown::HashSet::new();
    while let Some(Reverse((cost, idx))) = queue.pop() {
        let state = states[idx].clone();
        let key = state.canonical_key();
        if !done.insert(key.clone()) {
            continue;
        }
        if state.satisfies(goal) {
            let steps = unwind(&best, key);
            let plan = Plan { steps, total_cost: cost, stats };
            let report = validate_plan(scenario, &plan);
            assert!(report.ok, "oracle produced an invalid plan: {report:?}");
            return Ok(SearchOutcome::Found(plan));
        }
        if stats.expanded >= options.max_expanded {
            return Ok(SearchOutcome::ResourceExhausted { limit: Limit::Expansions, stats });
        }
        stats.expanded += 1;
        for action in enumerate_joint_actions(&state, rules, cap) {
            let next = action.apply(&state, rules);
            stats.generated += 1;
            let next_key = next.canonical_key();
            if done.contains(&next_key) {
                continue;
            }
            let next_cost = cost + step_cost(&action);
            let improves = best.get(&next_key).is_none_or(|(c, _)| next_cost < *c);
            if improves {
                best.insert(next_key, (next_cost, Some((key.clone(), action))));
                states.push(next);
                queue.push(Reverse((next_cost, states.len() - 1)));
            }
        }
        stats.peak_open = stats.peak_open.max(queue.len() as u64);
    }
    Ok(SearchOutcome::NoPlan(stats))
}

/// Best known cost per state and the step that reached it.
type Best = HashMap<StateKey, (u64, Option<(StateKey, JointAction)>)>;

fn unwind(best: &Best, mut key: StateKey) -> Vec<JointAction> {
    let mut steps = Vec::new();
    while let Some((_, Some((prev, action)))) = best.get(&key) {
        steps.push(action.clone());
        key = prev.clone();
    }
    steps.reverse();
    steps
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error("search limit hit ({0:?})")]
    Exhausted(Limit),
}

/// Outcome of comparing the estimate and the A* plan against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditReport {
    /// `None` when the instance has no plan.
    pub optimal_cost: Option<u64>,
    pub astar_cost: Option<u64>,
    pub h_at_start: u64,
    /// `h_at_start <= optimal_cost` (vacuously true without a plan).
    pub admissible_here: bool,
    /// A* with the estimate returned a more expensive plan than the oracle.
    pub astar_overshoot: bool,
}

pub fn audit_heuristic(scenario: &Scenario) -> Result<AuditReport, AuditError> {
    let h_at_start = heuristic_paper(scenario.start(), scenario.goal())?;
    let optimal_cost = cost_of(ucs_plan(scenario, &OracleOptions::default())?)?;
    let astar_opts = SearchOptions { heuristic: HeuristicKind::Paper, ..Default::default() };
    let astar_cost = cost_of(astar::plan(scenario, &astar_opts)?)?;
    Ok(AuditReport {
        optimal_cost,
        astar_cost,
        h_at_start,
        admissible_here: optimal_cost.is_none_or(|opt| h_at_start <= opt),
        astar_overshoot: matches!((astar_cost, optimal_cost), (Some(a), Some(o)) if a > o),
    })
}

fn cost_of(outcome: SearchOutcome) -> Result<Option<u64>, AuditError> {
    match outcome {
        SearchOutcome::Found(p) => Ok(Some(p.total_cost)),
        SearchOutcome::NoPlan(_) => Ok(None),
        SearchOutcome::ResourceExhausted { limit, .. } => Err(AuditError::Exhausted(limit)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GoalSpec, GridState};
    use crate::scenario::WorldOptions;

    fn scenario(
        w: usize,
        h: usize,
        blocks: &[(usize, usize)],
        robots: &[(usize, usize)],
        goal: &[(usize, usize)],
    ) -> Scenario {
        let start = GridState::from_blocks(w, h, blocks, robots).unwrap();
        let goal = GoalSpec::from_blocks(w, h, goal).unwrap();
        Scenario::new("t", start, goal, WorldOptions::default()).unwrap()
    }

    fn optimal(s: &Scenario) -> Option<u64> {
        ucs_plan(s, &OracleOptions::default()).unwrap().plan().map(|p| p.total_cost)
    }

    #[test]
    fn trivial_and_shift() {
        assert_eq!(optimal(&scenario(2, 2, &[(0, 0)], &[(0, 0)], &[(0, 0)])), Some(0));
        let shift = scenario(3, 3, &[(0, 0), (1, 0), (0, 1)], &[(0, 1)], &[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(optimal(&shift), Some(2));
        let zero = astar::plan(&shift, &SearchOptions::zero()).unwrap();
        assert_eq!(zero.plan().unwrap().total_cost, 2);
    }

    #[test]
    fn parallel_step_beats_two_sequential() {
        // Two robots each shift their block inward along the second row.
        let s = scenario(
            5,
            2,
            &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1), (4, 1)],
            &[(0, 1), (4, 1)],
            &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (1, 1), (3, 1)],
        );
        let plan = ucs_plan(&s, &OracleOptions::default()).unwrap().into_plan().unwrap();
        assert_eq!(plan.total_cost, 3);
        assert_eq!(plan.steps.len(), 1);
        assert_eq!(plan.steps[0].len(), 2);
        let serial = OracleOptions { max_parallel: Some(1), ..Default::default() };
        assert_eq!(ucs_plan(&s, &serial).unwrap().plan().unwrap().total_cost, 4);
    }

    #[test]
    fn oversized_world_is_refused() {
        let s = scenario(6, 2, &[(0, 0)], &[(0, 0)], &[(1, 0)]);
        let out = ucs_plan(&s, &OracleOptions::default()).unwrap();
        assert!(matches!(out, SearchOutcome::ResourceExhausted { limit: Limit::WorldSize, .. }));
    }

    #[test]
    fn audits() {
        let done = scenario(2, 2, &[(0, 0)], &[(0, 0)], &[(0, 0)]);
        let r = audit_heuristic(&done).unwrap();
        assert_eq!((r.h_at_start, r.optimal_cost, r.admissible_here), (0, Some(0), true));

        let shift = scenario(3, 3, &[(0, 0), (1, 0), (0, 1)], &[(0, 1)], &[(0, 0), (1, 0), (1, 1)]);
        let r = audit_heuristic(&shift).unwrap();
        assert!(r.h_at_start <= 2);
        assert!(r.admissible_here);
        assert!(!r.astar_overshoot);

        let stuck = scenario(2, 1, &[(0, 0)], &[(0, 0)], &[(1, 0)]);
        let r = audit_heuristic(&stuck).unwrap();
        assert_eq!((r.optimal_cost, r.astar_cost, r.admissible_here), (None, None, true));
    }
}
