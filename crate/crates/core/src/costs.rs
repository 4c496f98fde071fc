//! Step costs and the cost-to-go estimate.
//!
//! A step costs the sum of its primitives' `d` values plus a surcharge of 1,
//! so one parallel step is always cheaper than the same primitives spread
//! over several steps.
//!
//! The estimate is the block-travel term (optimal pairing of misplaced blocks
//! to unfilled goal cells under Manhattan distance) plus an approach term
//! `max(0, W - R)`: `W` misplaced blocks without a robot, `R` robots in total.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::{Coord, GoalSpec, GridState};
use crate::joint::JointAction;
use crate::primitives::{self, MotionPrimitive, PrimitiveKind};

/// Pairing sizes up to this use exact subset dynamic programming; larger
/// ones use the Hungarian method.
pub const EXACT_ASSIGNMENT_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("{0} misplaced blocks but {1} open goal cells")]
    LengthMismatch(usize, usize),
    #[error("block count mismatch {0} vs {1}")]
    BlockCountMismatch(usize, usize),
    #[error(transparent)]
    Grid(#[from] crate::grid::GridError),
}

/// Per-kind primitive costs and the per-step surcharge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    pub move_robot: u64,
    pub lift_block: u64,
    pub put_down_block: u64,
    pub shift_block: u64,
    pub coop_lift_up: u64,
    pub step_surcharge: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            move_robot: primitives::MOVE_COST,
            lift_block: primitives::LIFT_COST,
            put_down_block: primitives::PUT_DOWN_COST,
            shift_block: primitives::SHIFT_COST,
            coop_lift_up: primitives::COOP_LIFT_COST,
            step_surcharge: 1,
        }
    }
}

impl CostModel {
    pub fn primitive_cost(&self, p: &MotionPrimitive) -> u64 {
        match p.kind() {
            PrimitiveKind::MoveRobot => self.move_robot,
            PrimitiveKind::LiftBlock => self.lift_block,
            PrimitiveKind::PutDownBlock => self.put_down_block,
            PrimitiveKind::ShiftBlock => self.shift_block,
            PrimitiveKind::CoopLiftUp => self.coop_lift_up,
        }
    }

    pub fn step_cost(&self, action: &JointAction) -> u64 {
        action.primitives().iter().map(|p| self.primitive_cost(p)).sum::<u64>() + self.step_surcharge
    }
}

/// Cost of one joint step under the default model.
pub fn step_cost(action: &JointAction) -> u64 {
    CostModel::default().step_cost(action)
}

/// Which cost-to-go estimate the search uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeuristicKind {
    #[default]
    Paper,
    /// Always 0; turns A* into uniform-cost search.
    Zero,
}

impl HeuristicKind {
    pub fn evaluate(self, state: &GridState, goal: &GoalSpec) -> u64 {
        match self {
            HeuristicKind::Paper => paper_estimate(state, goal),
            HeuristicKind::Zero => 0,
        }
    }
}

/// Minimum total Manhattan distance over all bijections between `from` and
/// `to`.
pub fn assignment_cost(from: &[Coord], to: &[Coord]) -> Result<u64, CostError> {
    if from.len() != to.len() {
        return Err(CostError::LengthMismatch(from.len(), to.len()));
    }
    Ok(min_assignment(from, to))
}

fn min_assignment(from: &[Coord], to: &[Coord]) -> u64 {
    match from.len() {
        0 => 0,
        1 => from[0].manhattan(to[0]),
        n if n <= EXACT_ASSIGNMENT_LIMIT => subset_dp(from, to),
        _ => hungarian(from, to),
    }
}

/// `best[mask]`: cheapest way to pair the first `popcount(mask)` sources
/// with the targets in `mask`.
pub(crate) fn subset_dp(from: &[Coord], to: &[Coord]) -> u64 {
    let n = from.len();
    let mut best = vec![u64::MAX; 1 << n];
    best[0] = 0;
    for mask in 0..(1usize << n) {
        let base = best[mask];
        if base == u64::MAX {
            continue;
        }
        let i = mask.count_ones() as usize;
        if i == n {
            continue;
        }
        for (j, &t) in to.iter().enumerate() {
            if mask & (1 << j) == 0 {
                let next = mask | (1 << j);
                let cost = base + from[i].manhattan(t);
                if cost < best[next] {
                    best[next] = cost;
                }
            }
        }
    }
    best[(1 << n) - 1]
}

/// O(n^3) Hungarian method with row/column potentials.
pub(crate) fn hungarian(from: &[Coord], to: &[Coord]) -> u64 {
    let n = from.len();
    let cost = |i: usize, j: usize| from[i - 1].manhattan(to[j - 1]) as i64;
    // 1-based; column 0 is a sentinel.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost(i0, j) - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| cost(owner[j], j) as u64).sum()
}

/// Cost-to-go estimate; 0 exactly on goal states.
pub fn heuristic_paper(state: &GridState, goal: &GoalSpec) -> Result<u64, CostError> {
    goal.check_dims(state)?;
    if state.block_count() != goal.block_count() {
        return Err(CostError::BlockCountMismatch(state.block_count(), goal.block_count()));
    }
    Ok(paper_estimate(state, goal))
}

pub(crate) fn paper_estimate(state: &GridState, goal: &GoalSpec) -> u64 {
    let misplaced = state.misplaced_blocks(goal);
    if misplaced.is_empty() {
        return 0;
    }
    let sources: Vec<Coord> = misplaced.iter().map(|&(c, _)| c).collect();
    let targets = state.open_goal_cells(goal);
    let travel = min_assignment(&sources, &targets);
    let without_robot = misplaced.iter().filter(|(_, r)| !r).count() as u64;
    let robots = state.robot_count() as u64;
    travel + without_robot.saturating_sub(robots)
}
