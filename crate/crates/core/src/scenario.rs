use alloc::string::String;

use crate::grid::{GoalSpec, GridError, GridState};
use crate::primitives::Rules;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("block count mismatch {0} vs {1}")]
    BlockCountMismatch(usize, usize),
    #[error("no robots and the start is not a goal state")]
    NoRobots,
}

/// World options carried by a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WorldOptions {
    pub ground_shift: bool,
    /// Cap on primitives per joint step; `None` means one per robot.
    pub max_parallel: Option<usize>,
}

impl WorldOptions {
    pub fn rules(&self) -> Rules {
        Rules { ground_shift: self.ground_shift }
    }
}

/// A planning problem: start state, goal block mask and world options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    start: GridState,
    goal: GoalSpec,
    pub options: WorldOptions,
}

impl Scenario {
    /// Validates matching dimensions and block counts.
    pub fn new(
        name: impl Into<String>,
        start: GridState,
        goal: GoalSpec,
        options: WorldOptions,
    ) -> Result<Self, ScenarioError> {
        goal.check_dims(&start)?;
        if start.block_count() != goal.block_count() {
            return Err(ScenarioError::BlockCountMismatch(start.block_count(), goal.block_count()));
        }
        Ok(Scenario { name: name.into(), start, goal, options })
    }

    pub fn start(&self) -> &GridState {
        &self.start
    }

    pub fn goal(&self) -> &GoalSpec {
        &self.goal
    }

    pub fn width(&self) -> usize {
        self.start.width()
    }

    pub fn height(&self) -> usize {
        self.start.height()
    }

    pub fn rules(&self) -> Rules {
        self.options.rules()
    }

    /// Checks what a search needs beyond construction-time validation.
    pub fn check_plannable(&self) -> Result<(), ScenarioError> {
        if self.start.robot_count() == 0 && !self.start.satisfies(&self.goal) {
            return Err(ScenarioError::NoRobots);
        }
        Ok(())
    }
}
