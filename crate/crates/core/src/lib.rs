//! Planning core for reconfiguring passive lattice blocks with robots that
//! live inside them.
//!
//! The crate is `no_std` (it needs `alloc`). It holds the lattice model, the
//! five motion primitives, parallel joint actions, the cost model and
//! estimate, the A* planner, a uniform-cost oracle, the plan validator and
//! the joint setpoint controller. File formats, timing and the command line
//! live in the `molemod` crate.
#![no_std]

extern crate alloc;

pub mod astar;
pub mod controller;
pub mod costs;
pub mod grid;
pub mod joint;
pub mod oracle;
pub mod primitives;
pub mod scenario;
pub mod validator;

pub use astar::{plan, plan_with_clock, Clock, Limit, Plan, SearchOptions, SearchOutcome, SearchStats};
pub use costs::{assignment_cost, heuristic_paper, step_cost, CostModel, HeuristicKind};
pub use grid::{Cell, Coord, GoalSpec, GridError, GridState, StateKey};
pub use joint::{apply_joint, enumerate_joint_actions, JointAction};
pub use oracle::{audit_heuristic, ucs_plan, AuditReport, OracleOptions};
pub use primitives::{applicable_primitives, Direction, MotionPrimitive, PrimitiveKind, Rules, Side};
pub use scenario::{Scenario, ScenarioError, WorldOptions};
pub use validator::{parse_grid, render_ascii, validate_plan, ValidationReport};
