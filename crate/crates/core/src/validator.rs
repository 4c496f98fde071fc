//! Plan replay and the ASCII frame format.
//!
//! Costs are re-derived here from the cell changes each primitive makes
//! (block displacement plus the displacement of a robot that does not ride
//! along with its block), not from the per-kind cost table.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::astar::Plan;
use crate::grid::{Cell, Coord, GridError, GridState};
use crate::primitives::MotionPrimitive;
use crate::scenario::Scenario;

const STEP_SURCHARGE: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
    pub replayed_cost: u64,
}

impl ValidationReport {
    fn fail(step: Option<usize>, reason: String, replayed_cost: u64) -> Self {
        ValidationReport { ok: false, failing_step: step, reason: Some(reason), replayed_cost }
    }
}

pub fn validate_plan(scenario: &Scenario, plan: &Plan) -> ValidationReport {
    let rules = scenario.rules();
    let mut state = scenario.start().clone();
    let blocks = state.block_count();
    let robots = state.robot_count();
    let mut cost = 0u64;

    for (i, step) in plan.steps.iter().enumerate() {
        let prims = step.primitives();
        if prims.is_empty() {
            return ValidationReport::fail(Some(i), "empty step".into(), cost);
        }
        for (a, p) in prims.iter().enumerate() {
            for q in &prims[a + 1..] {
                if p.footprint().intersects(&q.footprint()) {
                    return ValidationReport::fail(Some(i), format!("{p} conflicts with {q}"), cost);
                }
            }
        }
        for p in prims {
            if let Err(e) = p.precondition(&state, rules) {
                return ValidationReport::fail(Some(i), format!("{p}: {e}"), cost);
            }
            let before = state.clone();
            state = p.apply(&before, rules);
            match displacement(&before, &state) {
                Some(d) => cost += d,
                None => return ValidationReport::fail(Some(i), format!("{p}: unexpected cell changes"), cost),
            }
        }
        cost += STEP_SURCHARGE;
        if state.block_count() != blocks || state.robot_count() != robots {
            return ValidationReport::fail(Some(i), "block or robot count changed".into(), cost);
        }
    }
    if !state.is_goal(scenario.goal()).unwrap_or(false) {
        return ValidationReport::fail(None, "final state is not a goal".into(), cost);
    }
    if cost != plan.total_cost {
        return ValidationReport::fail(
            None,
            format!("replayed cost {cost} differs from plan cost {}", plan.total_cost),
            cost,
        );
    }
    ValidationReport { ok: true, failing_step: None, reason: None, replayed_cost: cost }
}

/// Manhattan displacement between two states that differ by one primitive.
fn displacement(before: &GridState, after: &GridState) -> Option<u64> {
    let mut vacated = Vec::new();
    let mut filled = Vec::new();
    let mut robot_lost = Vec::new();
    let mut robot_gained = Vec::new();
    for c in before.coords() {
        let (b, a) = (before.get(c)?, after.get(c)?);
        match (b.is_block(), a.is_block()) {
            (true, false) => vacated.push(c),
            (false, true) => filled.push(c),
            _ => {}
        }
        match (b.has_robot(), a.has_robot()) {
            (true, false) => robot_lost.push(c),
            (false, true) => robot_gained.push(c),
            _ => {}
        }
    }
    if vacated.len() != filled.len() || vacated.len() > 1 || robot_lost.len() != 1 || robot_gained.len() != 1 {
        return None;
    }
    let block = vacated.first().zip(filled.first()).map_or(0, |(v, f)| v.manhattan(*f));
    let rode = robot_lost == vacated && robot_gained == filled;
    let robot = if rode { 0 } else { robot_lost[0].manhattan(robot_gained[0]) };
    Some(block + robot)
}

/// Cost of one primitive derived from the cells it changes in `state`.
pub fn observed_cost(state: &GridState, prim: &MotionPrimitive, rules: crate::primitives::Rules) -> Option<u64> {
    prim.precondition(state, rules).ok()?;
    displacement(state, &prim.apply(state, rules))
}

pub fn cell_char(cell: Cell) -> char {
    match cell {
        Cell::Empty => '.',
        Cell::Block => '#',
        Cell::BlockWithRobot => 'R',
    }
}

/// One line per row, top row first, each terminated by `\n`.
pub fn render_ascii(state: &GridState) -> String {
    let mut out = String::with_capacity((state.width() + 1) * state.height());
    for y in (0..state.height()).rev() {
        for x in 0..state.width() {
            out.push(cell_char(state.get(Coord::new(x, y)).expect("in bounds")));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridParseError {
    #[error("line {line}, column {column}: unexpected character {ch:?}")]
    BadChar { line: usize, column: usize, ch: char },
    #[error("line {line}: row has {got} cells, expected {expected}")]
    Ragged { line: usize, expected: usize, got: usize },
    #[error("empty grid")]
    Empty,
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Parses rows of `.`, `#` and `R`, top row first. Line and column numbers
/// in errors are 1-based and relative to `text`.
pub fn parse_grid(text: &str) -> Result<GridState, GridParseError> {
    let rows: Vec<&str> = text.lines().collect();
    if rows.is_empty() {
        return Err(GridParseError::Empty);
    }
    let width = rows[0].chars().count();
    let height = rows.len();
    let mut cells = alloc::vec![Cell::Empty; width * height];
    for (line, row) in rows.iter().enumerate() {
        let mut n = 0;
        for (column, ch) in row.chars().enumerate() {
            let cell = match ch {
                '.' => Cell::Empty,
                '#' => Cell::Block,
                'R' => Cell::BlockWithRobot,
                _ => return Err(GridParseError::BadChar { line: line + 1, column: column + 1, ch }),
            };
            if column < width {
                cells[(height - 1 - line) * width + column] = cell;
            }
            n += 1;
        }
        if n != width {
            return Err(GridParseError::Ragged { line: line + 1, expected: width, got: n });
        }
    }
    Ok(GridState::from_cells(width, height, cells)?)
}
