//! Text scenario files.
//!
//! ```text
//! [start]
//! ...
//! R#.
//! [goal]
//! ...
//! .##
//! [options]
//! name = example
//! ground_shift = false
//! max_parallel = 2
//! ```
//!
//! Grids use `.` (empty), `#` (block) and `R` (block with robot), top row
//! first; every row of a grid has the same length. The goal grid may not
//! contain robots. `[options]` is optional and `max_parallel` may be omitted.

use std::fmt::Write as _;

use molemod_core::{parse_grid, render_ascii, GoalSpec, GridError, GridState, Scenario, ScenarioError, WorldOptions};

pub const DEFAULT_NAME: &str = "unnamed";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: robot in goal")]
    RobotInGoal { line: usize, column: usize },
    #[error("missing [{0}] section")]
    MissingSection(&'static str),
    #[error("zero dimensions in [{0}] section")]
    ZeroDimensions(&'static str),
    #[error("block count mismatch {start} vs {goal}")]
    BlockCountMismatch { start: usize, goal: usize },
    #[error("start is {0}x{1} but goal is {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("{0}")]
    Grid(GridError),
}

impl ScenarioParseError {
    /// `(line, column)` for syntax-level errors.
    pub fn position(&self) -> Option<(usize, usize)> {
        match *self {
            ScenarioParseError::Syntax { line, column, .. } | ScenarioParseError::RobotInGoal { line, column } => {
                Some((line, column))
            }
            _ => None,
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ScenarioParseError {
    ScenarioParseError::Syntax { line, column, message: message.into() }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    Goal,
    Options,
}

#[derive(Default)]
struct GridLines {
    seen: bool,
    rows: Vec<String>,
}

impl GridLines {
    fn push(&mut self, line_no: usize, text: &str, allow_robot: bool) -> Result<(), ScenarioParseError> {
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '.' | '#' => {}
                'R' if allow_robot => {}
                'R' => return Err(ScenarioParseError::RobotInGoal { line: line_no, column: i + 1 }),
                other => return Err(syntax(line_no, i + 1, format!("unexpected character {other:?}"))),
            }
        }
        let len = text.chars().count();
        if let Some(first) = self.rows.first() {
            let width = first.chars().count();
            if len != width {
                let column = len.min(width) + 1;
                return Err(syntax(line_no, column, format!("ragged row: {len} cells, expected {width}")));
            }
        }
        self.rows.push(text.to_owned());
        Ok(())
    }

    fn into_state(self, section: &'static str) -> Result<GridState, ScenarioParseError> {
        if !self.seen {
            return Err(ScenarioParseError::MissingSection(section));
        }
        if self.rows.is_empty() || self.rows[0].is_empty() {
            return Err(ScenarioParseError::ZeroDimensions(section));
        }
        let text = self.rows.join("\n");
        parse_grid(&text).map_err(|e| match e {
            molemod_core::validator::GridParseError::Grid(g) => ScenarioParseError::Grid(g),
            other => unreachable!("rows were checked already: {other}"),
        })
    }
}

fn parse_bool(line: usize, column: usize, v: &str) -> Result<bool, ScenarioParseError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(syntax(line, column, format!("expected true or false, got {v:?}"))),
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioParseError> {
    let mut section = None;
    let mut start = GridLines::default();
    let mut goal = GridLines::default();
    let mut options_seen = false;
    let mut name = DEFAULT_NAME.to_owned();
    let mut opts = WorldOptions::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with('[') {
            let (next, seen) = match line.trim_end() {
                "[start]" => (Section::Start, &mut start.seen),
                "[goal]" => (Section::Goal, &mut goal.seen),
                "[options]" => (Section::Options, &mut options_seen),
                other => return Err(syntax(line_no, 1, format!("unknown section {other}"))),
            };
            if *seen {
                return Err(syntax(line_no, 1, format!("duplicate section {}", line.trim_end())));
            }
            *seen = true;
            section = Some(next);
            continue;
        }
        match section {
            None => return Err(syntax(line_no, 1, "content before the first section")),
            Some(Section::Start) => start.push(line_no, line, true)?,
            Some(Section::Goal) => goal.push(line_no, line, false)?,
            Some(Section::Options) => {
                let Some((key, value)) = line.split_once('=') else {
                    return Err(syntax(line_no, 1, "expected key = value"));
                };
                let value_col = key.chars().count() + 2 + (value.len() - value.trim_start().len());
                let value = value.trim();
                match key.trim() {
                    "name" => name = value.to_owned(),
                    "ground_shift" => opts.ground_shift = parse_bool(line_no, value_col, value)?,
                    "max_parallel" => {
                        let n: usize = value
                            .parse()
                            .map_err(|_| syntax(line_no, value_col, format!("expected an integer, got {value:?}")))?;
                        if n == 0 {
                            return Err(syntax(line_no, value_col, "max_parallel must be at least 1"));
                        }
                        opts.max_parallel = Some(n);
                    }
                    other => return Err(syntax(line_no, 1, format!("unknown option {other:?}"))),
                }
            }
        }
    }

    let start = start.into_state("start")?;
    let goal_state = goal.into_state("goal")?;
    if (start.width(), start.height()) != (goal_state.width(), goal_state.height()) {
        return Err(ScenarioParseError::DimensionMismatch(
            start.width(),
            start.height(),
            goal_state.width(),
            goal_state.height(),
        ));
    }
    let goal = GoalSpec::from_state(&goal_state);
    Scenario::new(name, start, goal, opts).map_err(|e| match e {
        ScenarioError::BlockCountMismatch(s, g) => ScenarioParseError::BlockCountMismatch { start: s, goal: g },
        ScenarioError::Grid(g) => ScenarioParseError::Grid(g),
        ScenarioError::NoRobots => unreachable!("not checked at construction"),
    })
}

/// Renders a goal mask in the grid alphabet.
pub fn render_goal(goal: &GoalSpec) -> String {
    let mut out = String::new();
    for y in (0..goal.height()).rev() {
        for x in 0..goal.width() {
            out.push(if goal.is_block(molemod_core::Coord::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

pub fn write_scenario(scenario: &Scenario) -> String {
    let mut out = String::new();
    out.push_str("[start]\n");
    out.push_str(&render_ascii(scenario.start()));
    out.push_str("[goal]\n");
    out.push_str(&render_goal(scenario.goal()));
    out.push_str("[options]\n");
    let _ = writeln!(out, "name = {}", scenario.name);
    let _ = writeln!(out, "ground_shift = {}", scenario.options.ground_shift);
    if let Some(n) = scenario.options.max_parallel {
        let _ = writeln!(out, "max_parallel = {n}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal() {
        let s = parse_scenario("[start]\nR\n[goal]\n#\n").unwrap();
        assert_eq!(s.start().block_count(), 1);
        assert_eq!(s.start().robot_count(), 1);
        assert_eq!(s.name, DEFAULT_NAME);
        assert!(!s.options.ground_shift);
    }

    #[test]
    fn options() {
        let s = parse_scenario("[options]\nname = a b\nground_shift = true\nmax_parallel = 2\n[start]\nR.\n[goal]\n.#\n")
            .unwrap();
        assert_eq!(s.name, "a b");
        assert!(s.options.ground_shift);
        assert_eq!(s.options.max_parallel, Some(2));
    }

    #[test]
    fn semantic_errors() {
        let e = parse_scenario("[start]\nR\n[goal]\nR\n").unwrap_err();
        assert_eq!(e, ScenarioParseError::RobotInGoal { line: 4, column: 1 });
        assert_eq!(e.to_string(), "line 4, column 1: robot in goal");

        let e = parse_scenario("[start]\nR#.\n[goal]\n###\n").unwrap_err();
        assert_eq!(e.to_string(), "block count mismatch 2 vs 3");

        assert_eq!(parse_scenario("[start]\nR\n").unwrap_err(), ScenarioParseError::MissingSection("goal"));
        assert_eq!(parse_scenario("[start]\n[goal]\n#\n").unwrap_err(), ScenarioParseError::ZeroDimensions("start"));
        assert!(matches!(
            parse_scenario("[start]\nR.\n[goal]\n#\n").unwrap_err(),
            ScenarioParseError::DimensionMismatch(2, 1, 1, 1)
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_scenario("[start]\nR.\n.x\n[goal]\n#.\n..\n").unwrap_err();
        assert_eq!(e.position(), Some((3, 2)));
        let e = parse_scenario("[start]\nR..\n..\n").unwrap_err();
        assert_eq!(e.position(), Some((3, 3)));
        let e = parse_scenario("R\n").unwrap_err();
        assert_eq!(e.position(), Some((1, 1)));
        let e = parse_scenario("[options]\nmax_parallel = lots\n").unwrap_err();
        assert_eq!(e.position(), Some((2, 16)));
        let e = parse_scenario("[options]\ncolour = red\n").unwrap_err();
        assert_eq!(e.position(), Some((2, 1)));
        let e = parse_scenario("[start]\nR\n[start]\n").unwrap_err();
        assert_eq!(e.position(), Some((3, 1)));
    }

    #[test]
    fn serializes_in_fixed_order() {
        let s = parse_scenario("[goal]\n.#\n[start]\nR.\n[options]\nname = x\n").unwrap();
        assert_eq!(write_scenario(&s), "[start]\nR.\n[goal]\n.#\n[options]\nname = x\nground_shift = false\n");
    }
}
