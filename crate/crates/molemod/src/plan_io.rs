//! Line-oriented plan files.
//!
//! A header of `key: value` lines in fixed order, then one line per step.
//! Primitives within a step are separated by ` | ` and written as
//! `KIND dir @(x,y)`, with ` catcher @(x,y)` appended for cooperative lifts.
//! Timings are never written so the output is byte-stable.

use std::fmt::Write as _;

use molemod_core::primitives::{Direction, PrimitiveKind, Side};
use molemod_core::{Coord, JointAction, MotionPrimitive, Plan, SearchStats};

const HEADER_KEYS: [&str; 7] = ["scenario", "cost", "steps", "expanded", "generated", "reopened", "peak_open"];

pub fn write_plan(plan: &Plan, scenario_name: &str) -> String {
    let s = &plan.stats;
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {scenario_name}");
    let _ = writeln!(out, "cost: {}", plan.total_cost);
    let _ = writeln!(out, "steps: {}", plan.steps.len());
    let _ = writeln!(out, "expanded: {}", s.expanded);
    let _ = writeln!(out, "generated: {}", s.generated);
    let _ = writeln!(out, "reopened: {}", s.reopened);
    let _ = writeln!(out, "peak_open: {}", s.peak_open);
    for step in &plan.steps {
        let _ = writeln!(out, "{step}");
    }
    out
}

/// A plan read back from text, with the scenario name from its header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanFile {
    pub scenario: String,
    pub plan: Plan,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct PlanParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> PlanParseError {
    PlanParseError { line, message: message.into() }
}

pub fn parse_plan(text: &str) -> Result<PlanFile, PlanParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut values = Vec::with_capacity(HEADER_KEYS.len());
    for (i, key) in HEADER_KEYS.iter().enumerate() {
        let line = lines.get(i).ok_or_else(|| err(i + 1, format!("missing header field {key}")))?;
        let value = line
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(": "))
            .ok_or_else(|| err(i + 1, format!("expected `{key}: ...`")))?;
        values.push(value);
    }
    let number = |i: usize| -> Result<u64, PlanParseError> {
        values[i].parse().map_err(|_| err(i + 1, format!("{} is not a number", HEADER_KEYS[i])))
    };
    let total_cost = number(1)?;
    let step_count = number(2)? as usize;
    let stats = SearchStats {
        expanded: number(3)?,
        generated: number(4)?,
        reopened: number(5)?,
        peak_open: number(6)?,
        duration: Default::default(),
    };

    let body = &lines[HEADER_KEYS.len()..];
    if body.len() != step_count {
        return Err(err(HEADER_KEYS.len() + 1, format!("header says {step_count} steps, found {}", body.len())));
    }
    let steps = body
        .iter()
        .enumerate()
        .map(|(i, line)| parse_step(line).map_err(|m| err(HEADER_KEYS.len() + i + 1, m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PlanFile { scenario: values[0].to_owned(), plan: Plan { steps, total_cost, stats } })
}

fn parse_step(line: &str) -> Result<JointAction, String> {
    let prims = line.split(" | ").map(parse_primitive).collect::<Result<Vec<_>, _>>()?;
    JointAction::new(prims).map_err(|e| e.to_string())
}

fn parse_coord(s: &str) -> Result<Coord, String> {
    let inner = s
        .strip_prefix("@(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("bad coordinate {s:?}"))?;
    let (x, y) = inner.split_once(',').ok_or_else(|| format!("bad coordinate {s:?}"))?;
    let num = |v: &str| v.parse::<usize>().map_err(|_| format!("bad coordinate {s:?}"));
    Ok(Coord::new(num(x)?, num(y)?))
}

fn parse_primitive(text: &str) -> Result<MotionPrimitive, String> {
    let words: Vec<&str> = text.split(' ').collect();
    let kind = words
        .first()
        .and_then(|w| PrimitiveKind::from_keyword(w))
        .ok_or_else(|| format!("unknown primitive in {text:?}"))?;
    let expected = if kind == PrimitiveKind::CoopLiftUp { 5 } else { 3 };
    if words.len() != expected {
        return Err(format!("malformed primitive {text:?}"));
    }
    let actor = parse_coord(words[2])?;
    let side = || match words[1] {
        "L" => Ok(Side::Left),
        "R" => Ok(Side::Right),
        d => Err(format!("bad side {d:?}")),
    };
    Ok(match kind {
        PrimitiveKind::MoveRobot => {
            let dir = match words[1] {
                "L" => Direction::Left,
                "R" => Direction::Right,
                "D" => Direction::Down,
                "U" => Direction::Up,
                d => return Err(format!("bad direction {d:?}")),
            };
            MotionPrimitive::MoveRobot { actor, dir }
        }
        PrimitiveKind::LiftBlock => MotionPrimitive::LiftBlock { actor, side: side()? },
        PrimitiveKind::PutDownBlock => MotionPrimitive::PutDownBlock { actor, side: side()? },
        PrimitiveKind::ShiftBlock => MotionPrimitive::ShiftBlock { actor, side: side()? },
        PrimitiveKind::CoopLiftUp => {
            if words[3] != "catcher" {
                return Err(format!("malformed primitive {text:?}"));
            }
            MotionPrimitive::CoopLiftUp { actor, side: side()?, catcher: parse_coord(words[4])? }
        }
    })
}
