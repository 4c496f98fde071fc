//! Planning-time benchmark over the task suite and the oracle audit report.

use std::io;
use std::time::{Duration, Instant};

use molemod_core::oracle::AuditError;
use molemod_core::{
    audit_heuristic, plan_with_clock, Clock, Scenario, ScenarioError, SearchOptions, SearchOutcome,
};

use crate::suite::SuiteEntry;

pub const BENCH_HEADER: [&str; 7] = ["task", "robots", "time_ms", "expanded", "generated", "cost", "steps"];
pub const AUDIT_HEADER: [&str; 6] =
    ["scenario", "h_at_start", "optimal_cost", "astar_cost", "admissible", "astar_overshoot"];

/// Wall clock started at construction.
pub struct StdClock(Instant);

impl StdClock {
    pub fn start() -> Self {
        StdClock(Instant::now())
    }
}

impl Clock for StdClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// Runs the planner with a wall clock so time limits apply and the stats
/// carry the duration.
pub fn plan_timed(scenario: &Scenario, options: &SearchOptions) -> Result<SearchOutcome, ScenarioError> {
    plan_with_clock(scenario, options, &StdClock::start())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub task: usize,
    pub robots: usize,
    /// Median over the repeats.
    pub time_ms: f64,
    pub expanded: u64,
    pub generated: u64,
    /// `None` when the search did not find a plan.
    pub cost: Option<u64>,
    pub steps: Option<usize>,
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

pub fn run_cell(entry: &SuiteEntry, options: &SearchOptions, repeat: usize) -> Result<BenchRow, ScenarioError> {
    let mut times = Vec::with_capacity(repeat.max(1));
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let outcome = plan_timed(&entry.scenario, options)?;
        times.push(outcome.stats().duration.as_secs_f64() * 1e3);
        last = Some(outcome);
    }
    let outcome = last.expect("at least one run");
    let stats = *outcome.stats();
    let plan = outcome.plan();
    Ok(BenchRow {
        task: entry.task,
        robots: entry.robots,
        time_ms: median(&mut times),
        expanded: stats.expanded,
        generated: stats.generated,
        cost: plan.map(|p| p.total_cost),
        steps: plan.map(|p| p.steps.len()),
    })
}

/// Runs every cell in order, one search at a time.
pub fn run_bench(suite: &[SuiteEntry], options: &SearchOptions, repeat: usize) -> Result<Vec<BenchRow>, ScenarioError> {
    suite.iter().map(|e| run_cell(e, options, repeat)).collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_bench_csv<W: io::Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BENCH_HEADER)?;
    for r in rows {
        w.write_record([
            r.task.to_string(),
            r.robots.to_string(),
            format!("{:.3}", r.time_ms),
            r.expanded.to_string(),
            r.generated.to_string(),
            opt(r.cost),
            opt(r.steps),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRow {
    pub scenario: String,
    pub h_at_start: u64,
    pub optimal_cost: Option<u64>,
    pub astar_cost: Option<u64>,
    pub admissible: bool,
    pub astar_overshoot: bool,
}

pub fn audit_scenarios(scenarios: &[Scenario]) -> Result<Vec<AuditRow>, (String, AuditError)> {
    scenarios
        .iter()
        .map(|s| {
            let r = audit_heuristic(s).map_err(|e| (s.name.clone(), e))?;
            Ok(AuditRow {
                scenario: s.name.clone(),
                h_at_start: r.h_at_start,
                optimal_cost: r.optimal_cost,
                astar_cost: r.astar_cost,
                admissible: r.admissible_here,
                astar_overshoot: r.astar_overshoot,
            })
        })
        .collect()
}

pub fn write_audit_csv<W: io::Write>(rows: &[AuditRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AUDIT_HEADER)?;
    for r in rows {
        w.write_record([
            r.scenario.clone(),
            r.h_at_start.to_string(),
            opt(r.optimal_cost),
            opt(r.astar_cost),
            r.admissible.to_string(),
            r.astar_overshoot.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
