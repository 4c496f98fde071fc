use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use molemod::bench::{self, plan_timed};
use molemod::plan_io::{parse_plan, write_plan};
use molemod::scenario_io::parse_scenario;
use molemod::suite::{self, RandomLimits};
use molemod_core::{
    audit_heuristic, render_ascii, validate_plan, HeuristicKind, Limit, Scenario, SearchOptions, SearchOutcome,
};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NO_PLAN: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;
const EXIT_INVALID_PLAN: u8 = 4;

#[derive(Parser)]
#[command(name = "molemod", version, about = "Block reconfiguration planner for in-block robots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Heuristic {
    Paper,
    Zero,
}

impl From<Heuristic> for HeuristicKind {
    fn from(h: Heuristic) -> Self {
        match h {
            Heuristic::Paper => HeuristicKind::Paper,
            Heuristic::Zero => HeuristicKind::Zero,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search for a plan and write it as text.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "paper")]
        heuristic: Heuristic,
        #[arg(long)]
        max_parallel: Option<usize>,
        /// Seconds.
        #[arg(long, default_value_t = 120.0)]
        time_limit: f64,
        #[arg(long, default_value_t = molemod_core::astar::DEFAULT_MAX_EXPANDED)]
        max_expanded: u64,
        /// Never reopen closed states.
        #[arg(long)]
        no_reopen: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a plan file against a scenario.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        plan: PathBuf,
    },
    /// Print the start frame, then the frame after every plan step.
    Render {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Time the planner over the task suite and emit CSV.
    Bench {
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
    /// Compare the estimate and A* against the optimal oracle.
    Audit {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        scenario: Option<PathBuf>,
        /// Audit this many seeded random scenarios instead (seed from RECONFIG_SEED).
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_ERROR, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))
}

fn load_scenario(path: &Path) -> Result<Scenario, Failure> {
    parse_scenario(&read(path)?).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn exhausted(limit: Limit) -> Failure {
    let what = match limit {
        Limit::Expansions => "expansion limit",
        Limit::Time => "time limit",
        Limit::WorldSize => "world size limit",
    };
    Failure(EXIT_EXHAUSTED, format!("resource exhausted: {what} reached"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Plan { scenario, heuristic, max_parallel, time_limit, max_expanded, no_reopen, out } => {
            let scenario = load_scenario(&scenario)?;
            if !(time_limit > 0.0 && time_limit.is_finite()) {
                return Err(Failure(EXIT_ERROR, "--time-limit must be positive".into()));
            }
            let options = SearchOptions {
                heuristic: heuristic.into(),
                max_expanded,
                max_parallel,
                time_limit: Some(Duration::from_secs_f64(time_limit)),
                reopen: !no_reopen,
            };
            match plan_timed(&scenario, &options)? {
                SearchOutcome::Found(plan) => {
                    eprintln!("planned in {:.3} ms", plan.stats.duration.as_secs_f64() * 1e3);
                    emit(out.as_deref(), &write_plan(&plan, &scenario.name))
                }
                SearchOutcome::NoPlan(_) => Err(Failure(EXIT_NO_PLAN, "no plan".into())),
                SearchOutcome::ResourceExhausted { limit, .. } => Err(exhausted(limit)),
            }
        }
        Command::Validate { scenario, plan } => {
            let scenario = load_scenario(&scenario)?;
            let file = parse_plan(&read(&plan)?).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", plan.display())))?;
            let report = validate_plan(&scenario, &file.plan);
            if report.ok {
                println!("ok: {} steps, cost {}", file.plan.steps.len(), report.replayed_cost);
                Ok(())
            } else {
                let at = report.failing_step.map_or_else(|| "end".to_owned(), |s| format!("step {s}"));
                Err(Failure(EXIT_INVALID_PLAN, format!("invalid at {at}: {}", report.reason.unwrap_or_default())))
            }
        }
        Command::Render { scenario, plan } => {
            let scenario = load_scenario(&scenario)?;
            let mut text = format!("# start\n{}", render_ascii(scenario.start()));
            if let Some(path) = plan {
                let file = parse_plan(&read(&path)?).map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))?;
                let rules = scenario.rules();
                let mut state = scenario.start().clone();
                for (i, step) in file.plan.steps.iter().enumerate() {
                    if let Err((_, e)) = step.precondition(&state, rules) {
                        return Err(Failure(EXIT_INVALID_PLAN, format!("step {i}: {e}")));
                    }
                    state = step.apply(&state, rules);
                    text.push_str(&format!("# step {}: {step}\n{}", i + 1, render_ascii(&state)));
                }
            }
            emit(None, &text)
        }
        Command::Bench { suite: name, csv, repeat } => {
            if name != "default" {
                return Err(Failure(EXIT_ERROR, format!("unknown suite {name:?}")));
            }
            let entries = suite::generate_task_suite();
            let options = SearchOptions::default();
            let mut rows = Vec::with_capacity(entries.len());
            for e in &entries {
                let row = bench::run_cell(e, &options, repeat)?;
                eprintln!("task {} robots {}: {:.3} ms", row.task, row.robots, row.time_ms);
                rows.push(row);
            }
            let mut buf = Vec::new();
            bench::write_bench_csv(&rows, &mut buf)?;
            emit(csv.as_deref(), std::str::from_utf8(&buf)?)?;
            if rows.iter().any(|r| r.cost.is_none()) {
                return Err(Failure(EXIT_EXHAUSTED, "some suite cells were not solved".into()));
            }
            Ok(())
        }
        Command::Audit { scenario: Some(path), .. } => {
            let scenario = load_scenario(&path)?;
            let r = audit_heuristic(&scenario).map_err(|e| match e {
                molemod_core::oracle::AuditError::Exhausted(limit) => exhausted(limit),
                other => Failure(EXIT_ERROR, other.to_string()),
            })?;
            let cost = |c: Option<u64>| c.map_or_else(|| "none".to_owned(), |c| c.to_string());
            let verdict = if r.admissible_here { "admissible" } else { "NOT admissible" };
            println!("h={}, optimal={}, {verdict}", r.h_at_start, cost(r.optimal_cost));
            println!("astar={}, overshoot={}", cost(r.astar_cost), if r.astar_overshoot { "yes" } else { "no" });
            Ok(())
        }
        Command::Audit { random, csv, .. } => {
            let count = random.expect("clap enforces one of --scenario/--random");
            let seed = suite::seed_from_env(suite::DEFAULT_SEED);
            let scenarios = suite::random_scenarios(seed, count, &RandomLimits::default());
            let rows = bench::audit_scenarios(&scenarios).map_err(|(name, e)| Failure(EXIT_ERROR, format!("{name}: {e}")))?;
            let mut buf = Vec::new();
            bench::write_audit_csv(&rows, &mut buf)?;
            emit(csv.as_deref(), std::str::from_utf8(&buf)?)?;
            let violations = rows.iter().filter(|r| !r.admissible).count();
            let overshoots = rows.iter().filter(|r| r.astar_overshoot).count();
            eprintln!("seed {seed}: {count} scenarios, {violations} estimate violations, {overshoots} A* overshoots");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
